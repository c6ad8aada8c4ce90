"""Defining graphs and their 2-labeled structure.

A defining graph records generators (vertices, in declaration order) and
symmetric integer edge labels m >= 2.  An absent edge means m is infinite,
so no "infinity" token ever appears in memory or on disk.  Declaration
order is the tie-break order for every set-valued result downstream.
"""

from .errors import DegenerateDomainError, InputError


class DefiningGraph:
    """Labeled graph on named generators; immutable after construction."""

    def __init__(self, vertices, edges):
        """
        vertices: iterable of unique nonempty name tokens, order significant.
        edges: mapping or iterable of ((u, v), m) with m an integer >= 2.
        """
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate generator names in vertex list")
        for name in self.vertices:
            if not name or not isinstance(name, str):
                raise InputError(f"generator name must be a nonempty token, got {name!r}")
        self._index = {v: i for i, v in enumerate(self.vertices)}

        self._labels = {}
        items = edges.items() if hasattr(edges, "items") else edges
        for (u, v), m in items:
            if u not in self._index or v not in self._index:
                missing = u if u not in self._index else v
                raise InputError(f"edge endpoint {missing!r} is not a declared generator")
            if u == v:
                raise InputError(f"self-loop at {u!r}")
            if not isinstance(m, int) or m < 2:
                raise InputError(f"edge label must be an integer >= 2, got {m!r} on ({u}, {v})")
            key = self._key(u, v)
            if key in self._labels and self._labels[key] != m:
                raise InputError(f"conflicting labels for edge ({u}, {v})")
            self._labels[key] = m

    def _key(self, u, v):
        return (u, v) if self._index[u] < self._index[v] else (v, u)

    def index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"unknown generator {v!r}") from None

    def __contains__(self, v):
        return v in self._index

    def __len__(self):
        return len(self.vertices)

    def label(self, u, v):
        """Edge label m, or None when the pair is unjoined (m infinite)."""
        self.index(u), self.index(v)
        if u == v:
            return None
        return self._labels.get(self._key(u, v))

    def edges(self):
        """Edges as ((u, v), m), ordered by endpoint declaration order."""
        return sorted(
            self._labels.items(),
            key=lambda item: (self._index[item[0][0]], self._index[item[0][1]]),
        )

    def neighbors(self, v):
        self.index(v)
        out = [u for u in self.vertices if u != v and self._key(u, v) in self._labels]
        return tuple(out)

    def commutes(self, u, v):
        """True when u and v are joined by a 2-labeled edge."""
        return self.label(u, v) == 2

    def subset(self, members):
        """Validate and normalize a generator subset into declaration order."""
        seen = set()
        for name in members:
            self.index(name)
            if name in seen:
                raise InputError(f"repeated generator {name!r} in subset")
            seen.add(name)
        return tuple(v for v in self.vertices if v in seen)

    def complement(self, members):
        members = set(self.subset(members))
        return tuple(v for v in self.vertices if v not in members)

    def __eq__(self, other):
        if not isinstance(other, DefiningGraph):
            return NotImplemented
        return self.vertices == other.vertices and self._labels == other._labels

    def __repr__(self):
        edges = ", ".join(f"{u}-{v}:{m}" for (u, v), m in self.edges())
        return f"DefiningGraph({list(self.vertices)}; {edges})"


class ComponentPartition:
    """Partition of the vertex set into components of the 2-labeled subgraph.

    Blocks are ordered by least member (declaration order) and each block
    keeps declaration order internally, so block indices are stable.
    """

    def __init__(self, graph, blocks):
        self.graph = graph
        self.blocks = tuple(tuple(block) for block in blocks)
        self._block_of = {}
        for i, block in enumerate(self.blocks):
            for v in block:
                self._block_of[v] = i

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_index(self, v):
        self.graph.index(v)
        return self._block_of[v]

    def block_of(self, v):
        return self.blocks[self.block_index(v)]

    def __repr__(self):
        return f"ComponentPartition({[list(b) for b in self.blocks]})"


def full_subgraph(graph, members):
    """Induced subgraph on `members`, keeping labels and declaration order."""
    members = graph.subset(members)
    keep = set(members)
    edges = {
        (u, v): m
        for (u, v), m in graph.edges()
        if u in keep and v in keep
    }
    return DefiningGraph(members, edges)


def hat(graph):
    """The subgraph keeping every vertex and exactly the 2-labeled edges."""
    edges = {(u, v): m for (u, v), m in graph.edges() if m == 2}
    return DefiningGraph(graph.vertices, edges)


def hat_components(graph):
    """Components of the 2-labeled subgraph; an isolated vertex is a block."""
    two = hat(graph)
    seen = set()
    blocks = []
    for start in graph.vertices:
        if start in seen:
            continue
        stack = [start]
        comp = set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(u for u in two.neighbors(v) if u not in comp)
        seen |= comp
        blocks.append(tuple(v for v in graph.vertices if v in comp))
    blocks.sort(key=lambda b: graph.index(b[0]))
    return ComponentPartition(graph, blocks)


def two_completion_of_vertex(graph, v):
    """All vertices reachable from v along 2-labeled edges, v included."""
    graph.index(v)
    return hat_components(graph).block_of(v)


def is_two_complete(graph, members):
    """True iff the subset is a union of 2-labeled components (empty counts)."""
    members = graph.subset(members)
    return canonical_two_completion(graph, members) == members


def canonical_two_completion(graph, members):
    """Smallest two-complete superset: union of the members' components."""
    members = graph.subset(members)
    partition = hat_components(graph)
    hit = {partition.block_index(v) for v in members}
    out = set()
    for i in hit:
        out.update(partition.blocks[i])
    return tuple(v for v in graph.vertices if v in out)


def require_multiple_blocks(graph, minimum=2):
    """Raise unless the 2-labeled subgraph has at least `minimum` components."""
    partition = hat_components(graph)
    if len(partition) < minimum:
        raise DegenerateDomainError(
            f"the 2-labeled subgraph has {len(partition)} component(s); "
            f"at least {minimum} are required for a nondegenerate coset complex"
        )
    return partition
