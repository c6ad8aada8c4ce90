"""Finite-type detection, local reducibility, and maximal dihedral edges.

The primary decision is exact: split the Coxeter diagram of a subset into
connected components (edges are the pairs with m >= 3 or m infinite) and
match each component against the classification of irreducible finite
diagrams.  A numerical positive-definiteness test on the cosine matrix is
kept as an independent cross-check; the two must always agree.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graphs import hat_components

# Eigenvalue cutoff for the positive-definiteness cross-check.  Matrices
# here are tiny (at most 10x10) and genuinely definite or not, so any
# tolerance well above float noise works; disagreement with the diagram
# classification is a bug, never a tie to break.
EIGENVALUE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FiniteTypeVerdict:
    subset: tuple
    finite: bool
    decomposition: tuple

    def __bool__(self):
        return self.finite


def gram_matrix(graph, members):
    """Cosine matrix of the subset: 1 on the diagonal, -cos(pi/m) off it.

    An unjoined pair contributes -1 (the m -> infinity limit).  Rows follow
    declaration order.  Empty subsets are rejected; callers treat them as
    finite type directly.
    """
    members = graph.subset(members)
    if not members:
        raise InputError("gram_matrix requires a nonempty subset")
    n = len(members)
    out = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            m = graph.label(members[i], members[j])
            entry = -1.0 if m is None else -math.cos(math.pi / m)
            out[i, j] = entry
            out[j, i] = entry
    return out


def is_positive_definite(matrix, tolerance=EIGENVALUE_TOLERANCE):
    return bool(np.linalg.eigvalsh(matrix).min() > tolerance)


def gram_finite_type(graph, members):
    """Independent oracle: finite type iff the cosine matrix is positive definite."""
    members = graph.subset(members)
    if not members:
        return True
    return is_positive_definite(gram_matrix(graph, members))


def _diagram_components(graph, members):
    """Components of the Coxeter diagram on `members` (edges: m >= 3 or None)."""
    joined = {v: [] for v in members}
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            m = graph.label(u, v)
            if m is None or m >= 3:
                joined[u].append(v)
                joined[v].append(u)
    seen = set()
    comps = []
    for start in members:
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(u for u in joined[v] if u not in comp)
        seen |= comp
        comps.append(tuple(v for v in members if v in comp))
    return comps


def _classify_component(graph, comp):
    """Irreducible finite-type tag for one diagram component, or None.

    Finite components are trees; a single label 4 or 5 is only allowed in
    the positions realized by B_n, F4, H3 and H4, and any branching must be
    the single degree-3 vertex of D_n / E6 / E7 / E8.
    """
    n = len(comp)
    if n == 1:
        return "A1"

    edges = []
    for i, u in enumerate(comp):
        for v in comp[i + 1:]:
            m = graph.label(u, v)
            if m is None:
                return None  # an unjoined pair inside a component is an infinite bond
            if m >= 3:
                edges.append((u, v, m))
    if len(edges) != n - 1:
        return None  # connected with a cycle

    if n == 2:
        m = edges[0][2]
        if m == 3:
            return "A2"
        if m == 4:
            return "B2"
        return f"I2({m})"

    degree = {v: 0 for v in comp}
    for u, v, _ in edges:
        degree[u] += 1
        degree[v] += 1
    branch = [v for v in comp if degree[v] >= 3]
    if any(degree[v] >= 4 for v in comp) or len(branch) > 1:
        return None
    heavy = [(u, v, m) for u, v, m in edges if m >= 4]
    if len(heavy) > 1:
        return None

    if branch:
        if heavy:
            return None
        # Arm lengths from the branch vertex, in edges.
        adjacency = {v: [] for v in comp}
        for u, v, _ in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        center = branch[0]
        arms = []
        for first in adjacency[center]:
            length, prev, here = 1, center, first
            while degree[here] == 2:
                nxt = [w for w in adjacency[here] if w != prev][0]
                prev, here = here, nxt
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return f"D{n}"
        if arms == [1, 2, 2]:
            return "E6"
        if arms == [1, 2, 3]:
            return "E7"
        if arms == [1, 2, 4]:
            return "E8"
        return None

    # A path: read labels from one end.
    adjacency = {v: [] for v in comp}
    for u, v, m in edges:
        adjacency[u].append((v, m))
        adjacency[v].append((u, m))
    end = min((v for v in comp if degree[v] == 1), key=graph.index)
    labels = []
    prev, here = None, end
    while True:
        options = [(w, m) for w, m in adjacency[here] if w != prev]
        if not options:
            break
        nxt, m = options[0]
        labels.append(m)
        prev, here = here, nxt

    if all(m == 3 for m in labels):
        return f"A{n}"
    heavy_pos = [i for i, m in enumerate(labels) if m >= 4]
    pos, m = heavy_pos[0], labels[heavy_pos[0]]
    at_end = pos == 0 or pos == len(labels) - 1
    if m == 4:
        if at_end:
            return f"B{n}"
        if n == 4 and pos == 1:
            return "F4"
        return None
    if m == 5 and at_end:
        if n == 3:
            return "H3"
        if n == 4:
            return "H4"
    return None


def is_finite_type(graph, members):
    """Classify a subset; the empty set and singletons are finite by convention."""
    members = graph.subset(members)
    if not members:
        return FiniteTypeVerdict(members, True, ())
    tags = []
    for comp in _diagram_components(graph, members):
        tag = _classify_component(graph, comp)
        if tag is None:
            return FiniteTypeVerdict(members, False, ())
        tags.append(tag)
    return FiniteTypeVerdict(members, True, tuple(tags))


def is_locally_reducible(graph):
    """Check that every finite-type triangle has labels {2, 2, k}.

    Returns (True, None) or (False, witness) where the witness is the first
    offending triangle in declaration order, as ((u, v, w), sorted labels).
    """
    vs = graph.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if graph.label(vs[i], vs[j]) is None:
                continue
            for k in range(j + 1, len(vs)):
                if graph.label(vs[i], vs[k]) is None or graph.label(vs[j], vs[k]) is None:
                    continue
                triple = (vs[i], vs[j], vs[k])
                if not is_finite_type(graph, triple).finite:
                    continue
                labels = sorted(
                    (graph.label(vs[i], vs[j]), graph.label(vs[i], vs[k]), graph.label(vs[j], vs[k]))
                )
                if labels[:2] != [2, 2]:
                    return False, (triple, tuple(labels))
    return True, None


@dataclass(frozen=True)
class MaximalDihedralEdge:
    edge: tuple
    label: int
    completion: tuple
    proper: bool  # completion is a proper subset of the vertex set


def maximal_dihedral_edges(graph):
    """Edges with m >= 3 not contained in any finite-type triple.

    Each result carries the canonical 2-completion of its endpoints and a
    flag telling whether that completion misses part of the graph.
    """
    from .graphs import canonical_two_completion

    out = []
    for (u, v), m in graph.edges():
        if m < 3:
            continue
        if any(
            is_finite_type(graph, (u, v, w)).finite
            for w in graph.vertices
            if w not in (u, v)
        ):
            continue
        completion = canonical_two_completion(graph, (u, v))
        out.append(
            MaximalDihedralEdge(
                edge=(u, v),
                label=m,
                completion=completion,
                proper=len(completion) < len(graph.vertices),
            )
        )
    return out


def finite_type_cliques(graph, min_size):
    """All finite-type subsets of size >= min_size spanning complete subgraphs."""
    if min_size < 1:
        raise InputError("min_size must be at least 1")
    from itertools import combinations

    out = []
    vs = graph.vertices
    for size in range(min_size, len(vs) + 1):
        for combo in combinations(vs, size):
            if all(
                graph.label(a, b) is not None
                for i, a in enumerate(combo)
                for b in combo[i + 1:]
            ) and is_finite_type(graph, combo).finite:
                out.append(combo)
    return out


def verify_cliques_in_blocks(graph):
    """On locally reducible graphs, size >= 3 finite cliques stay in one block."""
    partition = hat_components(graph)
    for clique in finite_type_cliques(graph, 3):
        indices = {partition.block_index(v) for v in clique}
        if len(indices) > 1:
            return False, clique
    return True, None


__all__ = [
    "EIGENVALUE_TOLERANCE",
    "FiniteTypeVerdict",
    "MaximalDihedralEdge",
    "finite_type_cliques",
    "gram_finite_type",
    "gram_matrix",
    "is_finite_type",
    "is_locally_reducible",
    "is_positive_definite",
    "maximal_dihedral_edges",
    "verify_cliques_in_blocks",
]
