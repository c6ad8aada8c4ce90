"""Words, normal forms, and coset oracles.

Three oracle modes are provided, each exact on its domain:

* RAAG: every present edge is labeled 2.  Normal form is the shortlex-least
  word reachable by free cancellation and commutation of 2-labeled pairs,
  computed by right-to-left stacking followed by a greedy linearization of
  the reduced trace.
* DIHEDRAL: at most two generators.  With a finite label m the normal form
  is the left-greedy factorization over the dihedral monoid, written as a
  power of the half-turn element Delta = prod(a, b; m) followed by proper
  alternating factors.  Without an edge the group is free and reduction
  suffices.
* COXETER_SHADOW: any graph, but equality is decided only in the quotient
  where generators square to the identity, via the faithful reflection
  representation.  Entries stay exact whenever every finite label lies in
  {2, 3, 4, 6}; other labels fall back to floats with a per-entry tolerance
  and the oracle flags itself as inexact.

Words are kept verbatim on construction; reduction happens only inside the
oracles, so diagnostics can always show the caller's input.
"""

import enum
from dataclasses import dataclass

from .errors import InputError, ModeError
from . import _reflection


# ---------------------------------------------------------------------------
# Words


@dataclass(frozen=True)
class Word:
    """A signed generator sequence; the empty sequence is the identity."""

    letters: tuple = ()

    @staticmethod
    def from_pairs(pairs):
        letters = []
        for gen, sign in pairs:
            if sign not in (1, -1):
                raise InputError(f"letter sign must be +1 or -1, got {sign!r}")
            letters.append((gen, sign))
        return Word(tuple(letters))

    @staticmethod
    def from_text(text):
        """Parse whitespace-separated tokens: `a` for a, `a-` for its inverse."""
        letters = []
        for token in text.split():
            if token.endswith("-"):
                name = token[:-1]
                sign = -1
            else:
                name = token
                sign = 1
            if not name:
                raise InputError(f"malformed word token {token!r}")
            letters.append((name, sign))
        return Word(tuple(letters))

    def text(self):
        return " ".join(g if s == 1 else f"{g}-" for g, s in self.letters)

    def inverse(self):
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def support(self):
        return frozenset(g for g, _ in self.letters)

    def validate(self, graph):
        for g, _ in self.letters:
            graph.index(g)
        return self

    def __repr__(self):
        return f"Word({self.text()!r})" if self.letters else "Word(identity)"


def generator(name, sign=1):
    return Word(((name, sign),))


# ---------------------------------------------------------------------------
# Oracle modes


class OracleMode(enum.Enum):
    RAAG = "raag"
    DIHEDRAL = "dihedral"
    COXETER_SHADOW = "coxeter-shadow"

    @staticmethod
    def from_text(text):
        for mode in OracleMode:
            if mode.value == text:
                return mode
        raise InputError(f"unknown oracle mode {text!r}")

    def applicability(self, graph):
        """(applicable, reason-if-not)."""
        if self is OracleMode.RAAG:
            bad = [(u, v, m) for (u, v), m in graph.edges() if m != 2]
            if bad:
                u, v, m = bad[0]
                return False, f"edge ({u}, {v}) has label {m}; RAAG mode needs all labels 2"
            return True, None
        if self is OracleMode.DIHEDRAL:
            if len(graph) > 2:
                return False, f"dihedral mode needs at most 2 generators, got {len(graph)}"
            return True, None
        return True, None


@dataclass(frozen=True)
class NormalForm:
    word: Word
    mode: OracleMode
    exact: bool = True


# ---------------------------------------------------------------------------
# RAAG oracle


class RaagOracle:
    """Exact word, parabolic-membership, and coset oracles for all-2 graphs."""

    mode = OracleMode.RAAG
    exact = True

    def __init__(self, graph):
        ok, reason = OracleMode.RAAG.applicability(graph)
        if not ok:
            raise ModeError(reason)
        self.graph = graph
        self._nf_cache = {}
        self._rep_cache = {}

    def _commutes(self, a, b):
        return a != b and self.graph.commutes(a, b)

    def _stack(self, letters):
        """Right-to-left stacking: cancel a letter against the nearest
        opposite letter of the same generator that commutes past everything
        in between.  The result is a geodesic spelling of the same element."""
        out = []
        for g, s in letters:
            j = len(out) - 1
            cancel = -1
            while j >= 0:
                h, t = out[j]
                if h == g:
                    if t == -s:
                        cancel = j
                    break
                if not self._commutes(h, g):
                    break
                j -= 1
            if cancel >= 0:
                del out[cancel]
            else:
                out.append((g, s))
        return out

    def _linearize(self, letters):
        """Shortlex-least spelling of a reduced trace: repeatedly emit the
        least letter whose predecessors in the list all commute with it."""
        index = self.graph.index
        remaining = list(letters)
        out = []
        while remaining:
            best = None
            best_key = None
            for i, (g, s) in enumerate(remaining):
                if any(not self._commutes(remaining[j][0], g) for j in range(i)):
                    continue
                key = (index(g), 0 if s == 1 else 1)
                if best is None or key < best_key:
                    best, best_key = i, key
            out.append(remaining.pop(best))
        return out

    def normal_form_word(self, word):
        word.validate(self.graph)
        cached = self._nf_cache.get(word.letters)
        if cached is None:
            cached = tuple(self._linearize(self._stack(word.letters)))
            self._nf_cache[word.letters] = cached
        return Word(cached)

    def equal(self, w1, w2):
        return self.normal_form_word(w1) == self.normal_form_word(w2)

    def in_parabolic(self, word, members):
        members = self.graph.subset(members)
        return self.normal_form_word(word).support() <= set(members)

    def min_coset_rep(self, word, members):
        """Least element of word * A_members: strip, from the right, letters
        in the subset that commute past everything to their right."""
        members = set(self.graph.subset(members))
        key = (word.letters, frozenset(members))
        cached = self._rep_cache.get(key)
        if cached is not None:
            return Word(cached)
        letters = self._stack(word.letters)
        changed = True
        while changed:
            changed = False
            for i in range(len(letters) - 1, -1, -1):
                g = letters[i][0]
                if g not in members:
                    continue
                if all(self._commutes(g, letters[j][0]) for j in range(i + 1, len(letters))):
                    del letters[i]
                    letters = self._stack(letters)
                    changed = True
                    break
        rep = tuple(self._linearize(letters))
        self._rep_cache[key] = rep
        return Word(rep)

    def cosets_intersect(self, w1, t1, w2, t2):
        """Whether w1*A_t1 meets w2*A_t2: strip w1^-1 w2 over t2 and test
        membership of the remainder in A_t1."""
        t1 = self.graph.subset(t1)
        rep = self.min_coset_rep(w1.inverse() * w2, t2)
        return rep.support() <= set(t1)

    def coset_intersection_witness(self, w1, t1, w2, t2):
        """An element of w1*A_t1 intersect w2*A_t2, or None."""
        t1 = self.graph.subset(t1)
        rep = self.min_coset_rep(w1.inverse() * w2, t2)
        if rep.support() <= set(t1):
            return self.normal_form_word(w1 * rep)
        return None


# ---------------------------------------------------------------------------
# Dihedral oracle (Garside form for two generators)


class DihedralOracle:
    """Left-greedy canonical form for at most two generators.

    Elements are Delta^p s_1 ... s_q with each s_i a proper alternating
    positive word and each adjacent pair left-weighted.  With no edge the
    group is free and plain reduction is canonical.
    """

    mode = OracleMode.DIHEDRAL
    exact = True

    def __init__(self, graph):
        ok, reason = OracleMode.DIHEDRAL.applicability(graph)
        if not ok:
            raise ModeError(reason)
        self.graph = graph
        self.gens = graph.vertices
        self.m = graph.label(*self.gens) if len(self.gens) == 2 else None

    # Simple elements are (start, length) with 1 <= length <= m - 1;
    # the identity and Delta never appear inside a factor list.

    def _letter_at(self, simple, i):
        start, _ = simple
        return start if i % 2 == 0 else 1 - start

    def _last_letter(self, simple):
        start, length = simple
        return self._letter_at(simple, length - 1)

    def _tau(self, simple):
        # Conjugation by Delta swaps the generators exactly when m is odd.
        if self.m % 2 == 0:
            return simple
        return (1 - simple[0], simple[1])

    def _complement(self, simple):
        # The simple u with simple * u = Delta.
        start, length = simple
        first = 1 - self._last_letter(simple)
        return (first, self.m - length)

    def _delta_over(self, g):
        # The simple Delta * g^-1, i.e. Delta with a final g removed.
        if self.m % 2 == 1:
            return (g, self.m - 1)
        return (1 - g, self.m - 1)

    def _concat(self, s, u):
        # s * u as a simple; caller guarantees the result alternates.
        return (s[0], s[1] + u[1])

    def _popleft(self, simple, count):
        start, length = simple
        if length == count:
            return None
        return (self._letter_at(simple, count), length - count)

    def _normalize(self, power, factors):
        factors = [f for f in factors if f is not None and f[1] > 0]
        changed = True
        while changed:
            changed = False
            i = 0
            while i < len(factors) - 1:
                s, t = factors[i], factors[i + 1]
                if s[1] == self.m:  # Delta absorbs leftward via tau
                    i += 1
                    continue
                comp = self._complement(s)
                if comp[0] == t[0]:
                    move = min(comp[1], t[1])
                    factors[i] = self._concat(s, (t[0], move))
                    rest = self._popleft(t, move)
                    if rest is None:
                        del factors[i + 1]
                    else:
                        factors[i + 1] = rest
                    changed = True
                else:
                    i += 1
        # Pull full turns out to the power.
        while factors and factors[0][1] == self.m:
            factors.pop(0)
            power += 1
            factors = [self._tau(f) for f in factors]
        return power, factors

    def _fold_letter(self, power, factors, g, sign):
        gi = self.graph.index(g)
        if sign == 1:
            factors = factors + [(gi, 1)]
            return self._normalize(power, factors)
        # g^-1 = Delta^-1 * (Delta with trailing g removed)
        factors = [self._tau(f) for f in factors] + [self._delta_over(gi)]
        return self._normalize(power - 1, factors)

    def _garside(self, word):
        power, factors = 0, []
        for g, s in word.letters:
            power, factors = self._fold_letter(power, factors, g, s)
        return power, tuple(factors)

    def _delta_word(self):
        return [(self.gens[i % 2], 1) for i in range(self.m)]

    def _render(self, power, factors):
        letters = []
        if power >= 0:
            for _ in range(power):
                letters.extend(self._delta_word())
        else:
            inv = [(g, -1) for g, _ in reversed(self._delta_word())]
            for _ in range(-power):
                letters.extend(inv)
        for start, length in factors:
            for i in range(length):
                letters.append((self.gens[start if i % 2 == 0 else 1 - start], 1))
        return Word(tuple(letters))

    def _free_reduce(self, word):
        out = []
        for g, s in word.letters:
            if out and out[-1] == (g, -s):
                out.pop()
            else:
                out.append((g, s))
        return Word(tuple(out))

    def normal_form_word(self, word):
        word.validate(self.graph)
        if self.m is None:
            return self._free_reduce(word)
        return self._render(*self._garside(word))

    def garside_form(self, word):
        """(delta power, factor lengths with start letters) for inspection."""
        if self.m is None:
            raise ModeError("no edge between the generators; the group is free")
        power, factors = self._garside(word)
        return power, tuple((self.gens[s], l) for s, l in factors)

    def equal(self, w1, w2):
        return self.normal_form_word(w1) == self.normal_form_word(w2)

    def in_parabolic(self, word, members):
        members = self.graph.subset(members)
        if len(members) == len(self.graph):
            return True
        if not members:
            return not self.normal_form_word(word)
        raise ModeError(
            "dihedral mode decides parabolic membership only for the empty or full subset"
        )


# ---------------------------------------------------------------------------
# Coxeter shadow oracle


class CoxeterShadowOracle:
    """Equality and coset canonicalization in the squared-generator quotient.

    Words are mapped through the reflection representation; the canonical
    word of an element is its shortlex-least reduced expression, recovered
    by peeling least descents.  Minimal coset representatives strip right
    descents lying in the subset, which reaches the unique shortest element
    of the coset.
    """

    mode = OracleMode.COXETER_SHADOW

    def __init__(self, graph):
        self.graph = graph
        self.world = _reflection.ReflectionWorld(graph)
        self.exact = self.world.exact
        self._nf_cache = {}

    def _canonical_from_inverse(self, inverse_matrix):
        """Shortlex reduced word of w, given the matrix of w^-1."""
        world = self.world
        letters = []
        current = inverse_matrix
        while True:
            s = world.least_descent(current)
            if s is None:
                break
            letters.append((self.graph.vertices[s], 1))
            current = world.multiply(current, world.generator(s))
        return Word(tuple(letters))

    def _inverse_matrix(self, word):
        world = self.world
        out = world.identity()
        for g, _ in reversed(word.letters):  # each generator is an involution
            out = world.multiply(out, world.generator(self.graph.index(g)))
        return out

    def _forward_matrix(self, word):
        world = self.world
        out = world.identity()
        for g, _ in word.letters:
            out = world.multiply(out, world.generator(self.graph.index(g)))
        return out

    def normal_form_word(self, word):
        word.validate(self.graph)
        cached = self._nf_cache.get(word.letters)
        if cached is None:
            cached = self._canonical_from_inverse(self._inverse_matrix(word)).letters
            self._nf_cache[word.letters] = cached
        return Word(cached)

    def equal(self, w1, w2):
        return self.world.equal_matrices(
            self._inverse_matrix(w1), self._inverse_matrix(w2)
        )

    def in_parabolic(self, word, members):
        members = self.graph.subset(members)
        return self.normal_form_word(word).support() <= set(members)

    def min_coset_rep(self, word, members):
        members = self.graph.subset(members)
        indices = [self.graph.index(v) for v in members]
        world = self.world
        inv = self._inverse_matrix(word)
        forward = self._forward_matrix(word)
        changed = True
        while changed:
            changed = False
            for s in indices:
                if world.column_negative(forward, s):  # s is a right descent
                    gen = world.generator(s)
                    forward = world.multiply(forward, gen)
                    inv = world.multiply(gen, inv)
                    changed = True
        return self._canonical_from_inverse(inv)

    def cosets_intersect(self, w1, t1, w2, t2):
        t1 = self.graph.subset(t1)
        rep = self.min_coset_rep(w1.inverse() * w2, t2)
        return rep.support() <= set(t1)

    def coset_intersection_witness(self, w1, t1, w2, t2):
        t1 = self.graph.subset(t1)
        rep = self.min_coset_rep(w1.inverse() * w2, t2)
        if rep.support() <= set(t1):
            return self.normal_form_word(w1 * rep)
        return None


# ---------------------------------------------------------------------------
# Dispatch layer

_ORACLES = {
    OracleMode.RAAG: RaagOracle,
    OracleMode.DIHEDRAL: DihedralOracle,
    OracleMode.COXETER_SHADOW: CoxeterShadowOracle,
}


def oracle_for(graph, mode):
    if isinstance(mode, str):
        mode = OracleMode.from_text(mode)
    return _ORACLES[mode](graph)


def normal_form(graph, mode, word):
    oracle = oracle_for(graph, mode)
    return NormalForm(oracle.normal_form_word(word), oracle.mode, oracle.exact)


def equal(graph, mode, w1, w2):
    return oracle_for(graph, mode).equal(w1, w2)


def in_standard_parabolic(graph, mode, word, members):
    return oracle_for(graph, mode).in_parabolic(word, members)


def min_coset_rep(graph, mode, word, members):
    oracle = oracle_for(graph, mode)
    if not hasattr(oracle, "min_coset_rep"):
        raise ModeError(f"{oracle.mode.value} mode does not canonicalize cosets")
    return oracle.min_coset_rep(word, members)


def cosets_intersect(graph, mode, w1, t1, w2, t2):
    oracle = oracle_for(graph, mode)
    if not hasattr(oracle, "cosets_intersect"):
        raise ModeError(f"{oracle.mode.value} mode does not decide coset intersection")
    return oracle.cosets_intersect(w1, t1, w2, t2)


def element_ball(oracle, members, max_len, include_identity=True):
    """Canonical words of all elements of A_members with normal-form length
    at most max_len, enumerated by breadth-first right multiplication."""
    members = oracle.graph.subset(members)
    seen = {(): 0}
    frontier = [Word()]
    out = [Word()]
    while frontier:
        nxt = []
        for w in frontier:
            for g in members:
                for s in (1, -1):
                    cand = oracle.normal_form_word(w * generator(g, s))
                    if len(cand) > max_len or cand.letters in seen:
                        continue
                    seen[cand.letters] = len(cand)
                    nxt.append(cand)
                    out.append(cand)
        frontier = nxt
    if not include_identity:
        out = [w for w in out if w]
    return out
