"""Reflection representation backend for the Coxeter shadow oracle.

Generators act on the root space by s(e_j) = e_j - 2 B(s, j) e_s with
B(i, j) = -cos(pi / m_ij).  The off-diagonal multipliers 2 cos(pi / m) are
0, 1, sqrt(2), sqrt(3), 2 for m = 2, 3, 4, 6, infinity, so whenever every
finite label lies in {2, 3, 4, 6} the whole orbit stays inside
Z[sqrt(2), sqrt(3)] and is handled exactly.  Other labels use floats with a
per-entry tolerance; the oracle reports itself as inexact in that case.
"""

import math

import numpy as np

FLOAT_TOLERANCE = 1e-9

_EXACT_LABELS = {2, 3, 4, 6}


class QuadInt:
    """An element a + b sqrt2 + c sqrt3 + d sqrt6 with integer coordinates."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a, self.b, self.c, self.d = a, b, c, d

    def __add__(self, other):
        return QuadInt(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return QuadInt(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __mul__(self, other):
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return QuadInt(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    def __eq__(self, other):
        return (
            self.a == other.a and self.b == other.b
            and self.c == other.c and self.d == other.d
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def is_zero(self):
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def sign(self):
        """Exact sign, writing the value as (a + b sqrt2) + (c + d sqrt2) sqrt3."""
        su = _sign_sqrt2(self.a, self.b)
        sv = _sign_sqrt2(self.c, self.d)
        if sv == 0:
            return su
        if su == 0:
            return sv
        if su == sv:
            return su
        # Opposite signs: compare u^2 against 3 v^2 inside Q(sqrt2).
        ua, ub = self.a * self.a + 2 * self.b * self.b, 2 * self.a * self.b
        va, vb = self.c * self.c + 2 * self.d * self.d, 2 * self.c * self.d
        diff = _sign_sqrt2(ua - 3 * va, ub - 3 * vb)
        return su if diff > 0 else sv

    def __float__(self):
        return self.a + self.b * math.sqrt(2) + self.c * math.sqrt(3) + self.d * math.sqrt(6)

    def __repr__(self):
        return f"QuadInt({self.a}, {self.b}, {self.c}, {self.d})"


def _sign_sqrt2(p, q):
    """Exact sign of p + q sqrt2 for integers p, q."""
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sp == sq:
        return sp
    diff = p * p - 2 * q * q  # nonzero: sqrt2 is irrational
    return sp if diff > 0 else sq


_Q0 = QuadInt(0)
_Q1 = QuadInt(1)

# 2 cos(pi/m) for the exactly representable labels; None stands for infinity.
_EXACT_MULTIPLIER = {
    2: QuadInt(0),
    3: QuadInt(1),
    4: QuadInt(0, 1),
    6: QuadInt(0, 0, 1),
    None: QuadInt(2),
}


class ReflectionWorld:
    """Matrix arithmetic for one graph, exact or floating depending on labels."""

    def __init__(self, graph):
        self.graph = graph
        self.n = len(graph)
        labels = {m for _, m in graph.edges()}
        self.exact = labels <= _EXACT_LABELS
        self._generators = [self._build_generator(i) for i in range(self.n)]
        self._identity = self._build_identity()

    def _multiplier(self, i, j):
        m = self.graph.label(self.graph.vertices[i], self.graph.vertices[j])
        if self.exact:
            return _EXACT_MULTIPLIER[m]
        return 2.0 if m is None else 2.0 * math.cos(math.pi / m)

    def _build_identity(self):
        if self.exact:
            return tuple(
                tuple(_Q1 if i == j else _Q0 for j in range(self.n))
                for i in range(self.n)
            )
        return np.eye(self.n)

    def _build_generator(self, s):
        if self.exact:
            rows = []
            for i in range(self.n):
                if i != s:
                    rows.append(tuple(_Q1 if j == i else _Q0 for j in range(self.n)))
                else:
                    row = []
                    for j in range(self.n):
                        if j == s:
                            row.append(QuadInt(-1))
                        else:
                            row.append(self._multiplier(s, j))
                    rows.append(tuple(row))
            return tuple(rows)
        out = np.eye(self.n)
        for j in range(self.n):
            out[s, j] = -1.0 if j == s else self._multiplier(s, j)
        return out

    def identity(self):
        return self._identity

    def generator(self, s):
        return self._generators[s]

    def multiply(self, left, right):
        if not self.exact:
            return left @ right
        n = self.n
        rows = []
        for i in range(n):
            li = left[i]
            row = []
            for j in range(n):
                acc = _Q0
                for k in range(n):
                    e = li[k]
                    if e.is_zero():
                        continue
                    acc = acc + e * right[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return tuple(rows)

    def equal_matrices(self, left, right):
        if self.exact:
            return left == right
        return bool(np.all(np.abs(left - right) <= FLOAT_TOLERANCE))

    def column_negative(self, matrix, j):
        """Whether column j is a negative root (all coordinates <= 0)."""
        if self.exact:
            return all(matrix[i][j].sign() <= 0 for i in range(self.n))
        return bool(np.all(matrix[:, j] <= FLOAT_TOLERANCE))

    def least_descent(self, inverse_matrix):
        """Least s whose root goes negative under the matrix, or None."""
        for s in range(self.n):
            if self.column_negative(inverse_matrix, s):
                return s
        return None
