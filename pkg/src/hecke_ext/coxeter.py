"""Coxeter matrices and the finiteness test for parabolic subgroups.

The cosine Gram matrix has entries -cos(pi/m) which, for the supported
m in {2, 3, 4, 6, inf}, lie in Q(sqrt2, sqrt3). Positive definiteness is
decided exactly by symmetric Gaussian elimination in that field.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ParameterError

INFINITY = 0  # encoding of m(s, t) = infinity
SUPPORTED = (2, 3, 4, 6, INFINITY)


class Q23:
    """Element a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational coefficients."""

    __slots__ = ("v",)

    def __init__(self, a=0, b=0, c=0, d=0):
        self.v = (Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    def __add__(self, o):
        return Q23(*(x + y for x, y in zip(self.v, o.v)))

    def __sub__(self, o):
        return Q23(*(x - y for x, y in zip(self.v, o.v)))

    def __neg__(self):
        return Q23(*(-x for x in self.v))

    def __mul__(self, o):
        a, b, c, d = self.v
        e, f, g, h = o.v
        return Q23(
            a * e + 2 * b * f + 3 * c * g + 6 * d * h,
            a * f + b * e + 3 * c * h + 3 * d * g,
            a * g + c * e + 2 * b * h + 2 * d * f,
            a * h + d * e + b * g + c * f,
        )

    def _split(self):
        # x = P + Q*sqrt3 with P, Q in Q(sqrt2)
        a, b, c, d = self.v
        return (a, b), (c, d)

    def inverse(self):
        (a, b), (c, d) = self._split()
        # N = P^2 - 3 Q^2 in Q(sqrt2)
        n0 = a * a + 2 * b * b - 3 * (c * c + 2 * d * d)
        n1 = 2 * a * b - 6 * c * d
        den = n0 * n0 - 2 * n1 * n1
        if den == 0:
            raise ZeroDivisionError("inverse of zero")
        inv_n = (n0 / den, -n1 / den)
        # (P - Q sqrt3) / N
        p = (a * inv_n[0] + 2 * b * inv_n[1], a * inv_n[1] + b * inv_n[0])
        q = (-(c * inv_n[0] + 2 * d * inv_n[1]), -(c * inv_n[1] + d * inv_n[0]))
        return Q23(p[0], p[1], q[0], q[1])

    def __truediv__(self, o):
        return self * o.inverse()

    def is_zero(self):
        return not any(self.v)

    def sign(self) -> int:
        P, Q = self._split()
        sp, sq = _sign2(*P), _sign2(*Q)
        if sq == 0:
            return sp
        if sp == 0:
            return sq
        if sp == sq:
            return sp
        # opposite signs: compare P^2 with 3 Q^2
        a, b = P
        c, d = Q
        diff = _sign2(a * a + 2 * b * b - 3 * (c * c + 2 * d * d), 2 * a * b - 6 * c * d)
        return sp if diff > 0 else (sq if diff < 0 else 0)

    def __repr__(self):
        return "Q23(%s)" % ", ".join(str(x) for x in self.v)


def _sign2(u: Fraction, v: Fraction) -> int:
    """Sign of u + v*sqrt2."""
    su = (u > 0) - (u < 0)
    sv = (v > 0) - (v < 0)
    if sv == 0:
        return su
    if su == 0 or su == sv:
        return sv if su == 0 else su
    d = u * u - 2 * v * v
    return su if d > 0 else (sv if d < 0 else 0)


def neg_cosine(m: int) -> Q23:
    """-cos(pi/m) as an exact element."""
    if m == 1:
        return Q23(-1)
    if m == 2:
        return Q23(0)
    if m == 3:
        return Q23(Fraction(-1, 2))
    if m == 4:
        return Q23(0, Fraction(-1, 2))
    if m == 6:
        return Q23(0, 0, Fraction(-1, 2))
    if m == INFINITY:
        return Q23(-1)
    raise ParameterError(f"unsupported Coxeter entry m={m}")


def coxeter_violations(M: Sequence[Sequence[int]]) -> list[str]:
    out = []
    n = len(M)
    for i in range(n):
        if len(M[i]) != n:
            return ["coxeter shape: matrix is not square"]
    for i in range(n):
        if M[i][i] != 1:
            out.append(f"coxeter diagonal: m({i},{i}) = {M[i][i]} != 1")
        for j in range(n):
            if i == j:
                continue
            if M[i][j] != M[j][i]:
                out.append(f"coxeter symmetry: m({i},{j}) = {M[i][j]} != m({j},{i}) = {M[j][i]}")
            if M[i][j] not in SUPPORTED:
                out.append(f"coxeter entry: m({i},{j}) = {M[i][j]} not in 2,3,4,6,inf")
    return out


def is_positive_definite(G: list[list[Q23]]) -> bool:
    n = len(G)
    A = [row[:] for row in G]
    for k in range(n):
        piv = A[k][k]
        if piv.sign() <= 0:
            return False
        inv = piv.inverse()
        for i in range(k + 1, n):
            if A[i][k].is_zero():
                continue
            f = A[i][k] * inv
            for j in range(k + 1, n):
                A[i][j] = A[i][j] - f * A[k][j]
    return True


def is_finite_parabolic(M: Sequence[Sequence[int]], subset) -> bool:
    """True iff the subgroup generated by the reflections in ``subset`` is finite."""
    idx = sorted(set(subset))
    G = [[neg_cosine(M[i][j]) if i != j else Q23(1) for j in idx] for i in idx]
    return is_positive_definite(G)
