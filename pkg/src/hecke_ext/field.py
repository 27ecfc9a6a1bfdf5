"""Exact arithmetic in finite fields F_{p^k}.

Elements are encoded as integers ``0 <= code < p**k``; the base-``p`` digits of
a code are the coordinates in the power basis of the defining polynomial.
Multiplication goes through discrete log tables built from a primitive
element, so every field handled here has to be small (a few hundred thousand
elements at most), which is always the case for character values of the
finite groups we deal with.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from functools import reduce
from math import gcd

from .errors import ParameterError

DEFAULT_SEED = 2017
MAX_FIELD_SIZE = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, f)`` with ``q == p**f`` or ``None`` if q is not a prime power."""
    if q < 2:
        return None
    fac = prime_factors(q)
    if len(fac) != 1:
        return None
    p = fac[0]
    f = 0
    while q % p == 0:
        q //= p
        f += 1
    return p, f


# -- polynomials over F_p, coefficient lists low degree first ---------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    _ptrim(a)
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ptrim(a)
    return a


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, m, p)


def _pgcd(a, b, p):
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(poly, p: int) -> bool:
    """Ben-Or irreducibility test for a monic polynomial over F_p."""
    f = _ptrim([c % p for c in poly])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    xp = [0, 1]
    for _ in range(1, k // 2 + 1):
        # xp <- xp^p mod f
        acc = [1]
        base = xp
        e = p
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, f, p)
            base = _pmulmod(base, base, f, p)
            e >>= 1
        xp = acc
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _ptrim(diff), p)
        if len(g) > 1:
            return False
    return True


@dataclass(frozen=True, eq=False)
class FiniteField:
    """The field F_{p^k} presented as F_p[x]/(min_poly)."""

    p: int
    k: int
    min_poly: tuple[int, ...]
    generator: int = field(init=False)
    _exp: list = field(init=False, repr=False)
    _log: list = field(init=False, repr=False)
    _add: list | None = field(init=False, repr=False)

    def __post_init__(self):
        p, k = self.p, self.k
        if not is_prime(p):
            raise ParameterError(f"{p} is not prime")
        if len(self.min_poly) != k + 1 or self.min_poly[-1] != 1:
            raise ParameterError("min_poly must be monic of degree k")
        if not is_irreducible(self.min_poly, p):
            raise ParameterError(f"{list(self.min_poly)} is not irreducible mod {p}")
        q = p**k
        if q > MAX_FIELD_SIZE:
            raise ParameterError(f"field of size {q} is too large")
        object.__setattr__(self, "_add", None)
        if k == 1:
            g = _primitive_root(p)
        else:
            g = None
            for cand in range(2, q):
                if self._slow_order_is_full(cand):
                    g = cand
                    break
        exp = [0] * (q - 1)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        object.__setattr__(self, "generator", g)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        if k > 1 and q <= 256:
            object.__setattr__(
                self, "_add", [[self._digit_add(a, b) for b in range(q)] for a in range(q)]
            )

    # -- slow helpers used only while building tables -----------------------

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        pa = self.coeffs(a)
        pb = self.coeffs(b)
        prod = _pmulmod(pa, pb, list(self.min_poly), self.p)
        return self.from_coeffs(prod)

    def _slow_order_is_full(self, a: int) -> bool:
        n = self.order - 1
        for ell in prime_factors(n):
            x = 1
            base = a
            e = n // ell
            while e:
                if e & 1:
                    x = self._slow_mul(x, base)
                base = self._slow_mul(base, base)
                e >>= 1
            if x == 1:
                return False
        return True

    def _digit_add(self, a: int, b: int, sign: int = 1) -> int:
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a % p + sign * (b % p)) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    # -- encoding ------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def characteristic(self) -> int:
        return self.p

    def coeffs(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return out

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise ParameterError(f"expected at most {self.k} coefficients, got {len(coeffs)}")
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + (int(c) % self.p)
        return code

    def from_int(self, n: int) -> int:
        return n % self.p

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.from_coeffs(value))

    # -- arithmetic on codes -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._digit_add(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def log(self, a: int) -> int:
        """Discrete logarithm to the base of the stored generator."""
        if a == 0:
            raise ParameterError("log of zero")
        return self._log[a]

    def mult_order(self, a: int) -> int:
        n = self.order - 1
        return n // gcd(n, self._log[a])

    def __repr__(self):
        return f"FiniteField(p={self.p}, k={self.k}, min_poly={list(self.min_poly)})"

    def same_as(self, other: "FiniteField") -> bool:
        return (self.p, self.k, tuple(self.min_poly)) == (other.p, other.k, tuple(other.min_poly))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "min_poly": list(self.min_poly)}

    @classmethod
    def from_json(cls, obj) -> "FiniteField":
        try:
            return cls(int(obj["p"]), int(obj["k"]), tuple(int(c) for c in obj["min_poly"]))
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed field descriptor: {exc}") from exc


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fac = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in fac):
            return g
    raise AssertionError("no primitive root")


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    code: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(self._other(other))))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.code == other.code and self.field.same_as(other.field)
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.code}"
        return f"F{self.field.order}{self.coeffs}"


def _seed() -> int:
    raw = os.environ.get("HECKE_SEED")
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


def find_irreducible(p: int, k: int, seed: int | None = None) -> tuple[int, ...]:
    """Deterministic seeded search for a monic irreducible polynomial of degree k."""
    if k == 1:
        return (0, 1)
    rng = random.Random(_seed() if seed is None else seed)
    while True:
        cand = tuple(rng.randrange(p) for _ in range(k)) + (1,)
        if is_irreducible(cand, p):
            return cand


def minimal_degree(p: int, m: int) -> int:
    k = 1
    while (p**k - 1) % m:
        k += 1
    return k


def make_field(p: int, m: int = 1) -> FiniteField:
    """The smallest field of characteristic p containing all m-th roots of unity."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    if m < 1:
        raise ParameterError("m must be positive")
    if m % p == 0:
        raise ParameterError(f"characteristic {p} divides {m}")
    k = minimal_degree(p, m)
    return FiniteField(p, k, find_irreducible(p, k))


def root_of_unity(F: FiniteField, m: int) -> FieldElement:
    """generator^((p^k - 1)/m), an element of exact multiplicative order m."""
    n = F.order - 1
    if m < 1 or n % m:
        raise ParameterError(f"{m} does not divide {n}")
    return FieldElement(F, F.power(F.generator, n // m))


def exponent(orders) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), [o for o in orders if o], 1)


def embedding(small: FiniteField, big: FiniteField):
    """Return a code map F_small -> F_big realizing a field embedding."""
    if small.p != big.p or big.k % small.k:
        raise ParameterError("no embedding between these fields")
    poly = small.min_poly
    root = None
    for a in range(big.order):
        acc = 0
        for c in reversed(poly):
            acc = big.add(big.mul(acc, a), big.from_int(c))
        if acc == 0:
            root = a
            break
    if root is None:
        raise ParameterError("defining polynomial has no root in the larger field")
    powers = [big.power(root, i) if root else (1 if i == 0 else 0) for i in range(small.k)]
    table = []
    for code in range(small.order):
        acc = 0
        for c, pw in zip(small.coeffs(code), powers):
            if c:
                acc = big.add(acc, big.mul(big.from_int(c), pw))
        table.append(acc)
    return table
