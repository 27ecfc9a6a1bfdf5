"""Generic data of a pro-p-Iwahori Hecke algebra at q = 0.

Elements of Z_kappa are exponent tuples over its generators. Automorphisms
of Z_kappa are integer matrices acting on exponent column vectors.
Elements of Omega(1) are pairs (z, e) meaning z * w1^e1 * ... * wr^er with
torsion exponents reduced into [0, d_j).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import zlinalg as zl
from .coxeter import coxeter_violations
from .errors import ParameterError
from .field import FiniteField, embedding, find_irreducible, prime_power, make_field

Elem = tuple  # Z_kappa element (exponent tuple)


@dataclass(frozen=True)
class ZKappa:
    orders: tuple[int, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if any(o < 2 for o in self.orders):
            raise ParameterError(f"Z_kappa generator orders must be >= 2, got {self.orders}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"z{i}" for i in range(len(self.orders))))
        if len(self.labels) != len(self.orders):
            raise ParameterError("one label per Z_kappa generator required")

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    @property
    def zero(self) -> Elem:
        return (0,) * len(self.orders)

    def reduce(self, e) -> Elem:
        if len(e) != len(self.orders):
            raise ParameterError(f"Z_kappa element {tuple(e)} has wrong length")
        return tuple(int(x) % o for x, o in zip(e, self.orders))

    def add(self, a, b) -> Elem:
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a) -> Elem:
        return tuple(-x % o for x, o in zip(a, self.orders))

    def sub(self, a, b) -> Elem:
        return tuple((x - y) % o for x, y, o in zip(a, b, self.orders))

    def scale(self, n: int, a) -> Elem:
        return tuple(n * x % o for x, o in zip(a, self.orders))

    def unit(self, i: int) -> Elem:
        return tuple(int(j == i) for j in range(self.ngens))

    def elements(self):
        return [tuple(e) for e in itertools.product(*(range(o) for o in self.orders))]

    def apply(self, A, z) -> Elem:
        return tuple(sum(a * x for a, x in zip(row, z)) % o for row, o in zip(A, self.orders))

    def compose(self, A, B):
        """Matrix of the automorphism z -> A(B(z))."""
        n = self.ngens
        cols = [self.apply(A, self.apply(B, self.unit(j))) for j in range(n)]
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def identity_auto(self):
        n = self.ngens
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def auto_violation(self, A) -> str | None:
        n = self.ngens
        if len(A) != n or any(len(r) != n for r in A):
            return "automorphism matrix has wrong shape"
        for i in range(n):
            for j in range(n):
                if (A[i][j] * self.orders[j]) % self.orders[i]:
                    return f"automorphism matrix entry ({i},{j}) is not well defined modulo the orders"
        imgs = {self.apply(A, z) for z in self.elements()}
        if len(imgs) != self.size:
            return "automorphism matrix is not bijective"
        return None

    def auto_inverse(self, A):
        """Inverse automorphism, found as a power of A."""
        ident = self.identity_auto()
        P = ident
        prev = ident
        for _ in range(self.size * self.size + 2):
            prev = P
            P = self.compose(A, P)
            if self.normalize_auto(P) == ident:
                return self.normalize_auto(prev)
        raise ParameterError("automorphism of infinite order")

    def normalize_auto(self, A):
        return tuple(tuple(a % o for a in row) for row, o in zip(A, self.orders))

    def contains(self, lattice, z) -> bool:
        return not any(zl.reduce_mod_lattice(z, lattice))

    def subgroup_lattice(self, gens) -> list[list[int]]:
        rows = [list(g) for g in gens] + [[o if i == j else 0 for i in range(self.ngens)] for j, o in enumerate(self.orders)]
        return zl.hermite_rows(rows, self.ngens)


@dataclass(frozen=True)
class OmegaGen:
    label: str
    order: int  # 0 means infinite order
    power: Elem  # value of w^order in Z_kappa (zero tuple if infinite order)
    auto: tuple  # matrix of conjugation by w on Z_kappa
    perm: tuple[int, ...]  # s -> w s w^-1 on indices of s_aff
    corrections: tuple[Elem, ...]  # t(w, s) with w s~ w^-1 = t(w, s) * (w s w^-1)~


@dataclass(frozen=True, eq=False)
class GenericHeckeData:
    s_aff: tuple[str, ...]
    coxeter: tuple[tuple[int, ...], ...]
    z: ZKappa
    lift_conj: tuple
    c_param: tuple  # per s: dict Z element -> nonzero field code
    omega: tuple[OmegaGen, ...]
    commutators: dict  # (i, j) with i < j -> [w_i, w_j] = w_i w_j w_i^-1 w_j^-1 in Z_kappa
    field: FiniteField
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basic accessors --------------------------------------------------------

    @property
    def n_s(self) -> int:
        return len(self.s_aff)

    @property
    def n_omega(self) -> int:
        return len(self.omega)

    def s_index(self, s) -> int:
        if isinstance(s, int):
            if not 0 <= s < self.n_s:
                raise ParameterError(f"reflection index {s} out of range")
            return s
        try:
            return self.s_aff.index(s)
        except ValueError:
            raise ParameterError(f"unknown reflection {s!r}") from None

    def omega_index(self, w) -> int:
        if isinstance(w, int):
            if not 0 <= w < self.n_omega:
                raise ParameterError(f"Omega generator index {w} out of range")
            return w
        for i, g in enumerate(self.omega):
            if g.label == w:
                return i
        raise ParameterError(f"unknown Omega generator {w!r}")

    def omega_group(self) -> zl.FgAbelianGroup:
        return zl.FgAbelianGroup(tuple(g.order for g in self.omega), tuple(g.label for g in self.omega))

    def m(self, s: int, t: int) -> int:
        return self.coxeter[s][t]

    def c_value(self, s: int, z) -> int:
        return self.c_param[s].get(tuple(z), 0)

    def conj_s(self, s: int, z) -> Elem:
        return self.z.apply(self.lift_conj[s], z)

    # -- automorphism helpers ---------------------------------------------------

    def _inv_autos(self):
        if "inv_autos" not in self._cache:
            self._cache["inv_autos"] = [self.z.auto_inverse(g.auto) for g in self.omega]
        return self._cache["inv_autos"]

    def _inv_perms(self):
        if "inv_perms" not in self._cache:
            out = []
            for g in self.omega:
                inv = [0] * self.n_s
                for i, j in enumerate(g.perm):
                    inv[j] = i
                out.append(tuple(inv))
            self._cache["inv_perms"] = out
        return self._cache["inv_perms"]

    def auto_letter(self, j: int, sign: int, z) -> Elem:
        A = self.omega[j].auto if sign > 0 else self._inv_autos()[j]
        return self.z.apply(A, z)

    def auto_word(self, e, z) -> Elem:
        """Conjugation by w(e) = w1^e1 ... wr^er on Z_kappa."""
        for j in range(len(e) - 1, -1, -1):
            x = e[j]
            sign = 1 if x > 0 else -1
            for _ in range(abs(x)):
                z = self.auto_letter(j, sign, z)
        return z

    def perm_word(self, e, s: int) -> int:
        for j in range(len(e) - 1, -1, -1):
            x = e[j]
            table = self.omega[j].perm if x > 0 else self._inv_perms()[j]
            for _ in range(abs(x)):
                s = table[s]
        return s

    def conj_letter(self, j: int, sign: int, u, s: int):
        """w (u s~) w^-1 = u' s'~ for the letter w = w_j^sign."""
        g = self.omega[j]
        if sign > 0:
            return self.z.add(self.auto_letter(j, 1, u), g.corrections[s]), g.perm[s]
        s1 = self._inv_perms()[j][s]
        return self.z.sub(self.auto_letter(j, -1, u), self.auto_letter(j, -1, g.corrections[s1])), s1

    # -- Omega(1) arithmetic ------------------------------------------------------

    def o_identity(self):
        return (self.z.zero, (0,) * self.n_omega)

    def o_z(self, z):
        return (self.z.reduce(z), (0,) * self.n_omega)

    def o_reduce_exps(self, e) -> tuple[int, ...]:
        return tuple(x % g.order if g.order else x for x, g in zip(e, self.omega))

    def _comm_letters(self, k: int, dk: int, j: int, ej: int) -> Elem:
        """[w_k^dk, w_j^ej] for k > j, with [a, b] = a b a^-1 b^-1."""
        c = self.z.neg(self.commutators.get((j, k), self.z.zero))  # [w_k, w_j]
        if dk > 0 and ej > 0:
            return c
        if dk < 0 and ej > 0:
            return self.auto_letter(k, -1, self.z.neg(c))
        if dk > 0 and ej < 0:
            return self.auto_letter(j, -1, self.z.neg(c))
        return self.auto_letter(k, -1, self.auto_letter(j, -1, c))

    def o_mul_letter(self, x, j: int, eps: int):
        z, e = x
        r = len(e)
        u = self.z.zero
        for k in range(r - 1, j, -1):
            xk = e[k]
            sign = 1 if xk > 0 else -1
            for _ in range(abs(xk)):
                u = self.z.add(self.auto_letter(k, sign, u), self._comm_letters(k, sign, j, eps))
        prefix = tuple(e[: j + 1]) + (0,) * (r - j - 1)
        z = self.z.add(z, self.auto_word(prefix, u))
        ne = e[j] + eps
        d = self.omega[j].order
        if d:
            before = tuple(e[:j]) + (0,) * (r - j)
            if ne == d:
                ne = 0
                z = self.z.add(z, self.auto_word(before, self.omega[j].power))
            elif ne == -1:
                ne = d - 1
                z = self.z.sub(z, self.auto_word(before, self.omega[j].power))
        e = tuple(e[:j]) + (ne,) + tuple(e[j + 1 :])
        return (z, e)

    def o_mul(self, x, y):
        z1, e1 = x
        z2, e2 = y
        out = (self.z.add(z1, self.auto_word(e1, z2)), tuple(e1))
        for k, xk in enumerate(e2):
            sign = 1 if xk > 0 else -1
            for _ in range(abs(xk)):
                out = self.o_mul_letter(out, k, sign)
        return out

    def o_inv(self, x):
        z, e = x
        out = self.o_identity()
        for k in range(len(e) - 1, -1, -1):
            xk = e[k]
            sign = -1 if xk > 0 else 1
            for _ in range(abs(xk)):
                out = self.o_mul_letter(out, k, sign)
        return (self.z.add(out[0], self.auto_word(out[1], self.z.neg(z))), out[1])

    def o_pow(self, x, n: int):
        if n < 0:
            x = self.o_inv(x)
            n = -n
        out = self.o_identity()
        base = x
        while n:
            if n & 1:
                out = self.o_mul(out, base)
            base = self.o_mul(base, base)
            n >>= 1
        return out

    def o_word(self, e):
        """The normal-form element w(e) (exponents reduced modulo torsion)."""
        out = self.o_identity()
        for k, xk in enumerate(e):
            sign = 1 if xk > 0 else -1
            for _ in range(abs(xk)):
                out = self.o_mul_letter(out, k, sign)
        return out

    def o_auto(self, x, z) -> Elem:
        return self.auto_word(x[1], z)

    def o_perm(self, x, s: int) -> int:
        return self.perm_word(x[1], s)

    def o_conj_lift(self, x, s: int):
        """x s~ x^-1 = u * s'~ ; returns (u, s')."""
        zx, e = x
        u = self.z.zero
        for j in range(len(e) - 1, -1, -1):
            xj = e[j]
            sign = 1 if xj > 0 else -1
            for _ in range(abs(xj)):
                u, s = self.conj_letter(j, sign, u, s)
        u = self.z.add(u, self.z.sub(zx, self.conj_s(s, zx)))
        return u, s


# -- validation -----------------------------------------------------------------------


def validate(data: GenericHeckeData) -> list[str]:
    """Every violated invariant of the data, as human-readable strings."""
    out: list[str] = []
    n = data.n_s
    Z = data.z
    F = data.field
    out += coxeter_violations(data.coxeter)
    if len(data.coxeter) != n:
        out.append("coxeter shape: size differs from the number of reflections")
    if Z.size % F.p == 0:
        out.append(f"z_kappa order {Z.size} is divisible by the characteristic {F.p}")
    if (F.order - 1) % max(1, _exponent(Z.orders)):
        out.append("field does not contain the character values of z_kappa")
    if len(data.lift_conj) != n or len(data.c_param) != n:
        out.append("lift_conj and c_param need one entry per reflection")
        return out
    shape_ok = True
    for s in range(n):
        msg = Z.auto_violation(data.lift_conj[s])
        if msg:
            out.append(f"lift_conj({data.s_aff[s]}): {msg}")
            shape_ok = False
        for z, v in data.c_param[s].items():
            if len(z) != Z.ngens or any(not 0 <= x < o for x, o in zip(z, Z.orders)):
                out.append(f"c_param({data.s_aff[s]}): invalid z_kappa element {z}")
                shape_ok = False
            if not 0 <= v < F.order:
                out.append(f"c_param({data.s_aff[s]}): invalid field element {v}")
                shape_ok = False
    for j, g in enumerate(data.omega):
        msg = Z.auto_violation(g.auto)
        if msg:
            out.append(f"omega {g.label}: {msg}")
            shape_ok = False
        if sorted(g.perm) != list(range(n)):
            out.append(f"omega {g.label}: perm is not a permutation of s_aff")
            shape_ok = False
        if len(g.corrections) != n:
            out.append(f"omega {g.label}: need one correction per reflection")
            shape_ok = False
        if g.order < 0 or g.order == 1:
            out.append(f"omega {g.label}: invalid order {g.order}")
            shape_ok = False
    for (i, j) in data.commutators:
        if not (0 <= i < j < data.n_omega):
            out.append(f"commutator key {(i, j)} must satisfy i < j")
            shape_ok = False
    if not shape_ok:
        return out
    elems = Z.elements()
    gens = [Z.unit(i) for i in range(Z.ngens)]
    for s in range(n):
        name = data.s_aff[s]
        A = data.lift_conj[s]
        if Z.normalize_auto(Z.compose(A, A)) != Z.identity_auto():
            out.append(f"lift involution: conjugation by the lift of {name} does not square to the identity")
        c = data.c_param[s]
        for z in elems:
            if data.c_value(s, data.conj_s(s, z)) != data.c_value(s, z):
                out.append(f"lift invariance: c({name}) differs at t={z} and at its conjugate by the lift")
                break
        for t in gens:
            shift = Z.sub(t, data.conj_s(s, t))
            bad = next((z for z in c if data.c_value(s, Z.add(z, shift)) != c[z]), None)
            if bad is not None:
                out.append(f"translation invariance: c({name}) not invariant under t - s(t) for t={t} (at {bad})")
                break
    for s in range(n):
        for t in range(s + 1, n):
            m = data.coxeter[s][t]
            if m:
                lhs = _alternating_auto(data, s, t, m)
                rhs = _alternating_auto(data, t, s, m)
                if lhs != rhs:
                    out.append(
                        f"braid conjugation: lifts of {data.s_aff[s]}, {data.s_aff[t]} act differently along the braid words"
                    )
    for j, g in enumerate(data.omega):
        lab = g.label
        for s in range(n):
            for t in range(n):
                if data.coxeter[g.perm[s]][g.perm[t]] != data.coxeter[s][t]:
                    out.append(f"omega {lab}: perm does not preserve the Coxeter matrix at ({data.s_aff[s]},{data.s_aff[t]})")
            s1 = g.perm[s]
            lhs = Z.compose(g.auto, data.lift_conj[s])
            rhs = Z.compose(data.lift_conj[s1], g.auto)
            if Z.normalize_auto(lhs) != Z.normalize_auto(rhs):
                out.append(f"auto/perm consistency: omega {lab} and reflection {data.s_aff[s]}")
            t_ws = g.corrections[s]
            for z in elems:
                if data.c_value(s1, Z.sub(Z.apply(g.auto, z), t_ws)) != data.c_value(s, z):
                    out.append(
                        f"parameter compatibility: omega {lab}, reflection {data.s_aff[s]}, element t={z}"
                    )
                    break
        if g.order:
            d = g.order
            if Z.apply(g.auto, g.power) != tuple(g.power):
                out.append(f"omega {lab}: power {g.power} is not fixed by its automorphism")
            P = Z.identity_auto()
            for _ in range(d):
                P = Z.compose(g.auto, P)
            if Z.normalize_auto(P) != Z.identity_auto():
                out.append(f"omega {lab}: automorphism^{d} is not the identity")
            for s in range(n):
                u, s2 = Z.zero, s
                for _ in range(d):
                    u, s2 = data.conj_letter(j, 1, u, s2)
                if (u, s2) != (Z.sub(g.power, data.conj_s(s, g.power)), s):
                    out.append(f"omega {lab}: corrections inconsistent with w^{d} = {g.power} at {data.s_aff[s]}")
    for i in range(data.n_omega):
        for j in range(i + 1, data.n_omega):
            gi, gj = data.omega[i], data.omega[j]
            cij = data.commutators.get((i, j), Z.zero)
            if Z.normalize_auto(Z.compose(gi.auto, gj.auto)) != Z.normalize_auto(Z.compose(gj.auto, gi.auto)):
                out.append(f"omega {gi.label}, {gj.label}: automorphisms do not commute")
            if any(gi.perm[gj.perm[s]] != gj.perm[gi.perm[s]] for s in range(n)):
                out.append(f"omega {gi.label}, {gj.label}: permutations do not commute")
            for s in range(n):
                u1, s1 = data.conj_letter(j, 1, Z.zero, s)
                u1, s1 = data.conj_letter(i, 1, u1, s1)
                u2, s2 = data.conj_letter(i, 1, Z.zero, s)
                u2, s2 = data.conj_letter(j, 1, u2, s2)
                u2 = Z.add(u2, Z.sub(cij, data.conj_s(s2, cij)))
                if (u1, s1) != (u2, s2):
                    out.append(f"omega {gi.label}, {gj.label}: corrections inconsistent with the commutator at {data.s_aff[s]}")
    out += _group_law_violations(data)
    return out


def _group_law_violations(data: GenericHeckeData) -> list[str]:
    """Associativity of the normal-form product on short words (consistency of the Omega(1) presentation)."""
    Z = data.z
    r = data.n_omega
    if r == 0:
        return []
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            gj = data.omega[j]
            if gj.order:
                # conjugating w_j^d by w_i must give w_i(z_j) w_i^-1
                lhs = data.o_identity()
                conj = data.o_mul(data.o_mul(data.o_word(_unit(r, i)), data.o_word(_unit(r, j))), data.o_word(_unit(r, i, -1)))
                lhs = data.o_pow(conj, gj.order)
                rhs = data.o_z(data.auto_letter(i, 1, gj.power))
                if lhs != rhs:
                    return [f"omega {data.omega[i].label}, {gj.label}: commutator incompatible with {gj.label}^{gj.order} = {gj.power}"]
    letters = []
    for j, g in enumerate(data.omega):
        letters.append(data.o_word(_unit(r, j)))
        letters.append(data.o_word(_unit(r, j, -1)))
        if g.order > 2:
            letters.append(data.o_word(_unit(r, j, g.order - 1)))
    letters += [data.o_z(Z.unit(i)) for i in range(Z.ngens)]
    for x in letters:
        for y in letters:
            xy = data.o_mul(x, y)
            for w in letters:
                if data.o_mul(xy, w) != data.o_mul(x, data.o_mul(y, w)):
                    return [f"omega group law: product is not associative on {x}, {y}, {w}"]
    return []


def _unit(r: int, j: int, x: int = 1) -> tuple[int, ...]:
    return tuple(x if i == j else 0 for i in range(r))


def _exponent(orders) -> int:
    from math import lcm

    return lcm(*orders) if orders else 1


def _alternating_auto(data, s, t, m):
    Z = data.z
    A = Z.identity_auto()
    cur = [s, t]
    for k in range(m):
        A = Z.compose(A, data.lift_conj[cur[k % 2]])
    return Z.normalize_auto(A)


def check(data: GenericHeckeData) -> GenericHeckeData:
    bad = validate(data)
    if bad:
        raise ParameterError("invalid Hecke data: " + "; ".join(bad))
    return data


# -- builders and transformations ---------------------------------------------------


def build_gl_n(n: int, q: int) -> GenericHeckeData:
    """Data attached to GL_n over a local field with residue field of size q."""
    if n < 2:
        raise ParameterError("n must be at least 2")
    pp = prime_power(q)
    if pp is None:
        raise ParameterError(f"q={q} is not a prime power")
    p, _ = pp
    m = q - 1
    Z = ZKappa((m,) * n, tuple(f"t{i}" for i in range(n))) if m > 1 else ZKappa(())
    s_aff = tuple(f"s{i}" for i in range(n))
    if n == 2:
        cox = ((1, 0), (0, 1))
    else:
        cox = tuple(
            tuple(1 if i == j else (3 if (i - j) % n in (1, n - 1) else 2) for j in range(n)) for i in range(n)
        )
    lift_conj = []
    c_param = []
    for i in range(n):
        a, b = (i - 1) % n, i
        if m > 1:
            P = [[int(r == c) for c in range(n)] for r in range(n)]
            P[a][a] = P[b][b] = 0
            P[a][b] = P[b][a] = 1
            lift_conj.append(tuple(map(tuple, P)))
            c = {}
            for x in range(m):
                v = [0] * n
                v[a] = x
                v[b] = (-x) % m
                c[tuple(v)] = 1
            c_param.append(c)
        else:
            lift_conj.append(())
            c_param.append({(): 1})
    if m > 1:
        shift = tuple(tuple(int(r == (c + 1) % n) for c in range(n)) for r in range(n))
    else:
        shift = ()
    w = OmegaGen(
        label="w",
        order=0,
        power=Z.zero,
        auto=shift,
        perm=tuple((i + 1) % n for i in range(n)),
        corrections=tuple(Z.zero for _ in range(n)),
    )
    data = GenericHeckeData(s_aff, cox, Z, tuple(lift_conj), tuple(c_param), (w,), {}, make_field(p, m))
    return check(data)


def replace(data: GenericHeckeData, **kw) -> GenericHeckeData:
    base = dict(
        s_aff=data.s_aff,
        coxeter=data.coxeter,
        z=data.z,
        lift_conj=data.lift_conj,
        c_param=data.c_param,
        omega=data.omega,
        commutators=data.commutators,
        field=data.field,
    )
    base.update(kw)
    return GenericHeckeData(**base)


def lift_prefix(data: GenericHeckeData, word: Sequence[int], shifts) -> Elem:
    """Z_kappa part of the product of shifted lifts (t_s s~) along ``word``."""
    Z = data.z
    u = Z.zero
    A = Z.identity_auto()
    for s in word:
        u = Z.add(u, Z.apply(A, shifts[s]))
        A = Z.compose(A, data.lift_conj[s])
    return u


def relift(data: GenericHeckeData, shifts) -> GenericHeckeData:
    """Replace every chosen lift s~ by shifts[s] * s~ and update c and the corrections."""
    Z = data.z
    shifts = [Z.reduce(shifts[s]) for s in range(data.n_s)]
    for s in range(data.n_s):
        for t in range(s + 1, data.n_s):
            m = data.coxeter[s][t]
            if m:
                w1 = [s if k % 2 == 0 else t for k in range(m)]
                w2 = [t if k % 2 == 0 else s for k in range(m)]
                if lift_prefix(data, w1, shifts) != lift_prefix(data, w2, shifts):
                    raise ParameterError(
                        f"shifted lifts of {data.s_aff[s]}, {data.s_aff[t]} no longer satisfy the braid relation exactly"
                    )
    c_new = []
    for s in range(data.n_s):
        c_new.append({Z.add(z, shifts[s]): v for z, v in data.c_param[s].items()})
    omega = []
    for g in data.omega:
        corr = tuple(
            Z.sub(Z.add(Z.apply(g.auto, shifts[s]), g.corrections[s]), shifts[g.perm[s]]) for s in range(data.n_s)
        )
        omega.append(OmegaGen(g.label, g.order, g.power, g.auto, g.perm, corr))
    return check(replace(data, c_param=tuple(c_new), omega=tuple(omega)))


def conjugation_shifts(data: GenericHeckeData, z) -> list:
    """Shifts realizing s~ -> z s~ z^-1; these always keep the braid relations exact."""
    return [data.z.sub(z, data.conj_s(s, z)) for s in range(data.n_s)]


def enlarge_field(data: GenericHeckeData, r: int):
    """The same data over F_{p^{k r}}; returns (new data, code embedding table)."""
    F = data.field
    if r < 1:
        raise ParameterError("degree must be positive")
    if r == 1:
        return data, list(range(F.order))
    big = FiniteField(F.p, F.k * r, find_irreducible(F.p, F.k * r))
    table = embedding(F, big)
    c_new = tuple({z: table[v] for z, v in c.items()} for c in data.c_param)
    return replace(data, c_param=c_new, field=big), table


def quotient_data(data: GenericHeckeData, s_keep, K_gens) -> GenericHeckeData:
    """Keep the reflections in s_keep and pass to Z_kappa / K."""
    keep = sorted({data.s_index(s) for s in s_keep})
    drop = [s for s in range(data.n_s) if s not in keep]
    for s in keep:
        for t in drop:
            if data.coxeter[s][t] != 2:
                raise ParameterError(
                    f"reflections {data.s_aff[s]} and {data.s_aff[t]} are not orthogonal across the split"
                )
    for g in data.omega:
        if any(g.perm[s] not in keep for s in keep):
            raise ParameterError(f"omega {g.label} does not preserve the kept reflections")
    Z = data.z
    K_gens = [Z.reduce(k) for k in K_gens]
    L = Z.subgroup_lattice(K_gens)
    autos = [data.lift_conj[s] for s in keep] + [g.auto for g in data.omega]
    for A in autos:
        for k in K_gens:
            if not Z.contains(L, Z.apply(A, k)):
                raise ParameterError(f"subgroup is not stable under the stored automorphisms (image of {k})")
    nz = Z.ngens
    if nz:
        U, S, V = zl.smith_normal_form(L)
        Vinv = zl.int_inverse(V)
        diag = [S[i][i] for i in range(nz)]
    else:
        V, Vinv, diag = [], [], []
    kept_idx = [i for i in range(nz) if diag[i] != 1]
    Znew = ZKappa(tuple(diag[i] for i in kept_idx), tuple(f"u{i}" for i in range(len(kept_idx))))

    def phi(z):
        row = [sum(z[a] * V[a][i] for a in range(nz)) for i in range(nz)]
        return Znew.reduce([row[i] for i in kept_idx])

    pre = [Vinv[i] for i in kept_idx]

    def push_auto(A):
        cols = [phi(Z.apply(A, Z.reduce(v))) for v in pre]
        k = len(kept_idx)
        return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))

    index = {s: i for i, s in enumerate(keep)}
    c_new = []
    for s in keep:
        c = {}
        for z, v in data.c_param[s].items():
            key = phi(z)
            c[key] = data.field.add(c.get(key, 0), v)
        c_new.append({z: v for z, v in c.items() if v})
    omega = []
    for g in data.omega:
        omega.append(
            OmegaGen(
                g.label,
                g.order,
                phi(g.power),
                push_auto(g.auto),
                tuple(index[g.perm[s]] for s in keep),
                tuple(phi(g.corrections[s]) for s in keep),
            )
        )
    comms = {key: phi(v) for key, v in data.commutators.items() if any(phi(v))}
    new = GenericHeckeData(
        tuple(data.s_aff[s] for s in keep),
        tuple(tuple(data.coxeter[s][t] for t in keep) for s in keep),
        Znew,
        tuple(push_auto(data.lift_conj[s]) for s in keep),
        tuple(c_new),
        tuple(omega),
        comms,
        data.field,
    )
    return check(new)


def product_data(d1: GenericHeckeData, d2: GenericHeckeData) -> GenericHeckeData:
    """Data of the tensor product of two algebras (orthogonal blocks)."""
    if d1.field.p != d2.field.p:
        raise ParameterError("blocks must share the characteristic")
    from math import lcm

    Z = ZKappa(d1.z.orders + d2.z.orders, tuple("a" + l for l in d1.z.labels) + tuple("b" + l for l in d2.z.labels))
    n1, n2 = d1.z.ngens, d2.z.ngens

    def blk(A, B):
        n = n1 + n2
        M = [[0] * n for _ in range(n)]
        for i in range(n1):
            for j in range(n1):
                M[i][j] = A[i][j]
        for i in range(n2):
            for j in range(n2):
                M[n1 + i][n1 + j] = B[i][j]
        return tuple(map(tuple, M))

    I1, I2 = d1.z.identity_auto(), d2.z.identity_auto()
    s_aff = tuple("a" + s for s in d1.s_aff) + tuple("b" + s for s in d2.s_aff)
    N1, N2 = d1.n_s, d2.n_s
    cox = []
    for i in range(N1 + N2):
        row = []
        for j in range(N1 + N2):
            if i < N1 and j < N1:
                row.append(d1.coxeter[i][j])
            elif i >= N1 and j >= N1:
                row.append(d2.coxeter[i - N1][j - N1])
            else:
                row.append(2)
        cox.append(tuple(row))
    F = make_field(d1.field.p, lcm(d1.field.order - 1, d2.field.order - 1))
    t1 = embedding(d1.field, F)
    t2 = embedding(d2.field, F)
    lift = [blk(A, I2) for A in d1.lift_conj] + [blk(I1, B) for B in d2.lift_conj]
    c_param = [{z + d2.z.zero: t1[v] for z, v in c.items()} for c in d1.c_param]
    c_param += [{d1.z.zero + z: t2[v] for z, v in c.items()} for c in d2.c_param]
    omega = []
    for g in d1.omega:
        omega.append(
            OmegaGen(
                "a" + g.label, g.order, g.power + d2.z.zero, blk(g.auto, I2),
                tuple(g.perm) + tuple(range(N1, N1 + N2)),
                tuple(c + d2.z.zero for c in g.corrections) + (Z.zero,) * N2,
            )
        )
    for g in d2.omega:
        omega.append(
            OmegaGen(
                "b" + g.label, g.order, d1.z.zero + g.power, blk(I1, g.auto),
                tuple(range(N1)) + tuple(N1 + x for x in g.perm),
                (Z.zero,) * N1 + tuple(d1.z.zero + c for c in g.corrections),
            )
        )
    r1 = d1.n_omega
    comms = {k: v + d2.z.zero for k, v in d1.commutators.items()}
    comms.update({(i + r1, j + r1): d1.z.zero + v for (i, j), v in d2.commutators.items()})
    return check(GenericHeckeData(s_aff, tuple(cox), Z, tuple(lift), tuple(c_param), tuple(omega), comms, F))
