"""Brute-force Ext^1 between finite-dimensional right H-modules.

A module is a set of generator matrices acting on row vectors. Relations are
linear combinations of generator words; a relation holds in a module when the
corresponding combination of matrix products vanishes. An extension of M1 by
M2 is E(g) = [[M1(g), D(g)], [0, M2(g)]], and every relation is linear in D.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import fmatrix as fm
from .errors import ParameterError
from .hecke_data import GenericHeckeData

CATEGORIES = ("quadratic", "braid", "mixing", "group", "conjugation")


@dataclass(frozen=True)
class Relation:
    category: str
    name: str
    terms: tuple  # (field code, word) pairs; the relation is sum code * T_word = 0


@dataclass
class RelationSet:
    generators: list
    relations: list

    def by_category(self, cat: str) -> list[Relation]:
        return [r for r in self.relations if r.category == cat]


@dataclass
class MatrixModule:
    dim: int
    mats: dict  # generator name -> square matrix

    def to_json(self) -> dict:
        return {"dim": self.dim, "mats": {k: [list(r) for r in v] for k, v in self.mats.items()}}

    @classmethod
    def from_json(cls, obj) -> "MatrixModule":
        try:
            return cls(int(obj["dim"]), {k: [list(map(int, r)) for r in v] for k, v in obj["mats"].items()})
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed module JSON: {exc}") from None


def z_word(data: GenericHeckeData, t) -> tuple:
    Z = data.z
    t = Z.reduce(t)
    out = []
    for lab, x in zip(Z.labels, t):
        out += [f"t:{lab}"] * x
    return tuple(out)


def build_relations(data: GenericHeckeData, scope: str = "full") -> RelationSet:
    if scope not in ("full", "aff_only"):
        raise ParameterError(f"unknown scope {scope!r}")
    key = ("relations", scope)
    if key in data._cache:
        return data._cache[key]
    F = data.field
    Z = data.z
    minus = F.neg(1)
    tg = [f"t:{l}" for l in Z.labels]
    sg = [f"s:{s}" for s in data.s_aff]
    wg = [f"w:{g.label}" for g in data.omega] if scope == "full" else []
    rels = []

    def eq(cat, name, lhs, rhs):
        rels.append(Relation(cat, name, ((1, tuple(lhs)), (minus, tuple(rhs)))))

    for s, sn in enumerate(sg):
        terms = [(1, (sn, sn))]
        for t, c in sorted(data.c_param[s].items()):
            terms.append((F.neg(c), z_word(data, t) + (sn,)))
        rels.append(Relation("quadratic", f"{sn}^2", tuple(terms)))
    for s in range(data.n_s):
        for t in range(s + 1, data.n_s):
            m = data.m(s, t)
            if m:
                w1 = [sg[s] if k % 2 == 0 else sg[t] for k in range(m)]
                w2 = [sg[t] if k % 2 == 0 else sg[s] for k in range(m)]
                eq("braid", f"{sg[s]},{sg[t]}", w1, w2)
    for i, (d, g) in enumerate(zip(Z.orders, tg)):
        eq("group", f"{g}^{d}", [g] * d, [])
        for j in range(i + 1, Z.ngens):
            eq("group", f"{g},{tg[j]}", [g, tg[j]], [tg[j], g])
    for s, sn in enumerate(sg):
        for i, g in enumerate(tg):
            eq("conjugation", f"{sn},{g}", [sn, g], z_word(data, data.conj_s(s, Z.unit(i))) + (sn,))
    for j, (og, wn) in enumerate(zip(data.omega, wg)):
        for s, sn in enumerate(sg):
            rhs = z_word(data, og.corrections[s]) + (sg[og.perm[s]], wn)
            eq("mixing", f"{wn},{sn}", [wn, sn], rhs)
        for i, g in enumerate(tg):
            eq("mixing", f"{wn},{g}", [wn, g], z_word(data, Z.apply(og.auto, Z.unit(i))) + (wn,))
        if og.order:
            eq("group", f"{wn}^{og.order}", [wn] * og.order, z_word(data, og.power))
        for k in range(j + 1, len(wg)):
            c = data.commutators.get((j, k), Z.zero)
            eq("group", f"{wn},{wg[k]}", [wn, wg[k]], z_word(data, c) + (wg[k], wn))
    out = RelationSet(tg + sg + wg, rels)
    data._cache[key] = out
    return out


def _word_product(F, mats, word, dim):
    out = fm.identity(dim)
    for x in word:
        out = fm.mat_mul(F, out, mats[x])
    return out


def _shape_check(data, M: MatrixModule, gens):
    missing = [g for g in gens if g not in M.mats]
    if missing:
        raise ParameterError(f"module lacks matrices for {', '.join(missing)}")
    for g in gens:
        A = M.mats[g]
        if len(A) != M.dim or any(len(r) != M.dim for r in A):
            raise ParameterError(f"matrix for {g} is not {M.dim}x{M.dim}")
        if any(not 0 <= x < data.field.order for r in A for x in r):
            raise ParameterError(f"matrix for {g} has entries outside the field")


def module_violations(data: GenericHeckeData, M: MatrixModule, scope: str = "full") -> list[str]:
    rs = build_relations(data, scope)
    _shape_check(data, M, rs.generators)
    if M.dim == 0:
        return []
    F = data.field
    out = []
    for r in rs.relations:
        acc = fm.zeros(M.dim, M.dim)
        for c, w in r.terms:
            acc = fm.mat_add(F, acc, fm.mat_scale(F, c, _word_product(F, M.mats, w, M.dim)))
        if any(any(row) for row in acc):
            out.append(f"{r.category} relation {r.name} fails")
    for g in rs.generators:
        if g.startswith("w:") and not fm.is_invertible(F, M.mats[g]):
            out.append(f"matrix for {g} is not invertible")
    return out


def check_module(data: GenericHeckeData, M: MatrixModule, scope: str = "full") -> bool:
    return not module_violations(data, M, scope)


def _linearize(F, word, M1, M2, d1, d2, gindex, nvars):
    """Rows (d1*d2 of them) giving the D-part of T_word in the extension."""
    n = d1 * d2
    rows = [[0] * nvars for _ in range(n)]
    k = len(word)
    suffix = [None] * (k + 1)
    suffix[k] = fm.identity(d2)
    for i in range(k - 1, -1, -1):
        suffix[i] = fm.mat_mul(F, M2[word[i]], suffix[i + 1])
    prefix = fm.identity(d1)
    for i, x in enumerate(word):
        block = fm.kron(F, prefix, fm.transpose(suffix[i + 1]))
        off = gindex[x] * n
        for r in range(n):
            row = rows[r]
            br = block[r]
            for c in range(n):
                if br[c]:
                    row[off + c] = F.add(row[off + c], br[c])
        prefix = fm.mat_mul(F, prefix, M1[x])
    return rows


def brute_force_ext1(data: GenericHeckeData, M1: MatrixModule, M2: MatrixModule, scope: str = "full") -> int:
    """dim Ext^1(M1, M2): extensions 0 -> M2 -> E -> M1 -> 0 modulo split ones."""
    for M in (M1, M2):
        bad = module_violations(data, M, scope)
        if bad:
            raise ParameterError("module fails the relations: " + "; ".join(bad))
    d1, d2 = M1.dim, M2.dim
    n = d1 * d2
    if n == 0:
        return 0
    F = data.field
    rs = build_relations(data, scope)
    gens = rs.generators
    gindex = {g: i for i, g in enumerate(gens)}
    nvars = n * len(gens)
    eqs = []
    for r in rs.relations:
        acc = [[0] * nvars for _ in range(n)]
        for c, w in r.terms:
            for a, row in zip(acc, _linearize(F, w, M1.mats, M2.mats, d1, d2, gindex, nvars)):
                for j, v in enumerate(row):
                    if v:
                        a[j] = F.add(a[j], F.mul(c, v))
        eqs += [a for a in acc if any(a)]
    dim_z = nvars - fm.rank(F, eqs)
    # coboundaries: K -> (M1(g) K - K M2(g))_g, as columns indexed by entries of K
    cols = []
    for p in range(d1):
        for q in range(d2):
            K = fm.zeros(d1, d2)
            K[p][q] = 1
            col = []
            for g in gens:
                B = fm.mat_sub(F, fm.mat_mul(F, M1.mats[g], K), fm.mat_mul(F, K, M2.mats[g]))
                col += [x for row in B for x in row]
            cols.append(col)
    return dim_z - fm.rank(F, cols)


def direct_sum(M: MatrixModule, N: MatrixModule) -> MatrixModule:
    d = M.dim + N.dim
    mats = {}
    for g in M.mats:
        A = fm.zeros(d, d)
        for i in range(M.dim):
            A[i][: M.dim] = list(M.mats[g][i])
        for i in range(N.dim):
            A[M.dim + i][M.dim :] = list(N.mats[g][i])
        mats[g] = A
    return MatrixModule(d, mats)


def conjugate_module(data: GenericHeckeData, M: MatrixModule, P) -> MatrixModule:
    """The isomorphic module g -> P^-1 M(g) P."""
    F = data.field
    Pi = fm.mat_inv(F, P)
    return MatrixModule(M.dim, {g: fm.mat_mul(F, fm.mat_mul(F, Pi, A), P) for g, A in M.mats.items()})


def character_module(data: GenericHeckeData, xi) -> MatrixModule:
    """A character Xi of the affine subalgebra as a 1-dimensional module (aff_only scope)."""
    from .characters import xi_value

    mats = {f"t:{l}": [[v]] for l, v in zip(data.z.labels, xi.chi.values)}
    for s, name in enumerate(data.s_aff):
        mats[f"s:{name}"] = [[xi_value(data, xi, s)]]
    return MatrixModule(1, mats)


def induced_module(data: GenericHeckeData, m) -> MatrixModule:
    from .ext_ss import induce_matrices

    mats = induce_matrices(data, m)
    return MatrixModule(len(next(iter(mats.values()))) if mats else 0, mats)
