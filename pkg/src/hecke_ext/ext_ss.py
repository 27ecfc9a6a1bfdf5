"""Ext^1 and Hom between simple supersingular modules pi_{chi,J,V}.

Modules are right modules and matrices act on row vectors, so that
M(XY) = M(X) M(Y). A descriptor gives V on the generator words of the
stabilizer Omega_Xi published by :func:`characters.stabilizer_xi`; Z_kappa
acts on V through chi.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import fmatrix as fm
from . import zlinalg as zl
from .characters import (
    AffineCharacter,
    ZkCharacter,
    act_omega,
    is_supersingular,
    make_xi,
    stabilizer_xi,
    supersingular_xis,
    xi_value,
)
from .errors import InconsistencyError, ParameterError
from .ext_aff import dim_ext1_aff
from .hecke_data import GenericHeckeData


@dataclass(frozen=True)
class SupersingularModuleDescriptor:
    chi: ZkCharacter
    j_set: frozenset
    v_dim: int
    v_mats: tuple  # one matrix per stabilizer generator word, as tuples of rows

    @property
    def xi(self) -> AffineCharacter:
        return AffineCharacter(self.chi, self.j_set)


@dataclass
class CosetTerm:
    word: tuple
    h1_term: int
    inv_ext_term: int


@dataclass
class ExtSsBreakdown:
    terms: list
    total: int

    def to_json(self, data=None) -> dict:
        def word(w):
            return data.omega_group().word(w) if data is not None else list(w)

        return {
            "total": self.total,
            "terms": [{"coset": word(t.word), "h1": t.h1_term, "inv_ext": t.inv_ext_term} for t in self.terms],
        }


# -- the stabilizer of Xi as a subgroup of Omega(1) ---------------------------------


class XiContext:
    """Omega(1)_Xi: generator elements and decomposition of its elements."""

    def __init__(self, data: GenericHeckeData, xi: AffineCharacter):
        self.data = data
        self.xi = xi
        self.stab = stabilizer_xi(data, xi)
        self.gen_elems = [data.o_word(w) for w in self.stab.gen_words]
        self._memo: dict = {}

    def decompose(self, h):
        """(z, a) with h = z * prod_k gen_k^{a_k}."""
        if h in self._memo:
            return self._memo[h]
        data = self.data
        if not self.stab.contains(h[1]):
            raise ParameterError(f"element {h} is not in the stabilizer of Xi")
        a = self.stab.decompose(h[1])
        P = data.o_identity()
        for g, ak in zip(self.gen_elems, a):
            P = data.o_mul(P, data.o_pow(g, ak))
        r = data.o_mul(h, data.o_inv(P))
        if any(r[1]):
            raise InconsistencyError("stabilizer decomposition left an Omega part")
        self._memo[h] = (r[0], a)
        return self._memo[h]


def xi_context(data: GenericHeckeData, xi: AffineCharacter) -> XiContext:
    key = ("xictx", xi.key)
    if key not in data._cache:
        data._cache[key] = XiContext(data, xi)
    return data._cache[key]


@dataclass
class Rep:
    """A representation of Omega(1)_Xi given by an evaluation function."""

    xi: AffineCharacter
    dim: int
    ev: Callable


def descriptor_rep(data: GenericHeckeData, m: SupersingularModuleDescriptor) -> Rep:
    ctx = xi_context(data, m.xi)
    F = data.field
    mats = [list(map(list, M)) for M in m.v_mats]
    invs = {}
    memo = {}

    def power(k, a):
        if a >= 0:
            return fm.mat_pow(F, mats[k], a)
        if k not in invs:
            invs[k] = fm.mat_inv(F, mats[k])
        return fm.mat_pow(F, invs[k], -a)

    def ev(h):
        if h in memo:
            return memo[h]
        z, a = ctx.decompose(h)
        out = fm.scalar(F, m.chi(data, z), m.v_dim)
        for k, ak in enumerate(a):
            if ak:
                out = fm.mat_mul(F, out, power(k, ak))
        memo[h] = out
        return out

    return Rep(m.xi, m.v_dim, ev)


def twisted_rep(data: GenericHeckeData, rep: Rep, g) -> Rep:
    """h -> rep(g h g^-1) on Omega(1)_{Xi g}."""
    ginv = data.o_inv(g)
    return Rep(act_omega(data, g, rep.xi), rep.dim, lambda h: rep.ev(data.o_mul(data.o_mul(g, h), ginv)))


# -- descriptors ---------------------------------------------------------------------


def descriptor_violations(data: GenericHeckeData, m: SupersingularModuleDescriptor) -> list[str]:
    from .characters import character_violations, s_aff_chi

    out = character_violations(data, m.chi)
    if out:
        return out
    if not m.j_set <= s_aff_chi(data, m.chi):
        return ["J is not contained in S_aff,chi"]
    if not is_supersingular(data, m.chi, m.j_set):
        out.append("(chi, J) is not supersingular")
    ctx = xi_context(data, m.xi)
    ngen = len(ctx.gen_elems)
    if len(m.v_mats) != ngen:
        return out + [f"V needs {ngen} matrices (one per stabilizer generator), got {len(m.v_mats)}"]
    F = data.field
    d = m.v_dim
    if d < 1:
        return out + ["v_dim must be positive"]
    for k, M in enumerate(m.v_mats):
        if len(M) != d or any(len(r) != d for r in M):
            return out + [f"matrix {k} is not {d}x{d}"]
        if any(not 0 <= x < F.order for r in M for x in r):
            return out + [f"matrix {k} has invalid field codes"]
        if not fm.is_invertible(F, [list(r) for r in M]):
            out.append(f"matrix {k} is not invertible")
    if any("invertible" in o for o in out):
        return out
    mats = [[list(r) for r in M] for M in m.v_mats]
    for k, (o, g) in enumerate(zip(ctx.stab.group.orders, ctx.gen_elems)):
        if o:
            z = data.o_pow(g, o)
            target = fm.scalar(F, m.chi(data, z[0]), d)
            if any(z[1]) or not fm.mat_eq(fm.mat_pow(F, mats[k], o), target):
                out.append(f"torsion relation of stabilizer generator {k} (order {o}) fails")
    for i in range(ngen):
        for j in range(i + 1, ngen):
            gi, gj = ctx.gen_elems[i], ctx.gen_elems[j]
            c = data.o_mul(data.o_mul(gi, gj), data.o_inv(data.o_mul(gj, gi)))
            lhs = fm.mat_mul(F, mats[i], mats[j])
            rhs = fm.mat_scale(F, m.chi(data, c[0]), fm.mat_mul(F, mats[j], mats[i]))
            if not fm.mat_eq(lhs, rhs):
                out.append(f"commutator relation between stabilizer generators {i} and {j} fails")
    return out


def check_descriptor(data, m) -> SupersingularModuleDescriptor:
    bad = descriptor_violations(data, m)
    if bad:
        raise ParameterError("invalid supersingular descriptor: " + "; ".join(bad))
    return m


def one_dim_descriptors(data: GenericHeckeData, xi: AffineCharacter) -> list[SupersingularModuleDescriptor]:
    """All descriptors on xi with 1-dimensional V realized over the data's field."""
    F = data.field
    ctx = xi_context(data, xi)
    gens = ctx.gen_elems
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = data.o_mul(data.o_mul(gens[i], gens[j]), data.o_inv(data.o_mul(gens[j], gens[i])))
            if xi.chi(data, c[0]) != 1:
                return []
    choices = []
    units = list(range(1, F.order))
    for o, g in zip(ctx.stab.group.orders, gens):
        if o:
            target = xi.chi(data, data.o_pow(g, o)[0])
            choices.append([x for x in units if F.power(x, o) == target])
        else:
            choices.append(units)
    return [
        SupersingularModuleDescriptor(xi.chi, xi.j_set, 1, tuple(((v,),) for v in vals))
        for vals in itertools.product(*choices)
    ]


def all_one_dim_descriptors(data: GenericHeckeData) -> list[SupersingularModuleDescriptor]:
    out = []
    for xi in supersingular_xis(data):
        out += one_dim_descriptors(data, xi)
    return out


# -- the terms of the exact sequence -------------------------------------------------


def _hom_action(F, A, B):
    """Row-vector matrix of F -> A^-1 F B on a x b matrices (row-major)."""
    return fm.kron(F, fm.transpose(fm.mat_inv(F, A)), B)


def hom_dim_aff(data, xi: AffineCharacter, V: Rep, xi2: AffineCharacter, V2: Rep) -> int:
    return V.dim * V2.dim if xi.key == xi2.key else 0


def h1_term_dim(data: GenericHeckeData, rep1: Rep, rep2: Rep) -> int:
    if rep1.xi.key != rep2.xi.key:
        return 0
    F = data.field
    ctx = xi_context(data, rep1.xi)
    mats = [_hom_action(F, rep1.ev(g), rep2.ev(g)) for g in ctx.gen_elems]
    return zl.h1_abelian(ctx.stab.group, mats, F, rep1.dim * rep2.dim)


@dataclass
class _PairData:
    """Representation-independent structure for a pair (Xi, Xi')."""

    res: object
    gens: list  # Omega(1) generators of Omega(1)_{Xi,Xi'} (Omega part)
    orbit_reps: list = field(default_factory=list)  # (s, [(element, scalar)])


def _pair_data(data: GenericHeckeData, xi: AffineCharacter, xi2: AffineCharacter) -> _PairData:
    key = ("pair", xi.key, xi2.key)
    if key in data._cache:
        return data._cache[key]
    res = dim_ext1_aff(data, xi, xi2)
    pd = _PairData(res, [])
    if res.dim_ext1:
        st = stabilizer_xi(data, xi, xi2)
        pd.gens = [data.o_word(w) for w in st.gen_words]
        H = st.group
        if res.e1_basis:
            act = zl.FiniteActionHom(H, act=lambda s, k: data.o_perm(pd.gens[k], s))
            seen = set()
            for s in res.e1_basis:
                if s in seen:
                    continue
                sst = zl.stabilizer_and_cosets(H, act, s)
                seen.update(sst.orbit_words)
                elems = []
                for a in sst.gen_words:
                    g = data.o_identity()
                    for gk, ak in zip(pd.gens, a):
                        g = data.o_mul(g, data.o_pow(gk, ak))
                    u, s2 = data.o_conj_lift(g, s)
                    if s2 != s:
                        raise InconsistencyError("stabilizer element moves its reflection")
                    elems.append((g, xi.chi(data, u)))
                pd.orbit_reps.append((s, elems))
    data._cache[key] = pd
    return pd


def invariant_ext1_dim(data: GenericHeckeData, rep1: Rep, rep2: Rep) -> int:
    """dim (Ext^1_aff(Xi, Xi') (x) Hom(V, V'))^{Omega(1)_{Xi,Xi'}}."""
    F = data.field
    xi, xi2 = rep1.xi, rep2.xi
    pd = _pair_data(data, xi, xi2)
    res = pd.res
    if not res.dim_ext1:
        return 0
    n = rep1.dim * rep2.dim
    Z = data.z
    zmats = []
    for i in range(Z.ngens):
        t = Z.unit(i)
        sc = F.mul(F.inv(xi.chi(data, t)), xi2.chi(data, t))
        zmats.append(fm.scalar(F, sc, n))
    total = 0
    for s, elems in pd.orbit_reps:
        mats = [fm.mat_scale(F, c, _hom_action(F, rep1.ev(g), rep2.ev(g))) for g, c in elems]
        for i in range(Z.ngens):
            t = Z.unit(i)
            c = xi.chi(data, Z.sub(t, data.conj_s(s, t)))
            mats.append(fm.mat_scale(F, c, zmats[i]))
        total += zl.invariant_subspace_dim(mats, F, n)
    e2 = res.dim_e2 - res.dim_kernel
    if e2:
        mats = [_hom_action(F, rep1.ev(g), rep2.ev(g)) for g in pd.gens] + zmats
        total += e2 * zl.invariant_subspace_dim(mats, F, n)
    return total


def _coset_words(data, xi, xi2):
    return stabilizer_xi(data, xi, xi2).coset_words


def dim_ext1_supersingular(
    data: GenericHeckeData, m1: SupersingularModuleDescriptor, m2: SupersingularModuleDescriptor
) -> ExtSsBreakdown:
    for m in (m1, m2):
        if not is_supersingular(data, m.chi, m.j_set):
            raise ParameterError("descriptor is not supersingular")
    rep1 = descriptor_rep(data, m1)
    rep2 = descriptor_rep(data, m2)
    terms = []
    for w in _coset_words(data, m1.xi, m2.xi):
        g = data.o_word(w)
        r2 = twisted_rep(data, rep2, g)
        terms.append(CosetTerm(tuple(w), h1_term_dim(data, rep1, r2), invariant_ext1_dim(data, rep1, r2)))
    return ExtSsBreakdown(terms, sum(t.h1_term + t.inv_ext_term for t in terms))


def intertwiner_dim(data: GenericHeckeData, rep1: Rep, rep2: Rep) -> int:
    """dim Hom_{Omega(1)_Xi}(V, V') for reps on the same Xi."""
    F = data.field
    ctx = xi_context(data, rep1.xi)
    n = rep1.dim * rep2.dim
    mats = [_hom_action(F, rep1.ev(g), rep2.ev(g)) for g in ctx.gen_elems]
    return zl.invariant_subspace_dim(mats, F, n) if mats else n


def dim_hom_supersingular(
    data: GenericHeckeData, m1: SupersingularModuleDescriptor, m2: SupersingularModuleDescriptor
) -> int:
    """Dimension of Hom between the induced modules (0 or 1 for simple V, V')."""
    rep1 = descriptor_rep(data, m1)
    rep2 = descriptor_rep(data, m2)
    total = 0
    for w in _coset_words(data, m1.xi, m2.xi):
        g = data.o_word(w)
        r2 = twisted_rep(data, rep2, g)
        if r2.xi.key == rep1.xi.key:
            total += intertwiner_dim(data, rep1, r2)
    return total


# -- the induced module ----------------------------------------------------------------


def generator_names(data: GenericHeckeData, scope: str = "full") -> list[str]:
    names = [f"t:{l}" for l in data.z.labels] + [f"s:{s}" for s in data.s_aff]
    if scope == "full":
        names += [f"w:{g.label}" for g in data.omega]
    return names


def induce_matrices(data: GenericHeckeData, m: SupersingularModuleDescriptor) -> dict:
    """Generator matrices of pi_{chi,J,V} = (Xi (x) V) (x)_{H_Xi} H."""
    F = data.field
    rep = descriptor_rep(data, m)
    ctx = xi_context(data, m.xi)
    orbit = ctx.stab.orbit_words  # point -> coset word
    points = list(orbit)
    index = {pt: i for i, pt in enumerate(points)}
    elems = [data.o_word(orbit[pt]) for pt in points]
    d = m.v_dim
    N = d * len(points)
    Z = data.z
    out = {}

    def blockdiag(scalars):
        M = fm.zeros(N, N)
        for i, c in enumerate(scalars):
            for k in range(d):
                M[i * d + k][i * d + k] = c
        return M

    for gi, lab in enumerate(Z.labels):
        t = Z.unit(gi)
        out[f"t:{lab}"] = blockdiag([m.chi(data, data.o_auto(g, t)) for g in elems])
    for s, lab in enumerate(data.s_aff):
        scal = []
        for g in elems:
            u, s2 = data.o_conj_lift(g, s)
            scal.append(F.mul(m.chi(data, u), xi_value(data, m.xi, s2)))
        out[f"s:{lab}"] = blockdiag(scal)
    from .characters import _act_letter

    for j, og in enumerate(data.omega):
        M = fm.zeros(N, N)
        w = data.o_word(tuple(int(i == j) for i in range(data.n_omega)))
        for i, pt in enumerate(points):
            k = index[_act_letter(data, j, 1, pt)]
            h = data.o_mul(data.o_mul(elems[i], w), data.o_inv(elems[k]))
            B = rep.ev(h)
            for a in range(d):
                for b in range(d):
                    M[i * d + a][k * d + b] = B[a][b]
        out[f"w:{og.label}"] = M
    return out
