"""Characters of Z_kappa, characters Xi_{J,chi} of the affine subalgebra and
the Omega-action on them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import zlinalg as zl
from .coxeter import is_finite_parabolic
from .errors import ParameterError
from .field import root_of_unity
from .hecke_data import GenericHeckeData


@dataclass(frozen=True)
class ZkCharacter:
    """Values (field codes) of a character on the generators of Z_kappa."""

    values: tuple[int, ...]

    def __call__(self, data: GenericHeckeData, z) -> int:
        F = data.field
        out = 1
        for v, x in zip(self.values, z):
            if x:
                out = F.mul(out, F.power(v, x))
        return out


@dataclass(frozen=True)
class AffineCharacter:
    chi: ZkCharacter
    j_set: frozenset

    @property
    def key(self):
        return (self.chi.values, self.j_set)


def character_violations(data: GenericHeckeData, chi: ZkCharacter) -> list[str]:
    F = data.field
    if len(chi.values) != data.z.ngens:
        return [f"character needs {data.z.ngens} values, got {len(chi.values)}"]
    out = []
    for v, d, lab in zip(chi.values, data.z.orders, data.z.labels):
        if not 0 < v < F.order or F.power(v, d) != 1:
            out.append(f"value at {lab} does not have order dividing {d}")
    return out


def check_character(data, chi) -> ZkCharacter:
    bad = character_violations(data, chi)
    if bad:
        raise ParameterError("; ".join(bad))
    return chi


def all_characters(data: GenericHeckeData) -> list[ZkCharacter]:
    F = data.field
    per_gen = []
    for d in data.z.orders:
        r = root_of_unity(F, d).code
        per_gen.append([F.power(r, k) for k in range(d)])
    return [ZkCharacter(tuple(v)) for v in itertools.product(*per_gen)]


def trivial_character(data: GenericHeckeData) -> ZkCharacter:
    return ZkCharacter((1,) * data.z.ngens)


def chi_of_c(data: GenericHeckeData, chi: ZkCharacter, s: int) -> int:
    """chi(c_s) = sum_t c_s(t) chi(t) for the chosen lift of s."""
    F = data.field
    acc = 0
    for z, v in data.c_param[s].items():
        acc = F.add(acc, F.mul(v, chi(data, z)))
    return acc


def s_aff_chi(data: GenericHeckeData, chi: ZkCharacter) -> frozenset:
    return frozenset(s for s in range(data.n_s) if chi_of_c(data, chi, s))


def make_xi(data: GenericHeckeData, chi: ZkCharacter, j_set) -> AffineCharacter:
    check_character(data, chi)
    J = frozenset(data.s_index(s) for s in j_set)
    bad = J - s_aff_chi(data, chi)
    if bad:
        names = ", ".join(data.s_aff[s] for s in sorted(bad))
        raise ParameterError(f"J must lie in S_aff,chi; offending reflections: {names}")
    return AffineCharacter(chi, J)


def xi_value(data: GenericHeckeData, xi: AffineCharacter, s: int) -> int:
    """Xi(T_s~) for the chosen lift."""
    if s in xi.j_set:
        return 0
    return chi_of_c(data, xi.chi, s)


def is_supersingular(data: GenericHeckeData, chi: ZkCharacter, j_set) -> bool:
    J = {data.s_index(s) for s in j_set}
    rest = set(s_aff_chi(data, chi)) - J
    return is_finite_parabolic(data.coxeter, J) and is_finite_parabolic(data.coxeter, rest)


def act_s(data: GenericHeckeData, chi: ZkCharacter, s: int) -> ZkCharacter:
    """The character s.chi : t -> chi(s~ t s~^-1)."""
    return ZkCharacter(tuple(chi(data, data.conj_s(s, data.z.unit(i))) for i in range(data.z.ngens)))


def _act_letter(data: GenericHeckeData, j: int, sign: int, key):
    values, J = key
    chi = ZkCharacter(values)
    Z = data.z
    new_vals = tuple(chi(data, data.auto_letter(j, sign, Z.unit(i))) for i in range(Z.ngens))
    table = data.omega[j].perm if sign > 0 else data._inv_perms()[j]
    new_J = frozenset(s for s in range(data.n_s) if table[s] in J)
    return (new_vals, new_J)


def _word_exponents(data: GenericHeckeData, word):
    if isinstance(word, str):
        return data.omega_group().parse_word(word)
    if isinstance(word, tuple) and len(word) == 2 and isinstance(word[1], tuple):
        return word[1]  # an Omega(1) element (z, e); z acts trivially
    return tuple(word)


def act_omega(data: GenericHeckeData, word, xi: AffineCharacter) -> AffineCharacter:
    """Xi^w : X -> Xi(T_w X T_w^-1); satisfies act(w1 w2) = act(w2, act(w1))."""
    e = _word_exponents(data, word)
    if len(e) != data.n_omega:
        raise ParameterError("word length does not match the Omega generators")
    key = xi.key
    for j, x in enumerate(e):
        sign = 1 if x > 0 else -1
        for _ in range(abs(x)):
            key = _act_letter(data, j, sign, key)
    return AffineCharacter(ZkCharacter(key[0]), key[1])


def stabilizer_xi(data: GenericHeckeData, xi: AffineCharacter, xi2: AffineCharacter | None = None) -> zl.Stabilizer:
    """Omega_Xi (or Omega_Xi cap Omega_Xi2) with generator words and coset words."""
    cache_key = ("stab", xi.key, None if xi2 is None else xi2.key)
    if cache_key in data._cache:
        return data._cache[cache_key]
    G = data.omega_group()
    act = zl.FiniteActionHom(G, act=lambda key, j: _act_letter(data, j, 1, key))
    st = zl.stabilizer_and_cosets(G, act, xi.key, None if xi2 is None else xi2.key)
    data._cache[cache_key] = st
    return st


def supersingular_xis(data: GenericHeckeData) -> list[AffineCharacter]:
    """All supersingular characters Xi_{J,chi} of the affine subalgebra."""
    out = []
    for chi in all_characters(data):
        S = sorted(s_aff_chi(data, chi))
        for r in range(len(S) + 1):
            for J in itertools.combinations(S, r):
                if is_supersingular(data, chi, J):
                    out.append(AffineCharacter(chi, frozenset(J)))
    return out


def all_xis(data: GenericHeckeData) -> list[AffineCharacter]:
    out = []
    for chi in all_characters(data):
        S = sorted(s_aff_chi(data, chi))
        for r in range(len(S) + 1):
            for J in itertools.combinations(S, r):
                out.append(AffineCharacter(chi, frozenset(J)))
    return out
