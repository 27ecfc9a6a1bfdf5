import random

import pytest

from conftest import gl, toy_one_reflection
from hecke_ext import fmatrix as fm
from hecke_ext.characters import ZkCharacter, make_xi
from hecke_ext.errors import ParameterError
from hecke_ext.ext_ss import all_one_dim_descriptors
from hecke_ext.oracle import (
    MatrixModule,
    brute_force_ext1,
    build_relations,
    character_module,
    check_module,
    conjugate_module,
    direct_sum,
    induced_module,
    module_violations,
)


def test_relation_counts():
    r = build_relations(gl(2, 3))
    assert len(r.by_category("quadratic")) == 2
    assert r.by_category("braid") == []
    r3 = build_relations(gl(3, 2))
    braids = r3.by_category("braid")
    assert len(braids) == 3
    assert all(len(w) == 3 for b in braids for _, w in b.terms)
    toy = build_relations(toy_one_reflection(), "aff_only")
    assert len(toy.by_category("quadratic")) == 1
    assert toy.by_category("mixing") == []
    assert not any(g.startswith("w:") for g in toy.generators)


def test_unknown_scope():
    with pytest.raises(ParameterError):
        build_relations(gl(2, 3), "partial")


def test_zero_dim_module():
    d = gl(2, 3)
    names = build_relations(d).generators
    Z = MatrixModule(0, {g: [] for g in names})
    assert check_module(d, Z)
    M = induced_module(d, all_one_dim_descriptors(d)[0])
    assert brute_force_ext1(d, Z, M) == 0
    assert brute_force_ext1(d, M, Z) == 0


def test_perturbed_module_fails():
    d = gl(2, 3)
    M = induced_module(d, all_one_dim_descriptors(d)[0])
    mats = {k: [list(r) for r in v] for k, v in M.mats.items()}
    mats["s:s0"][0][0] = d.field.add(mats["s:s0"][0][0], 1)
    bad = MatrixModule(M.dim, mats)
    assert not check_module(d, bad)
    assert module_violations(d, bad)
    with pytest.raises(ParameterError):
        brute_force_ext1(d, bad, M)


def test_singular_omega_matrix_is_rejected():
    d = gl(2, 3)
    M = induced_module(d, all_one_dim_descriptors(d)[0])
    mats = dict(M.mats)
    mats["w:w"] = fm.zeros(M.dim, M.dim)
    assert not check_module(d, MatrixModule(M.dim, mats))


def test_json_round_trip():
    d = gl(2, 3)
    M = induced_module(d, all_one_dim_descriptors(d)[3])
    assert MatrixModule.from_json(M.to_json()) == M
    with pytest.raises(ParameterError):
        MatrixModule.from_json({"mats": {}})


def test_additivity():
    d = gl(2, 3)
    for m in all_one_dim_descriptors(d)[:4]:
        M = induced_module(d, m)
        one = brute_force_ext1(d, M, M)
        assert brute_force_ext1(d, M, direct_sum(M, M)) == 2 * one
        assert brute_force_ext1(d, direct_sum(M, M), M) == 2 * one


def test_character_module_aff_scope():
    d = gl(2, 3)
    xi = make_xi(d, ZkCharacter((1, 1)), ["s0"])
    M = character_module(d, xi)
    assert M.dim == 1 and check_module(d, M, "aff_only")
    assert brute_force_ext1(d, M, M, "aff_only") == 0


def random_invertible(F, n, rng):
    while True:
        P = [[rng.randrange(F.order) for _ in range(n)] for _ in range(n)]
        if fm.is_invertible(F, P):
            return P


def test_basis_conjugation_invariance():
    d = gl(2, 5)
    rng = random.Random(3)
    ms = all_one_dim_descriptors(d)
    for _ in range(6):
        a, b = rng.choice(ms), rng.choice(ms)
        A, B = induced_module(d, a), induced_module(d, b)
        want = brute_force_ext1(d, A, B)
        A2 = conjugate_module(d, A, random_invertible(d.field, A.dim, rng))
        B2 = conjugate_module(d, B, random_invertible(d.field, B.dim, rng))
        assert check_module(d, A2) and check_module(d, B2)
        assert brute_force_ext1(d, A2, B2) == want
