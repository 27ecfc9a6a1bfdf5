import pytest
from hypothesis import given, strategies as st

from conftest import gl
from hecke_ext.characters import (
    AffineCharacter,
    ZkCharacter,
    act_omega,
    all_characters,
    all_xis,
    character_violations,
    is_supersingular,
    make_xi,
    s_aff_chi,
    stabilizer_xi,
    supersingular_xis,
    xi_value,
)
from hecke_ext.errors import ParameterError
from hecke_ext.hecke_data import conjugation_shifts, relift

TRIV = ZkCharacter((1, 1))
TS = ZkCharacter((1, 2))  # (triv, sgn) on (Z/2)^2 over F_3


def test_s_aff_chi_examples():
    d = gl(2, 3)
    assert s_aff_chi(d, TRIV) == {0, 1}
    assert s_aff_chi(d, TS) == frozenset()


def test_s_aff_chi_gl_n_rule():
    d = gl(3, 4)
    for chi in all_characters(d):
        v = chi.values
        expected = {i for i in range(3) if v[(i - 1) % 3] == v[i]}
        assert s_aff_chi(d, chi) == expected


def test_make_xi_examples():
    d = gl(2, 3)
    xi = make_xi(d, TRIV, ["s0"])
    assert xi_value(d, xi, 0) == 0
    assert xi_value(d, xi, 1) != 0
    xi2 = make_xi(d, TS, [])
    assert xi_value(d, xi2, 0) == xi_value(d, xi2, 1) == 0
    with pytest.raises(ParameterError):
        make_xi(d, TS, ["s0"])


def test_character_order_check():
    d = gl(2, 5)
    assert character_violations(d, ZkCharacter((2, 1))) == []  # 2 has order 4 in F_5
    assert character_violations(d, ZkCharacter((0, 1)))
    assert character_violations(d, ZkCharacter((1,)))


def test_is_supersingular_examples():
    d = gl(2, 3)
    assert is_supersingular(d, TRIV, [0])
    assert not is_supersingular(d, TRIV, [])
    assert is_supersingular(d, TS, [])


def test_act_omega_examples():
    d = gl(2, 3)
    xi = make_xi(d, TRIV, ["s0"])
    assert act_omega(d, (0,), xi) == xi
    assert act_omega(d, "w", xi).j_set == {1}
    d3 = gl(3, 4)
    chi = ZkCharacter((1, 2, 3))
    for i in range(4):
        twisted = act_omega(d3, (i,), AffineCharacter(chi, frozenset())).chi.values
        assert twisted == tuple(chi.values[(j + i) % 3] for j in range(3))


def test_stabilizer_examples():
    d = gl(2, 3)
    xi = make_xi(d, TRIV, ["s0"])
    st_ = stabilizer_xi(d, xi, xi)
    assert st_.gen_words == [(2,)] and sorted(st_.coset_words) == [(0,), (1,)]
    # a character fixed by omega: Omega_Xi = Omega, one coset
    fixed = make_xi(d, TRIV, [])
    st2 = stabilizer_xi(d, fixed, fixed)
    assert st2.gen_words == [(1,)] and st2.coset_words == [(0,)]
    # GL_n: an orbit of size n gives n representatives
    d4 = gl(4, 2)
    xi4 = make_xi(d4, ZkCharacter(()), ["s0"])
    assert sorted(stabilizer_xi(d4, xi4, xi4).coset_words) == [(k,) for k in range(4)]


def test_supersingular_counts():
    assert len(supersingular_xis(gl(2, 3))) == 6
    assert len(supersingular_xis(gl(2, 5))) == 20
    assert len(supersingular_xis(gl(3, 2))) == 6


def test_s_aff_chi_is_lift_independent():
    d = gl(3, 3)
    d2 = relift(d, conjugation_shifts(d, (1, 0, 1)))
    for chi in all_characters(d):
        assert s_aff_chi(d, chi) == s_aff_chi(d2, chi)


XIS = {(n, q): all_xis(gl(n, q)) for n, q in [(2, 3), (2, 5), (3, 3)]}


@given(st.sampled_from(sorted(XIS)), st.data())
def test_action_is_a_group_action(key, data):
    d = gl(*key)
    xi = data.draw(st.sampled_from(XIS[key]))
    k = data.draw(st.integers(-5, 5))
    m = data.draw(st.integers(-5, 5))
    assert act_omega(d, (-k,), act_omega(d, (k,), xi)) == xi
    assert act_omega(d, (k + m,), xi) == act_omega(d, (m,), act_omega(d, (k,), xi))


@given(st.sampled_from(sorted(XIS)), st.data())
def test_supersingularity_is_equivariant(key, data):
    d = gl(*key)
    xi = data.draw(st.sampled_from(XIS[key]))
    k = data.draw(st.integers(-4, 4))
    tw = act_omega(d, (k,), xi)
    assert is_supersingular(d, xi.chi, xi.j_set) == is_supersingular(d, tw.chi, tw.j_set)
    assert len(s_aff_chi(d, xi.chi)) == len(s_aff_chi(d, tw.chi))


@given(st.sampled_from(sorted(XIS)), st.data())
def test_stabilizer_words_fix_xi(key, data):
    d = gl(*key)
    xi = data.draw(st.sampled_from(XIS[key]))
    xi2 = data.draw(st.sampled_from(XIS[key]))
    st_ = stabilizer_xi(d, xi, xi2)
    for w in st_.gen_words:
        assert act_omega(d, w, xi) == xi and act_omega(d, w, xi2) == xi2
