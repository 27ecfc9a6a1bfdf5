import random

import pytest
from hypothesis import given, strategies as st

from conftest import gl, toy_one_reflection
from hecke_ext.errors import ParameterError
from hecke_ext.field import make_field
from hecke_ext.hecke_data import (
    GenericHeckeData,
    OmegaGen,
    ZKappa,
    build_gl_n,
    check,
    conjugation_shifts,
    enlarge_field,
    lift_prefix,
    product_data,
    quotient_data,
    relift,
    replace,
    validate,
)


def commutator_toy():
    """No reflections, Z_kappa = Z/2 central, [a, b] = t: a Heisenberg-type Omega(1)."""
    Z = ZKappa((2,), ("t",))
    ident = ((1,),)
    a = OmegaGen("a", 0, (0,), ident, (), ())
    b = OmegaGen("b", 2, (1,), ident, (), ())
    return check(GenericHeckeData((), (), Z, (), (), (a, b), {(0, 1): (1,)}, make_field(3, 2)))


def test_build_gl2_q3():
    d = gl(2, 3)
    assert validate(d) == []
    assert d.z.orders == (2, 2)
    assert d.n_s == 2 and d.m(0, 1) == 0
    assert d.c_param[0] == {(0, 0): 1, (1, 1): 1}
    assert d.field.order == 3


def test_build_gl2_q2():
    d = gl(2, 2)
    assert d.z.ngens == 0
    assert d.c_param == ({(): 1}, {(): 1})


def test_build_gl3_q2():
    d = gl(3, 2)
    assert all(d.m(i, j) == 3 for i in range(3) for j in range(3) if i != j)
    w = d.omega[0]
    assert w.order == 0 and w.perm == (1, 2, 0)


def test_build_errors():
    with pytest.raises(ParameterError):
        build_gl_n(2, 6)
    with pytest.raises(ParameterError):
        build_gl_n(1, 3)


def test_all_gl_builds_validate():
    for n, q in [(2, 4), (2, 5), (2, 7), (2, 9), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2)]:
        assert validate(build_gl_n(n, q)) == []


def test_corrupted_c_coefficient_is_reported():
    d = gl(2, 3)
    c0 = dict(d.c_param[0])
    c0[(1, 1)] = 2
    bad = replace(d, c_param=(c0, d.c_param[1]))
    msgs = validate(bad)
    assert msgs
    assert any("s0" in m for m in msgs)
    assert any("t=" in m for m in msgs)


def test_asymmetric_coxeter_is_reported():
    d = gl(3, 2)
    cox = [list(r) for r in d.coxeter]
    cox[0][1] = 2
    msgs = validate(replace(d, coxeter=tuple(map(tuple, cox))))
    assert any("coxeter symmetry" in m for m in msgs)


def test_characteristic_dividing_z_order_is_reported():
    d = gl(2, 3)
    msgs = validate(replace(d, field=make_field(2, 1)))
    assert any("divisible by the characteristic" in m for m in msgs)


def test_inconsistent_omega_presentation_is_rejected():
    Z = ZKappa((2,), ("t",))
    ident = ((1,),)
    a = OmegaGen("a", 2, (1,), ident, (), ())
    b = OmegaGen("b", 3, (1,), ident, (), ())
    data = GenericHeckeData((), (), Z, (), (), (a, b), {(0, 1): (1,)}, make_field(3, 2))
    assert validate(data)


def test_quotient_identity():
    d = gl(3, 3)
    q = quotient_data(d, d.s_aff, [])
    assert q.s_aff == d.s_aff and q.z.orders == d.z.orders
    assert q.c_param == d.c_param
    assert [g.perm for g in q.omega] == [g.perm for g in d.omega]


def test_quotient_pgl2_shape():
    # divide GL2 q=3 by its centre, then drop both reflections: W'_aff trivial
    d = gl(2, 3)
    pgl = quotient_data(d, d.s_aff, [(1, 1)])
    assert pgl.z.orders == (2,)
    empty = quotient_data(pgl, [], [])
    assert empty.n_s == 0 and empty.n_omega == 1
    assert validate(empty) == []


def test_quotient_first_block_of_product():
    d = product_data(gl(2, 3), gl(2, 3))
    q = quotient_data(d, ["as0", "as1"], [])
    assert q.s_aff == ("as0", "as1")
    # c' lives on the first block's coordinates only
    for c in q.c_param:
        assert all(z[2:] == (0, 0) for z in c)


def test_quotient_errors():
    d = gl(3, 2)
    with pytest.raises(ParameterError):
        quotient_data(d, ["s0"], [])  # s0 and s1 do not commute
    with pytest.raises(ParameterError):
        quotient_data(gl(2, 3), gl(2, 3).s_aff, [(1, 0)])  # not stable under omega


def test_relift_conjugation_shifts_and_rejection():
    d = gl(3, 3)
    d2 = relift(d, conjugation_shifts(d, (1, 0, 0)))
    assert validate(d2) == []
    assert any(any(c) for g in d2.omega for c in g.corrections)
    with pytest.raises(ParameterError):
        relift(d, [(1, 0, 0), (0, 0, 0), (0, 0, 0)])


def test_lift_prefix_of_empty_word():
    d = gl(2, 3)
    assert lift_prefix(d, [], [(0, 0), (0, 0)]) == (0, 0)


def test_enlarge_field_keeps_validity():
    d, table = enlarge_field(gl(2, 3), 2)
    assert d.field.order == 9 and validate(d) == []
    assert table[1] == 1


def test_product_data_validates():
    d = product_data(gl(2, 3), gl(2, 9))
    assert validate(d) == []
    assert d.n_omega == 2 and d.n_s == 4


DATASETS = {
    "gl3q3": lambda: gl(3, 3),
    "gl2q5_relifted": lambda: relift(gl(2, 5), conjugation_shifts(gl(2, 5), (1, 3))),
    "commutator_toy": commutator_toy,
    "product": lambda: product_data(gl(2, 3), gl(3, 3)),
    "toy": toy_one_reflection,
}
_cache = {}


def dataset(name):
    if name not in _cache:
        _cache[name] = DATASETS[name]()
    return _cache[name]


@st.composite
def omega_elements(draw, data, k=3):
    out = []
    for _ in range(k):
        z = tuple(draw(st.integers(0, o - 1)) for o in data.z.orders)
        e = tuple(draw(st.integers(-3, 3)) for _ in data.omega)
        out.append(data.o_mul(data.o_z(z), data.o_word(e)))
    return out


@given(st.sampled_from(sorted(DATASETS)), st.data())
def test_omega1_group_law(name, draw):
    d = dataset(name)
    x, y, w = draw.draw(omega_elements(d))
    assert d.o_mul(d.o_mul(x, y), w) == d.o_mul(x, d.o_mul(y, w))
    assert d.o_mul(x, d.o_inv(x)) == d.o_identity()
    assert d.o_mul(d.o_inv(x), x) == d.o_identity()
    assert d.o_pow(x, 3) == d.o_mul(x, d.o_mul(x, x))
    assert d.o_pow(x, -2) == d.o_inv(d.o_mul(x, x))


@given(st.sampled_from(sorted(DATASETS)), st.data())
def test_conj_lift_is_multiplicative(name, draw):
    d = dataset(name)
    if not d.n_s:
        return
    x, y = draw.draw(omega_elements(d, 2))
    s = draw.draw(st.integers(0, d.n_s - 1))
    u, s1 = d.o_conj_lift(y, s)
    u2, s2 = d.o_conj_lift(x, s1)
    assert d.o_conj_lift(d.o_mul(x, y), s) == (d.z.add(d.o_auto(x, u), u2), s2)


def test_random_relifts_validate_or_are_rejected():
    rng = random.Random(7)
    d = gl(3, 3)
    ok = 0
    for _ in range(40):
        shifts = [tuple(rng.randrange(2) for _ in range(3)) for _ in range(3)]
        try:
            assert validate(relift(d, shifts)) == []
            ok += 1
        except ParameterError as exc:
            assert "braid relation" in str(exc)
    assert ok >= 1
