import pytest
from hypothesis import given, strategies as st

from hecke_ext.errors import ParameterError
from hecke_ext.field import (
    FiniteField,
    embedding,
    find_irreducible,
    is_irreducible,
    make_field,
    minimal_degree,
    root_of_unity,
)

FIELDS = [make_field(2, 7), make_field(3, 8), make_field(5, 24), make_field(7, 1), make_field(2, 15)]


def test_make_field_examples():
    assert make_field(3, 2).k == 1
    assert make_field(2, 1).k == 1
    F = make_field(3, 8)
    assert F.k == 2 and F.order == 9
    # minimal k: 8 does not divide 3 - 1
    assert minimal_degree(3, 8) == 2


def test_make_field_errors():
    with pytest.raises(ParameterError):
        make_field(4, 3)
    with pytest.raises(ParameterError):
        make_field(3, 6)


def test_make_field_is_deterministic():
    assert make_field(5, 24).min_poly == make_field(5, 24).min_poly


def test_seed_changes_search_but_stays_irreducible(monkeypatch):
    for seed in (1, 2, 99):
        poly = find_irreducible(3, 4, seed)
        assert is_irreducible(poly, 3)
    monkeypatch.setenv("HECKE_SEED", "5")
    F = make_field(2, 15)
    assert is_irreducible(F.min_poly, 2)


def test_root_of_unity_examples():
    F3 = make_field(3, 2)
    assert root_of_unity(F3, 2).code == F3.from_int(2)
    assert root_of_unity(F3, 1).code == 1
    F9 = make_field(3, 8)
    assert root_of_unity(F9, 8).code == F9.generator
    with pytest.raises(ParameterError):
        root_of_unity(F9, 5)


def test_generator_is_primitive():
    for F in FIELDS:
        assert F.mult_order(F.generator) == F.order - 1


def test_field_json_round_trip():
    F = make_field(3, 8)
    G = FiniteField.from_json(F.to_json())
    assert G.same_as(F)
    with pytest.raises(ParameterError):
        FiniteField.from_json({"p": 3})


def test_element_operators():
    F = make_field(5, 24)
    a, b = F.element(F.generator), F.element(3)
    assert (a * b) / b == a
    assert a - a == F.element(0)
    assert a ** (F.order - 1) == F.element(1)
    assert -a + a == F.element(0)


def test_embedding_is_a_ring_map():
    small, big = make_field(3, 8), FiniteField(3, 4, find_irreducible(3, 4))
    table = embedding(small, big)
    for x in range(small.order):
        for y in range(small.order):
            assert table[small.add(x, y)] == big.add(table[x], table[y])
            assert table[small.mul(x, y)] == big.mul(table[x], table[y])


@st.composite
def field_and_elems(draw, n=3):
    F = draw(st.sampled_from(FIELDS))
    return F, [draw(st.integers(0, F.order - 1)) for _ in range(n)]


@given(field_and_elems())
def test_field_axioms(fe):
    F, (a, b, c) = fe
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(field_and_elems(2))
def test_frobenius_is_additive(fe):
    F, (a, b) = fe
    p = F.p
    assert F.power(F.add(a, b), p) == F.add(F.power(a, p), F.power(b, p))


@given(st.sampled_from(FIELDS), st.integers(1, 60))
def test_root_of_unity_has_exact_order(F, m):
    if (F.order - 1) % m:
        return
    r = root_of_unity(F, m).code
    assert F.power(r, m) == 1
    assert all(F.power(r, k) != 1 for k in range(1, m))
