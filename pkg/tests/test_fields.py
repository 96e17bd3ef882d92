from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasihopf.fields import GF, QQ, GFElement, parse_field

P = 7
residues = st.integers(min_value=0, max_value=P - 1).map(lambda n: GF(P)(n))
rationals = st.fractions(max_denominator=50)


@pytest.mark.parametrize("elements", [residues, rationals], ids=["gf7", "rational"])
@given(data=st.data())
def test_field_axioms(elements, data):
    a, b, c = (data.draw(elements) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0 and a + 0 == a and a * 1 == a
    if a != 0:
        assert a * (1 / a) == 1


@given(st.integers(), st.integers(min_value=1, max_value=10**6))
def test_rational_maps_into_gf_as_ring_hom(n, d):
    F, q = GF(P), Fraction(n, d)
    if q.denominator % P == 0:
        with pytest.raises(ZeroDivisionError):
            F(q)
    else:
        assert F(q) * F(q.denominator) == F(q.numerator)


def test_gf_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GF(5)(3) / GF(5)(0)


def test_gf_elements_of_different_primes_do_not_mix():
    with pytest.raises(ValueError):
        GF(5)(GF(7)(1))


def test_prime_field_rejects_composite_and_large():
    for bad in (1, 4, 91, 2**31 + 11):
        with pytest.raises(ValueError):
            GF(bad)


def test_rational_refuses_gf_element():
    with pytest.raises(TypeError):
        QQ(GFElement(1, 7))


@pytest.mark.parametrize("spec, expected", [("rational", QQ), ("gf:7", GF(7)), (" GF:13 ", GF(13))])
def test_parse_field(spec, expected):
    assert parse_field(spec) == expected


def test_parse_field_env_default(monkeypatch):
    monkeypatch.setenv("QUASIHOPF_FIELD", "gf:11")
    assert parse_field(None) == GF(11)
    monkeypatch.delenv("QUASIHOPF_FIELD")
    assert parse_field(None) == QQ


@pytest.mark.parametrize("spec", ["real", "gf:x", "gf:8"])
def test_parse_field_rejects(spec):
    with pytest.raises(ValueError):
        parse_field(spec)


@given(rationals)
def test_rational_serialization_roundtrip(x):
    assert QQ.deserialize(QQ.serialize(x)) == x


@given(st.integers())
def test_gf_serialization_is_canonical_residue(n):
    F = GF(P)
    (r,) = F.serialize(F(n))
    assert 0 <= r < P and F.deserialize([r]) == F(n)


def test_deserialize_rejects_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        QQ.deserialize([1, 0])
