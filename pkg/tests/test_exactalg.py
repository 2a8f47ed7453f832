from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cellblocks.exactalg import (
    QQ, BadDenominator, NumberField, Poly, ReduciblePolynomial, ReductionMap,
    field_create, format_poly, parse_poly, reduce_fraction, sqrt2_field,
)

F = Fraction


def test_field_create_quadratic():
    K = field_create([-2, 0, 1])  # x^2 - 2
    s = K.gen
    assert s * s == K(2)
    assert (s + 1) * (s - 1) == K(1)


def test_field_create_degree_one_is_q():
    K = field_create([-1, 1])  # x - 1
    assert K.degree == 1
    assert K.gen == K(1)


def test_field_create_reducible_reports_factor():
    with pytest.raises(ReduciblePolynomial) as exc:
        field_create([-1, 0, 1])  # x^2 - 1
    factor = exc.value.factor
    # factor is monic linear with root +-1
    assert len(factor) == 2 and factor[0] in (F(1), F(-1))


def test_field_create_reducible_quartic():
    # (x^2 - 2)(x^2 - 3) has no rational root but splits into quadratics
    with pytest.raises(ReduciblePolynomial):
        field_create([6, 0, -5, 0, 1])


def test_irreducible_quartic_accepted():
    K = field_create([2, 0, 0, 0, 1])  # x^4 + 2, Eisenstein at 2
    assert K.degree == 4
    g = K.gen
    assert g ** 4 == K(-2)


def test_mixed_field_rejected():
    K1 = sqrt2_field()
    K2 = field_create([-3, 0, 1])
    with pytest.raises(Exception):
        K1.gen + K2.gen


def test_nf_inverse():
    K = sqrt2_field()
    s = K.gen
    x = s + 3
    assert x * x.inverse() == K(1)
    assert (K(1) / s) * s == K(1)


def test_poly_eval_examples():
    K = sqrt2_field()
    s = K.gen
    q = 2 * s  # 2^{3/2} = 2*sqrt(2)
    t4 = Poly.t(4)
    assert t4.eval(q) == K(64)
    # (1/sqrt 2) * t * (t^2 - 1) at 2^{3/2} -> 14
    f = Poly.const(K(1) / s) * Poly.t() * (Poly.t(2) - 1)
    assert f.eval(q) == K(14)
    # 1/2 (t+1) at 5 -> 3
    g = Poly({1: F(1, 2), 0: F(1, 2)})
    assert g.eval(F(5)) == F(3)


def test_poly_laurent_and_zero_degree():
    f = Poly({-2: F(1), 3: F(2)})
    assert f.degree == 3
    assert f.low_degree == -2
    assert Poly().degree is None
    assert f.eval(F(2)) == F(1, 4) + 16


def test_reduction_integer_cases():
    m = ReductionMap(QQ, 2)
    assert m.reduce(7).code == 1
    m3 = ReductionMap(QQ, 3)
    assert m3.reduce(F(1, 2)).code == 2
    with pytest.raises(BadDenominator):
        m3.reduce(F(1, 3))


def test_reduction_quadratic_field():
    K = sqrt2_field()
    # x^2 - 2 mod 7 = (x-3)(x-4): residue degree 1
    m = ReductionMap(K, 7)
    assert m.target.order == 7
    img = m.reduce(K.gen)
    assert m.target.mul_codes(img.code, img.code) == 2
    # x^2 - 2 is irreducible mod 3: residue degree 2
    m3 = ReductionMap(K, 3)
    assert m3.target.order == 9
    img3 = m3.reduce(K.gen)
    assert m3.target.mul_codes(img3.code, img3.code) == 2


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(1, 30), st.integers(1, 30))
@settings(max_examples=60, deadline=None)
def test_reduce_is_ring_hom(a, b, c, d):
    ell = 5
    if c % ell == 0 or d % ell == 0:
        return
    m = ReductionMap(QQ, ell)
    x, y = F(a, c), F(b, d)
    assert m.reduce(x + y) == m.reduce(x) + m.reduce(y)
    assert m.reduce(x * y) == m.reduce(x) * m.reduce(y)


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
@settings(max_examples=40, deadline=None)
def test_reduce_hom_on_quadratic_field(a0, a1, b0, b1):
    K = sqrt2_field()
    m = ReductionMap(K, 3)
    x, y = K([a0, a1]), K([b0, b1])
    assert m.reduce(x * y) == m.reduce(x) * m.reduce(y)
    assert m.reduce(x + y) == m.reduce(x) + m.reduce(y)


@st.composite
def rational_polys(draw):
    n_terms = draw(st.integers(0, 4))
    coeffs = {}
    for _ in range(n_terms):
        k = draw(st.integers(-3, 5))
        coeffs[k] = F(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
    return Poly(coeffs)


@given(rational_polys(), rational_polys(), rational_polys())
@settings(max_examples=50, deadline=None)
def test_poly_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f + Poly() == f
    assert f * Poly.const(1) == f


@given(rational_polys(), rational_polys(), st.integers(-4, 4), st.integers(1, 3))
@settings(max_examples=50, deadline=None)
def test_poly_eval_respects_ops(f, g, num, den):
    a = F(num, den)
    if a == 0 and (f.low_degree or 0) < 0 or a == 0 and (g.low_degree or 0) < 0:
        return
    assert (f + g).eval(a) == f.eval(a) + g.eval(a)
    assert (f * g).eval(a) == f.eval(a) * g.eval(a)


def test_poly_text_roundtrip_rational():
    f = Poly({2: F(3, 2), 0: F(-1), -1: F(1, 7)})
    assert parse_poly(format_poly(f)) == f
    assert parse_poly("0") == Poly()


def test_poly_text_roundtrip_field():
    K = sqrt2_field()
    f = Poly({3: K([F(1, 2), F(-1, 2)]), 0: K(1)})
    assert parse_poly(format_poly(f), K) == f
