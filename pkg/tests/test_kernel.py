from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from udeform.kernel import (
    Monomial,
    Polynomial,
    QQ,
    TruncSeries,
    series_bilinear,
)


def S(values, order):
    return TruncSeries.scalar(values, order=order)


class TestSeriesMul:
    def test_one_plus_t_times_one_minus_t(self):
        assert S([1, 1], 2) * S([1, -1], 2) == S([1, 0, -1], 2)

    def test_unit(self):
        a = S([1, 1], 2)
        assert a * S([1], 2) == a

    def test_hand_expanded_square(self):
        # (t + t^2)^2 = t^2 + 2t^3 + t^4, truncated at order 3
        x = S([0, 1, 1], 3)
        assert x * x == S([0, 0, 1, 2], 3)

    def test_order_mismatch_rejected(self):
        with pytest.raises(ValueError):
            S([1], 2) * S([1], 3)


class TestExpLogInv:
    def test_exp_t(self):
        assert S([0, 1], 2).exp() == S([1, 1, QQ(1, 2)], 2)

    def test_exp_zero(self):
        assert S([0], 5).exp() == S([1], 5)

    def test_exp_t_plus_t2(self):
        assert S([0, 1, 1], 2).exp() == S([1, 1, QQ(3, 2)], 2)

    def test_exp_needs_zero_constant(self):
        with pytest.raises(ValueError):
            S([1, 1], 2).exp()

    def test_log_one_plus_t(self):
        assert S([1, 1], 3).log() == S([0, 1, QQ(-1, 2), QQ(1, 3)], 3)

    def test_log_one(self):
        assert S([1], 4).log() == S([0], 4)

    def test_log_exp_roundtrip(self):
        x = S([0, 1, 2], 4)
        assert x.exp().log() == x

    def test_log_needs_unit_constant(self):
        with pytest.raises(ValueError):
            S([2, 1], 2).log()

    def test_inv_one_plus_t(self):
        assert S([1, 1], 2).inverse() == S([1, -1, 1], 2)

    def test_inv_one(self):
        assert S([1], 3).inverse() == S([1], 3)

    def test_inv_geometric(self):
        assert S([1, QQ(-1, 2)], 2).inverse() == S([1, QQ(1, 2), QQ(1, 4)], 2)

    def test_inv_scalar_constant(self):
        y = S([2, 1], 2)
        assert y * y.inverse() == S([1], 2)

    def test_inv_zero_constant_rejected(self):
        with pytest.raises(ValueError):
            S([0, 1], 2).inverse()


small_scalars = st.integers(min_value=-4, max_value=4).map(QQ)


def series_strategy(order):
    return st.lists(
        small_scalars, min_size=order + 1, max_size=order + 1
    ).map(TruncSeries)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8).flatmap(
    lambda n: st.tuples(series_strategy(n), series_strategy(n), series_strategy(n))
))
def test_ring_axioms(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (b - a) == b


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.lists(small_scalars, min_size=n, max_size=n)
))
def test_exp_log_inverse_pair(tail):
    x = TruncSeries([QQ(0)] + tail)
    assert x.exp().log() == x
    y = x.exp()
    assert y.log().exp() == y


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(
        st.lists(small_scalars, min_size=n, max_size=n),
        st.lists(small_scalars, min_size=n, max_size=n),
    )
))
def test_exp_is_additive_for_commuting_arguments(pair):
    xa, xb = pair
    x = TruncSeries([QQ(0)] + xa)
    y = TruncSeries([QQ(0)] + xb)
    assert (x + y).exp() == x.exp() * y.exp()


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(series_strategy(n), series_strategy(n))
))
def test_no_stored_zeros_or_unreduced_fractions(pair):
    a, b = pair
    for s in (a * b, a + b, a - b):
        for c in s.coeffs:
            assert isinstance(c, Fraction)  # always reduced, exact


def test_series_bilinear_matches_product():
    a, b = S([1, 2, 3], 2), S([4, 5, 6], 2)
    assert series_bilinear(lambda x, y: x * y, a, b) == a * b


class TestPolynomial:
    def test_parse_and_multiply(self):
        p = Polynomial.variable("p")
        q = Polynomial.variable("q")
        assert (p + q) * (p - q) == p * p - q * q

    def test_monomial_parse(self):
        m = Monomial.parse("p^2*q")
        assert m.degree == 3
        assert repr(m) == "p^2*q"
        assert Monomial.parse("1") == Monomial()

    def test_partial_derivative(self):
        p = Polynomial.variable("p")
        f = p * p * p
        assert f.partial("p") == (p * p).scale(3)
        assert f.partial("q") == Polynomial()

    def test_substitute_linear(self):
        # f(u1, u2) = u1*u2 composed with u1 -> u1 + u2, u2 -> u3
        f = Polynomial.variable("u1") * Polynomial.variable("u2")
        g = f.substitute_linear(
            {
                "u1": Polynomial.variable("u1") + Polynomial.variable("u2"),
                "u2": Polynomial.variable("u3"),
            }
        )
        u1, u2, u3 = (Polynomial.variable(n) for n in ("u1", "u2", "u3"))
        assert g == u1 * u3 + u2 * u3

    def test_no_zero_terms_stored(self):
        p = Polynomial.variable("p")
        z = p - p
        assert not z.terms
        assert z == 0

    def test_pow(self):
        p = Polynomial.variable("p")
        one = Polynomial.constant(1)
        assert (p + one) ** 2 == p * p + p.scale(2) + one
