import pytest

from udeform.kernel import Monomial, Polynomial, QQ, TruncSeries
from udeform.bialgebra import CutoffError
from udeform.twist import GaugeElement, constant_series, gauge_transform, make_exp_udf, series_from_orders
from udeform.deform import (
    AlgebraEndomorphism,
    Derivation,
    FiniteDimensionalAlgebra,
    HochschildCochain,
    PolynomialOperator1Cochain,
    PolynomialTruncatedAlgebra,
    StarProduct,
    action_from_derivations,
    check_associativity,
    check_module_algebra,
    hochschild_differential,
    infinitesimal_cocycle,
    is_hochschild_coboundary,
    twisted_product,
    wedge_over_A,
)

from conftest import antisym


def M(text):
    return Monomial.parse(text)


@pytest.fixture(scope="module")
def square_zero():
    return FiniteDimensionalAlgebra(
        ["1", "p", "q"],
        "1",
        {("p", "p"): {}, ("p", "q"): {}, ("q", "p"): {}, ("q", "q"): {}},
    )


class TestAlgebraSpecs:
    def test_truncated_product_overflow(self, plane):
        p2 = plane.element({M("p^2"): 1})
        p3 = plane.element({M("p^3"): 1})
        with pytest.raises(CutoffError):
            p2 * p3

    def test_structure_constants_validated(self):
        # (x.x).x = y.x = 0 while x.(x.x) = x.y = 1
        with pytest.raises(ValueError, match="associative"):
            FiniteDimensionalAlgebra(
                ["1", "x", "y"], "1", {("x", "x"): {"y": 1}, ("x", "y"): {"1": 1}}
            )
        # x^2 = 1 + x is associative (a quadratic field algebra)
        FiniteDimensionalAlgebra(["1", "x"], "1", {("x", "x"): {"x": 1, "1": 1}})

    def test_unit_membership(self):
        with pytest.raises(ValueError):
            FiniteDimensionalAlgebra(["x"], "1", {})


class TestOperators:
    def test_leibniz_holds_for_polynomial_derivations(self, plane):
        theta = Derivation(plane, {"p": Polynomial.variable("q")})
        a = plane.element({M("p^2"): 1})
        b = plane.element({M("p*q"): 1})
        assert theta.apply(a * b) == theta.apply(a) * b + a * theta.apply(b)

    def test_leibniz_failure_rejected(self, square_zero):
        # "theta(p) = 1" is not a derivation of the square-zero algebra
        with pytest.raises(ValueError, match="Leibniz"):
            Derivation(square_zero, {"p": {"1": 1}})

    def test_endomorphism_must_fix_unit(self, square_zero):
        with pytest.raises(ValueError):
            AlgebraEndomorphism(square_zero, {"1": {"p": 1}, "p": {}, "q": {}})

    def test_commutation_probe(self, plane):
        d_p = Derivation(plane, {"p": 1})
        p_dp = Derivation(plane, {"p": Polynomial.variable("p")})
        assert not d_p.commutes_with(p_dp)
        d_q = Derivation(plane, {"q": 1})
        assert d_p.commutes_with(d_q)


class TestActions:
    def test_moyal_action_valid(self, moyal_action):
        assert check_module_algebra(moyal_action).passed

    def test_euler_action_valid(self, euler_action):
        assert check_module_algebra(euler_action).passed

    def test_noncommuting_images_rejected(self, B2, plane):
        with pytest.raises(ValueError, match="commute"):
            action_from_derivations(
                B2, plane, {"p1": {"p": 1}, "p2": {"p": Polynomial.variable("p")}}
            )

    def test_tensor_primitive_allows_noncommuting(self, tensorB, plane):
        action = action_from_derivations(
            tensorB,
            plane,
            {"e1": {"p": 1}, "e2": {"p": Polynomial.variable("p")}},
        )
        assert check_module_algebra(action).passed

    def test_monoid_action_by_endomorphisms(self, monoid_z2, plane):
        flip = AlgebraEndomorphism(
            plane,
            {"p": plane.element({M("q"): 1}), "q": plane.element({M("p"): 1})},
        )
        ident = AlgebraEndomorphism(plane, {})
        action = action_from_derivations(
            monoid_z2, plane, {"1": ident, "g": flip}
        )
        assert check_module_algebra(action).passed

    def test_monoid_multiplicativity_enforced(self, monoid_z2, plane):
        # g^2 = 1 forces the image of g to be an involution; doubling is not
        double = AlgebraEndomorphism(
            plane,
            {"p": plane.element({M("p"): 2}), "q": plane.element({M("q"): 1})},
        )
        ident = AlgebraEndomorphism(plane, {})
        with pytest.raises(ValueError, match="multiplicative"):
            action_from_derivations(monoid_z2, plane, {"1": ident, "g": double})


class TestTwistedProducts:
    def test_moyal_basic_products(self, moyal_udf, moyal_action, plane):
        p, q = plane.variable("p"), plane.variable("q")
        pq = twisted_product(moyal_udf, moyal_action, p, q)
        qp = twisted_product(moyal_udf, moyal_action, q, p)
        base = plane.element({M("p*q"): 1})
        half = plane.one().scale(QQ(1, 2))
        assert pq == series_from_orders_like(pq, {0: base, 1: half})
        assert qp == series_from_orders_like(qp, {0: base, 1: half.scale(-1)})
        # commutator is exactly t at every order
        assert (pq - qp) == series_from_orders_like(pq, {1: plane.one()})

    def test_unit_preserved(self, moyal_udf, moyal_action, plane):
        f = plane.element({M("p^2*q"): 3, M("q"): QQ(1, 2)})
        got = twisted_product(moyal_udf, moyal_action, plane.one(), f)
        assert got == constant_series(f, moyal_udf.order)
        got = twisted_product(moyal_udf, moyal_action, f, plane.one())
        assert got == constant_series(f, moyal_udf.order)

    def test_quantum_plane_relation(self, B2_wide, plane):
        F = make_exp_udf(antisym(B2_wide), order=8)
        action = action_from_derivations(
            B2_wide,
            plane,
            {"p1": {"p": Polynomial.variable("p")}, "p2": {"q": Polynomial.variable("q")}},
        )
        p, q = plane.variable("p"), plane.variable("q")
        pq = twisted_product(F, action, p, q)
        qp = twisted_product(F, action, q, p)
        e2t = TruncSeries.scalar([0, 2], order=8).exp()
        scaled = TruncSeries(
            [
                sum((e2t.coeffs[k] * qp.coeffs[n - k] for k in range(n + 1)), plane.zero())
                for n in range(9)
            ]
        )
        assert pq == scaled

    def test_moyal_associativity(self, moyal_udf, moyal_action):
        rep = check_associativity(moyal_udf, moyal_action, cutoff=3, order=6)
        assert rep.passed, rep.render_text()

    def test_corrupted_twist_fails_localized(self, B2, moyal_action, plane, moyal_udf):
        # drop the t^2 coefficient of the Moyal twist
        coeffs = dict(enumerate(moyal_udf.series.coeffs))
        coeffs[2] = B2.zero(2)
        from udeform.twist import UDF

        bad = UDF(TruncSeries([coeffs[k] for k in range(moyal_udf.order + 1)]))
        rep = check_associativity(bad, moyal_action, cutoff=4, order=5)
        assert not rep.passed
        witness = rep.entries[0].witness
        assert witness["first_failing_order"] == 2


def series_from_orders_like(series, coeffs):
    zero = series.coeffs[0].zero_like()
    return TruncSeries(
        [coeffs.get(k, zero) for k in range(series.order + 1)]
    )


class TestInfinitesimalLayer:
    def test_moyal_cocycle_values(self, moyal_udf, moyal_action, plane):
        mu1 = infinitesimal_cocycle(moyal_udf, moyal_action)
        assert mu1.on_keys(M("p"), M("q")) == plane.one().scale(QQ(1, 2))
        assert mu1.on_keys(M("q"), M("p")) == plane.one().scale(QQ(-1, 2))

    def test_shear_action_gives_zero_cocycle(self, B2, plane, moyal_udf):
        action = action_from_derivations(
            B2, plane, {"p1": {"p": 1}, "p2": {"p": Polynomial.variable("q")}}
        )
        mu1 = infinitesimal_cocycle(moyal_udf, action)
        assert mu1.is_zero_within(plane.cutoff)

    def test_square_zero_counterexample(self, B2, square_zero, moyal_udf):
        th1 = Derivation(square_zero, {"p": {"p": 1}})
        th2 = Derivation(square_zero, {"q": {"q": 1}})
        action = action_from_derivations(B2, square_zero, {"p1": th1, "p2": th2})
        mu1 = infinitesimal_cocycle(moyal_udf, action, cutoff=0)
        assert mu1.is_zero_within(0)

    def test_moyal_class_is_not_a_coboundary(self, moyal_udf, moyal_action, plane):
        mu1 = infinitesimal_cocycle(moyal_udf, moyal_action)
        g, info = is_hochschild_coboundary(plane, mu1, search_bound=2)
        assert g is None
        assert info["operator_order"] == 2

    def test_coboundary_roundtrip(self, plane):
        # degree-non-raising terms keep the verification inside the cutoff
        g0 = PolynomialOperator1Cochain(
            plane,
            [
                (M("p"), (("q", 1),), QQ(3, 2)),
                (Monomial(), (("p", 2),), QQ(-1)),
                (M("q"), (("p", 1), ("q", 1)), QQ(2)),
            ],
        )
        c = hochschild_differential(g0.as_cochain())
        g, info = is_hochschild_coboundary(plane, c, search_bound=2)
        assert g is not None
        d = hochschild_differential(g)
        for x in plane.basis_keys():
            for y in plane.basis_keys():
                if plane.degree(x) + plane.degree(y) > plane.cutoff:
                    continue
                assert d.on_keys(x, y) == c.on_keys(x, y)

    def test_zero_cochain_has_zero_witness(self, plane):
        zero = HochschildCochain(plane, 2, lambda x, y: plane.zero())
        g, _ = is_hochschild_coboundary(plane, zero, search_bound=1)
        assert g is not None
        assert hochschild_differential(g).is_zero_within(plane.cutoff)

    def test_finite_dimensional_coboundary_search(self, square_zero, B2, moyal_udf):
        th1 = Derivation(square_zero, {"p": {"p": 1}})
        th2 = Derivation(square_zero, {"q": {"q": 1}})
        action = action_from_derivations(B2, square_zero, {"p1": th1, "p2": th2})
        mu1 = infinitesimal_cocycle(moyal_udf, action, cutoff=0)
        g, _ = is_hochschild_coboundary(square_zero, mu1)
        assert g is not None  # the zero cocycle is a coboundary

    def test_mu1_is_a_cocycle(self, moyal_udf, euler_action, plane):
        mu1 = infinitesimal_cocycle(moyal_udf, euler_action)
        assert hochschild_differential(mu1).is_zero_within(plane.cutoff)


class TestWedge:
    def test_constant_derivations(self, plane):
        w = wedge_over_A(Derivation(plane, {"p": 1}), Derivation(plane, {"q": 1}))
        assert w == {("p", "q"): Polynomial.constant(1)}

    def test_euler_pair(self, plane):
        w = wedge_over_A(
            Derivation(plane, {"p": Polynomial.variable("p")}),
            Derivation(plane, {"q": Polynomial.variable("q")}),
        )
        assert w == {("p", "q"): Polynomial.variable("p") * Polynomial.variable("q")}

    def test_proportional_columns_vanish(self, plane):
        w = wedge_over_A(
            Derivation(plane, {"p": 1}),
            Derivation(plane, {"p": Polynomial.variable("q")}),
        )
        assert w == {}

    def test_finite_dimensional_unsupported(self, square_zero):
        th = Derivation(square_zero, {"p": {"p": 1}})
        with pytest.raises(ValueError):
            wedge_over_A(th, th)


def test_gauge_naturality_first_order(B2, moyal_action, plane):
    # mu1' - mu1 = -delta(g) for g(a) = G1 . a; order 2 keeps the slot
    # degrees of the transformed twist inside the cutoff
    F = make_exp_udf(antisym(B2).scale(QQ(1, 2)), order=2)
    g1_tensor = B2.generator("p1") * B2.generator("p1")
    G = GaugeElement(
        series_from_orders(B2, 1, F.order, {0: B2.one(1), 1: g1_tensor})
    )
    moved = gauge_transform(F, G)
    mu1 = infinitesimal_cocycle(F, moyal_action)
    mu1_moved = infinitesimal_cocycle(moved, moyal_action)
    g_cochain = HochschildCochain(
        plane,
        1,
        lambda key: moyal_action.apply_element(g1_tensor, plane.element({key: QQ(1)})),
    )
    delta_g = hochschild_differential(g_cochain)
    for x in plane.basis_keys(2):
        for y in plane.basis_keys(2):
            if plane.degree(x) + plane.degree(y) > plane.cutoff:
                continue
            diff = mu1_moved.on_keys(x, y) - mu1.on_keys(x, y)
            assert diff == delta_g.on_keys(x, y).scale(-1)


def test_euler_star_matches_the_eigenvalue_closed_form(B2, plane, euler_action):
    # independent route: p^a q^b @ p^c q^d is an eigenvector of the
    # antisymmetric exponent with eigenvalue ad - bc, so the star product is
    # exp((ad-bc) t) times the plain product
    F = make_exp_udf(antisym(B2), order=6)
    for (a, b, c, d) in [(1, 0, 0, 1), (0, 1, 1, 0), (2, 1, 0, 1), (1, 1, 1, 1)]:
        x = plane.element({Monomial({"p": a, "q": b}): 1})
        y = plane.element({Monomial({"p": c, "q": d}): 1})
        got = twisted_product(F, euler_action, x, y)
        lam = a * d - b * c
        scalar = TruncSeries.scalar([0, lam], order=6).exp()
        base = Monomial({"p": a + c, "q": b + d})
        expected = TruncSeries(
            [plane.element({base: coeff}) for coeff in scalar.coeffs]
        )
        assert got == expected


def test_moyal_star_matches_the_bidifferential_expansion(
    moyal_udf, moyal_action, plane
):
    # independent route: the order-k layer of the classical star product is
    # (1/(2^k k!)) sum_i (-1)^i C(k,i) (d_p^(k-i) d_q^i f)(d_p^i d_q^(k-i) g)
    import math

    def layer(k, f, g):
        out = Polynomial()
        for i in range(k + 1):
            cf = f
            cg = g
            for _ in range(k - i):
                cf = cf.partial("p")
            for _ in range(i):
                cf = cf.partial("q")
            for _ in range(i):
                cg = cg.partial("p")
            for _ in range(k - i):
                cg = cg.partial("q")
            sign = QQ((-1) ** i * math.comb(k, i))
            out = out + (cf * cg).scale(sign)
        return out.scale(QQ(1, 2 ** k * math.factorial(k)))

    pairs = [
        (Monomial({"p": 2, "q": 1}), Monomial({"q": 1})),
        (Monomial({"p": 1, "q": 1}), Monomial({"p": 1, "q": 1})),
        (Monomial({"p": 2}), Monomial({"q": 2})),
    ]
    for mx, my in pairs:
        x, y = plane.element({mx: 1}), plane.element({my: 1})
        got = twisted_product(moyal_udf, moyal_action, x, y)
        fx = Polynomial({mx: QQ(1)})
        fy = Polynomial({my: QQ(1)})
        for k in range(4):
            expected = layer(k, fx, fy)
            assert got.coeffs[k].to_polynomial() == expected
