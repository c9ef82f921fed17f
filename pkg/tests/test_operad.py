import pytest

from udeform.kernel import QQ
from udeform.bialgebra import (
    CounitUnavailable,
    TensorElement,
    with_coproduct_override,
)
from udeform.operad import (
    FLAVOR_ADDITIVE,
    FLAVOR_MULTIPLICATIVE,
    OperadElement,
    check_assoc_cases,
    check_equivariance,
    check_unit,
    circ_B,
    circ_b,
    reconstruct_bialgebra_check,
)

from conftest import antisym


class TestMultiplicativeComposition:
    def test_pad_identity(self, B2):
        # 1@1 o_2 b = 1 @ b, and the general unit-padding identity
        b = B2.generator("p1") * B2.generator("p2")
        got = circ_B(B2.one(2), 2, B2.element({B2.generator_key("p1"): QQ(1)}))
        assert got == B2.one(1).outer(B2.generator("p1"))
        for n in range(1, 5):
            for i in range(1, n + 1):
                for key in B2.basis_keys(3):
                    e = B2.element({key: QQ(1)})
                    got = circ_B(B2.one(n), i, e)
                    want = B2.one(i - 1).outer(e).outer(B2.one(n - i))
                    assert got == want

    def test_unit_right(self, B2):
        u = B2.generator("p1").outer(B2.generator("p2"))
        for i in (1, 2):
            assert circ_B(u, i, B2.one(1)) == u

    def test_primitive_expansion(self, B1):
        # p o_1 (v1 @ v2) = p v1 @ v2 + v1 @ p v2
        p = B1.generator("p")
        v = B1.element({B1.generator_key("p"): QQ(1)})
        v2 = v * v
        got = circ_B(p, 1, v.outer(v2))
        want = (p * v).outer(v2) + v.outer(p * v2)
        assert got == want

    def test_arity_zero_uses_counit(self, B1):
        scalar = TensorElement(B1, 0, {(): QQ(1)})
        p = B1.generator("p")
        u = p.outer(p) + B1.one(2).scale(3)
        got = circ_B(u, 1, scalar)
        assert got == B1.one(1).scale(3)

    def test_arity_zero_noncounital_rejected(self):
        from udeform.bialgebra import BialgebraSpec, construct_bialgebra

        B = construct_bialgebra(
            BialgebraSpec("polynomial-primitive", ["p"], counital=False), 4
        )
        scalar = TensorElement(B, 0, {(): QQ(1)})
        with pytest.raises(CounitUnavailable):
            circ_B(B.generator("p").outer(B.generator("p")), 1, scalar)

    def test_slot_out_of_range(self, B1):
        with pytest.raises(ValueError):
            circ_B(B1.one(2), 3, B1.one(1))


class TestAdditiveComposition:
    def test_arity_one_is_addition(self, B2):
        u, v = B2.generator("p1"), B2.generator("p2")
        assert circ_b(u, 1, v) == u + v

    def test_zero_is_the_unit(self, B2):
        u = B2.generator("p1").outer(B2.generator("p2"))
        for i in (1, 2):
            assert circ_b(u, i, B2.zero(1)) == u
        assert circ_b(B2.zero(1), 1, u) == u

    def test_antisymmetric_square_matches_ternary_exponent(self, B2):
        # f o_1 f for f = p1@p2 - p2@p1 equals the hand expansion
        f = antisym(B2)
        p1, p2 = B2.generator("p1"), B2.generator("p2")
        one = B2.one(1)
        want = (
            f.outer(one)
            + p1.outer(one).outer(p2)
            - p2.outer(one).outer(p1)
            + one.outer(f)
        )
        assert circ_b(f, 1, f) == want

    def test_never_touches_the_product(self, B2, monkeypatch):
        calls = []
        original = type(B2).product_keys

        def spy(self, k1, k2):
            calls.append((k1, k2))
            return original(self, k1, k2)

        monkeypatch.setattr(type(B2), "product_keys", spy)
        u = B2.generator("p1").outer(B2.generator("p2"))
        v = antisym(B2)
        circ_b(u, 2, v)
        circ_b(v, 1, u)
        assert not calls

    def test_flavored_wrapper(self, B2):
        u = OperadElement(FLAVOR_ADDITIVE, B2.generator("p1"))
        v = OperadElement(FLAVOR_ADDITIVE, B2.generator("p2"))
        got = u.compose(1, v)
        assert got.payload == B2.generator("p1") + B2.generator("p2")
        with pytest.raises(ValueError):
            OperadElement(FLAVOR_ADDITIVE, TensorElement(B2, 0, {(): QQ(1)}))
        with pytest.raises(ValueError):
            u.compose(1, OperadElement(FLAVOR_MULTIPLICATIVE, B2.one(1)))


class TestAxiomCheckers:
    @pytest.mark.parametrize("flavor", [FLAVOR_MULTIPLICATIVE, FLAVOR_ADDITIVE])
    @pytest.mark.parametrize("fixture", ["B2", "monoid_free", "monoid_z2"])
    def test_associativity_and_units_pass(self, flavor, fixture, request):
        B = request.getfixturevalue(fixture)
        rep = check_assoc_cases(flavor, B, samples=50, seed=0)
        assert rep.passed, rep.render_text()
        rep = check_unit(flavor, B, samples=50, seed=0)
        assert rep.passed, rep.render_text()

    def test_additive_over_single_generator(self, B1):
        rep = check_assoc_cases(FLAVOR_ADDITIVE, B1, samples=50, seed=0)
        assert rep.passed

    def test_corrupted_coproduct_fails_middle_case(self, B1):
        p_key = B1.generator_key("p")
        p2_key = B1.parse_key("p^2")
        one = B1.unit_key
        # a coproduct that is not coassociative: Delta p = p@1 + 1@p + 1@p^2
        bad = with_coproduct_override(
            B1,
            {p_key: {(p_key, one): QQ(1), (one, p_key): QQ(1), (one, p2_key): QQ(1)}},
        )
        rep = check_assoc_cases(FLAVOR_MULTIPLICATIVE, bad, samples=60, seed=0)
        assert not rep.passed
        by_case = {i + 1: rep.entries[i] for i in range(3)}
        assert by_case[1].ok and by_case[3].ok
        assert not by_case[2].ok
        assert by_case[2].witness is not None

    def test_equivariance_agrees_with_cocommutativity(
        self, B2, monoid_free, matrixB
    ):
        from udeform.bialgebra import check_cocommutative

        for B in (B2, monoid_free, matrixB):
            rep = check_equivariance(B, samples=25, seed=0)
            assert rep.passed == check_cocommutative(B)[0]

    def test_matrix_witness_is_concrete(self, matrixB):
        rep = check_equivariance(matrixB, samples=10, seed=0)
        assert not rep.passed
        bad = [e for e in rep.entries if not e.ok]
        assert bad and bad[0].witness is not None
        # the decisive instance: u = a, v = 1@1, tau the transposition
        a = matrixB.generator("a")
        lhs = circ_B(a, 1, matrixB.one(2).permute((2, 1)))
        from udeform.operad import inflate_inner

        rhs = circ_B(a, 1, matrixB.one(2)).permute(inflate_inner((2, 1), 1, 1))
        assert lhs != rhs


def test_reconstruction_diagnostic(B2, monoid_z2, matrixB):
    for B in (B2, monoid_z2, matrixB):
        rep = reconstruct_bialgebra_check(B, cutoff=2)
        assert rep.passed, rep.render_text()


class TestBlockPermutations:
    def test_inflate_outer_hand_example(self, B2):
        # m=2, sigma the transposition, graft at slot 1 with n=2:
        # (u.sigma) o_1 v = (u o_2 v).sigma'' with sigma'' = (2,3,1)
        from udeform.operad import inflate_outer

        assert inflate_outer((2, 1), 1, 2) == (2, 3, 1)
        u = B2.generator("p1").outer(B2.generator("p2") * B2.generator("p2"))
        v = B2.generator("p2").outer(B2.one(1))
        lhs = circ_B(u.permute((2, 1)), 1, v)
        rhs = circ_B(u, 2, v).permute((2, 3, 1))
        assert lhs == rhs

    def test_inflate_inner_is_a_block(self):
        from udeform.operad import inflate_inner

        assert inflate_inner((2, 1), 2, 3) == (1, 3, 2, 4)
        assert inflate_inner((3, 1, 2), 1, 2) == (3, 1, 2, 4)
