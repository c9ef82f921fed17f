import itertools

import pytest

from udeform.kernel import Monomial, QQ
from udeform.bialgebra import (
    BialgebraSpec,
    CounitUnavailable,
    CutoffError,
    check_axioms,
    check_cocommutative,
    construct_bialgebra,
    iterated_coproduct,
    permute_factors,
    slot_apply,
    tensor_multiply,
    with_coproduct_override,
)


class TestConstruction:
    def test_primitive_coproduct(self, B1):
        p = B1.generator("p")
        assert p.apply_coproduct(1) == p.outer(B1.one(1)) + B1.one(1).outer(p)

    def test_grouplike_coproduct(self, monoid_free):
        g = monoid_free.generator("a")
        assert g.apply_coproduct(1) == g.outer(g)
        assert g.apply_counit(1).scalar_value() == 1

    def test_tensor_primitive_words(self, tensorB):
        e1, e2 = tensorB.generator("e1"), tensorB.generator("e2")
        w = e1 * e2  # concatenation e1e2
        ww = e2 * e1
        assert w != ww  # noncommutative word basis
        d = w.apply_coproduct(1)
        expected = (
            w.outer(tensorB.one(1))
            + e1.outer(e2)
            + e2.outer(e1)
            + tensorB.one(1).outer(w)
        )
        assert d == expected

    def test_duplicate_generators_rejected(self):
        with pytest.raises(ValueError):
            BialgebraSpec("polynomial-primitive", ["p", "p"])

    def test_malformed_monoid_table_rejected(self):
        broken_unit = {
            "elements": ["1", "g"],
            "unit": "1",
            "table": [["g", "g"], ["g", "1"]],
        }
        with pytest.raises(ValueError, match="unit law"):
            construct_bialgebra(BialgebraSpec("monoid", monoid_table=broken_unit), 1)
        not_associative = {
            "elements": ["1", "a", "b"],
            "unit": "1",
            "table": [["1", "a", "b"], ["a", "b", "a"], ["b", "a", "a"]],
        }
        with pytest.raises(ValueError, match="associativity"):
            construct_bialgebra(
                BialgebraSpec("monoid", monoid_table=not_associative), 1
            )

    def test_cutoff_overflow_is_an_error(self, B1):
        p = B1.generator("p")
        high = B1.element({Monomial({"p": 6}): QQ(1)})
        with pytest.raises(CutoffError):
            tensor_multiply(p, high)

    def test_spec_json_roundtrip(self, B2, monoid_z2):
        for B in (B2, monoid_z2):
            doc = B.spec.to_json(degree_cutoff=B.cutoff)
            again = BialgebraSpec.from_json(doc)
            assert again.kind == B.spec.kind
            assert again.generators == B.spec.generators
            assert again.monoid_table == B.spec.monoid_table


class TestIteratedCoproduct:
    def test_primitive_square(self, B1):
        p = B1.generator("p")
        d2 = iterated_coproduct(p, 2)
        one = B1.one(1)
        assert d2 == (
            p.outer(one).outer(one)
            + one.outer(p).outer(one)
            + one.outer(one).outer(p)
        )

    def test_minus_one_is_counit(self, B1):
        p = B1.generator("p")
        assert iterated_coproduct(p, -1).scalar_value() == 0
        assert iterated_coproduct(B1.one(1), -1).scalar_value() == 1

    def test_grouplike_cube(self, monoid_z2):
        g = monoid_z2.generator("g")
        assert iterated_coproduct(g, 2) == g.outer(g).outer(g)

    def test_zero_is_identity(self, B1):
        p = B1.generator("p")
        assert iterated_coproduct(p, 0) == p

    def test_noncounital_mode_blocks_counit(self):
        B = construct_bialgebra(
            BialgebraSpec("polynomial-primitive", ["p"], counital=False), 4
        )
        with pytest.raises(CounitUnavailable):
            iterated_coproduct(B.generator("p"), -1)


class TestTensorOps:
    def test_slotwise_product(self, B2):
        p1, p2 = B2.generator("p1"), B2.generator("p2")
        one = B2.one(1)
        assert tensor_multiply(p1.outer(one), one.outer(p1)) == p1.outer(p1)
        u = p1.outer(p2)
        assert tensor_multiply(B2.one(2), u) == u
        sq = tensor_multiply(u, u)
        assert sq == B2.tensor(
            2, {(Monomial({"p1": 2}), Monomial({"p2": 2})): QQ(1)}
        )

    def test_arity_mismatch(self, B2):
        with pytest.raises(ValueError):
            tensor_multiply(B2.one(2), B2.one(3))

    def test_slot_apply_counit(self, B2):
        assert slot_apply("eps", 1, B2.one(2)) == B2.one(1)
        p1 = B2.generator("p1")
        assert slot_apply("eps", 2, p1.outer(p1)).is_zero()

    def test_slot_apply_coproduct(self, B2):
        p1, p2 = B2.generator("p1"), B2.generator("p2")
        one = B2.one(1)
        got = slot_apply("delta", 1, p1.outer(p2))
        assert got == p1.outer(one).outer(p2) + one.outer(p1).outer(p2)

    def test_slot_out_of_range(self, B2):
        with pytest.raises(ValueError):
            slot_apply("delta", 3, B2.one(2))

    def test_permute_transposition(self, B2):
        p1, p2 = B2.generator("p1"), B2.generator("p2")
        assert permute_factors((2, 1), p1.outer(p2)) == p2.outer(p1)
        u = p1.outer(p2) + p2.outer(p2)
        assert permute_factors((1, 2), u) == u

    def test_permute_1324(self, monoid_free):
        a, b, c, d = (monoid_free.generator(x) for x in "abcd")
        u = a.outer(b).outer(c).outer(d)
        got = permute_factors((1, 3, 2, 4), u)
        assert got == a.outer(c).outer(b).outer(d)

    def test_permutation_right_action(self, B2):
        # permute(tau, permute(sigma, u)) = permute(sigma o tau, u)
        p1, p2 = B2.generator("p1"), B2.generator("p2")
        u = p1.outer(p2).outer(p1 + p2)
        for sigma in itertools.permutations((1, 2, 3)):
            for tau in itertools.permutations((1, 2, 3)):
                composed = tuple(sigma[tau[k] - 1] for k in range(3))
                assert permute_factors(tau, permute_factors(sigma, u)) == (
                    permute_factors(composed, u)
                )


class TestAxiomCheckers:
    @pytest.mark.parametrize(
        "fixture",
        ["B1", "B2", "tensorB", "matrixB", "monoid_free", "monoid_z2", "monoid_idem"],
    )
    def test_all_shipped_kinds_pass(self, fixture, request):
        B = request.getfixturevalue(fixture)
        rep = check_axioms(B, min(B.cutoff, 3))
        assert rep.passed, rep.render_text()

    def test_counit_law_within_cutoff(self, B2):
        for k in B2.basis_keys(3):
            e = B2.element({k: QQ(1)})
            d = e.apply_coproduct(1)
            assert d.apply_counit(1) == e
            assert d.apply_counit(2) == e

    def test_grouplike_on_primitive_generator_fails(self, B1):
        p_key = B1.generator_key("p")
        bad = with_coproduct_override(
            B1, {p_key: {(p_key, p_key): QQ(1)}}
        )
        rep = check_axioms(bad, 3)
        assert not rep.passed
        labels = [e.label for e in rep.failures]
        assert "coproduct is an algebra morphism" in labels

    def test_cocommutativity_verdicts(self, B2, monoid_free, matrixB, tensorB):
        assert check_cocommutative(B2) == (True, None)
        assert check_cocommutative(monoid_free) == (True, None)
        assert check_cocommutative(tensorB) == (True, None)
        ok, witness = check_cocommutative(matrixB)
        assert not ok and witness == "a"

    def test_commutativity_flags(self, B2, tensorB, matrixB):
        assert B2.is_commutative()
        assert matrixB.is_commutative()
        assert not tensorB.is_commutative()


def test_iterated_coproduct_composition_identity(B2):
    # Delta^(b+c-2) = (id^(i-1) @ Delta^(c-1) @ id^(b-i)) Delta^(b-1)
    samples = [
        B2.generator("p1"),
        B2.generator("p2") * B2.generator("p2"),
        B2.generator("p1") * B2.generator("p2") + B2.one(1).scale(3),
    ]
    for b, c in [(2, 2), (2, 3), (3, 2)]:
        for i in range(1, b + 1):
            for x in samples:
                lhs = iterated_coproduct(x, b + c - 2)
                rhs = iterated_coproduct(x, b - 1)
                for _ in range(c - 1):
                    rhs = rhs.apply_coproduct(i)
                assert lhs == rhs
