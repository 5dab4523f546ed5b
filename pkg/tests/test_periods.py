import pytest

from quatperiods import cases, embeddings as emb, periods, quadratic
from quatperiods.cases import ST, ST_TWISTED
from quatperiods.periods import LocalSymbol, Status


class TestLocalData:
    def test_symbol_examples(self):
        assert periods.local_symbol_type(-19, 2) == LocalSymbol.INERT
        assert periods.local_symbol_type(-19, 19) == LocalSymbol.RAMIFIED
        assert periods.local_symbol_type(-7, 2) == LocalSymbol.SPLIT

    def test_local_epsilon_table(self):
        eps = periods.local_epsilon
        assert eps(ST, LocalSymbol.SPLIT) == 1
        assert eps(ST, LocalSymbol.INERT) == -1
        assert eps(ST, LocalSymbol.RAMIFIED) == -1
        assert eps(ST_TWISTED, LocalSymbol.SPLIT) == 1
        assert eps(ST_TWISTED, LocalSymbol.INERT) == -1
        assert eps(ST_TWISTED, LocalSymbol.RAMIFIED) == 1


class TestGlobalEpsilon:
    def test_c1_residue_rule(self):
        case = cases.get_case("C1")
        for d in quadratic.fundamental_discriminants(800):
            expected = 1 if d % 8 == 5 else -1
            assert periods.global_epsilon(case, d) == expected, d

    def test_c2_c3_share_epsilon(self):
        c2, c3 = cases.get_case("C2"), cases.get_case("C3")
        for d in quadratic.fundamental_discriminants(400):
            assert periods.global_epsilon(c2, d) == periods.global_epsilon(c3, d)

    def test_weight4_level6_parity_rule(self):
        # +1 exactly when E is inert at exactly one of 2, 3
        case = cases.get_case("C2")
        for d in quadratic.fundamental_discriminants(400):
            inert2 = quadratic.kronecker(d, 2) == -1
            inert3 = quadratic.kronecker(d, 3) == -1
            assert (periods.global_epsilon(case, d) == 1) == (inert2 ^ inert3)

    def test_example_minus19_both_inert(self):
        # inert at 2 AND 3 (two -1 factors): the sign is -1, and indeed
        # -19 = 5 mod 24 is outside the covered residues 13, 17, 21
        assert periods.global_epsilon(cases.get_case("C2"), -19) == -1


class TestCondition3:
    def test_c1_matches_epsilon_everywhere(self):
        # single finite place in S: condition 3 and epsilon = +1 coincide
        case = cases.get_case("C1")
        for d in quadratic.fundamental_discriminants(800):
            assert periods.condition3(case, d) == (periods.global_epsilon(case, d) == 1)

    def test_c5_matches_epsilon_everywhere(self):
        case = cases.get_case("C5")
        for d in quadratic.fundamental_discriminants(800):
            assert periods.condition3(case, d) == (periods.global_epsilon(case, d) == 1)

    def test_condition3_implies_epsilon_plus_one(self):
        for cid in cases.case_ids():
            case = cases.get_case(cid)
            for d in quadratic.fundamental_discriminants(600):
                if periods.condition3(case, d):
                    assert periods.global_epsilon(case, d) == 1, (cid, d)

    def test_equivalence_on_applicable_residues(self):
        for cid in cases.case_ids():
            case = cases.get_case(cid)
            for d in quadratic.fundamental_discriminants(600):
                if case.applicable(d):
                    assert periods.condition3(case, d)
                    assert periods.global_epsilon(case, d) == 1

    def test_c2_gap_discriminant_minus40(self):
        # ramified at 2, inert at 3: epsilon = +1 but the pattern lives on
        # the disc-3 algebra, so condition 3 fails here and C5 covers it
        c2 = cases.get_case("C2")
        assert periods.global_epsilon(c2, -40) == 1
        assert not periods.condition3(c2, -40)
        assert emb.eichler_count(c2, -40) == 0
        v = periods.verdict(cases.get_context("C2"), -40)
        assert v.status == Status.INCONCLUSIVE
        assert periods.verdict(cases.get_context("C5"), -40).status == Status.PROVEN_NONZERO

    def test_c6_split_at_2_is_false(self):
        # -31 = 1 mod 8 is split at 2, which violates the division-prime
        # pattern regardless of the behaviour at 5; epsilon is -1 there
        case = cases.get_case("C6")
        assert not periods.condition3(case, -31)
        assert periods.global_epsilon(case, -31) == -1

    def test_condition3_implies_embeddings(self):
        for cid in cases.case_ids():
            case = cases.get_case(cid)
            for d in quadratic.fundamental_discriminants(500):
                if periods.condition3(case, d):
                    assert emb.eichler_count(case, d) > 0, (cid, d)


class TestCongruences:
    def test_c1_example(self):
        ctx = cases.get_context("C1")
        assert periods.congruence_check(ctx, (1, 0, 0), -3) == 1

    def test_c2_terms_odd_on_applicable(self):
        ctx = cases.get_context("C2")
        for d in (-11, -35, -59):  # 13 or 21 mod 24
            for v in emb.represent(ctx.gram, -d):
                r = periods.congruence_check(ctx, v, d)
                assert r % 2 == 1 and r == (-3 * d) % 8

    def test_c5_example(self):
        ctx = cases.get_context("C5")
        for v in emb.represent(ctx.gram, 23):
            assert periods.congruence_check(ctx, v, -23) == 23 % 6

    def test_norm_mismatch_raises(self):
        ctx = cases.get_context("C1")
        with pytest.raises(ValueError):
            periods.congruence_check(ctx, (1, 0, 0), -19)

    @pytest.mark.parametrize("cid", cases.case_ids())
    def test_sweep_matches_scalar_checker(self, cid):
        # the vectorized sweep and congruence_check must agree; both clean
        ctx = cases.get_context(cid)
        assert periods.congruence_sweep(ctx, 250) > 0
        for d in quadratic.fundamental_discriminants(120):
            for v in emb.represent(ctx.gram, -d):
                periods.congruence_check(ctx, v, d)


class TestPeriodSums:
    def test_single_class_sum_is_phi_value(self):
        ctx = cases.get_context("C1")
        orbit = emb.orbit_for(ctx, -19)
        assert periods.period_sum(ctx, orbit) == int(ctx.phi.evaluate(orbit.vectors[0]))

    def test_c1_odd_period(self):
        ctx = cases.get_context("C1")
        total = periods.period_sum(ctx, emb.orbit_for(ctx, -19))
        assert total % 2 == 1

    def test_c4_pizer_period_2_mod_4(self):
        ctx = cases.get_context("C4")
        total = periods.period_sum(ctx, emb.orbit_for(ctx, -51))
        assert total % 4 == 2

    @pytest.mark.parametrize("cid,delta", [
        ("C1", -19), ("C1", -43), ("C2", -35), ("C3", -55), ("C4", -51),
        ("C5", -31), ("C5", -40), ("C6", -19), ("C6", -131),
    ])
    def test_sum_congruent_to_pinned_residue(self, cid, delta):
        ctx = cases.get_context(cid)
        orbit = emb.orbit_for(ctx, delta)
        h = quadratic.class_number(delta)
        total = periods.period_sum(ctx, orbit)
        mod = periods.DECISIVE_MODULUS[ctx.case.congruence]
        assert total % mod == periods.predicted_period_residue(ctx.case, delta, h)


class TestVerdicts:
    @pytest.mark.parametrize("cid,delta,status", [
        ("C1", -19, Status.PROVEN_NONZERO),
        ("C1", -7, Status.FORCED_ZERO),
        ("C1", -4, Status.FORCED_ZERO),
        ("C5", -19, Status.PROVEN_NONZERO),
        ("C2", -35, Status.INCONCLUSIVE),  # applicable but -delta composite
        ("C2", -59, Status.PROVEN_NONZERO),  # 13 mod 24, prime
        ("C3", -55, Status.INCONCLUSIVE),  # applicable but h even (composite)
        ("C3", -31, Status.PROVEN_NONZERO),  # 17 mod 24, prime
        ("C4", -51, Status.PROVEN_NONZERO),  # Pizer h = 2 mod 4
        ("C6", -19, Status.PROVEN_NONZERO),
        ("C1", -51, Status.INCONCLUSIVE),  # 5 mod 8 but -51 = 3 * 17
    ])
    def test_examples(self, cid, delta, status):
        v = periods.verdict(cases.get_context(cid), delta)
        assert v.status == status

    def test_forced_zero_iff_epsilon_minus_one(self):
        for cid in cases.case_ids():
            ctx = cases.get_context(cid)
            for d in quadratic.fundamental_discriminants(300):
                v = periods.verdict(ctx, d, with_orbit=False)
                assert (v.status == Status.FORCED_ZERO) == (v.epsilon == -1)

    def test_proven_nonzero_has_nonzero_residue_and_period(self):
        for cid in cases.case_ids():
            ctx = cases.get_context(cid)
            for d in quadratic.fundamental_discriminants(250):
                v = periods.verdict(ctx, d)
                if v.status == Status.PROVEN_NONZERO:
                    assert v.congruence_residue != 0
                    assert v.period_sum is not None and v.period_sum != 0

    def test_rejects_nonfundamental(self):
        with pytest.raises(ValueError):
            periods.verdict(cases.get_context("C1"), -12)

    def test_json_roundtrip(self):
        import json

        v = periods.verdict(cases.get_context("C1"), -19)
        assert periods.verdict_from_dict(json.loads(v.to_json())) == v
