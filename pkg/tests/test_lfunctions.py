import pytest

from quatperiods import cases, lfunctions as lf, periods, qseries, quadratic


def coeffs_for(cid, delta):
    case = cases.get_case(cid)
    need = lf.required_cutoff(case.disc_order, delta)
    return qseries.newform_coefficients(case.oracle, need), case


class TestConductor:
    def test_coprime_twist(self):
        assert lf.conductor(2, -19) == 2 * 19 * 19
        assert lf.conductor(6, -35) == 6 * 35 * 35

    def test_level_prime_absorbed(self):
        assert lf.conductor(2, -4) == 16           # 2 | delta: no extra factor
        assert lf.conductor(6, -40) == 3 * 1600    # only the 3 survives
        assert lf.conductor(3, -84) == 84 * 84     # 3 | delta
        assert lf.conductor(10, -20) == 400        # both level primes absorbed


class TestChi:
    def test_sieve_matches_direct(self):
        for delta in (-19, -35, -40, -84):
            chi = lf.chi_values(delta, 300)
            for n in range(1, 301):
                assert chi[n] == quadratic.kronecker(delta, n), (delta, n)


class TestCentralValues:
    def test_c1_minus19_positive(self):
        a, case = coeffs_for("C1", -19)
        eps = periods.global_epsilon(case, -19)
        val = lf.twisted_central_value(a, case.weight, case.disc_order, -19, eps)
        assert abs(val) > 1e-3

    def test_c1_minus7_zero(self):
        a, case = coeffs_for("C1", -7)
        val = lf.twisted_central_value(a, case.weight, case.disc_order, -7, -1)
        assert abs(val) < 1e-6

    def test_cutoff_doubling_stability(self):
        a, case = coeffs_for("C1", -19)
        need = lf.required_cutoff(case.disc_order, -19)
        long_a = qseries.newform_coefficients(case.oracle, 2 * need)
        v1 = lf.twisted_central_value(long_a, case.weight, case.disc_order, -19, 1,
                                      nmax=need)
        v2 = lf.twisted_central_value(long_a, case.weight, case.disc_order, -19, 1,
                                      nmax=2 * need)
        assert abs(v1 - v2) < 1e-8

    def test_insufficient_coefficients_error_names_cutoff(self):
        a, case = coeffs_for("C1", -19)
        with pytest.raises(lf.InsufficientCoefficients) as err:
            lf.twisted_central_value(a[:50], case.weight, case.disc_order, -19, 1)
        assert err.value.needed == lf.required_cutoff(case.disc_order, -19)


class TestSignProbe:
    @pytest.mark.parametrize("delta,expected", [(-19, 1), (-7, -1), (-43, 1),
                                                (-8, -1), (-20, -1)])
    def test_c1_probe(self, delta, expected):
        a, case = coeffs_for("C1", delta)
        sign = lf.functional_equation_sign_probe(a, case.weight, case.disc_order, delta)
        assert sign == expected
        assert sign == periods.global_epsilon(case, delta)

    def test_c6_minus19(self):
        a, case = coeffs_for("C6", -19)
        assert lf.functional_equation_sign_probe(
            a, case.weight, case.disc_order, -19) == 1

    @pytest.mark.parametrize("cid", cases.case_ids())
    def test_probe_matches_epsilon_small_range(self, cid):
        case = cases.get_case(cid)
        need = lf.required_cutoff(case.disc_order, -100)
        a = qseries.newform_coefficients(case.oracle, need)
        for d in quadratic.fundamental_discriminants(100):
            if not periods.embeddable(case, d):
                continue
            probe = lf.functional_equation_sign_probe(
                a, case.weight, case.disc_order, d)
            assert probe == periods.global_epsilon(case, d), (cid, d)
