import math
from fractions import Fraction

import pytest

from lehmer_psi.arith import DomainError, factor
from lehmer_psi.bounds import witness_lower_bound
from lehmer_psi.engine import (
    GENERIC_PROFILE,
    N_FLOOR_BASE,
    N_FLOOR_RAISED,
    PI2_HIGH,
    PI2_LOW,
    abundancy_bound,
    certified_above,
    certified_close,
    chain_upper,
    eq_lower_constant,
    enumerate_worlds,
    exclude_k,
    exclusion_threshold,
    k_ladder,
    ladder_condition,
    lehmer_check,
    make_profile,
    min_k,
    phi_sigma_ratio,
    profile_from_factorization,
    refined_threshold,
    two_power_threshold,
    universal_k_floor,
    witness_double_prime,
    witness_group,
)
from lehmer_psi.groups import format_group_spec, is_cyclic, is_nilpotent, order, psi_double_prime


class TestThresholds:
    def test_exclusion_threshold_values(self):
        assert exclusion_threshold(3, 2) == Fraction(7, 24)
        assert exclusion_threshold(11, 2) == Fraction(21, 88)
        assert exclusion_threshold(17, 3) == Fraction(133, 816)

    def test_exclusion_threshold_domain(self):
        with pytest.raises(DomainError):
            exclusion_threshold(2, 2)
        with pytest.raises(DomainError):
            exclusion_threshold(9, 2)
        with pytest.raises(DomainError):
            exclusion_threshold(3, 1)

    def test_monotone_in_R_and_q(self):
        qs = [q for q in range(3, 98) if all(q % d for d in range(2, q))]
        for q in qs:
            for R in range(2, 10):
                assert exclusion_threshold(q, R + 1) < exclusion_threshold(q, R)
        for R in range(2, 11):
            for qa, qb in zip(qs, qs[1:]):
                assert exclusion_threshold(qb, R) < exclusion_threshold(qa, R)

    def test_two_power_threshold_values(self):
        assert two_power_threshold(1) == Fraction(13, 42)
        assert two_power_threshold(2) == Fraction(7, 24)
        assert two_power_threshold(3) == Fraction(9, 32)
        assert two_power_threshold(4) == Fraction(2055, 8064)
        assert two_power_threshold(5) == Fraction(16, 63) + Fraction(1, 9 * 2**9)
        with pytest.raises(DomainError):
            two_power_threshold(0)

    def test_refined_thresholds_reproduce_from_chains(self):
        assert refined_threshold("q5-no7") == Fraction(175, 704)
        assert refined_threshold("q5-7-no13") == Fraction(1007, 4080)
        assert chain_upper((5,), 11, 2) == Fraction(7, 16) * (Fraction(21, 44) + Fraction(1, 11))
        assert chain_upper((5, 7), 17, 2) == Fraction(7, 16) * (
            Fraction(1804, 3570) + Fraction(1, 17)
        )
        with pytest.raises(DomainError):
            refined_threshold("bogus")

    def test_chain_with_empty_split_is_the_generic_threshold(self):
        for q in (3, 5, 7, 11, 13, 17, 97):
            for k in range(2, 8):
                assert chain_upper((), q, k) == exclusion_threshold(q, k)


class TestProfiles:
    def test_generic(self):
        assert GENERIC_PROFILE.describe() == "generic"
        assert GENERIC_PROFILE.n_floor == N_FLOOR_BASE

    def test_q_fixes_smaller_primes(self):
        p = make_profile(q=5)
        assert 3 in p.not_divides and 5 in p.divides
        assert 11 in p.not_divides  # Carmichael multiples of 5 avoid 11

    def test_q_beyond_13_excludes_all(self):
        p = make_profile(q=17)
        assert p.not_divides == frozenset({3, 5, 7, 11, 13})

    def test_inconsistencies_rejected(self):
        with pytest.raises(DomainError):
            make_profile(q=5, divides=[3])
        with pytest.raises(DomainError):
            make_profile(q=4)
        with pytest.raises(DomainError):
            make_profile(divides=[5, 11])
        with pytest.raises(DomainError):
            make_profile(divides=[7], not_divides=[7])
        with pytest.raises(DomainError):
            make_profile(divides=[2])

    def test_q_derived_when_determined(self):
        assert make_profile(divides=[5], not_divides=[3]).q == 5
        assert make_profile(divides=[5]).q is None  # 3 still unknown

    def test_concrete_profile(self):
        p = profile_from_factorization(factor(561))
        assert p.n == 561 and p.q == 3
        assert p.divides == frozenset({3, 11})
        for bad in (9, 15 * 2, 7):
            with pytest.raises(DomainError):
                profile_from_factorization(factor(bad))

    def test_world_enumeration_counts(self):
        # five unknowns minus the impossible 5&11 assignments
        assert len(enumerate_worlds(GENERIC_PROFILE)) == 24
        assert len(enumerate_worlds(make_profile(q=17))) == 1
        assert len(enumerate_worlds(profile_from_factorization(factor(561)))) == 1


class TestExcludeK:
    def test_q3_k2_excluded_by_congruence(self):
        res = exclude_k(make_profile(q=3), 2)
        assert res.excluded
        assert all("k-congruence-3" in j.rule for j in res.justifications if j.excluded)

    def test_q5_without_7_k2_excluded(self):
        res = exclude_k(make_profile(q=5, not_divides=[7]), 2)
        assert res.excluded
        for j in res.justifications:
            assert j.lhs >= j.rhs  # the recorded inequality reproduces

    def test_q17_k3_excluded_at_raised_floor(self):
        res = exclude_k(make_profile(q=17, n_floor=N_FLOOR_RAISED), 3)
        assert res.excluded
        j = res.justifications[0]
        assert j.rhs == Fraction(133, 816)
        assert j.lhs == Fraction(1, 6) * (1 - Fraction(1, N_FLOOR_RAISED))

    def test_q7_k2_excluded_via_divisor_split(self):
        res = exclude_k(make_profile(q=7), 2)
        assert res.excluded

    def test_not_excluded_cases(self):
        assert not exclude_k(make_profile(q=5, not_divides=[7]), 3).excluded
        assert not exclude_k(make_profile(q=17, n_floor=N_FLOOR_RAISED), 4).excluded

    def test_rejects_k_below_two(self):
        with pytest.raises(DomainError):
            exclude_k(GENERIC_PROFILE, 1)

    def test_concrete_uses_exact_n(self):
        profile = profile_from_factorization(factor(2465))  # 5 * 17 * 29
        res = exclude_k(profile, 2)
        assert res.excluded
        j = res.chain_justification()
        assert j.lhs == Fraction(2464, 2 * 2 * 2465)


class TestMinK:
    def test_universal_floor_is_three(self):
        assert universal_k_floor() == 3

    def test_matrix(self):
        assert min_k(make_profile(divides=[3])).k == 4
        assert min_k(make_profile(not_divides=[3])).k == 3
        assert min_k(make_profile(not_divides=[3, 5, 7, 11, 13])).k == 4
        assert min_k(make_profile(q=3)).k == 4
        assert min_k(make_profile(q=17)).k == 4
        assert min_k(GENERIC_PROFILE).k == 3

    def test_congruence_rule_in_trace(self):
        result = min_k(make_profile(divides=[3]))
        assert any("k-congruence-3" in j.rule for res in result.exclusions for j in res.justifications)

    def test_q5_exact_floors(self):
        assert min_k(make_profile(q=5, divides=[7, 13])).k == 3
        assert min_k(make_profile(q=5, divides=[7], not_divides=[13])).k == 3
        assert min_k(make_profile(q=5, not_divides=[7])).k == 3

    def test_floor_never_decreases_with_constraints(self):
        base = min_k(GENERIC_PROFILE).k
        assert min_k(make_profile(not_divides=[3])).k >= base
        assert min_k(make_profile(not_divides=[3, 5])).k >= min_k(make_profile(not_divides=[3])).k
        assert min_k(make_profile(q=17)).k >= min_k(make_profile(not_divides=[3, 5, 7, 11])).k

    def test_escalation_recorded(self):
        result = min_k(make_profile(q=17))
        assert result.n_floor_used == N_FLOOR_RAISED
        assert any("n-floor-escalation" in rule for rule in result.applied_rules)

    def test_ladder_consistency_for_large_q(self):
        for q in (17, 19, 23, 29, 97):
            assert min_k(make_profile(q=q)).k == k_ladder(q, mode="strict").k_floor

    def test_chain_caveat_surfaced(self):
        result = min_k(make_profile(q=5, not_divides=[7]))
        assert any("caveat" in rule for rule in result.applied_rules)


class TestLadder:
    def test_strict_q17(self):
        res = k_ladder(17, mode="strict")
        assert res.R == 3 and res.k_floor == 4
        assert res.condition == Fraction(133, 136)

    def test_as_printed_q17_rung4(self):
        res = k_ladder(17, mode="as-printed", R=4)
        assert res.condition == Fraction(10, 17)
        assert res.k_floor == 5

    def test_strict_q17_rung4_inconclusive(self):
        res = k_ladder(17, mode="strict", R=4)
        assert res.condition == Fraction(35, 34)
        assert res.k_floor is None

    def test_condition_values(self):
        assert ladder_condition(17, 3, "strict") == Fraction(7, 8) * 3 * (
            Fraction(16, 51) + Fraction(1, 17)
        )
        with pytest.raises(DomainError):
            ladder_condition(17, 1)
        with pytest.raises(DomainError):
            ladder_condition(17, 3, "other")

    def test_domain(self):
        with pytest.raises(DomainError):
            k_ladder(13)
        with pytest.raises(DomainError):
            k_ladder(18)

    def test_strict_max_formula(self):
        # strict condition < 1 iff 7R < q + 7
        for q in (17, 19, 97, 101):
            expected = (q + 6) // 7
            assert k_ladder(q, mode="strict").R == expected


class TestPiSquaredSandwich:
    def test_bracket_and_width(self):
        assert PI2_LOW < PI2_HIGH
        assert PI2_HIGH - PI2_LOW == Fraction(1, 10**40)

    def test_against_float_pi(self):
        # independent cross-check of the hard-coded sandwich against the
        # float libm value (display precision only; verdict paths never float)
        assert abs(float(PI2_LOW) - math.pi**2) < 1e-12
        assert abs(float(PI2_HIGH) - math.pi**2) < 1e-12

    def test_certified_above(self):
        assert certified_above(Fraction(2, 3), 6)       # 2/3 > 6/pi^2 ~ 0.6079
        assert not certified_above(Fraction(3, 5), 6)   # 0.6 < 0.6079

    def test_certified_close(self):
        assert certified_close(24, Fraction(2431708, 10**6), Fraction(5, 10**7))
        assert certified_close(
            Fraction(715715, 18432), Fraction(39343, 10**4), Fraction(5, 10**5)
        )
        assert not certified_close(24, Fraction(24318, 10**4), Fraction(1, 10**7))


class TestAbundancy:
    def test_ratio_examples(self):
        assert phi_sigma_ratio(factor(561)) == Fraction(276480, 314721)
        assert phi_sigma_ratio(factor(2)) == Fraction(3, 4)
        for p in (3, 7, 97):
            assert phi_sigma_ratio(factor(p)) == 1 - Fraction(1, p * p)

    def test_ratio_window_for_squarefree_to_1e4(self):
        for n in range(2, 10_001):
            f = factor(n)
            if any(a > 1 for _, a in f):
                continue
            ratio = phi_sigma_ratio(f)
            assert ratio < 1
            assert certified_above(ratio, 6), n

    def test_generic_coefficient(self):
        assert abundancy_bound(GENERIC_PROFILE) == 24

    def test_five_free_coefficient(self):
        profile = make_profile(not_divides=[3, 5, 7, 11, 13])
        assert abundancy_bound(profile) == Fraction(715715, 18432)

    def test_lower_constant_correction(self):
        assert eq_lower_constant(GENERIC_PROFILE) == 8
        assert eq_lower_constant(make_profile(not_divides=[3])) == 9

    def test_three_divides_coefficient(self):
        assert abundancy_bound(make_profile(divides=[3])) == 32  # 8 * min_k 4


class TestWitness:
    def test_construction_examples(self):
        assert format_group_spec(witness_group(factor(15))) == "C2 x C2 x C15"
        assert format_group_spec(witness_group(factor(3))) == "C2 x C2 x C3"
        assert format_group_spec(witness_group(factor(9))) == "C2 x C2 x C9"

    def test_witness_shape(self):
        for n in (3, 9, 15, 105):
            g = witness_group(factor(n))
            assert order(g) == 4 * n
            assert not is_cyclic(g)
            assert is_nilpotent(g)

    def test_rejects_even(self):
        with pytest.raises(DomainError):
            witness_group(factor(10))

    def test_double_prime_closed_form_matches_spectrum(self):
        for n in (3, 9, 15, 105, 561, 999):
            f = factor(n)
            assert witness_double_prime(f) == psi_double_prime(witness_group(f))

    def test_witness_chain_holds_exactly_on_multiples_of_three(self):
        # the stated floor phi(n)/(2n) fails off 3|n (see the pinned
        # counterexamples); the provable floor holds everywhere
        for n in range(3, 2001, 2):
            f = factor(n)
            if any(a > 1 for _, a in f) or f.omega < 2:
                continue
            stated = witness_double_prime(f) > witness_lower_bound(f)
            assert stated == (n % 3 == 0), n
            assert witness_double_prime(f) > witness_lower_bound(f, mode="provable")

    def test_witness_chain_counterexamples_pinned(self):
        assert witness_double_prime(factor(35)) == Fraction(129, 400)
        assert witness_lower_bound(factor(35)) == Fraction(12, 35)
        assert witness_double_prime(factor(35)) < witness_lower_bound(factor(35))
        # 1105 is a genuine Carmichael number with 3 not dividing it
        assert witness_double_prime(factor(1105)) < witness_lower_bound(factor(1105))


class TestLehmerCheck:
    def test_561(self):
        v = lehmer_check(561)
        assert v.is_carmichael
        assert not v.phi_divides  # 320 does not divide 560
        assert v.exact_k is None
        assert v.min_k == 4  # 3 | 561
        assert v.witness == "C2 x C2 x C561"
        assert not v.counterexample

    def test_prime(self):
        v = lehmer_check(7)
        assert v.prime and v.exact_k == 1 and v.min_k == 1
        assert v.phi_divides

    def test_15(self):
        v = lehmer_check(15)
        assert not v.prime
        assert not v.is_carmichael
        assert not v.phi_divides  # phi(15) = 8 does not divide 14
        assert v.min_k == 4  # 3 | 15

    def test_2465_floor_three(self):
        v = lehmer_check(2465)  # 5 * 17 * 29, a Carmichael number
        assert v.is_carmichael
        assert v.min_k == 3
        binding = v.binding_inequality()
        assert binding is not None
        num, den = binding[0].split("/")
        assert int(num) > 0 and int(den) > 0

    def test_machinery_not_applied_off_domain(self):
        v9 = lehmer_check(9)
        assert v9.min_k is None and v9.notes
        v4 = lehmer_check(4)
        assert v4.min_k is None
        assert not v4.phi_divides

    def test_rejects_below_two(self):
        with pytest.raises(DomainError):
            lehmer_check(1)

    def test_verdict_serialization(self):
        d = lehmer_check(561).as_dict()
        assert d["n"] == 561
        assert d["min_k"] == 4
        assert d["excluded_k"][0]["k"] == 2
        assert isinstance(d["applied_rules"], list)


class TestJustificationReproducibility:
    def test_exclusions_recompute_identically(self):
        profile = make_profile(q=5, divides=[7], not_divides=[13])
        first = exclude_k(profile, 2)
        second = exclude_k(profile, 2)
        assert first == second
        for j in first.justifications:
            # the recorded inequality must hold as recorded
            assert (j.lhs >= j.rhs) == j.excluded or "congruence" in j.rule

    def test_chain_parameters_recorded(self):
        res = exclude_k(make_profile(q=5, divides=[7], not_divides=[13]), 2)
        j = res.chain_justification()
        assert "split=[5, 7]" in j.rule and "tail=17" in j.rule
        assert j.rhs == Fraction(1007, 4080)
