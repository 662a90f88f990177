"""Parametrized double representations, quartic factors, and the search.

The search oracle is a pure-dict brute force kept independent of the
vectorized implementation on purpose.
"""

import math
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from biquadrank.arith import gcd_many, is_square
from biquadrank.biquadrate import (
    MAX_SEARCH_BASE,
    BiquadQuadruple,
    NotASquare,
    NotEqual,
    euler_quadruple,
    euler_raw_quadruple,
    fourth_power_witness,
    quartic_factors,
    recover_euler_params,
    representations,
    search_double_representations,
    validate_double_representation,
    witness_root_polynomial,
)

nonzero_param = st.integers(min_value=-50, max_value=50).filter(lambda v: v != 0)


class TestParametrization:
    def test_smallest_member(self):
        quad = euler_quadruple(1, 1)
        assert quad.components() == (2, -1, -1, 2)
        assert quad.n == 17
        assert quad.reduction == 2
        assert quad.primitive
        assert quad.degenerate

    def test_first_nondegenerate_member(self):
        quad = euler_quadruple(2, 1)
        assert quad.components() == (158, -59, 134, 133)
        assert quad.n == 635318657
        assert quad.reduction == 1
        assert not quad.degenerate
        assert quad.pairs() == ((59, 158), (133, 134))

    def test_reduced_member(self):
        quad = euler_quadruple(3, 1)
        assert quad.components() == (1203, -76, 1176, 653)
        assert quad.n == 2094447251857
        assert quad.reduction == 2

    @settings(max_examples=150, deadline=None)
    @given(nonzero_param, nonzero_param)
    def test_identity_everywhere(self, a, b):
        p, q, r, s = euler_raw_quadruple(a, b)
        assert p**4 + q**4 == r**4 + s**4

    @settings(max_examples=80, deadline=None)
    @given(nonzero_param, nonzero_param)
    def test_reduced_quadruple_is_primitive(self, a, b):
        quad = euler_quadruple(a, b)
        assert gcd_many(quad.components()) == 1
        assert quad.primitive
        assert quad.n == quad.p**4 + quad.q**4

    @settings(max_examples=60, deadline=None)
    @given(nonzero_param, nonzero_param)
    def test_sign_flips_preserve_n(self, a, b):
        n = euler_quadruple(a, b).n
        assert euler_quadruple(a, -b).n == n
        assert euler_quadruple(-a, b).n == n
        assert euler_quadruple(-a, -b).n == n

    def test_zero_parameters_rejected(self):
        with pytest.raises(ValueError):
            euler_raw_quadruple(0, 1)
        with pytest.raises(ValueError):
            euler_quadruple(3, 0)


class TestValidation:
    def test_accepts_true_equality(self):
        quad = validate_double_representation(59, 158, 133, 134)
        assert quad.n == 635318657
        assert quad.primitive and not quad.degenerate

    def test_rejects_false_equality(self):
        with pytest.raises(NotEqual):
            validate_double_representation(1, 2, 3, 4)

    def test_flags_common_factor(self):
        quad = validate_double_representation(118, 316, 266, 268)
        assert quad.n == 16 * 635318657
        assert not quad.primitive

    def test_degenerate_multiset(self):
        quad = validate_double_representation(2, -1, -1, 2)
        assert quad.degenerate


class TestQuarticFactors:
    def test_values_at_2_1(self):
        f = quartic_factors(2, 1)
        assert (f.A, f.B, f.C, f.D) == (41, 569, 113, 241)
        assert (f.b1, f.b2) == (137129, -4633)
        assert f.n_raw == 635318657
        assert f.A * f.B * f.C * f.D == f.n_raw

    def test_values_at_1_1(self):
        f = quartic_factors(1, 1)
        assert (f.A, f.B, f.C, f.D) == (8, 17, 2, 1)
        assert f.n_raw == 272  # 16 * 17: the reduction fourth power shows up here

    def test_values_at_3_1(self):
        f = quartic_factors(3, 1)
        assert (f.A, f.B, f.C, f.D) == (136, 8929, 4258, 6481)
        assert f.b1 == 57868849
        quad = euler_quadruple(3, 1)
        assert f.n_raw == quad.n * quad.reduction**4

    @settings(max_examples=120, deadline=None)
    @given(nonzero_param, nonzero_param)
    def test_product_identity_everywhere(self, a, b):
        f = quartic_factors(a, b)
        p, q, _, _ = euler_raw_quadruple(a, b)
        assert f.A * f.B * f.C * f.D == p**4 + q**4
        assert f.b1 * f.b2 == -f.n_raw

    @settings(max_examples=80, deadline=None)
    @given(nonzero_param, nonzero_param)
    def test_nonsquare_side_conditions(self, a, b):
        f = quartic_factors(a, b)
        if abs(a) != abs(b):
            assert not is_square(f.A)
            assert not is_square(f.D)


class TestFourthPowerWitness:
    def test_witness_values(self):
        assert fourth_power_witness(1, 1) == (1, 1)
        assert fourth_power_witness(2, 1) == (132496, 364)
        assert fourth_power_witness(3, 1) == (57289761, 7569)

    @settings(max_examples=120, deadline=None)
    @given(nonzero_param, nonzero_param)
    def test_witness_is_square_everywhere(self, a, b):
        K, N = fourth_power_witness(a, b)
        assert N * N == K
        f = quartic_factors(a, b)
        assert K == f.b1 + f.b2 * b**4

    def test_root_polynomial_exponent(self):
        # the quadratic (not cubic) exponent on the middle term is what makes
        # N^2 == K; the cubic variant misses already at (2, 1)
        assert witness_root_polynomial(2, 1) == 91
        wrong = 2**6 + 2**4 + 4 * 2**3 - 5
        assert (2**2 * wrong) ** 2 == 183184
        assert fourth_power_witness(2, 1)[0] == 132496
        assert 183184 != 132496


def brute_force_search(max_base: int) -> list[tuple[int, int, int, int, int]]:
    """Dict-of-lists oracle, no numpy, no dedup tricks."""
    by_sum: dict[int, list[tuple[int, int]]] = {}
    for q in range(1, max_base + 1):
        for p in range(1, q + 1):
            by_sum.setdefault(p**4 + q**4, []).append((p, q))
    out = []
    for n in sorted(by_sum):
        reps = sorted(by_sum[n])
        for (p, q), (r, s) in combinations(reps, 2):
            if math.gcd(math.gcd(p, q), math.gcd(r, s)) == 1:
                out.append((p, q, r, s, n))
    return out


class TestSearch:
    def test_matches_brute_force_to_300(self):
        got = [
            (t.p, t.q, t.r, t.s, t.n) for t in search_double_representations(300)
        ]
        assert got == sorted(brute_force_search(300), key=lambda t: (t[4], t[:4]))

    def test_smallest_hit_is_unique_below_200(self):
        found = search_double_representations(200)
        assert len(found) == 1
        assert found[0].n == 635318657
        assert found[0].pairs() == ((59, 158), (133, 134))

    def test_no_hits_below_100(self):
        assert search_double_representations(100) == []

    def test_sharding_is_transparent(self):
        assert search_double_representations(300, shards=4) == search_double_representations(300)

    def test_results_are_primitive_distinct_pairs(self):
        for quad in search_double_representations(700, shards=2):
            assert gcd_many(quad.components()) == 1
            a, b = quad.pairs()
            assert a != b
            assert quad.p**4 + quad.q**4 == quad.r**4 + quad.s**4 == quad.n

    def test_large_scan_reaches_known_value(self):
        hits = {t.n for t in search_double_representations(3500, shards=4)}
        assert 155974778565937 in hits

    def test_bounds_enforced(self):
        with pytest.raises(ValueError):
            search_double_representations(1)
        with pytest.raises(ValueError):
            search_double_representations(MAX_SEARCH_BASE + 1)
        with pytest.raises(ValueError):
            search_double_representations(100, shards=0)


class TestRepresentations:
    def test_known_values(self):
        assert representations(17) == [(1, 2)]
        assert representations(635318657) == [(59, 158), (133, 134)]
        assert representations(2) == [(1, 1)]
        assert representations(1) == []
        assert representations(3) == []

    def test_max_base_cap(self):
        # the cap bounds the larger element, mirroring the search semantics
        assert representations(635318657, max_base=100) == []
        assert representations(635318657, max_base=140) == [(133, 134)]
        assert representations(17, max_base=1) == []


class TestRecoverEulerParams:
    def test_recovers_reference_quadruple(self):
        quad = validate_double_representation(158, -59, 134, 133)
        params = recover_euler_params(quad)
        assert params is not None
        assert euler_quadruple(*params).pairs() in (
            quad.pairs(),
            tuple(reversed(quad.pairs())),
        )

    def test_recovers_reduced_quadruple(self):
        quad = validate_double_representation(1203, -76, 1176, 653)
        params = recover_euler_params(quad)
        assert params is not None
        assert {abs(params[0]), abs(params[1])} == {3, 1}

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(min_value=1, max_value=8),
        st.integers(min_value=1, max_value=8),
    )
    def test_roundtrip_on_family(self, a, b):
        source = euler_quadruple(a, b)
        quad = validate_double_representation(*source.components())
        params = recover_euler_params(quad)
        assert params is not None
        assert euler_quadruple(*params).pairs() in (
            quad.pairs(),
            tuple(reversed(quad.pairs())),
        )

    def test_unrelated_quadruple_returns_none(self):
        # degenerate but not of parametrized shape
        quad = validate_double_representation(5, 7, 7, 5)
        assert recover_euler_params(quad) is None
