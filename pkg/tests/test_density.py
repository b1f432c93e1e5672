"""Natural density of valuation-constrained integer sets."""

import math
import random
from fractions import Fraction

import pytest

from efrac.arith import divisors_sorted, p_adic_valuation, sigma
from efrac.density import (
    delta_from_profile,
    empirical_density,
    profile_from_set,
    profile_of_modulus,
    valuation_profile,
)
from efrac.errors import StructureError


def test_delta_of_trivial_profile():
    assert delta_from_profile(valuation_profile({})) == 1
    assert delta_from_profile(valuation_profile({2: 1, 5: 1})) == 1


def test_delta_examples():
    assert delta_from_profile(valuation_profile({2: 2})) == Fraction(2, 3)
    assert delta_from_profile(profile_of_modulus(12)) == Fraction(3, 7)


def test_profile_from_set_examples():
    p1 = profile_from_set([1])
    assert p1.mu == () and p1.modulus == 1
    p2 = profile_from_set([1, 2, 3, 6])
    assert p2.mu == ((2, 2), (3, 2))
    assert p2.modulus == 6
    assert profile_from_set(divisors_sorted(12)).modulus == 12


def test_profile_modulus_is_lcm_of_the_set():
    rng = random.Random(5)
    for _ in range(200):
        xs = [rng.randrange(1, 500) for _ in range(rng.randrange(1, 6))]
        assert profile_from_set(xs).modulus == math.lcm(*xs)


def test_mu_lookup_defaults_to_one():
    profile = valuation_profile({2: 3})
    assert profile.mu_of(2) == 3
    assert profile.mu_of(7) == 1


def test_delta_equals_modulus_over_sigma():
    for m in range(1, 2001):
        assert delta_from_profile(profile_of_modulus(m)) == Fraction(m, sigma(m))


def test_validation_errors():
    with pytest.raises(StructureError):
        valuation_profile({4: 2})
    with pytest.raises(StructureError):
        valuation_profile({2: 0})
    with pytest.raises(StructureError):
        profile_from_set([])
    with pytest.raises(StructureError):
        profile_from_set([0])
    with pytest.raises(StructureError):
        empirical_density(valuation_profile({}), 0)


def test_empirical_trivial_profile_counts_everything():
    assert empirical_density(valuation_profile({}), 100) == 1


def test_empirical_small_case_by_hand():
    # admissible below 8 with mu_2 = 2: 1, 3, 4, 5, 7
    assert empirical_density(valuation_profile({2: 2}), 8) == Fraction(5, 8)


def test_empirical_error_shrinks_with_square_root_rate():
    for m in (2, 12):
        profile = profile_of_modulus(m)
        delta = delta_from_profile(profile)
        errs = {
            x: abs(empirical_density(profile, x) - delta)
            for x in (10**3, 10**4, 10**5, 10**6)
        }
        # calibrate C once from the smallest sample, then require C/sqrt(x)
        c = max(errs[10**3], Fraction(1, 2000)) * math.isqrt(10**3) * 2
        for x in (10**4, 10**5, 10**6):
            assert errs[x] <= c / math.isqrt(x)
        # and the error shrinks on average across the four samples
        seq = [errs[10**3], errs[10**4], errs[10**5], errs[10**6]]
        assert (seq[2] + seq[3]) / 2 < (seq[0] + seq[1]) / 2


def test_scaled_translates_of_distinct_members_are_disjoint():
    ds = divisors_sorted(60)
    profile = profile_from_set(ds)

    def member(n):
        return all(p_adic_valuation(n, p) % mu == 0 for p, mu in profile.mu)

    pool = [n for n in range(1, 20000) if member(n)]
    rng = random.Random(60)
    for _ in range(1000):
        k1, k2 = rng.sample(pool, 2)
        products = {k1 * a for a in ds}
        assert not products & {k2 * a for a in ds}
