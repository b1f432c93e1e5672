"""Sum-set enumeration and reachable-set counting."""

import math
from fractions import Fraction

import pytest

from efrac.arith import divisors_sorted
from efrac.errors import ResourceBudgetError, StructureError
from efrac.subsetsum import (
    chain_counts,
    divisor_chain,
    egyptian_set,
    enumerate_egyptian,
    reachable_prefixes,
    signed_set_cardinality_check,
    subset_sum_counts,
    sum_set_stats,
)

FIRST_TWELVE = [2, 4, 8, 16, 32, 52, 104, 208, 416, 832, 1664, 1856]


def test_enumerate_first_values():
    assert enumerate_egyptian(1) == [2]
    assert enumerate_egyptian(6) == FIRST_TWELVE[:6]
    assert enumerate_egyptian(12) == FIRST_TWELVE


def test_enumerate_matches_rational_set_sizes():
    for n in range(1, 13):
        assert len(egyptian_set(n)) == FIRST_TWELVE[n - 1]


def test_egyptian_set_contains_extremes():
    es = egyptian_set(9)
    assert Fraction(0) in es.elements
    assert sum(Fraction(1, k) for k in range(1, 10)) in es.elements


def test_enumerate_rejects_nonpositive():
    with pytest.raises(StructureError):
        enumerate_egyptian(0)


def test_enumerate_budget_error_names_failing_index():
    with pytest.raises(ResourceBudgetError) as err:
        enumerate_egyptian(25, memory_budget=1 << 20)
    assert "N=" in str(err.value)


def test_chain_counts_examples():
    assert chain_counts(divisor_chain(6)) == [2, 4, 8, 13]
    assert chain_counts(divisor_chain(12))[-1] == 29
    assert subset_sum_counts([1]) == [2]


def _prefix_counts_by_rationals(elems):
    sums = {Fraction(0)}
    out = []
    for a in elems:
        step = Fraction(1, a)
        sums |= {s + step for s in sums}
        out.append(len(sums))
    return out


def test_counts_match_rational_enumeration_for_all_small_sets():
    universe = list(range(1, 13))
    for mask in range(1, 1 << 12):
        elems = [universe[i] for i in range(12) if mask >> i & 1]
        assert subset_sum_counts(elems) == _prefix_counts_by_rationals(elems)


def test_count_step_monotonicity():
    for m in (60, 360, 2520):
        counts = chain_counts(divisor_chain(m))
        for a, b in zip(counts, counts[1:]):
            assert a + 1 <= b <= 2 * a


def test_reachable_scale_and_max_bit():
    chain = divisor_chain(360)
    for i, rs in enumerate(reachable_prefixes(chain.divisors), start=1):
        lcm_i = chain.prefix_lcm[i - 1]
        assert rs.scale == lcm_i
        assert rs.max_bit == sum(lcm_i // a for a in chain.divisors[:i])
        assert rs.bits & 1  # the empty subset


def test_divisor_chain_metadata():
    ch = divisor_chain(360)
    assert list(ch.divisors) == divisors_sorted(360)
    assert ch.prefix_lcm[-1] == 360
    for a, b in zip(ch.prefix_lcm, ch.prefix_lcm[1:]):
        assert b % a == 0
    assert list(ch.prefix_card) == list(range(1, len(ch.divisors) + 1))


def test_reachable_prefixes_input_validation():
    with pytest.raises(StructureError):
        list(reachable_prefixes([]))
    with pytest.raises(StructureError):
        list(reachable_prefixes([2, 2]))
    with pytest.raises(StructureError):
        list(reachable_prefixes([3, 2]))


def test_chain_budget_error_names_prefix():
    with pytest.raises(ResourceBudgetError) as err:
        list(reachable_prefixes([1, 500000], memory_budget=1 << 20))
    assert "prefix 2" in str(err.value)


def test_prime_steps_double(table1_cards):
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29):
        prev = table1_cards[p - 2] if p >= 2 else 1
        assert table1_cards[p - 1] == 2 * prev


def test_cardinality_never_exceeds_power_of_two(table1_cards):
    # all subset sums are distinct through N=5, strict inequality after
    for n, c in enumerate(table1_cards, start=1):
        assert c <= 2**n
        if n >= 6:
            assert c < 2**n


def test_sum_set_stats_values(table1_cards):
    stats = sum_set_stats(8)
    assert stats[0][:2] == (1, 2)
    assert stats[0][2] == pytest.approx(math.log(2))
    assert stats[0][3] is None
    assert stats[1][3] == pytest.approx(math.log(2) ** 2)
    assert stats[5][1] == 52
    for row in stats:
        assert row[1] == table1_cards[row[0] - 1]
        assert row[2] == pytest.approx(math.log(row[1]) / row[0])
        if row[0] >= 2:
            assert row[3] == pytest.approx(row[2] * math.log(row[0]))


def test_signed_sums_match_plain_counts():
    rows = signed_set_cardinality_check(6)
    assert [r[1] for r in rows] == [r[2] for r in rows]
    assert rows[0][1] == 2
    assert rows[2][1] == 8
    assert rows[5][1] == 52


def test_signed_check_cap():
    with pytest.raises(ResourceBudgetError):
        signed_set_cardinality_check(21)
