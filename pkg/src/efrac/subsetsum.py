"""Exact subset-sum machinery over scaled integers.

Egyptian-fraction sum sets are walked through the recurrence
set(N) = set(N-1) union (set(N-1) + 1/N) with elements held as integer
numerators over the running scale lcm(1..N), deduplicated by hashing.
Reachable sets of unit-fraction subset sums over divisor chains are held
as bit-vectors (one bit per numerator at the prefix lcm scale) and updated
incrementally: stretch on a scale change, then OR with a shifted copy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .arith import FactoredInteger, divisors_sorted, factorize
from .errors import ResourceBudgetError, StructureError

DEFAULT_MEMORY_BUDGET = 8 << 30

# rough per-element footprint of a small int inside a Python set
_SET_ENTRY_BYTES = 80
_SIGNED_ENUM_CAP = 20


@dataclass(frozen=True)
class EgyptianSet:
    """All sums of distinct unit fractions with denominators <= n."""

    n: int
    elements: frozenset[Fraction]

    def __len__(self) -> int:
        return len(self.elements)


def egyptian_set(n: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> EgyptianSet:
    """Materialize the sum set at index n as exact rationals (small n only)."""
    if n < 1:
        raise StructureError(f"egyptian_set requires n >= 1, got {n}")
    cur: set[Fraction] = {Fraction(0)}
    for k in range(1, n + 1):
        if 2 * len(cur) * 4 * _SET_ENTRY_BYTES > memory_budget:
            raise ResourceBudgetError(
                f"rational sum set would exceed the memory budget at N={k}"
            )
        step = Fraction(1, k)
        cur |= {x + step for x in cur}
    return EgyptianSet(n, frozenset(cur))


def enumerate_egyptian(
    max_n: int, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> list[int]:
    """Cardinalities of the sum sets for N = 1..max_n.

    Element N-1 of the result is the size of the set at index N.  The
    practical ceiling is N around 30 (about 16M elements) under the
    default 8 GiB budget.
    """
    if max_n < 1:
        raise StructureError(f"max_n must be >= 1, got {max_n}")
    counts: list[int] = []
    cur: set[int] = {0}
    scale = 1
    for n in range(1, max_n + 1):
        projected = 3 * len(cur) * _SET_ENTRY_BYTES
        if projected > memory_budget:
            raise ResourceBudgetError(
                f"enumeration needs about {projected} bytes at N={n}, "
                f"budget is {memory_budget}"
            )
        s = n // math.gcd(scale, n)
        if s != 1:
            scale *= s
            cur = {x * s for x in cur}
        off = scale // n
        cur |= {x + off for x in cur}
        counts.append(len(cur))
    return counts


@dataclass(frozen=True)
class DivisorChain:
    """Sorted divisors of a modulus with per-prefix lcm and cardinality."""

    modulus: int
    divisors: tuple[int, ...]
    prefix_lcm: tuple[int, ...]
    prefix_card: tuple[int, ...]


def divisor_chain(m: int | FactoredInteger) -> DivisorChain:
    fm = m if isinstance(m, FactoredInteger) else factorize(m)
    ds = divisors_sorted(fm)
    lcms = []
    run = 1
    for a in ds:
        run = math.lcm(run, a)
        lcms.append(run)
    return DivisorChain(fm.value, tuple(ds), tuple(lcms), tuple(range(1, len(ds) + 1)))


@dataclass
class ReachableSet:
    """Subset-sum reachable set as a bit-vector over numerators at a common scale.

    Bit j is set exactly when j/scale is reachable; bit 0 (the empty
    subset) is always set, and length tracks the allocated positions
    1 + sum(scale // a) over the elements absorbed so far.
    """

    scale: int
    bits: int
    length: int

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    @property
    def max_bit(self) -> int:
        return self.bits.bit_length() - 1

    def stretched(self, factor: int) -> "ReachableSet":
        """Re-encode at scale * factor (bit j moves to j * factor)."""
        bits, length = _stretch_bits(self.bits, self.length, factor)
        return ReachableSet(self.scale * factor, bits, length)

    def extended(self, a: int) -> "ReachableSet":
        """Absorb element a: OR with a copy shifted by scale // a."""
        if self.scale % a:
            raise StructureError(f"scale {self.scale} is not divisible by {a}")
        off = self.scale // a
        return ReachableSet(self.scale, self.bits | (self.bits << off), self.length + off)


def _stretch_bits(bits: int, nbits: int, s: int) -> tuple[int, int]:
    raw = bits.to_bytes((nbits + 7) // 8, "little")
    arr = np.unpackbits(np.frombuffer(raw, np.uint8), bitorder="little", count=nbits)
    pos = np.flatnonzero(arr).astype(np.int64) * s
    new_n = (nbits - 1) * s + 1
    out = np.zeros(((new_n + 7) // 8) * 8, np.uint8)
    out[pos] = 1
    packed = np.packbits(out, bitorder="little").tobytes()
    return int.from_bytes(packed, "little"), new_n


def reachable_prefixes(
    elements: Sequence[int], memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> Iterator[ReachableSet]:
    """Yield the reachable set after each prefix of a strictly increasing list."""
    if not elements:
        raise StructureError("reachable_prefixes requires a nonempty element list")
    prev = 0
    for a in elements:
        if a <= prev:
            raise StructureError(f"elements must be strictly increasing, got {a} after {prev}")
        prev = a
    rs = ReachableSet(scale=1, bits=1, length=1)
    for idx, a in enumerate(elements, start=1):
        s = a // math.gcd(rs.scale, a)
        new_len = (rs.length - 1) * s + 1 + (rs.scale * s) // a
        # transient byte arrays during a stretch dominate the footprint
        if new_len * 5 // 2 > memory_budget:
            raise ResourceBudgetError(
                f"bit-vector would need {new_len} bits at prefix {idx}, "
                f"over the {memory_budget}-byte budget"
            )
        if s != 1:
            rs = rs.stretched(s)
        rs = rs.extended(a)
        yield rs


def subset_sum_counts(
    elements: Sequence[int], memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> list[int]:
    """Exact reachable-set sizes for every prefix of the element list."""
    return [rs.count for rs in reachable_prefixes(elements, memory_budget)]


def chain_counts(
    chain: DivisorChain, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> list[int]:
    """Exact reachable-set sizes along a divisor chain, returned per prefix."""
    return subset_sum_counts(chain.divisors, memory_budget)


def sum_set_stats(
    max_n: int, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> list[tuple[int, int, float, float | None]]:
    """Per-N growth data: (N, card, log(card)/N, log(card)/(N/log N)).

    The last entry is None at N=1 where log N vanishes.
    """
    counts = enumerate_egyptian(max_n, memory_budget)
    rows = []
    for n, c in enumerate(counts, start=1):
        lc = math.log(c)
        scaled = lc * math.log(n) / n if n >= 2 else None
        rows.append((n, c, lc / n, scaled))
    return rows


def signed_set_cardinality_check(
    max_n: int, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> list[tuple[int, int, int]]:
    """Rows (N, signed-sum count, sum-set count) for N <= max_n.

    The signed side enumerates all sums with coefficients -1/+1
    independently of the 0/1 enumeration; the two cardinalities agree
    because the map doubling a sum set element and subtracting the full
    harmonic sum is a bijection onto the signed sums.
    """
    if max_n < 1:
        raise StructureError(f"max_n must be >= 1, got {max_n}")
    if max_n > _SIGNED_ENUM_CAP:
        raise ResourceBudgetError(
            f"signed enumeration is capped at {_SIGNED_ENUM_CAP}, got {max_n}"
        )
    plain = enumerate_egyptian(max_n, memory_budget)
    rows = []
    cur: set[int] = {0}
    scale = 1
    for n in range(1, max_n + 1):
        s = n // math.gcd(scale, n)
        if s != 1:
            scale *= s
            cur = {x * s for x in cur}
        off = scale // n
        cur = {x - off for x in cur} | {x + off for x in cur}
        rows.append((n, len(cur), plain[n - 1]))
    return rows
