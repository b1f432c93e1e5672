"""Certified upper bounds on the exponential growth constant of the sum sets.

Every report carries an exact dyadic-rational value that is a true upper
bound: all coefficients are exact rationals, and only logarithms are
approximated, each rounded toward the side that keeps the total an upper
bound.  The printed decimal is the ceiling of that value at 8 digits.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import FactoredInteger, divisors_sorted, factorize
from .certlog import GUARD_BITS, log_numerator
from .density import delta_from_profile, profile_from_set
from .errors import InvalidCountError, StructureError
from .subsetsum import DivisorChain

DEFAULT_PRECISION_BITS = 64
_PARALLEL_FLOOR = 64


@dataclass(frozen=True)
class BoundReport:
    """One certified upper bound, with the inputs needed to re-evaluate it."""

    method: str
    modulus: int
    exact_modulus: int | None
    delta: Fraction
    bound_upper: str
    bound_exact: Fraction
    precision_bits: int
    r_provenance: tuple[str, ...]
    counts: tuple[int, ...]
    maxima: tuple[int, ...] | None = None
    cards: tuple[int, ...] | None = None


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def ceil_decimal(x: Fraction, digits: int) -> str:
    """Smallest decimal with the given digits that is >= x (x nonnegative)."""
    if x < 0:
        raise StructureError("bound values are expected to be nonnegative")
    scaled = _ceil_div(x.numerator * 10**digits, x.denominator)
    q, r = divmod(scaled, 10**digits)
    return f"{q}.{r:0{digits}d}"


def _dyadic(m: int, prec: int) -> Fraction:
    return Fraction(m, 1 << prec)


def _chain_report(
    method: str,
    modulus: int,
    delta: Fraction,
    maxima: Sequence[int],
    cards: Sequence[int],
    counts: Sequence[int],
    precision_bits: int,
) -> BoundReport:
    prec = precision_bits + GUARD_BITS
    ell = len(maxima)
    coeff_sum = Fraction(0)
    for i in range(ell):
        c = Fraction(1, maxima[i])
        if i + 1 < ell:
            c -= Fraction(1, maxima[i + 1])
        coeff_sum += c * cards[i]
    log2_weight = 1 - delta * coeff_sum
    side = log2_weight >= 0
    acc = log2_weight * _dyadic(log_numerator(2, prec, upper=side), prec)
    for i in range(ell):
        c = Fraction(1, maxima[i])
        if i + 1 < ell:
            c -= Fraction(1, maxima[i + 1])
        acc += delta * c * _dyadic(log_numerator(counts[i], prec, upper=True), prec)
    return BoundReport(
        method=method,
        modulus=modulus,
        exact_modulus=None,
        delta=delta,
        bound_upper=ceil_decimal(acc, 8),
        bound_exact=acc,
        precision_bits=precision_bits,
        r_provenance=("exact",) * ell,
        counts=tuple(counts),
        maxima=tuple(maxima),
        cards=tuple(cards),
    )


def _chunked(pairs: list[tuple[int, int]], parts: int) -> list[list[tuple[int, int]]]:
    size = max(1, (len(pairs) + parts - 1) // parts)
    return [pairs[i : i + size] for i in range(0, len(pairs), size)]


def _weighted_log_sum(pairs: list[tuple[int, int]], prec: int) -> int:
    return sum(u * log_numerator(v, prec, upper=True) for u, v in pairs)


def _divisor_report(
    method: str,
    modulus: int,
    exact_modulus: int | None,
    divisors: Sequence[int],
    counts: Sequence[int],
    provenance: Sequence[str],
    precision_bits: int,
    workers: int = 1,
) -> BoundReport:
    prec = precision_bits + GUARD_BITS
    ell = len(divisors)
    weights = []
    for i in range(ell):
        u = modulus // divisors[i]
        if i + 1 < ell:
            u -= modulus // divisors[i + 1]
        weights.append(u)
    pairs = list(zip(weights, counts))
    if workers > 1 and ell >= _PARALLEL_FLOOR:
        chunks = _chunked(pairs, workers * 4)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_weighted_log_sum, chunks, [prec] * len(chunks)))
    else:
        total = _weighted_log_sum(pairs, prec)
    sig = sum(divisors)
    exact = Fraction(total, sig << prec)
    return BoundReport(
        method=method,
        modulus=modulus,
        exact_modulus=exact_modulus,
        delta=Fraction(modulus, sig),
        bound_upper=ceil_decimal(exact, 8),
        bound_exact=exact,
        precision_bits=precision_bits,
        r_provenance=tuple(provenance),
        counts=tuple(counts),
    )


def _normalize_chain(chain_sets: Sequence[Iterable[int]]) -> list[tuple[int, ...]]:
    sets = []
    for raw in chain_sets:
        elems = sorted(set(raw))
        if not elems:
            raise StructureError("chain sets must be nonempty")
        if elems[0] < 1:
            raise StructureError("chain sets must contain positive integers")
        sets.append(tuple(elems))
    for a, b in zip(sets, sets[1:]):
        if not set(a) < set(b):
            raise StructureError("chain sets must be strictly nested")
    return sets


def _validate_counts(cards: Sequence[int], counts: Sequence[int]) -> None:
    if len(cards) != len(counts):
        raise StructureError(
            f"expected {len(cards)} counts, got {len(counts)}"
        )
    for card, r in zip(cards, counts):
        if r < 1:
            raise InvalidCountError(f"count {r} must be at least 1")
        if r > 1 << card:
            raise InvalidCountError(
                f"count {r} exceeds 2**{card}, impossible for a {card}-element set"
            )


def general_chain_bound(
    chain_sets: Sequence[Iterable[int]],
    r: Sequence[int],
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> BoundReport:
    """Upper bound from a strictly nested chain of sets with exact counts r."""
    sets = _normalize_chain(chain_sets)
    cards = [len(s) for s in sets]
    _validate_counts(cards, r)
    maxima = [s[-1] for s in sets]
    delta = delta_from_profile(profile_from_set(sets[-1]))
    modulus = math.lcm(*sets[-1])
    return _chain_report(
        "general-chain", modulus, delta, maxima, cards, list(r), precision_bits
    )


def single_set_bound(
    a: Iterable[int], r: int, precision_bits: int = DEFAULT_PRECISION_BITS
) -> BoundReport:
    """Upper bound from one set and its exact subset-sum count."""
    return replace(general_chain_bound([a], [r], precision_bits), method="single-set")


def full_divisor_bound(
    m: int | FactoredInteger,
    r: Sequence[int],
    precision_bits: int = DEFAULT_PRECISION_BITS,
    workers: int = 1,
) -> BoundReport:
    """Upper bound over the full divisor chain of m with exact prefix counts r.

    For full chains the log 2 terms cancel exactly, leaving
    delta * sum (1/a_i - 1/a_{i+1}) log r_i.
    """
    fm = m if isinstance(m, FactoredInteger) else factorize(m)
    ds = divisors_sorted(fm)
    _validate_counts(list(range(1, len(ds) + 1)), r)
    return _divisor_report(
        "full-divisor", fm.value, None, ds, list(r), ["exact"] * len(ds),
        precision_bits, workers,
    )


def reachable_count_cap(chain: DivisorChain, i: int) -> int:
    """Integer cap 1 + L_i * sum(1/a_k, k <= i) on the i-th reachable count (1-based)."""
    if not 1 <= i <= len(chain.divisors):
        raise StructureError(
            f"prefix index {i} out of range 1..{len(chain.divisors)}"
        )
    lcm_i = chain.prefix_lcm[i - 1]
    return 1 + sum(lcm_i // a for a in chain.divisors[:i])


def mixed_bound(
    m: int | FactoredInteger,
    m_exact: int | FactoredInteger,
    exact_counts: Sequence[int],
    precision_bits: int = DEFAULT_PRECISION_BITS,
    workers: int = 1,
) -> BoundReport:
    """Upper bound over the divisors of m using exact counts only on divisors of m_exact.

    Each divisor prefix count of m is estimated by the smaller of the
    harmonic cap and an exact count of the deepest divisor prefix of
    m_exact that fits below the divisor, doubled once per extra element;
    both estimates dominate the true count, so the result stays certified.
    """
    fm = m if isinstance(m, FactoredInteger) else factorize(m)
    fme = m_exact if isinstance(m_exact, FactoredInteger) else factorize(m_exact)
    if fm.value % fme.value:
        raise StructureError(
            f"{fme.value} does not divide {fm.value}; exact counts cannot be reused"
        )
    small = divisors_sorted(fme)
    _validate_counts(list(range(1, len(small) + 1)), exact_counts)
    ds = divisors_sorted(fm)
    counts: list[int] = []
    provenance: list[str] = []
    run_lcm = 1
    harmonic = 0  # sum of run_lcm // a over the prefix
    for i, a in enumerate(ds):
        s = a // math.gcd(run_lcm, a)
        if s != 1:
            run_lcm *= s
            harmonic *= s
        harmonic += run_lcm // a
        cap = harmonic + 1
        j = bisect_right(small, a) - 1
        lifted = exact_counts[j] << (i - j)
        if j == i:
            counts.append(exact_counts[j])
            provenance.append("exact")
        elif cap <= lifted:
            counts.append(cap)
            provenance.append("cap")
        else:
            counts.append(lifted)
            provenance.append("lifted")
    return _divisor_report(
        "mixed", fm.value, fme.value, ds, counts, provenance, precision_bits, workers
    )


def reevaluate(report: BoundReport, precision_bits: int) -> BoundReport:
    """Recompute a report at a different log precision, reusing its stored counts."""
    if report.method in ("full-divisor", "mixed"):
        ds = divisors_sorted(factorize(report.modulus))
        return _divisor_report(
            report.method,
            report.modulus,
            report.exact_modulus,
            ds,
            report.counts,
            report.r_provenance,
            precision_bits,
        )
    if report.maxima is None or report.cards is None:
        raise StructureError("report does not carry enough data to re-evaluate")
    rebuilt = _chain_report(
        report.method,
        report.modulus,
        report.delta,
        report.maxima,
        report.cards,
        report.counts,
        precision_bits,
    )
    return replace(rebuilt, method=report.method)
