"""Directed-rounding logarithms of positive integers in dyadic fixed point.

log v is reduced by bit length, log v = k*log 2 + 2*atanh(z) with
z = (v - 2**k)/(v + 2**k) in [0, 1/3), and the atanh series is summed in
integer fixed point with every operation rounded toward the requested
side.  The result is a dyadic rational that is certified to sit on that
side of the true logarithm, within 2**-precision_bits of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import StructureError

# Extra working bits absorb the per-operation rounding; the series takes
# about prec/3 terms (each a factor z**2 < 1/9 smaller), so the total
# slack stays far below 2**GUARD_BITS ulps.
GUARD_BITS = 16


@dataclass(frozen=True)
class LogUpper:
    """Dyadic rational >= log of the argument, within 2**-precision_bits."""

    value: Fraction
    precision_bits: int


@dataclass(frozen=True)
class LogLower:
    """Dyadic rational <= log of the argument, within 2**-precision_bits."""

    value: Fraction
    precision_bits: int


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


_log2_cache: dict[tuple[int, bool], int] = {}


def _log2_fixed(prec: int, upper: bool) -> int:
    """log 2 at scale 2**prec, via 2*atanh(1/3) with exact term denominators."""
    key = (prec, upper)
    hit = _log2_cache.get(key)
    if hit is not None:
        return hit
    one = 1 << prec
    total = 0
    j = 0
    den3 = 3  # 3**(2j+1)
    while True:
        if one // den3 == 0:
            # remaining tail is under (9/8) ulp
            if upper:
                total += 2
            break
        den = den3 * (2 * j + 1)
        total += _ceil_div(one, den) if upper else one // den
        j += 1
        den3 *= 9
    total *= 2
    _log2_cache[key] = total
    return total


def _atanh_fixed(num: int, den: int, prec: int, upper: bool) -> int:
    """atanh(num/den) at scale 2**prec for 0 <= num/den < 1/3, one-sided."""
    if num == 0:
        return 0
    one = 1 << prec
    if upper:
        z = _ceil_div(num << prec, den)
        zsq = _ceil_div(z * z, one)
    else:
        z = (num << prec) // den
        zsq = (z * z) >> prec
    total = 0
    power = z
    j = 0
    while True:
        odd = 2 * j + 1
        if power <= odd:
            # tail <= (9/8) * power / odd <= 2 ulps since z**2 < 1/9
            if upper:
                total += 2
            break
        if upper:
            total += _ceil_div(power, odd)
            power = _ceil_div(power * zsq, one)
        else:
            total += power // odd
            power = (power * zsq) >> prec
        j += 1
    return total


def log_numerator(v: int, prec: int, upper: bool) -> int:
    """Integer m with m / 2**prec on the chosen side of log v."""
    if v < 1:
        raise StructureError(f"logarithm argument must be a positive integer, got {v}")
    if v == 1:
        return 0
    k = v.bit_length() - 1
    rem = v - (1 << k)
    at = _atanh_fixed(rem, v + (1 << k), prec, upper)
    return k * _log2_fixed(prec, upper) + 2 * at


def log_upper(v: int, precision_bits: int = 64) -> LogUpper:
    """Certified upper bound on log v, good to 2**-precision_bits."""
    prec = precision_bits + GUARD_BITS
    m = log_numerator(v, prec, upper=True)
    return LogUpper(Fraction(m, 1 << prec), precision_bits)


def log_lower(v: int, precision_bits: int = 64) -> LogLower:
    """Certified lower bound on log v, good to 2**-precision_bits."""
    prec = precision_bits + GUARD_BITS
    m = log_numerator(v, prec, upper=False)
    return LogLower(Fraction(m, 1 << prec), precision_bits)
