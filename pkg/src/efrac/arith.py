"""Integer arithmetic substrate: factorization, divisors, sigma, lcm ranges, prime sieving.

Unbounded naturals are plain Python ints and exact rationals are
fractions.Fraction; both already satisfy the contracts needed here
(canonical representation, exact total operations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ResourceBudgetError, StructureError

TRIAL_DIVISION_LIMIT = 10**6
SIEVE_DEFAULT_CAP = 10**9
_SEGMENT_SIZE = 1 << 18


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its prime factorization.

    factors holds (prime, exponent) pairs with primes strictly increasing
    and every exponent >= 1; the product reconstructs value.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def factorize(n: int) -> FactoredInteger:
    """Factor n by trial division.

    Inputs with a prime factor above 10**6 are rejected rather than
    attempting general-purpose factoring.
    """
    if n < 1:
        raise StructureError(f"factorize requires a positive integer, got {n}")
    rest = n
    factors: list[tuple[int, int]] = []
    p = 2
    while p * p <= rest:
        if p > TRIAL_DIVISION_LIMIT:
            raise StructureError(
                f"{n} has a prime factor above {TRIAL_DIVISION_LIMIT}; refusing to factor it"
            )
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        if rest > TRIAL_DIVISION_LIMIT:
            raise StructureError(
                f"{n} has a prime factor above {TRIAL_DIVISION_LIMIT}; refusing to factor it"
            )
        factors.append((rest, 1))
    return FactoredInteger(n, tuple(factors))


def _coerce(m: int | FactoredInteger) -> FactoredInteger:
    return m if isinstance(m, FactoredInteger) else factorize(m)


def divisors_sorted(m: int | FactoredInteger) -> list[int]:
    """All divisors of m in strictly increasing order."""
    fm = _coerce(m)
    divs = [1]
    for p, e in fm.factors:
        pk = 1
        extended = list(divs)
        for _ in range(e):
            pk *= p
            extended.extend(d * pk for d in divs)
        divs = extended
    divs.sort()
    return divs


def sigma(m: int | FactoredInteger) -> int:
    """Sum of all divisors of m."""
    fm = _coerce(m)
    total = 1
    for p, e in fm.factors:
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def lcm_range(m: int) -> int:
    """Least common multiple of 1..m."""
    if m < 1:
        raise StructureError(f"lcm_range requires m >= 1, got {m}")
    out = 1
    for k in range(2, m + 1):
        out = math.lcm(out, k)
    return out


def p_adic_valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n."""
    if n < 1:
        raise StructureError(f"valuation requires n >= 1, got {n}")
    if not is_prime(p):
        raise StructureError(f"valuation base must be prime, got {p}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_prime(n: int) -> bool:
    """Primality by trial division; adequate for the magnitudes used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def primes_upto(x: int, cap: int = SIEVE_DEFAULT_CAP) -> list[int]:
    """All primes <= x in increasing order, by a segmented sieve of Eratosthenes.

    The limit is bounded by cap (default 10**9) to prevent accidental
    memory blowup.
    """
    if x < 1:
        raise StructureError(f"primes_upto requires x >= 1, got {x}")
    if x > cap:
        raise ResourceBudgetError(f"sieve limit {x} exceeds the configured cap {cap}")
    if x < 2:
        return []
    root = math.isqrt(x)
    flags = bytearray(b"\x01") * (root + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(root) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(range(i * i, root + 1, i))
    base = [i for i in range(2, root + 1) if flags[i]]
    primes = list(base)
    lo = root + 1
    while lo <= x:
        hi = min(lo + _SEGMENT_SIZE - 1, x)
        seg = bytearray(b"\x01") * (hi - lo + 1)
        for p in base:
            start = ((lo + p - 1) // p) * p
            seg[start - lo :: p] = b"\x00" * ((hi - start) // p + 1)
        primes.extend(i + lo for i in range(hi - lo + 1) if seg[i])
        lo = hi + 1
    return primes
