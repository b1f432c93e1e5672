"""Natural density of integers whose p-adic valuations are divisible by prescribed moduli."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .arith import FactoredInteger, is_prime
from .errors import StructureError


@dataclass(frozen=True)
class ValuationProfile:
    """Finite map prime -> mu_p; primes absent from the map carry mu_p = 1.

    Only entries with mu_p >= 2 are stored (a mu_p of 1 constrains nothing).
    The associated modulus is the product of p**(mu_p - 1).
    """

    mu: tuple[tuple[int, int], ...]

    @property
    def modulus(self) -> int:
        m = 1
        for p, mu in self.mu:
            m *= p ** (mu - 1)
        return m

    def mu_of(self, p: int) -> int:
        for q, mu in self.mu:
            if q == p:
                return mu
        return 1


def valuation_profile(mu: dict[int, int]) -> ValuationProfile:
    """Build a profile from a prime -> mu_p mapping, dropping trivial entries."""
    entries = []
    for p in sorted(mu):
        m = mu[p]
        if not is_prime(p):
            raise StructureError(f"profile key {p} is not prime")
        if m < 1:
            raise StructureError(f"profile exponent for {p} must be >= 1, got {m}")
        if m >= 2:
            entries.append((p, m))
    return ValuationProfile(tuple(entries))


def profile_from_set(a: Iterable[int]) -> ValuationProfile:
    """Profile with mu_p = 1 + max valuation of p over the set.

    The associated modulus is then exactly lcm of the set.
    """
    elems = list(a)
    if not elems:
        raise StructureError("profile requires a nonempty set")
    mu: dict[int, int] = {}
    for x in elems:
        if x < 1:
            raise StructureError(f"set elements must be positive, got {x}")
        rest = x
        p = 2
        while p * p <= rest:
            if rest % p == 0:
                e = 0
                while rest % p == 0:
                    rest //= p
                    e += 1
                if e + 1 > mu.get(p, 1):
                    mu[p] = e + 1
            p += 1 if p == 2 else 2
        if rest > 1:
            if 2 > mu.get(rest, 1):
                mu[rest] = 2
    return ValuationProfile(tuple(sorted((p, m) for p, m in mu.items())))


def profile_of_modulus(m: int | FactoredInteger) -> ValuationProfile:
    """Profile with mu_p = valuation of p in m, plus one; its modulus is m."""
    from .arith import factorize

    fm = m if isinstance(m, FactoredInteger) else factorize(m)
    return ValuationProfile(tuple((p, e + 1) for p, e in fm.factors))


def delta_from_profile(profile: ValuationProfile) -> Fraction:
    """Exact density: product over p of (1 - 1/p) / (1 - p**-mu_p).

    Equals M / sigma(M) for the profile's associated modulus M.
    """
    d = Fraction(1)
    for p, mu in profile.mu:
        d *= Fraction((p - 1) * p ** (mu - 1), p**mu - 1)
    return d


def empirical_density(profile: ValuationProfile, x: int) -> Fraction:
    """Share of 1..x whose valuations at every profile prime are divisible by mu_p.

    Direct scan with early exit on the first violated prime; fine up to 10**7.
    """
    if x < 1:
        raise StructureError(f"empirical_density requires x >= 1, got {x}")
    constraints = profile.mu
    count = 0
    for n in range(1, x + 1):
        ok = True
        for p, mu in constraints:
            if n % p == 0:
                v = 1
                m = n // p
                while m % p == 0:
                    m //= p
                    v += 1
                if v % mu:
                    ok = False
                    break
        if ok:
            count += 1
    return Fraction(count, x)
