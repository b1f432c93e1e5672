"""Membership machinery for the doubling set U.

U holds the indices n for which 1/n is not a signed sum of smaller unit
fractions (weights -1, 0, +1); each member forces the sum-set cardinality
to double at step n.  Membership is decided exactly by a meet-in-the-middle
search, or certified structurally: 1 and primes always belong, and a member
m can be lifted to m * p**k when the prime p is large enough.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import is_prime, lcm_range, primes_upto
from .errors import ResourceBudgetError, StructureError

EXACT_DECISION_CAP = 35
DEFAULT_MEMORY_BUDGET = 8 << 30
DEFAULT_EXHAUSTIVE_FALLBACK = 30
_GM_TABLE_CEILING = 64


@dataclass(frozen=True)
class UCertificate:
    """Proof object for membership of n.

    kind is one of "one", "prime", "lift", "exhaustive"; lifts carry the
    base member m, the prime p, and the exponent k with n = m * p**k.
    """

    n: int
    kind: str
    m: int | None = None
    p: int | None = None
    k: int | None = None

    def to_json(self) -> str:
        payload: dict[str, int | str] = {"n": self.n, "kind": self.kind}
        if self.kind == "lift":
            payload.update({"m": self.m, "p": self.p, "k": self.k})
        return json.dumps(payload, sort_keys=True)


@dataclass(frozen=True)
class GmTable:
    """Exact d_m = lcm(1..m) and the integer g_m = d_m * (1 + 1/2 + ... + 1/m)."""

    entries: tuple[tuple[int, int], ...]

    @property
    def max_m(self) -> int:
        return len(self.entries)

    def lookup(self, m: int) -> tuple[int, int]:
        if not 1 <= m <= len(self.entries):
            raise StructureError(f"g table holds m = 1..{len(self.entries)}, got {m}")
        return self.entries[m - 1]


def g_m_table(max_m: int) -> GmTable:
    """Tabulate (d_m, g_m) for m <= max_m, checking g_m < 3**m on every entry."""
    if max_m < 1:
        raise StructureError(f"max_m must be >= 1, got {max_m}")
    entries = []
    d = 1
    h = Fraction(0)
    for m in range(1, max_m + 1):
        d = math.lcm(d, m)
        h += Fraction(1, m)
        g = d * h
        if g.denominator != 1:
            raise StructureError(f"harmonic numerator at m={m} is not integral")
        g_int = g.numerator
        if g_int >= 3**m:
            raise StructureError(f"threshold identity g_m < 3**m failed at m={m}")
        entries.append((d, g_int))
    return GmTable(tuple(entries))


def _signed_sums(offsets: Sequence[int]) -> np.ndarray:
    vals = np.zeros(1, dtype=np.int64)
    for off in offsets:
        step = np.array([-off, 0, off], dtype=np.int64)
        vals = (vals[:, None] + step[None, :]).ravel()
    return vals


def _recover_signs(offsets: Sequence[int], target: int) -> list[int]:
    suffix = [0] * (len(offsets) + 1)
    for i in range(len(offsets) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + offsets[i]
    signs: list[int] = []

    def walk(i: int, remaining: int) -> bool:
        if i == len(offsets):
            return remaining == 0
        if abs(remaining) > suffix[i]:
            return False
        for s in (-1, 0, 1):
            signs.append(s)
            if walk(i + 1, remaining - s * offsets[i]):
                return True
            signs.pop()
        return False

    if not walk(0, target):
        raise StructureError("sign recovery failed for a value the search produced")
    return signs


def decide_u_exact(
    n: int, memory_budget: int = DEFAULT_MEMORY_BUDGET
) -> tuple[bool, list[int] | None]:
    """Exact decision: is 1/n out of reach of every signed sum over 1..n-1?

    Returns (True, None) for members; otherwise (False, w) with a weight
    vector w over 1..n-1 whose signed reciprocal sum equals 1/n.  Splits
    the weights in half and meets in the middle, which carries the search
    to n around 35.
    """
    if n < 1:
        raise StructureError(f"n must be >= 1, got {n}")
    if n == 1:
        return True, None
    if n > EXACT_DECISION_CAP:
        raise ResourceBudgetError(
            f"exact decision is capped at n={EXACT_DECISION_CAP} "
            f"(3**{n - 1} search space); use the certificate route instead"
        )
    ks = list(range(1, n))
    scale = lcm_range(n)
    target = scale // n
    offsets = [scale // k for k in ks]
    if sum(offsets) >= 1 << 62:
        raise ResourceBudgetError(f"scaled sums at n={n} would overflow 64-bit storage")
    half = (len(ks) + 1) // 2
    need = (3 ** half + 3 ** (len(ks) - half)) * 8 * 3
    if need > memory_budget:
        raise ResourceBudgetError(
            f"meet-in-the-middle at n={n} needs about {need} bytes, "
            f"budget is {memory_budget}; use the certificate route instead"
        )
    left = np.unique(_signed_sums(offsets[:half]))
    right = _signed_sums(offsets[half:])
    wanted = target - right
    pos = np.searchsorted(left, wanted)
    pos_clipped = np.minimum(pos, len(left) - 1)
    hits = np.flatnonzero(left[pos_clipped] == wanted)
    if hits.size == 0:
        return True, None
    right_val = int(right[hits[0]])
    w = _recover_signs(offsets[:half], target - right_val)
    w += _recover_signs(offsets[half:], right_val)
    check = sum(Fraction(s, k) for s, k in zip(w, ks))
    if check != Fraction(1, n):
        raise StructureError("recovered witness failed exact verification")
    return False, w


def certify_u(
    n: int,
    gm: GmTable | None = None,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_FALLBACK,
) -> UCertificate | None:
    """Certificate for n, or None when no rule applies.

    Absence of a certificate does not mean n is outside U.  Rules, in
    order: n = 1; n prime; n = m * p**k with m certified and p above the
    g_m threshold (3**m when m is beyond the table); exhaustive decision
    below the cap.
    """
    if n < 1:
        raise StructureError(f"n must be >= 1, got {n}")
    if gm is None:
        gm = g_m_table(min(max(n // 2, 1), _GM_TABLE_CEILING))
    if n == 1:
        return UCertificate(1, "one")
    if is_prime(n):
        return UCertificate(n, "prime")
    from .arith import factorize

    fm = factorize(n)
    for p, k in sorted(fm.factors, reverse=True):
        m = n // p**k
        threshold = gm.lookup(m)[1] if m <= gm.max_m else 3**m
        if p > threshold and certify_u(m, gm, exhaustive_cap) is not None:
            return UCertificate(n, "lift", m=m, p=p, k=k)
    if n <= exhaustive_cap:
        member, _ = decide_u_exact(n)
        if member:
            return UCertificate(n, "exhaustive")
    return None


def count_u(
    x: int, exact_cap: int = DEFAULT_EXHAUSTIVE_FALLBACK, gm: GmTable | None = None
) -> tuple[int, list[tuple[int, UCertificate]]]:
    """Lower bound on the number of members up to x, with certificates.

    Every n <= exact_cap is decided exactly; larger n are admitted only
    when a certificate applies, so the list is complete below the cap and
    a genuine subset above it.
    """
    if x < 1:
        raise StructureError(f"x must be >= 1, got {x}")
    if exact_cap > EXACT_DECISION_CAP:
        raise StructureError(
            f"exact_cap must be <= {EXACT_DECISION_CAP}, got {exact_cap}"
        )
    if gm is None:
        gm = g_m_table(min(max(x // 2, 1), _GM_TABLE_CEILING))
    members: list[tuple[int, UCertificate]] = []
    for n in range(1, x + 1):
        if n <= exact_cap:
            member, _ = decide_u_exact(n)
            if not member:
                continue
            cert = certify_u(n, gm, exhaustive_cap=exact_cap)
            if cert is None:
                cert = UCertificate(n, "exhaustive")
        else:
            cert = certify_u(n, gm, exhaustive_cap=exact_cap)
            if cert is None:
                continue
        members.append((n, cert))
    return len(members), members


def recursive_count_bound(x: int, y: int, u_y: Sequence[int]) -> int:
    """Lower bound on the member count up to x from the members up to y.

    Counts the products m * p with m a member <= y and p prime, then
    subtracts 2 * 3**y to cover double counting; requires x >= 3**y.
    """
    if y < 1:
        raise StructureError(f"y must be >= 1, got {y}")
    if x < 3**y:
        raise StructureError(f"requires x >= 3**y, got x={x} against 3**{y}={3**y}")
    for m in u_y:
        if not 1 <= m <= y:
            raise StructureError(f"member {m} is outside 1..{y}")
    primes = primes_upto(x)
    total = sum(bisect_right(primes, x // m) for m in u_y)
    return total - 2 * 3**y


def _iterated_log_product(n: int, k: int) -> float | None:
    # (n / log n) * product of the j-fold iterated logs for j = 3..k,
    # None whenever an iterated log is undefined or the innermost one
    # comes out nonpositive
    if n < 2:
        return None
    cur = math.log(n)
    base = n / cur
    prod = 1.0
    for j in range(2, k + 1):
        if cur <= 0:
            return None
        cur = math.log(cur)
        if j >= 3:
            prod *= cur
    if cur <= 0:
        return None
    return base * prod


def lower_bound_report(
    max_n: int,
    k: int = 3,
    exact_cap: int = DEFAULT_EXHAUSTIVE_FALLBACK,
    gm: GmTable | None = None,
) -> list[tuple[int, int, float | None]]:
    """Per-N rows (N, 2**members-up-to-N, reference growth curve).

    The second entry is a proven lower bound on the sum-set cardinality
    (each member doubles the set).  The third is the asymptotic reference
    curve (N/log N) * prod(log_j N, j=3..k); None where iterated logs are
    undefined, which the caller should treat as a flagged row.
    """
    if k < 3:
        raise StructureError(f"k must be >= 3, got {k}")
    _, members = count_u(max_n, exact_cap=exact_cap, gm=gm)
    member_set = {n for n, _ in members}
    rows = []
    running = 0
    for n in range(1, max_n + 1):
        if n in member_set:
            running += 1
        rows.append((n, 1 << running, _iterated_log_product(n, k)))
    return rows
