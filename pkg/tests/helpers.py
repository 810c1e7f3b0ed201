"""Shared grids and slow oracles for the test suite.

The oracles here never call the code path they check: floor sums and
delta sums are term-by-term loops, the triangle is counted point by point
with exact comparisons, and digit periods come from long-division
remainder cycling.
"""

from __future__ import annotations

import math
from fractions import Fraction

from anum import TowerParams, delta, divisors


def pd_grid():
    """Every (p, d) with p in {3, 5, 7, 13} and d | p-1."""
    return [(p, d) for p in (3, 5, 7, 13) for d in divisors(p - 1)]


def full_grid():
    """The acceptance grid: every (p, d) above with
    r in {1..12} union {p+1, 2p+1}."""
    out = []
    for p, d in pd_grid():
        for r in sorted(set(range(1, 13)) | {p + 1, 2 * p + 1}):
            out.append(TowerParams(p, d, r))
    return out


def naive_delta_sum(params, bound):
    return sum(delta(params, i) for i in range(1, bound + 1))


def naive_floor_sum(x, p, n):
    """sum_{i=1}^{floor(p^n/x)} (p^n - floor(x*i)), term by term."""
    x = Fraction(x)
    pn = p**n
    last = pn * x.denominator // x.numerator
    total = 0
    for i in range(1, last + 1):
        total += pn - x.numerator * i // x.denominator
    return total


def floor_inv_pn(x, p, n):
    """floor(p^n / x) for positive rational x."""
    x = Fraction(x)
    return p**n * x.denominator // x.numerator


def triangle_points_oracle(params, n):
    """Count integer points of the closed triangle one by one."""
    p = params.p
    pn = p**n
    tau = params.tau
    drop = params.gamma - tau
    last = pn * params.d // (p + 1)
    count = 0
    for x in range(last + 1):
        for y in range(pn + 1):
            if tau * x <= y <= pn and y >= pn - drop * x:
                count += 1
    return count


def longdiv_delay_period(x, p):
    """(delay, period) of the fractional digit stream of x in base p, found
    by cycling long-division remainders."""
    x = Fraction(x)
    rem = x - math.floor(x)
    a, b = rem.numerator, rem.denominator
    seen = {}
    k = 0
    while a not in seen:
        seen[a] = k
        a = a * p % b
        k += 1
    return seen[a], k - seen[a]
