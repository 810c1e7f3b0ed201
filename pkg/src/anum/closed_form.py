"""Closed quasi-polynomial forms for the region count.

Two families of prefix sums drive everything, for x in {tau, gamma}:

    S_floor(x, n) = sum_{i=1}^{floor(p^n/x)} (p^n - floor(x*i))
    S_delta(x, n) = sum_{i=1}^{floor(p^n/x)} delta(i)

S_floor has the exact closed form

    (1/2)(1/x) p^{2n} + (1/2)((1/x)(1 - 1/x_den) - 1) p^n + A(1/x, n)

where x_den is the prime-to-p denominator of x and A is periodic in n once
n clears the delay of 1/x, with period the digit period of 1/x.

S_delta decomposes over the p-adic valuation of the summation index: each
exponent e contributes a prefix sum of the (tau_den * p)-periodic function
delta0 up to floor(p^e/x), which is its average times the length plus a
partial-period correction F(1/x, e).  Summing the exponents yields

    (1/2)(1/x)(1 - 1/tau_den) p^n + c * n + B(1/x, n)

with linear coefficient c = <F(1/x)> - <digits of 1/x>/(2p) * (1 - 1/tau_den).
B is extracted definitionally, as the exact sum minus the p^n and linear
parts, so no transcribed constant can drift; its periodicity is then
re-checked when models are assembled.

On the tau side the linear coefficient vanishes identically, so the count

    S_floor(tau, n) - S_floor(gamma, n) - S_delta(tau, n) + S_delta(gamma, n)
    = quad * p^{2n} + lam * n + nu(n)

has quad = (1/tau - 1/gamma)/2, lam carried entirely by the gamma side,
and nu periodic for n >= v_p(gamma) with period dividing
lcm(order of p mod gamma_num, 2).  Below that delay the closed form is
genuinely wrong and `evaluate` refuses; use the brute-force counter there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .delta import TowerParams, delta0_average
from .errors import InvariantViolationError, PreDelayError
from .exact_arith import (
    divisors,
    expand,
    floor_pn_mod,
    format_rational,
    frac_part,
    frac_part_pn,
    multiplicative_order,
    p_adic_decompose,
)
from .periodic_sum import EventuallyPeriodicSeq, prefix_sum


def A_fn(x_inv: Fraction, p: int, n: int) -> Fraction:
    """Periodic residue of the floor sum.  With x = 1/x_inv and den the
    prime-to-p denominator of x:

        (1/2)(-(1 - 1/den) + x(1 - {x_inv p^n})) {x_inv p^n}
        + sum_{k=1}^{floor(x_inv p^n) mod den} ({x k} - (1 - 1/den)/2)

    Periodic in n from the delay of x_inv on, with its digit period.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x_inv = Fraction(x_inv)
    x = 1 / x_inv
    form = p_adic_decompose(x, p)
    if form.v < 0:
        raise ValueError(
            f"1/x_inv must have non-negative p-adic valuation, got {form.v}")
    den = form.den
    fp = frac_part_pn(x_inv, p, n)
    avg = Fraction(den - 1, 2 * den)
    total = (Fraction(-(den - 1), den) + x * (1 - fp)) * fp / 2
    for k in range(1, floor_pn_mod(x_inv, p, n, den) + 1):
        total += frac_part(x * k) - avg
    return total


def floor_sum_closed(x: Fraction | int, p: int, n: int) -> Fraction:
    """sum_{i=1}^{floor(p^n/x)} (p^n - floor(x*i)) via the closed form.

    Requires v_p(x) >= 0 (true for both tau and gamma).
    """
    x = Fraction(x)
    form = p_adic_decompose(x, p)
    if form.v < 0:
        raise ValueError(
            f"x must have non-negative p-adic valuation, got {form.v}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x_inv = 1 / x
    pn = p**n
    lead = x_inv * pn * pn / 2 + (x_inv * (1 - Fraction(1, form.den)) - 1) * pn / 2
    return lead + A_fn(x_inv, p, n)


def F_fn(x_inv: Fraction, params: TowerParams, e: int) -> Fraction:
    """Partial-period correction of the delta0 prefix sum at exponent e:

        sum_{k=1}^{floor(x_inv p^e) mod (tau_den p)} (delta0(k) - <delta0>)

    Periodic in e one step past the delay of x_inv, with its digit period.
    """
    if e < 0:
        raise ValueError(f"e must be non-negative, got {e}")
    block = params.tau_den * params.p
    m = floor_pn_mod(Fraction(x_inv), params.p, e, block)
    return params.delta0_prefix[m] - m * delta0_average(params)


@lru_cache(maxsize=None)
def _exponent_seqs(
    x: Fraction, params: TowerParams
) -> tuple[EventuallyPeriodicSeq, EventuallyPeriodicSeq]:
    """Eventually periodic models, over the exponent e shifted to 1-based
    indexing, of {p^e/x} and of F(1/x, e)."""
    p = params.p
    form = p_adic_decompose(x, p)
    start = max(0, form.v)  # fractional parts repeat from e = start
    length = multiplicative_order(p, form.num)
    x_inv = 1 / x
    frac_seq = EventuallyPeriodicSeq(
        head=tuple(frac_part_pn(x_inv, p, e) for e in range(start)),
        cycle=tuple(frac_part_pn(x_inv, p, e)
                    for e in range(start, start + length)),
    )
    # the mod-p part of floor(p^e/x) needs one extra step to settle
    f_seq = EventuallyPeriodicSeq(
        head=tuple(F_fn(x_inv, params, e) for e in range(start + 1)),
        cycle=tuple(F_fn(x_inv, params, e)
                    for e in range(start + 1, start + 1 + length)),
    )
    return frac_seq, f_seq


def delta_sum_closed(x: Fraction | int, params: TowerParams, n: int) -> Fraction:
    """sum_{i=1}^{floor(p^n/x)} delta(i) via the exponent decomposition.

    Requires x >= 1 with prime-to-p denominator equal to tau_den (both tau
    and gamma qualify).  Exact for every n >= 0; cost O(delay + period).
    """
    x = Fraction(x)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    p = params.p
    form = p_adic_decompose(x, p)
    if form.den != params.tau_den:
        raise ValueError(
            f"prime-to-p denominator of x must equal {params.tau_den}, "
            f"got {form.den}")
    frac_seq, f_seq = _exponent_seqs(x, params)
    x_inv = 1 / x
    lead = (1 - Fraction(1, params.tau_den)) * (p**n - Fraction(1, p)) * x_inv / 2
    return (lead
            - delta0_average(params) * prefix_sum(frac_seq, n + 1)
            + prefix_sum(f_seq, n + 1))


@lru_cache(maxsize=None)
def delta_sum_linear_coeff(x: Fraction, params: TowerParams) -> Fraction:
    """Coefficient of n in the delta-sum closed form for this x:

        <F(1/x)> - <digits of 1/x> / (2p) * (1 - 1/tau_den)

    with <F> averaged over one period past the delay.  Vanishes for x = tau.
    """
    p = params.p
    form = p_adic_decompose(x, p)
    start = max(0, form.v)
    length = multiplicative_order(p, form.num)
    x_inv = 1 / Fraction(x)
    avg_f = sum(
        (F_fn(x_inv, params, e) for e in range(start + 1, start + length + 1)),
        Fraction(0),
    ) / length
    digit_avg = expand(x_inv, p).digit_average
    return avg_f - digit_avg / (2 * p) * (1 - Fraction(1, params.tau_den))


def lambda_r(params: TowerParams) -> Fraction:
    """Linear coefficient of the full quasi-polynomial (the gamma side's;
    the tau side's vanishes)."""
    return delta_sum_linear_coeff(params.gamma, params)


def delta_sum_residue(x: Fraction | int, params: TowerParams, n: int) -> Fraction:
    """B(1/x, n): the exact delta sum minus its p^n and linear parts.
    Periodic for n >= the delay of 1/x with its digit period."""
    x = Fraction(x)
    lead = (1 - Fraction(1, params.tau_den)) / (2 * x) * params.p**n
    return (delta_sum_closed(x, params, n) - lead
            - delta_sum_linear_coeff(x, params) * n)


def nu_value(params: TowerParams, n: int) -> Fraction:
    """The periodic constant term at index n, assembled from the four
    residues: A(1/tau) - A(1/gamma) - B(1/tau) + B(1/gamma)."""
    p = params.p
    tau, gamma = params.tau, params.gamma
    return (A_fn(1 / tau, p, n) - A_fn(1 / gamma, p, n)
            - delta_sum_residue(tau, params, n)
            + delta_sum_residue(gamma, params, n))


@dataclass(frozen=True)
class ClosedFormModel:
    """Assembled right side quad*p^{2n} + lam*n + nu_table[n mod claimed_period],
    valid for n >= delay.

    nu_table is indexed by n mod claimed_period; its stability was
    re-checked over a second full period at construction, which turns the
    asymptotic statement into a machine-checked window.
    """

    params: TowerParams
    quad_coeff: Fraction
    lam: Fraction
    delay: int
    claimed_period: int
    nu_table: tuple[Fraction, ...]


@lru_cache(maxsize=None)
def closed_model(params: TowerParams) -> ClosedFormModel:
    """Build and self-check the closed form for one parameter set.

    The quadratic coefficient is rendered two independent ways (from the
    slopes and from the single reduced fraction in p, d, r) to catch
    parameter-wiring mistakes; the nu table is built by evaluation and its
    periodicity, integrality, and non-negativity are verified over two
    full periods past the delay.
    """
    p, d, r = params.p, params.d, params.r
    quad = (1 / params.tau - 1 / params.gamma) / 2
    wired = Fraction(d * r * (p - 1), 2 * (p + 1) * ((p - 1) * r + p + 1))
    if quad != wired:
        raise InvariantViolationError(
            f"quadratic coefficient mismatch: {quad} vs {wired}")
    lam = lambda_r(params)
    delay = max(0, params.gamma_vp)
    period = math.lcm(multiplicative_order(p, params.gamma_num), 2)
    window = [nu_value(params, n) for n in range(delay, delay + 2 * period)]
    for j in range(period):
        if window[j] != window[j + period]:
            raise InvariantViolationError(
                f"nu residue is not {period}-periodic over the verification "
                f"window (offsets {j} and {j + period} past the delay differ)")
    table = [Fraction(0)] * period
    for offset in range(period):
        table[(delay + offset) % period] = window[offset]
    model = ClosedFormModel(params=params, quad_coeff=quad, lam=lam,
                            delay=delay, claimed_period=period,
                            nu_table=tuple(table))
    for n in range(delay, delay + 2 * period):
        evaluate(model, n)  # raises unless integral and non-negative
    return model


def evaluate(model: ClosedFormModel, n: int) -> int:
    """Value of the closed form at n >= delay.

    Refuses below the delay: the formula genuinely fails there (for
    example p=5, d=4, r=61 at n=1, 2), so callers must fall back to the
    brute-force counter.
    """
    if n < model.delay:
        raise PreDelayError(
            f"closed form is not valid for n={n} < delay {model.delay}; "
            f"use the brute-force counter instead")
    p = model.params.p
    value = (model.quad_coeff * p**(2 * n) + model.lam * n
             + model.nu_table[n % model.claimed_period])
    if value.denominator != 1 or value < 0:
        raise InvariantViolationError(
            f"closed form gave non-integral or negative value {value} at n={n}")
    return int(value)


def minimal_nu_period(model: ClosedFormModel) -> int:
    """Smallest divisor of claimed_period under which nu_table is invariant."""
    table, full = model.nu_table, model.claimed_period
    for cand in divisors(full):
        if all(table[j] == table[(j + cand) % full] for j in range(full)):
            return cand
    return full


def reduced_nu_table(model: ClosedFormModel) -> tuple[Fraction, ...]:
    """nu_table cut down to its minimal period (indexed by n mod that period)."""
    return model.nu_table[:minimal_nu_period(model)]


def special_d12(params: TowerParams, n: int) -> Fraction:
    """Direct value for d in {1, 2}: every delta vanishes (tau_den = 1), so
    the count is quad*p^{2n} plus the difference of the floor-sum residues,
    and the linear term is zero.  Exact for every n >= 0."""
    if params.d not in (1, 2):
        raise ValueError(f"only valid for d in (1, 2), got d={params.d}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    p = params.p
    quad = (1 / params.tau - 1 / params.gamma) / 2
    return (quad * p**(2 * n)
            + A_fn(1 / params.tau, p, n) - A_fn(1 / params.gamma, p, n))


def special_r_eq_p_plus_1(params: TowerParams) -> ClosedFormModel:
    """Model for r = p+1, where gamma = p*tau: no linear term, period 1,
    constant nu = (p-1)(1/tau - 1)/2, valid from n = 1."""
    if params.r != params.p + 1:
        raise ValueError(
            f"only valid for r = p+1 = {params.p + 1}, got r={params.r}")
    quad = (1 / params.tau - 1 / params.gamma) / 2
    nu = Fraction(params.p - 1, 2) * (1 / params.tau - 1)
    return ClosedFormModel(params=params, quad_coeff=quad, lam=Fraction(0),
                           delay=1, claimed_period=1, nu_table=(nu,))


def model_to_dict(model: ClosedFormModel, minimal: bool = True) -> dict:
    """JSON-ready rendering: {p, d, r, quad, lambda, N_r, period, nu}.

    With minimal=True the nu table is cut to its minimal period (the
    default for display); otherwise the full claimed period is kept.
    """
    if minimal:
        period = minimal_nu_period(model)
        nu = model.nu_table[:period]
    else:
        period = model.claimed_period
        nu = model.nu_table
    return {
        "p": model.params.p,
        "d": model.params.d,
        "r": model.params.r,
        "quad": format_rational(model.quad_coeff),
        "lambda": format_rational(model.lam),
        "N_r": model.delay,
        "period": period,
        "nu": [format_rational(v) for v in nu],
    }
