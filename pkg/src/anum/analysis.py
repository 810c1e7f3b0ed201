"""Empirical period and delay measurement, pairing checks, and the sweep.

The closed form guarantees the constant term is periodic with period
dividing lcm(order of p mod gamma_num, 2) once n clears v_p(gamma), but
the minimal period is often smaller and the true delay can be too.  The
functions here measure both over a finite window: residuals
a(n) - quad*p^{2n} - lam*n come from brute force below the delay (where
the closed form is not trusted) and from the verified nu table above it.

The pairing r -> (r+1)p + 1 multiplies gamma by p, so the linear
coefficients agree and the delay grows by exactly one; whether the
measured minimal periods also agree is open, so the sweep records it as
data and never asserts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closed_form import ClosedFormModel, closed_model, lambda_r
from .delta import TowerParams
from .errors import InvariantViolationError
from .exact_arith import divisors, multiplicative_order
from .lattice import a_number_bruteforce


@dataclass(frozen=True)
class PeriodReport:
    """Measured period/delay data for one parameter set.

    This is a measurement record: minimal_period always divides lcm_bound
    by construction, and the heavier structural claims (the measured
    period is the bound or half of it, lambda times the measured period is
    an integer) are asserted by the test suite rather than here.  The
    integrality claim in particular has a genuine counterexample at
    p=7, d=6, r=4, where lambda = 1/2 with a constant residue, so
    lambda_integral is data, not an invariant.
    """

    params: TowerParams
    lcm_bound: int
    gamma_period: int
    minimal_period: int
    half_case: bool
    formula_delay: int
    minimal_delay: int
    lambda_value: Fraction
    lambda_times_period: Fraction
    lambda_integral: bool
    pairing_partner: int
    nu_values: tuple[Fraction, ...]
    window_periods: int

    def __post_init__(self):
        if self.lcm_bound % self.minimal_period != 0:
            raise InvariantViolationError(
                f"measured period {self.minimal_period} does not divide the "
                f"bound {self.lcm_bound}")


def _residuals(params: TowerParams, model: ClosedFormModel, end: int,
               budget: int | None) -> dict[int, Fraction]:
    """Residuals a(n) - quad*p^{2n} - lam*n for 0 <= n < end: brute force
    through the delay (plus one overlap point), nu table beyond."""
    p = params.p
    res: dict[int, Fraction] = {
        n: model.nu_table[n % model.claimed_period]
        for n in range(model.delay, end)
    }
    for n in range(min(model.delay + 2, end)):
        total = a_number_bruteforce(params, n, budget).total
        value = total - model.quad_coeff * p**(2 * n) - model.lam * n
        if n >= model.delay and value != res[n]:
            raise InvariantViolationError(
                f"brute-force residual at n={n} disagrees with the nu table")
        res.setdefault(n, value)
    return res


def minimal_period(params: TowerParams, window_periods: int = 3,
                   budget: int | None = None) -> PeriodReport:
    """Measure the minimal period and delay of the residual sequence.

    Certification is over a finite window of (window_periods + 1) bound
    periods past the delay; one bound period already certifies because the
    true period divides the bound, the extra periods guard implementation
    bugs.  The window is recorded in the report.
    """
    if window_periods < 1:
        raise ValueError(f"window_periods must be >= 1, got {window_periods}")
    model = closed_model(params)
    bound = model.claimed_period
    start = model.delay
    end = start + (window_periods + 1) * bound
    res = _residuals(params, model, end, budget)

    period = bound
    for cand in divisors(bound):
        if all(res[n] == res[n + cand] for n in range(start, end - cand)):
            period = cand
            break

    delay = start
    while delay > 0 and res[delay - 1] == res[delay - 1 + period]:
        delay -= 1

    lam = model.lam
    lam_times = lam * period
    return PeriodReport(
        params=params,
        lcm_bound=bound,
        gamma_period=multiplicative_order(params.p, params.gamma_num),
        minimal_period=period,
        half_case=(2 * period == bound),
        formula_delay=start,
        minimal_delay=delay,
        lambda_value=lam,
        lambda_times_period=lam_times,
        lambda_integral=(lam_times.denominator == 1),
        pairing_partner=(params.r + 1) * params.p + 1,
        nu_values=model.nu_table[:period],
        window_periods=window_periods,
    )


def check_lambda_integrality(params: TowerParams, window_periods: int = 3,
                             budget: int | None = None) -> tuple[Fraction, bool]:
    """lambda times the measured minimal period, with its integrality flag."""
    report = minimal_period(params, window_periods, budget)
    return report.lambda_times_period, report.lambda_integral


@dataclass(frozen=True)
class PairingRecord:
    """Comparison of r0 against its partner r1 = (r0+1)p + 1.

    The linear-coefficient and delay relations are theorems and are
    asserted on construction; equality of the measured minimal periods is
    open and only recorded.
    """

    r0: int
    r1: int
    lambda0: Fraction
    lambda1: Fraction
    delay0: int
    delay1: int
    period0: int | None
    period1: int | None
    periods_equal: bool | None

    def __post_init__(self):
        if self.lambda1 != self.lambda0:
            raise InvariantViolationError(
                f"paired linear coefficients differ: {self.lambda0} vs "
                f"{self.lambda1} for r0={self.r0}, r1={self.r1}")
        if self.delay1 != self.delay0 + 1:
            raise InvariantViolationError(
                f"paired delays are not offset by one: {self.delay0} -> "
                f"{self.delay1} for r0={self.r0}, r1={self.r1}")


def check_pairing(params: TowerParams, measure_periods: bool = True,
                  window_periods: int = 3,
                  budget: int | None = None) -> PairingRecord:
    """Compare params against its pairing partner."""
    r1 = (params.r + 1) * params.p + 1
    other = TowerParams(params.p, params.d, r1)
    period0 = period1 = None
    equal = None
    if measure_periods:
        period0 = minimal_period(params, window_periods, budget).minimal_period
        period1 = minimal_period(other, window_periods, budget).minimal_period
        equal = period0 == period1
    return PairingRecord(
        r0=params.r,
        r1=r1,
        lambda0=lambda_r(params),
        lambda1=lambda_r(other),
        delay0=params.gamma_vp,
        delay1=other.gamma_vp,
        period0=period0,
        period1=period1,
        periods_equal=equal,
    )


@dataclass(frozen=True)
class SweepRow:
    """One sweep cell.  All data fields are None when `error` is set."""

    p: int
    d: int
    r: int
    quad: Fraction | None = None
    lam: Fraction | None = None
    formula_delay: int | None = None
    minimal_delay: int | None = None
    lcm_bound: int | None = None
    gamma_period: int | None = None
    minimal_period: int | None = None
    half_case: bool | None = None
    lambda_times_period: Fraction | None = None
    lambda_integral: bool | None = None
    partner_r: int | None = None
    partner_lambda_equal: bool | None = None
    partner_delay_shift: int | None = None
    partner_period: int | None = None
    partner_period_equal: bool | None = None
    error: str = ""


SWEEP_COLUMNS = (
    "p", "d", "r", "quad", "lambda", "N_r", "minimal_delay", "lcm_bound",
    "L_gamma_inv", "L", "half_case", "lambda_times_L", "lambda_integral",
    "partner_r", "partner_lambda_equal", "partner_delay_shift",
    "partner_L", "partner_period_equal", "error",
)


def sweep_row_cells(row: SweepRow) -> tuple:
    """Row values in SWEEP_COLUMNS order (raw, not yet stringified)."""
    return (
        row.p, row.d, row.r, row.quad, row.lam, row.formula_delay,
        row.minimal_delay, row.lcm_bound, row.gamma_period,
        row.minimal_period, row.half_case, row.lambda_times_period,
        row.lambda_integral, row.partner_r, row.partner_lambda_equal,
        row.partner_delay_shift, row.partner_period,
        row.partner_period_equal, row.error,
    )


def sweep(entries, window_periods: int = 3, budget: int | None = None,
          measure_partner_periods: bool = True) -> list[SweepRow]:
    """One row per (p, d, r), in lexicographic order.

    Cell failures are recorded in the row's error column and the sweep
    continues; the row order never depends on failures.
    """
    keys = sorted({(int(p), int(d), int(r)) for p, d, r in entries})
    rows = []
    for p, d, r in keys:
        try:
            params = TowerParams(p, d, r)
            report = minimal_period(params, window_periods, budget)
            pairing = check_pairing(params, measure_partner_periods,
                                    window_periods, budget)
            rows.append(SweepRow(
                p=p, d=d, r=r,
                quad=closed_model(params).quad_coeff,
                lam=report.lambda_value,
                formula_delay=report.formula_delay,
                minimal_delay=report.minimal_delay,
                lcm_bound=report.lcm_bound,
                gamma_period=report.gamma_period,
                minimal_period=report.minimal_period,
                half_case=report.half_case,
                lambda_times_period=report.lambda_times_period,
                lambda_integral=report.lambda_integral,
                partner_r=pairing.r1,
                partner_lambda_equal=pairing.lambda1 == pairing.lambda0,
                partner_delay_shift=pairing.delay1 - pairing.delay0,
                partner_period=pairing.period1,
                partner_period_equal=pairing.periods_equal,
            ))
        except Exception as exc:  # cell failures are data, not aborts
            rows.append(SweepRow(p=p, d=d, r=r,
                                 error=f"{type(exc).__name__}: {exc}"))
    return rows
