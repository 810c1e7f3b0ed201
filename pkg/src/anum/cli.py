"""Command-line surface: compute, formula, verify, sweep, delta-table.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
exceeded.  Every error path prints a single line prefixed "error:" to
stderr.  The enumeration budget can be set with --budget or the
ANUM_BUDGET environment variable (flag wins).  Output is deterministic:
identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

from .analysis import SWEEP_COLUMNS, sweep, sweep_row_cells
from .closed_form import (
    closed_model,
    delta_sum_linear_coeff,
    evaluate,
    model_to_dict,
)
from .delta import (
    TowerParams,
    delta,
    delta0,
    delta0_average,
    delta_lexicographic,
    delta_tilde,
    mu,
)
from .errors import BudgetExceededError, InvariantViolationError, PreDelayError
from .exact_arith import divisors, format_rational, is_prime
from .lattice import (
    TriangleSpec,
    a_number_bruteforce,
    last_column,
    sum_decomposition,
    triangle_lattice_count,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

FORMATS = ("markdown", "csv", "json")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class UsageError(ValueError):
    pass


def _make_params(p, d, r):
    try:
        return TowerParams(p, d, r)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _budget(args):
    if getattr(args, "budget", None) is not None:
        return args.budget
    raw = os.environ.get("ANUM_BUDGET")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ANUM_BUDGET must be an integer, got {raw!r}")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _json_cell(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    return value


def _md_table(rows) -> str:
    lines = [f"| {' | '.join(rows[0])} |",
             f"|{'|'.join('---' for _ in rows[0])}|"]
    for row in rows[1:]:
        lines.append(f"| {' | '.join(row)} |")
    return "\n".join(lines) + "\n"


def _csv_text(rows) -> str:
    sink = io.StringIO()
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerows(rows)
    return sink.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".anum-tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_compute(args) -> int:
    params = _make_params(args.p, args.d, args.r)
    if args.n < 1:
        raise UsageError(f"n must be >= 1, got {args.n}")
    budget = _budget(args)
    lines = [f"p={params.p} d={params.d} r={params.r} n={args.n}"]
    brute = closed = None
    if args.method in ("brute", "both"):
        brute = a_number_bruteforce(params, args.n, budget).total
        lines.append(f"brute = {brute}")
    if args.method in ("closed", "both"):
        model = closed_model(params)
        if args.n < model.delay:
            if args.method == "closed":
                raise PreDelayError(
                    f"closed form is not valid for n={args.n} < N_r = "
                    f"{model.delay}; use --method brute")
            lines.append(f"closed = n/a (n < N_r = {model.delay})")
        else:
            closed = evaluate(model, args.n)
            lines.append(f"closed = {closed}")
    status = EXIT_OK
    if args.method == "both" and closed is not None:
        if brute == closed:
            lines.append("AGREE")
        else:
            lines.append("DISAGREE")
            status = EXIT_VERIFY
    print("\n".join(lines))
    return status


def cmd_formula(args) -> int:
    params = _make_params(args.p, args.d, args.r)
    model = closed_model(params)
    data = model_to_dict(model, minimal=True)
    if args.format == "json":
        _emit(json.dumps(data, indent=2) + "\n", None)
    elif args.format == "csv":
        header = ["p", "d", "r", "quad", "lambda", "N_r", "period"]
        row = [str(data[k]) for k in header]
        for j, value in enumerate(data["nu"]):
            header.append(f"nu{j}")
            row.append(value)
        _emit(_csv_text([header, row]), None)
    else:
        period = data["period"]
        print(f"p={params.p} d={params.d} r={params.r}: "
              f"value = {data['quad']} * {params.p}^(2n) + {data['lambda']} * n"
              f" + nu(n)  for n >= {data['N_r']}")
        print()
        rows = [[f"n mod {period}"] + [str(j) for j in range(period)],
                ["nu(n)"] + list(data["nu"])]
        sys.stdout.write(_md_table(rows))
    return EXIT_OK


def _verify_checks(params, n_max, budget):
    """Yield (name, callable) pairs; a callable returning False fails."""
    p, d = params.p, params.d
    td = params.tau_den
    block = td * p

    def digit_vs_lex():
        return all(delta(params, i) == delta_lexicographic(params, i)
                   for i in range(1, 201))

    def mu_identities():
        for i in range(1, 201):
            scaled = (p + 1) * i
            floor_v = scaled // d
            ceil_v = -(-scaled // d)
            if mu(params, i) != floor_v + delta(params, i):
                return False
            if mu(params, i) != ceil_v - 1 + delta_tilde(params, i):
                return False
        return True

    def multiplicative():
        return all(delta(params, i) == delta(params, i * p**e)
                   for i in range(1, 61) for e in (1, 2))

    def shift():
        return all(delta0(params, i) == delta0(params, i + block)
                   for i in range(1, 3 * block + 1))

    def reflection():
        for i in range(1, block):
            a, b = delta0(params, i), delta0(params, block - i)
            if i % td and i % p:
                if a + b != 1:
                    return False
            elif a or b:
                return False
        return True

    def average():
        total = sum(delta0(params, i) for i in range(1, block + 1))
        return Fraction(total, block) == delta0_average(params)

    def tau_side_linear():
        return delta_sum_linear_coeff(params.tau, params) == 0

    yield "delta digit test matches the lexicographic definition", digit_vs_lex
    yield "mu equals floor+delta and ceil-1+delta_tilde", mu_identities
    yield "delta is invariant under multiplying i by p", multiplicative
    yield "delta0 shifts by tau_den*p", shift
    yield "delta0 reflects within one period", reflection
    yield "delta0 average matches its closed form", average
    yield "tau-side linear coefficient vanishes", tau_side_linear

    def agreement(n):
        def check():
            brute = a_number_bruteforce(params, n, budget)
            decomp = sum_decomposition(params, n, budget)
            if brute.total != decomp.total:
                return False
            model = closed_model(params)
            if n >= model.delay and evaluate(model, n) != brute.total:
                return False
            points = triangle_lattice_count(TriangleSpec(params, n), budget)
            boundary = sum(1 - delta_tilde(params, i)
                           for i in range(brute.t_n + 1,
                                          last_column(params, n) + 1))
            return brute.total == points - last_column(params, n) - 1 + boundary
        return check

    for n in range(1, n_max + 1):
        yield (f"n={n}: brute force, split forms, closed form, and triangle "
               f"count agree"), agreement(n)

    if params.r == 1:
        def first_power():
            for n in range(1, n_max + 1):
                expected = Fraction(d * (p - 1), 4 * (p + 1)) * (p**(2 * n - 1) + 1)
                if d % 2 == 1:
                    expected -= Fraction(p - 1, 4 * d)
                if a_number_bruteforce(params, n, budget).total != expected:
                    return False
            return True
        yield "r=1 closed formula matches brute force", first_power


def cmd_verify(args) -> int:
    params = _make_params(args.p, args.d, args.r)
    if args.n_max < 1:
        raise UsageError(f"--n-max must be >= 1, got {args.n_max}")
    budget = _budget(args)
    for name, check in _verify_checks(params, args.n_max, budget):
        if not check():
            print(f"FAIL {name}")
            return EXIT_VERIFY
        print(f"ok {name}")
    print("PASS")
    return EXIT_OK


def _parse_primes(text):
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            p = int(piece)
        except ValueError:
            raise UsageError(f"--p-list entries must be integers, got {piece!r}")
        if p == 2 or not is_prime(p):
            raise UsageError(f"--p-list entries must be odd primes, got {p}")
        out.append(p)
    if not out:
        raise UsageError("--p-list must name at least one prime")
    return sorted(set(out))


def _d_values(mode, p):
    if mode == "all-divisors":
        return divisors(p - 1)
    if mode.startswith("list:"):
        out = []
        for piece in mode[len("list:"):].split(","):
            piece = piece.strip()
            if not piece:
                continue
            try:
                d = int(piece)
            except ValueError:
                raise UsageError(f"--d-mode list entries must be integers, got {piece!r}")
            if d < 1 or (p - 1) % d != 0:
                raise UsageError(f"d must divide p-1: got d={d}, p={p}")
            out.append(d)
        if not out:
            raise UsageError("--d-mode list must name at least one d")
        return sorted(set(out))
    raise UsageError(f"--d-mode must be all-divisors or list:D1,D2,..., got {mode!r}")


def cmd_sweep(args) -> int:
    if args.r_max < 0:
        raise UsageError(f"--r-max must be >= 0, got {args.r_max}")
    primes = _parse_primes(args.p_list)
    grid = [(p, d, r)
            for p in primes
            for d in _d_values(args.d_mode, p)
            for r in range(1, args.r_max + 1)]
    rows = sweep(grid, window_periods=args.window_periods, budget=_budget(args))
    cell_rows = [[_cell(v) for v in sweep_row_cells(row)] for row in rows]
    if args.format == "json":
        payload = {
            "columns": list(SWEEP_COLUMNS),
            "rows": [[_json_cell(v) for v in sweep_row_cells(row)]
                     for row in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "markdown":
        text = _md_table([list(SWEEP_COLUMNS)] + cell_rows)
    else:
        text = _csv_text([list(SWEEP_COLUMNS)] + cell_rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_delta_table(args) -> int:
    params = _make_params(args.p, args.d, 1)  # r does not enter the indicators
    if args.i_max < 1:
        raise UsageError(f"--i-max must be >= 1, got {args.i_max}")
    cols = range(1, args.i_max + 1)
    table = {
        "delta": [delta(params, i) for i in cols],
        "delta0": [delta0(params, i) for i in cols],
        "delta_tilde": [delta_tilde(params, i) for i in cols],
    }
    if args.format == "json":
        payload = {
            "p": params.p,
            "d": params.d,
            "columns": ["i", "delta", "delta0", "delta_tilde"],
            "rows": [[i, table["delta"][i - 1], table["delta0"][i - 1],
                      table["delta_tilde"][i - 1]] for i in cols],
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        rows = [["i", "delta", "delta0", "delta_tilde"]]
        rows += [[str(i), str(table["delta"][i - 1]), str(table["delta0"][i - 1]),
                  str(table["delta_tilde"][i - 1])] for i in cols]
        text = _csv_text(rows)
    else:
        rows = [["i"] + [str(i) for i in cols]]
        for name in ("delta", "delta0", "delta_tilde"):
            rows.append([name] + [str(v) for v in table[name]])
        text = _md_table(rows)
    _emit(text, None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="anum",
                     description="Exact region counts for covering towers: "
                                 "brute force, split forms, and closed "
                                 "quasi-polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="one value, by either or both methods")
    compute.add_argument("-p", type=int, required=True)
    compute.add_argument("-d", type=int, required=True)
    compute.add_argument("-r", type=int, required=True)
    compute.add_argument("-n", type=int, required=True)
    compute.add_argument("--method", choices=("brute", "closed", "both"),
                         default="both")
    compute.add_argument("--budget", type=int, default=None)
    compute.set_defaults(func=cmd_compute)

    formula = sub.add_parser("formula", help="render the closed form")
    formula.add_argument("-p", type=int, required=True)
    formula.add_argument("-d", type=int, required=True)
    formula.add_argument("-r", type=int, required=True)
    formula.add_argument("--format", choices=FORMATS, default="markdown")
    formula.set_defaults(func=cmd_formula)

    verify = sub.add_parser("verify", help="run the identity suite for one "
                                           "parameter set")
    verify.add_argument("-p", type=int, required=True)
    verify.add_argument("-d", type=int, required=True)
    verify.add_argument("-r", type=int, required=True)
    verify.add_argument("--n-max", type=int, default=3)
    verify.add_argument("--budget", type=int, default=None)
    verify.set_defaults(func=cmd_verify)

    swp = sub.add_parser("sweep", help="period/delay dataset over a grid")
    swp.add_argument("--p-list", required=True)
    swp.add_argument("--d-mode", default="all-divisors")
    swp.add_argument("--r-max", type=int, required=True)
    swp.add_argument("--format", choices=FORMATS, default="csv")
    swp.add_argument("--out", default=None)
    swp.add_argument("--window-periods", type=int, default=3)
    swp.add_argument("--budget", type=int, default=None)
    swp.set_defaults(func=cmd_sweep)

    table = sub.add_parser("delta-table", help="tabulate the indicators")
    table.add_argument("-p", type=int, required=True)
    table.add_argument("-d", type=int, required=True)
    table.add_argument("--i-max", type=int, default=19)
    table.add_argument("--format", choices=FORMATS, default="markdown")
    table.set_defaults(func=cmd_delta_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, PreDelayError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
