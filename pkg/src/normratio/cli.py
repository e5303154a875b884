"""Command-line front end: ``normratio <subcommand> --m M --n N [options]``.

Exit codes: 0 on success, 1 on a usage error, 2 on a numerical failure (for
example a contour quadrature that cannot meet its tolerance, or a moment that
does not exist).  ``verify`` also exits 2 when any check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import dist, verify
from .errors import NormRatioError
from .params import DistParams, EvalResult, new_params

DEFAULT_TOL = 1e-6
TOL_ENV = "NORMRATIO_TOL"

_FORMULAS = {
    "pdf": (
        "Density f(z) = lambda / pi^((M+N)/2) * G^{M,N}_{N,M}(lambda^2 z^2 | 0,...,0; 0,...,0), "
        "with lambda = 2^((N-M)/2) s_N / sigma_M, sigma_M = prod(sigma_x), s_N = prod(sigma_y)."
    ),
    "cdf": (
        "Distribution function F(z) = 1/2 + lambda z / (2 pi^((M+N)/2)) * "
        "G^{M,N+1}_{N+1,M+1}(lambda^2 z^2 | 1/2,0,...,0; 0,...,0,-1/2)."
    ),
    "sf": "Survival function P(Z > z) = F(-z), using the symmetry of the distribution.",
    "quantile": "Quantile Q(p) solving F(Q(p)) = p; Q(1 - p) = -Q(p) and Q(1/2) = 0.",
    "cf": (
        "Characteristic function E cos(tZ) = pi^(-(N+M-1)/2) G^{N+1,M-1}_{M-1,N+1}(t^2 / (4 lambda^2) | "
        "1/2,...,1/2; 0,1/2,...,1/2) for M >= 1, and "
        "pi^(-(N-1)/2) G^{N+1,0}_{0,N+2}(t^2 / (4 lambda^2) | -; 0,1/2,...,1/2) for M = 0."
    ),
    "moment": (
        "Fractional absolute moment E|Z|^r = 2^((M-N) r/2) sigma_M^r s_N^(-r) pi^(-(M+N)/2) "
        "Gamma((r+1)/2)^M Gamma((1-r)/2)^N, finite for -1 < r < 1 "
        "(r > -1 when N = 0, r < 1 when M = 0)."
    ),
    "sample": (
        "Seeded draws of Z = (X_1 ... X_M) / (Y_1 ... Y_N) with independent zero-mean normal factors; "
        "identical output for a given seed whatever the number of workers."
    ),
    "table": "Grid of (z, f(z), F(z)) rows for plotting; f and F as for the pdf and cdf subcommands.",
    "verify": (
        "Oracle checks: Kolmogorov-Smirnov fit of seeded samples (threshold 2/sqrt(n)), normalization of "
        "the density, closed-form versus Meijer G route equivalence, fractional moments against "
        "quadrature, mode shape and asymptotic trends.  Writes a JSON report."
    ),
}


_SHORT = {
    "pdf": "probability density",
    "cdf": "distribution function",
    "sf": "survival function",
    "quantile": "quantile function",
    "cf": "characteristic function",
    "moment": "fractional absolute moments",
    "sample": "seeded random draws",
    "table": "plot-ready grid of density and distribution function",
    "verify": "run the oracle checks and write a report",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _sigma_list(text: str) -> list[float]:
    if text.strip() == "":
        return []
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from None


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("distribution")
    g.add_argument("--m", type=int, required=True, help="number of normal factors in the numerator")
    g.add_argument("--n", type=int, required=True, help="number of normal factors in the denominator")
    g.add_argument("--sigma-x", type=_sigma_list, default=None,
                   help="comma-separated numerator standard deviations (default: all ones)")
    g.add_argument("--sigma-y", type=_sigma_list, default=None,
                   help="comma-separated denominator standard deviations (default: all ones)")
    o = common.add_argument_group("evaluation and output")
    o.add_argument("--method", default="auto", choices=[m.value for m in dist.Method],
                   help="evaluation backend (default: auto)")
    o.add_argument("--tol", type=float, default=None,
                   help=f"largest accepted relative error estimate (default: ${TOL_ENV} or {DEFAULT_TOL:g})")
    o.add_argument("--output-format", default="plain", choices=["plain", "csv", "json"])
    o.add_argument("--output-path", default=None, help="write results here instead of standard output")
    o.add_argument("--workers", type=int, default=1, help="threads for sample, table and verify")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="normratio",
        description="Distribution of the ratio of products of independent zero-mean normal variables.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common_parser()

    def add(name, arg=None, dest=None, help_arg=None):
        p = sub.add_parser(name, parents=[common], help=_SHORT[name],
                           description=_FORMULAS[name])
        if arg:
            p.add_argument(arg, dest=dest, type=float, action="append", required=True, help=help_arg)
        return p

    add("pdf", "--z", "values", "argument z (repeatable)")
    add("cdf", "--z", "values", "argument z (repeatable)")
    add("sf", "--z", "values", "argument z (repeatable)")
    add("quantile", "--p", "values", "probability p in (0, 1) (repeatable)")
    add("cf", "--t", "values", "argument t (repeatable)")
    add("moment", "--r", "values", "order r (repeatable)")
    p = add("sample")
    p.add_argument("--count", type=int, required=True, help="number of draws")
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p = add("table")
    p.add_argument("--z-min", type=float, default=-10.0)
    p.add_argument("--z-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=201)
    p = add("verify")
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--sample-size", type=int, default=verify.DEFAULT_SAMPLE_SIZE)
    return parser


def _tolerance(args) -> float:
    if args.tol is not None:
        tol = args.tol
    elif os.environ.get(TOL_ENV):
        try:
            tol = float(os.environ[TOL_ENV])
        except ValueError:
            raise UsageError(f"{TOL_ENV} must be a real number, got {os.environ[TOL_ENV]!r}") from None
    else:
        tol = DEFAULT_TOL
    if not (tol > 0 and math.isfinite(tol)):
        raise UsageError(f"--tol must be positive and finite, got {tol!r}")
    return tol


def _params(args) -> DistParams:
    try:
        return new_params(args.m, args.n, args.sigma_x, args.sigma_y)
    except ValueError as exc:
        flag = "--sigma-x" if "sigma_x" in str(exc) else "--sigma-y" if "sigma_y" in str(exc) else "--m/--n"
        raise UsageError(f"{flag}: {exc}") from None


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _check_tol(op: str, x: float, r: EvalResult, tol: float, method: str) -> None:
    if r.singular or r.value == 0 or not math.isfinite(r.value):
        return
    rel = r.abs_err_estimate / abs(r.value)
    if rel > tol:
        raise _Failure(
            f"{op}({x:g}) = {r.value!r} has relative error estimate {rel:.3g} above tolerance {tol:g} "
            f"(method {method}, backend {r.method.value})"
        )


class _Failure(Exception):
    pass


def _evaluate(args, params: DistParams, tol: float):
    """Rows of (argument, EvalResult) for the scalar subcommands."""
    fn = {"pdf": dist.pdf, "cdf": dist.cdf, "sf": dist.sf, "cf": dist.cf, "quantile": dist.quantile}
    rows = []
    for x in args.values:
        if args.command == "moment":
            r = dist.fractional_moment(params, x)
        else:
            r = fn[args.command](params, x, args.method)
            _check_tol(args.command, x, r, tol, args.method)
        rows.append((x, r))
    return rows


def _table(args, params: DistParams, tol: float):
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if not args.z_min < args.z_max:
        raise UsageError("--z-min must be below --z-max")
    grid = np.linspace(args.z_min, args.z_max, args.points)

    def row(z):
        f = dist.pdf(params, z, args.method)
        c = dist.cdf(params, z, args.method)
        _check_tol("pdf", z, f, tol, args.method)
        _check_tol("cdf", z, c, tol, args.method)
        return float(z), f.value, c.value

    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as ex:
            return list(ex.map(row, grid))
    return [row(z) for z in grid]


_ARG_NAME = {"pdf": "z", "cdf": "z", "sf": "z", "quantile": "p", "cf": "t", "moment": "r"}


def _render_scalar(args, params: DistParams, rows) -> str:
    name = _ARG_NAME[args.command]
    if args.output_format == "plain":
        return "".join(f"{r.value!r}\n" for _, r in rows)
    if args.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([name, args.command])
        for x, r in rows:
            w.writerow([_fmt(x), _fmt(r.value)])
        return buf.getvalue()
    doc = {
        "command": args.command,
        "params": params.to_dict(),
        "method": args.method,
        "results": [
            {name: x, "value": r.value, "abs_err_estimate": float(r.abs_err_estimate),
             "backend": r.method.value, "singular": r.singular}
            for x, r in rows
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _render_table(args, params: DistParams, rows) -> str:
    if args.output_format == "json":
        doc = {"command": "table", "params": params.to_dict(), "method": args.method,
               "rows": [{"z": z, "pdf": f, "cdf": c} for z, f, c in rows]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    if args.output_format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["z", "pdf", "cdf"])
        for z, f, c in rows:
            w.writerow([_fmt(z), _fmt(f), _fmt(c)])
    else:
        for z, f, c in rows:
            buf.write(f"{z!r} {f!r} {c!r}\n")
    return buf.getvalue()


def _render_sample(args, batch: dist.SampleBatch) -> str:
    if args.output_format == "json":
        doc = {"command": "sample", "params": batch.params.to_dict(), "seed": batch.seed,
               "values": batch.values.tolist()}
        return json.dumps(doc) + "\n"
    lines = [_fmt(v) if args.output_format == "csv" else repr(float(v)) for v in batch.values]
    head = "value\n" if args.output_format == "csv" else ""
    return head + "".join(s + "\n" for s in lines)


def _write(args, text: str) -> None:
    if args.output_path:
        with open(args.output_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_verify(args, params: DistParams) -> int:
    report = verify.run_full(params, seed=args.seed, sample_size=args.sample_size, workers=args.workers)
    if args.output_format == "json":
        text = report.to_json() + "\n"
    elif args.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "statistic", "threshold", "passed"])
        for c in report.checks:
            w.writerow([c.name, _fmt(c.statistic), _fmt(c.threshold), c.passed])
        text = buf.getvalue()
    else:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.statistic:.3g} (threshold {c.threshold:g})"
                 for c in report.checks]
        lines += [f"note: {note}" for note in report.notes]
        lines.append("all checks passed" if report.passed else "some checks failed")
        text = "\n".join(lines) + "\n"
    _write(args, text)
    return 0 if report.passed else 2


def run(argv=None) -> int:
    """Parse ``argv`` and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        tol = _tolerance(args)
        params = _params(args)
        if args.workers < 1:
            raise UsageError("--workers must be at least 1")
        if args.command == "verify":
            if args.sample_size < 1000:
                raise UsageError("--sample-size must be at least 1000")
            return _run_verify(args, params)
        if args.command == "sample":
            if args.count < 1:
                raise UsageError("--count must be positive")
            batch = dist.sample(params, args.count, args.seed, workers=args.workers)
            _write(args, _render_sample(args, batch))
        elif args.command == "table":
            _write(args, _render_table(args, params, _table(args, params, tol)))
        else:
            _write(args, _render_scalar(args, params, _evaluate(args, params, tol)))
        return 0
    except UsageError as exc:
        print(f"normratio {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (ArithmeticError, _Failure) as exc:
        # numerical failures and undefined moments
        kind = type(exc).__name__ if not isinstance(exc, _Failure) else "ToleranceNotMet"
        print(f"normratio {args.command}: numerical failure ({kind}, method {args.method}): {exc}",
              file=sys.stderr)
        return 2
    except (NormRatioError, ValueError) as exc:
        print(f"normratio {args.command}: error: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
