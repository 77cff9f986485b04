"""Command-line front end (``gegenrl``).

Exit codes: 0 success, 2 usage or invalid parameter, 3 numeric failure
(including failed benchmark criteria), 4 file or format problem.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict

import numpy as np

from gegenrl import __version__, bench, bounds
from gegenrl.builtins import parse_builtin
from gegenrl.core import SampleVector, apply, build_fsgim, sample
from gegenrl.exceptions import DomainError, FormatError, GegenRLError, GridMismatchError
from gegenrl.grids import make_grid, sgirv_weights
from gegenrl.storage import load_fsgim, save_fsgim

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
ROW_SCHEMA = "gegenrl.rows/1"
BENCH_SCHEMA = "gegenrl.bench/1"
EVAL_COLUMNS = ["point", "approx", "exact", "abs_err", "rel_err"]


class UsageError(GegenRLError):
    pass


# ---------------------------------------------------------------- formatting

def fmt_float(x) -> str:
    """17 significant digits, enough for ``float(fmt_float(x)) == x``."""
    return "" if x is None else format(float(x), ".17g")


def emit_rows(columns, rows, fmt: str, out) -> None:
    if fmt == "json":
        records = [dict(zip(columns, row)) for row in rows]
        json.dump({"schema": ROW_SCHEMA, "columns": columns, "rows": records}, out, indent=1)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt_float(v) if isinstance(v, (float, np.floating)) or v is None else v
                         for v in row])


def parse_csv_rows(text: str) -> list[dict]:
    """Inverse of the CSV branch of :func:`emit_rows` (empty cells become ``None``)."""
    reader = csv.DictReader(io.StringIO(text))
    return [{k: (float(v) if v != "" else None) for k, v in rec.items()} for rec in reader]


def error_row(point: float, approx: float, exact: float | None) -> list:
    if exact is None:
        return [point, approx, None, None, None]
    abs_err = abs(approx - exact)
    rel_err = abs_err / abs(exact) if exact != 0 else (0.0 if abs_err == 0 else math.inf)
    return [point, approx, exact, abs_err, rel_err]


# ---------------------------------------------------------------- parsing

def parse_points(t_values, range_spec) -> np.ndarray:
    if (t_values is None) == (range_spec is None):
        raise UsageError("give exactly one of --t or --points")
    if t_values is not None:
        try:
            return np.array([float(v) for item in t_values for v in item.split(",") if v],
                            dtype=float)
        except ValueError:
            raise UsageError(f"--t expects numbers, got {t_values!r}") from None
    parts = range_spec.split(":")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise UsageError(f"--points expects start:stop:count, got {range_spec!r}") from None
    if len(parts) != 3 or count < 1:
        raise UsageError(f"--points expects start:stop:count with count >= 1, got {range_spec!r}")
    return np.linspace(lo, hi, count)


def parse_sweep_values(param: str, spec: str) -> list:
    integer = param in ("n", "nq")
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            return [int(v) if integer else float(v) for v in spec.split(",") if v]
        if integer and len(parts) == 2:
            return list(range(int(parts[0]), int(parts[1]) + 1))
        if not integer and len(parts) == 3:
            return [float(v) for v in np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))]
    except ValueError:
        pass
    form = "lo:hi (inclusive)" if integer else "start:stop:count"
    raise UsageError(f"--values for {param} expects a comma list or {form}, got {spec!r}")


def write_samples(vec: SampleVector, n: int, lam: float, out) -> None:
    out.write(f"# gegenrl samples n={n} lambda={lam!r} fingerprint={vec.fingerprint}\n")
    out.write("node_index,value\n")
    for k, v in enumerate(vec.values):
        out.write(f"{k},{fmt_float(v)}\n")


def read_samples(path: str) -> SampleVector:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("# gegenrl samples"):
        raise FormatError(f"{path}: missing '# gegenrl samples' header line")
    fields = dict(item.split("=", 1) for item in lines[0].split()[3:] if "=" in item)
    if "fingerprint" not in fields:
        raise FormatError(f"{path}: header lacks the grid fingerprint")
    rows = list(csv.reader(lines[1:]))
    if not rows or rows[0] != ["node_index", "value"]:
        raise FormatError(f"{path}: expected column header 'node_index,value'")
    try:
        index = [int(r[0]) for r in rows[1:]]
        values = np.array([float(r[1]) for r in rows[1:]])
    except (ValueError, IndexError) as exc:
        raise FormatError(f"{path}: malformed sample row ({exc})") from exc
    if index != list(range(len(index))):
        raise FormatError(f"{path}: node indices must run 0..n in order")
    return SampleVector(values, fields["fingerprint"])


# ---------------------------------------------------------------- commands

def _open_out(args, mode="w"):
    if getattr(args, "output", None) in (None, "-"):
        return sys.stdout
    return open(args.output, mode, encoding="utf-8", newline="")


def _emit(args, columns, rows) -> None:
    out = _open_out(args)
    try:
        emit_rows(columns, rows, args.format, out)
    finally:
        if out is not sys.stdout:
            out.close()


def _check_size(args) -> None:
    for name in ("n", "nq"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            raise UsageError(f"--{name} must be >= 0")


def cmd_eval(args) -> int:
    _check_size(args)
    points = parse_points(args.t, args.points)
    grid = make_grid(args.n, args.lam)
    fsgim = build_fsgim(grid, sgirv_weights(args.nq, args.lamq), args.alpha, points)
    if args.fn:
        fn = parse_builtin(args.fn)
        approx = apply(fsgim, sample(fn.f, grid))
        exact = fn.exact_many(args.alpha, points)
    else:
        approx = apply(fsgim, read_samples(args.samples))
        exact = [None] * len(points)
    _emit(args, EVAL_COLUMNS, [error_row(float(z), float(a), None if e is None else float(e))
                               for z, a, e in zip(points, approx, exact)])
    return EXIT_OK


def cmd_sample(args) -> int:
    _check_size(args)
    fn = parse_builtin(args.fn)
    grid = make_grid(args.n, args.lam)
    out = _open_out(args)
    try:
        write_samples(sample(fn.f, grid), args.n, args.lam, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_matrix(args) -> int:
    _check_size(args)
    points = parse_points(args.t, args.points)
    fsgim = build_fsgim(make_grid(args.n, args.lam), sgirv_weights(args.nq, args.lamq),
                        args.alpha, points)
    save_fsgim(fsgim, args.output)
    return EXIT_OK


def cmd_apply(args) -> int:
    fsgim = load_fsgim(args.matrix)
    approx = apply(fsgim, read_samples(args.samples))
    if args.fn:
        exact = parse_builtin(args.fn).exact_many(fsgim.alpha, fsgim.points)
    else:
        exact = [None] * len(approx)
    _emit(args, EVAL_COLUMNS, [error_row(float(z), float(a), None if e is None else float(e))
                               for z, a, e in zip(fsgim.points, approx, exact)])
    return EXIT_OK


def cmd_sweep(args) -> int:
    fn = parse_builtin(args.fn)
    exact = fn.exact(args.alpha, args.t)
    base = {"n": args.n, "nq": args.nq, "lambda": args.lam, "lambdaq": args.lamq}
    rows = []
    for value in parse_sweep_values(args.param, args.values):
        cfg = dict(base, **{args.param: value})
        if cfg["n"] is None or cfg["nq"] is None or cfg["n"] < 0 or cfg["nq"] < 0:
            raise UsageError("sweep needs non-negative --n and --nq (or sweep over them)")
        grid = make_grid(cfg["n"], cfg["lambda"])
        fsgim = build_fsgim(grid, sgirv_weights(cfg["nq"], cfg["lambdaq"]), args.alpha, [args.t])
        approx = float(apply(fsgim, sample(fn.f, grid))[0])
        rows.append([value] + error_row(args.t, approx, exact)[1:])
    _emit(args, [args.param, "approx", "exact", "abs_err", "rel_err"], rows)
    return EXIT_OK


def cmd_bench(args) -> int:
    names = args.criterion or list(bench.CRITERIA)
    results = bench.run_criteria(names)
    passed = all(r.passed for r in results)
    if args.json:
        json.dump({"schema": BENCH_SCHEMA, "version": __version__, "passed": passed,
                   "criteria": [r.as_dict() for r in results]}, sys.stdout, indent=1)
        sys.stdout.write("\n")
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if passed else EXIT_NUMERIC


def cmd_advise(args) -> int:
    if args.mode == "precision" and (args.n is None or args.nq is None):
        raise UsageError("precision mode needs --n and --nq")
    advice = bounds.advise_params(args.n or 0, args.nq or 0, args.mode)
    record = asdict(advice)
    if args.format == "json":
        json.dump(record, sys.stdout, indent=1)
        sys.stdout.write("\n")
        return EXIT_OK
    print(f"lambda   = {advice.lambda_:g}")
    print(f"lambda_q = {advice.lambda_q:g}")
    lo, hi = advice.lambda_range
    print(f"lambda range: [{lo:g}, {hi:g}]")
    if advice.excluded:
        print(f"avoid lambda in ({advice.excluded[0]:.4f}, {advice.excluded[1]:.4f})")
    if advice.lambda_q_upper is not None:
        print(f"constraint: lambda_q < {advice.lambda_q_upper:g}")
    print(f"why: {advice.rationale}")
    return EXIT_OK


def cmd_report(args) -> int:
    rep = bounds.error_report(args.n, args.nq, args.alpha, args.lam, args.lamq, args.t,
                              a_next=args.deriv_bound, eta=args.eta)
    json.dump(asdict(rep), sys.stdout, indent=1)
    sys.stdout.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_params(p, *, nodes=True, quad=True, alpha=True) -> None:
    if alpha:
        p.add_argument("--alpha", type=float, required=True, help="fractional order in (0, 1)")
    if nodes:
        p.add_argument("--n", type=int, required=True, help="interpolation degree")
        p.add_argument("--lambda", dest="lam", type=float, default=0.0,
                       help="Gegenbauer index of the nodes (default 0)")
    if quad:
        p.add_argument("--nq", type=int, required=True, help="quadrature degree")
        p.add_argument("--lambdaq", dest="lamq", type=float, default=0.0,
                       help="Gegenbauer index of the quadrature (default 0)")


def _add_points(p) -> None:
    p.add_argument("--t", action="append", help="evaluation point(s), comma separated or repeated")
    p.add_argument("--points", help="equidistant points start:stop:count")


def _add_output(p) -> None:
    p.add_argument("--output", "-o", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gegenrl",
                                     description="Gegenbauer approximation of left "
                                                 "Riemann-Liouville fractional integrals")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the fractional integral at points")
    _add_params(p)
    _add_points(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fn", help="builtin: power:N, exp:k, cubic8t, sin1mt")
    src.add_argument("--samples", help="samples file written by 'gegenrl sample'")
    _add_output(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sample", help="write node samples of a builtin to a CSV file")
    _add_params(p, quad=False, alpha=False)
    p.add_argument("--fn", required=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("matrix", help="precompute an integration matrix and save it")
    _add_params(p)
    _add_points(p)
    p.add_argument("--output", "-o", required=True, help="FSGIM file to write")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("apply", help="apply a saved matrix to a samples file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--fn", help="builtin whose closed form fills the exact/error columns")
    _add_output(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("sweep", help="error against the closed form over one parameter")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--nq", type=int)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--lambdaq", dest="lamq", type=float, default=0.0)
    p.add_argument("--param", required=True, choices=("n", "nq", "lambda", "lambdaq"))
    p.add_argument("--values", required=True,
                   help="comma list, lo:hi for n/nq, start:stop:count for lambda/lambdaq")
    _add_output(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="run the acceptance benchmark")
    p.add_argument("--criterion", action="append", choices=list(bench.CRITERIA))
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("advise", help="recommend Gegenbauer indices")
    p.add_argument("--mode", choices=("standard", "precision"), default="standard")
    p.add_argument("--n", type=int)
    p.add_argument("--nq", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_advise)

    p = sub.add_parser("report", help="computable error-model components (JSON)")
    _add_params(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--deriv-bound", type=float, default=1.0,
                   help="bound on |f^(n+1)| (default 1)")
    p.add_argument("--eta", type=float, default=0.5,
                   help="stand-in for the unknown mean-value point in (0, 1)")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"gegenrl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, GridMismatchError, OSError) as exc:
        print(f"gegenrl: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GegenRLError, ArithmeticError, ValueError) as exc:
        print(f"gegenrl: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
