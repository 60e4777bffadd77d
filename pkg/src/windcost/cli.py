"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 domain or data error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

import numpy as np

from . import __version__
from .cost_model import PUBLISHED_MODEL, TurbineSpec, specific_cost, total_cost
from .errors import DomainError, MalformedCsv, NoViableCandidate, WindCostError
from .ingestion import DEFAULT_COLUMNS, DEFAULT_REFERENCE_YEAR, read_uswtdb
from .plausibility import region_sweep
from .regression import Basis, Dataset, select_model
from .reports import build_audit_report, reproduce_table3

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_eval(args) -> int:
    spec = TurbineSpec(args.hh, args.d, args.p_watts, args.age)
    sc = specific_cost(PUBLISHED_MODEL, spec)
    tc = total_cost(PUBLISHED_MODEL, spec)
    if args.format == "json":
        sys.stdout.write(_dump_json({"specific_cost": sc, "total_cost": tc, "currency_unit": PUBLISHED_MODEL.currency_unit}))
    else:
        print(f"specific_cost: {sc:.2f}")
        print(f"total_cost: {tc:.2f}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    points = region_sweep(PUBLISHED_MODEL, args.hh, args.d, args.age, args.p_min, args.p_max, args.steps)
    if args.format == "json":
        text = _dump_json(
            [{"p_watts": p.rated_power, "total_cost": p.total_cost, "category": p.category.value} for p in points]
        )
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["p_watts", "total_cost", "category"])
        for p in points:
            writer.writerow([repr(p.rated_power), repr(p.total_cost), p.category.value])
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def _column_mapping(args) -> dict:
    return {key: getattr(args, f"col_{key}") for key in DEFAULT_COLUMNS if getattr(args, f"col_{key}") is not None}


def cmd_audit(args) -> int:
    summary = read_uswtdb(args.csv_path, _column_mapping(args), args.ref_year)
    report = build_audit_report(summary.specs, PUBLISHED_MODEL, args.ref_year, summary)
    _emit(_dump_json(report.to_dict()), args.out)
    # keep stdout machine-readable when it carries the JSON
    print(report.summary_line(), file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


def _read_table(path: str, response: str, predictors: List[str]) -> Dataset:
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh, strict=True)
        try:
            header = [h.strip() for h in next(reader)]
            rows = [r for r in reader if r]
        except StopIteration:
            raise MalformedCsv("empty input: no header row") from None
        except csv.Error as exc:
            raise MalformedCsv(str(exc)) from None
    missing = [c for c in [response, *predictors] if c not in header]
    if missing:
        raise MalformedCsv(f"header lacks columns: {missing}")
    idx = [header.index(c) for c in predictors]
    ridx = header.index(response)
    try:
        X = np.array([[float(r[j]) for j in idx] for r in rows], dtype=float).reshape(len(rows), len(idx))
        y = np.array([float(r[ridx]) for r in rows], dtype=float)
    except (ValueError, IndexError) as exc:
        raise DomainError(f"non-numeric or missing value: {exc}") from None
    return Dataset(X, y, tuple(predictors))


def cmd_fit(args) -> int:
    predictors = [c.strip() for c in args.predictors.split(",") if c.strip()]
    bases = [Basis.parse(b) for b in args.bases.split(",") if b.strip()]
    data = _read_table(args.csv_path, args.response, predictors)
    selection = select_model(data, bases)
    payload = {
        "tool": "windcost",
        "version": __version__,
        "response": args.response,
        "predictors": predictors,
        "allowed_bases": [b.value for b in sorted(set(bases), key=lambda b: b.rank)],
        "attempted": selection.attempted,
        "ranking": [c.to_dict(predictors) for c in selection.candidates],
        "skipped": [
            {"bases": {n: b.value for n, b in zip(predictors, s.basis_assignment)}, "reason": s.reason}
            for s in selection.skipped
        ],
    }
    _emit(_dump_json(payload), args.out)
    return EXIT_OK


def cmd_reproduce_table3(args) -> int:
    report = reproduce_table3()
    if args.format == "json":
        sys.stdout.write(_dump_json(report.to_dict()))
    else:
        print(report.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="windcost", description="Wind turbine investment cost model audits.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="specific and total cost of one turbine")
    p.add_argument("hh", type=float, help="hub height, m")
    p.add_argument("p_watts", type=float, help="rated power, W")
    p.add_argument("d", type=float, help="rotor diameter, m")
    p.add_argument("age", type=float, help="years before the reference year")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="total cost and regime over a rated-power grid")
    p.add_argument("hh", type=float)
    p.add_argument("d", type=float)
    p.add_argument("age", type=float)
    p.add_argument("--p-min", type=float, default=1e5, help="W (default 0.1 MW)")
    p.add_argument("--p-max", type=float, default=1.2e7, help="W (default 12 MW)")
    p.add_argument("--steps", type=int, default=120)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("audit", help="classify every distinct turbine type in a USWTDB CSV")
    p.add_argument("csv_path")
    p.add_argument("--ref-year", type=int, default=DEFAULT_REFERENCE_YEAR)
    p.add_argument("--out")
    for key, default in DEFAULT_COLUMNS.items():
        p.add_argument(f"--col-{key.replace('_', '-')}", dest=f"col_{key}", metavar="NAME", help=f"default {default}")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("fit", help="rank basis-function models by training RMSE")
    p.add_argument("csv_path")
    p.add_argument("--response", required=True)
    p.add_argument("--predictors", required=True, help="comma-separated column names")
    p.add_argument("--bases", default="identity,square,log,sqrt")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("reproduce-table3", help="published vs computed costs at true age and age 0")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_reproduce_table3)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except OSError as exc:
        print(f"windcost: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (WindCostError, NoViableCandidate) as exc:
        print(f"windcost: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
