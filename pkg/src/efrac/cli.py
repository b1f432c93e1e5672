"""Command-line interface.

Every subcommand prints a delimited table (CSV by default, JSON lines
with --format json) to stdout.  Exit codes: 0 on success, 1 on usage or
structural errors, 2 when a memory budget would be exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence, TextIO

from . import bounds, cache, density, subsetsum, uset
from .config import RunConfig, load_config
from .errors import CacheError, EfracError, ResourceBudgetError, StructureError

Row = tuple[Any, ...]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the exit-code contract reserves
    # 2 for resource errors, so remap usage problems to 1
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="process pool size")
    common.add_argument(
        "--memory-budget", type=int, default=None, help="memory budget in bytes"
    )
    common.add_argument(
        "--cache-dir", type=Path, default=None, help="directory for count caches"
    )
    common.add_argument(
        "--format", choices=("csv", "json"), default=None, help="output format"
    )

    parser = _Parser(prog="efrac", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser(
        "enumerate", parents=[common], help="cardinalities of the unit-fraction sum sets"
    )
    p.add_argument("--max-n", type=int, required=True)

    p = sub.add_parser(
        "chain-bound", parents=[common], help="certified bound from a full divisor chain"
    )
    p.add_argument("--modulus", type=int, required=True)

    p = sub.add_parser(
        "mixed-bound",
        parents=[common],
        help="certified bound with exact counts only below a smaller modulus",
    )
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--exact-modulus", type=int, required=True)

    p = sub.add_parser(
        "figure-data", parents=[common], help="normalized growth data per n"
    )
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument(
        "--plot", type=Path, default=None, help="also render the series to this PNG"
    )

    p = sub.add_parser(
        "u-set", parents=[common], help="certified members of the doubling set"
    )
    p.add_argument("--max", type=int, required=True)
    p.add_argument(
        "--cap", type=int, default=uset.DEFAULT_EXHAUSTIVE_FALLBACK,
        help="largest n decided by exhaustive search",
    )
    p.add_argument("--recursive-y", type=int, default=None)
    p.add_argument("--recursive-x", type=int, default=None)

    p = sub.add_parser(
        "density", parents=[common], help="natural density of a valuation profile"
    )
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument(
        "--empirical-x", type=int, default=None,
        help="also count members up to this bound",
    )

    p = sub.add_parser(
        "gm-table", parents=[common], help="denominator lcm and harmonic product table"
    )
    p.add_argument("--max-m", type=int, required=True)

    return parser


def _render_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.10f}"
    return str(value)


def _emit(columns: Sequence[str], rows: Sequence[Row], fmt: str, out: TextIO) -> None:
    if fmt == "csv":
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join(_render_cell(v) for v in row) + "\n")
        return
    for row in rows:
        record = {}
        for col, v in zip(columns, row):
            if v is None:
                continue
            record[col] = f"{v:.10f}" if isinstance(v, float) else v
        out.write(json.dumps(record, sort_keys=True) + "\n")


def _chain_counts_cached(modulus: int, cfg: RunConfig) -> list[int]:
    chain = subsetsum.divisor_chain(modulus)
    path = cache.cache_path(cfg.cache_dir, modulus)
    if path.exists():
        cached = cache.read_chain_cache(path, expect_modulus=modulus)
        if cached.divisors != chain.divisors:
            raise CacheError(
                f"{path}: cached divisors do not match the chain of {modulus}; "
                "remove the file to recompute"
            )
        if any(flag != "exact" for flag in cached.flags):
            raise CacheError(f"{path}: chain cache must hold exact counts only")
        return list(cached.counts)
    counts = subsetsum.chain_counts(chain, cfg.memory_budget_bytes)
    cache.write_chain_cache(
        path, modulus, list(chain.divisors), counts, ["exact"] * len(counts)
    )
    return counts


def _cmd_enumerate(args: argparse.Namespace, cfg: RunConfig):
    counts = subsetsum.enumerate_egyptian(args.max_n, cfg.memory_budget_bytes)
    rows = [(n, c) for n, c in enumerate(counts, start=1)]
    return ("n", "card"), rows


def _bound_cells(report: bounds.BoundReport) -> tuple[Any, ...]:
    return (
        report.delta.numerator,
        report.delta.denominator,
        report.bound_upper,
        bounds.ceil_decimal(report.bound_exact, 20),
    )


def _cmd_chain_bound(args: argparse.Namespace, cfg: RunConfig):
    counts = _chain_counts_cached(args.modulus, cfg)
    report = bounds.full_divisor_bound(
        args.modulus, counts, cfg.log_precision_bits, args.workers
    )
    columns = ("M", "delta_num", "delta_den", "bound", "bound_hi")
    return columns, [(report.modulus, *_bound_cells(report))]


def _cmd_mixed_bound(args: argparse.Namespace, cfg: RunConfig):
    exact_counts = _chain_counts_cached(args.exact_modulus, cfg)
    report = bounds.mixed_bound(
        args.modulus, args.exact_modulus, exact_counts,
        cfg.log_precision_bits, args.workers,
    )
    columns = (
        "M", "M_exact", "delta_num", "delta_den", "bound", "bound_hi",
        "n_exact", "n_cap", "n_lifted",
    )
    tally = {kind: report.r_provenance.count(kind) for kind in ("exact", "cap", "lifted")}
    row = (
        report.modulus,
        report.exact_modulus,
        *_bound_cells(report),
        tally["exact"],
        tally["cap"],
        tally["lifted"],
    )
    return columns, [row]


def _cmd_figure_data(args: argparse.Namespace, cfg: RunConfig):
    stats = subsetsum.sum_set_stats(args.max_n, cfg.memory_budget_bytes)
    if args.plot is not None:
        from .plotting import render_growth_figure

        render_growth_figure(stats, args.plot)
    columns = ("n", "card", "log_card_over_n", "log_card_over_n_over_log_n")
    return columns, list(stats)


def _cmd_u_set(args: argparse.Namespace, cfg: RunConfig):
    if (args.recursive_y is None) != (args.recursive_x is None):
        raise StructureError(
            "--recursive-y and --recursive-x must be given together"
        )
    count, members = uset.count_u(args.max, exact_cap=args.cap)
    columns = ("record", "n", "kind", "m", "p", "k", "value")
    rows: list[Row] = []
    for n, cert in members:
        rows.append(("member", n, cert.kind, cert.m, cert.p, cert.k, None))
    rows.append(("count", None, None, None, None, None, count))
    rows.append(("doubling_lower_bound", None, None, None, None, None, 1 << count))
    if args.recursive_y is not None:
        if args.recursive_y > args.max:
            raise StructureError(
                "--recursive-y must not exceed --max, the member list only "
                f"covers 1..{args.max}"
            )
        u_y = [n for n, _ in members if n <= args.recursive_y]
        value = uset.recursive_count_bound(args.recursive_x, args.recursive_y, u_y)
        rows.append(("recursive_bound", None, None, None, None, None, value))
    return columns, rows


def _cmd_density(args: argparse.Namespace, cfg: RunConfig):
    profile = density.profile_of_modulus(args.modulus)
    delta = density.delta_from_profile(profile)
    columns = ("M", "delta_num", "delta_den", "x", "empirical_num", "empirical_den")
    x = emp_num = emp_den = None
    if args.empirical_x is not None:
        emp = density.empirical_density(profile, args.empirical_x)
        x, emp_num, emp_den = args.empirical_x, emp.numerator, emp.denominator
    row = (args.modulus, delta.numerator, delta.denominator, x, emp_num, emp_den)
    return columns, [row]


def _cmd_gm_table(args: argparse.Namespace, cfg: RunConfig):
    table = uset.g_m_table(args.max_m)
    rows = [(m, d, g) for m, (d, g) in enumerate(table.entries, start=1)]
    return ("m", "d_m", "g_m"), rows


_HANDLERS = {
    "enumerate": _cmd_enumerate,
    "chain-bound": _cmd_chain_bound,
    "mixed-bound": _cmd_mixed_bound,
    "figure-data": _cmd_figure_data,
    "u-set": _cmd_u_set,
    "density": _cmd_density,
    "gm-table": _cmd_gm_table,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        cfg = load_config(
            {
                "memory_budget_bytes": args.memory_budget,
                "cache_dir": args.cache_dir,
                "output_format": args.format,
            }
        )
        columns, rows = _HANDLERS[args.command](args, cfg)
        _emit(columns, rows, cfg.output_format, sys.stdout)
    except ResourceBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EfracError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
