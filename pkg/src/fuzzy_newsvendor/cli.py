"""Command-line interface: scenario JSON in, CSV tables out.

Subcommands mirror the report tables (densities, demand moments, optimal
orders, profit statistics, policy comparisons, visitor simulation) plus
``verify``, which runs the full acceptance suite. With ``--svg`` each table
is also rendered to an SVG figure next to its CSV. Identical inputs produce
byte-identical CSVs.

Exit codes: 0 success, 1 failed verification, 2 invalid configuration,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .errors import NumericalError, WeightRangeError
from .scenarios import ConfigError, ScenarioConfig, load_scenario
from . import tables

_REPORTS = {
    "density": "demand density across risk factors (density.csv)",
    "moments": "demand mean and variance per risk factor (moments.csv)",
    "optimize": "order quantities per model and risk factor (optimize.csv)",
    "profit": "expected profit and variance at the optimum (profit.csv)",
    "compare": "benefit and variance change against fixed weights (compare.csv)",
    "simulate-p": "visitor simulation and derived weight (derived_weight.csv, rating_sweep.csv)",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzy-newsvendor",
        description="Order-quantity analysis for two-hypothesis demand "
        "weighted by a trapezoidal fuzzy number.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in _REPORTS.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", required=True, help="scenario JSON path")
        sub.add_argument(
            "--out", default=None,
            help="output directory (default: output_dir from the config)",
        )
        sub.add_argument(
            "--seed", type=int, default=None,
            help="override the simulation seed from the config",
        )
        sub.add_argument(
            "--svg", action="store_true",
            help="also render an SVG figure next to each CSV",
        )
    subparsers.add_parser("verify", help="run the acceptance suite")
    return parser


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean cells are not part of any table schema")
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if value == 0.0:
        value = 0.0  # normalize -0.0
    return format(value, ".9g")


def _write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(cell) for cell in row])
    return path


def _run_report(command: str, scenario: ScenarioConfig, seed, out_dir: Path):
    """Build and write the CSVs of one subcommand; returns name -> (header, rows, path)."""
    if command == "simulate-p":
        weight_header, weight_rows = tables.derived_weight_table(scenario, seed)
        sweep_header, sweep_rows = tables.rating_sweep_table(scenario, seed)
        return {
            "derived_weight": (
                weight_rows, _write_csv(out_dir / "derived_weight.csv", weight_header, weight_rows),
            ),
            "rating_sweep": (
                sweep_rows, _write_csv(out_dir / "rating_sweep.csv", sweep_header, sweep_rows),
            ),
        }
    builder = {
        "density": tables.density_table,
        "moments": tables.moments_table,
        "optimize": tables.optimize_table,
        "profit": tables.profit_table,
        "compare": tables.compare_table,
    }[command]
    header, rows = builder(scenario)
    name = command.replace("-", "_")
    return {name: (rows, _write_csv(out_dir / f"{name}.csv", header, rows))}


def _render_figures(command: str, outputs, out_dir: Path) -> list[Path]:
    from . import plots

    renderers = {
        "density": plots.density_figure,
        "moments": plots.moments_figure,
        "optimize": plots.optimize_figure,
        "profit": plots.profit_figure,
        "compare": plots.compare_figure,
        "derived_weight": plots.weight_membership_figure,
        "rating_sweep": plots.rating_sweep_figure,
    }
    written = []
    for name, (rows, csv_path) in outputs.items():
        renderer = renderers.get(name if command == "simulate-p" else command)
        if renderer is not None:
            written.append(renderer(rows, csv_path.with_suffix(".svg")))
    return written


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        from .acceptance import run_all

        return 0 if run_all() else 1
    try:
        scenario = load_scenario(args.config)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    out_dir = Path(args.out) if args.out else Path(scenario.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        outputs = _run_report(args.command, scenario, args.seed, out_dir)
        artifacts = [path for _, path in outputs.values()]
        if args.svg:
            artifacts.extend(_render_figures(args.command, outputs, out_dir))
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except (NumericalError, WeightRangeError, ValueError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 3
    for path in sorted(artifacts):
        print(path)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
