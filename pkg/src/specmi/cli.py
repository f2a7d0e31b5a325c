"""Command line interface.

Subcommands
-----------
* ``extrema``      exact sweep of every arrangement class at one spectrum
* ``census``       randomized census of extremal classes over random spectra
* ``relation``     a-priori order between two 2x3 classes, with certificate
* ``honeycomb``    the certified 2x3 class diagram as Graphviz DOT
* ``qubit2-scan``  two-qubit information quantities over the separability
                   octahedron

All output is deterministic for fixed arguments: no timestamps, floats
rendered with repr (JSON) or %.17g (CSV).  Information values are in nats
unless ``--log-base 2`` is given (extrema and qubit2-scan only).

Exit codes: 0 success; 1 relation left inconclusive; 2 invalid arguments;
3 checkpoint mismatch on resume; 4 input/output failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from typing import Sequence

from .classes import class_table, honeycomb_dot, r23_table
from .core import EPSILON, Spectrum
from .extrema import CensusReport, CheckpointMismatchError, brute_force_extrema, census
from .orders import derive_relation
from .qubit2 import SCAN_FUNCTIONS, octahedron_scan

__all__ = ["RunConfig", "build_parser", "main"]

_SCHEMA_VERSION = 1
_LN2 = math.log(2.0)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Normalized arguments of one invocation."""

    command: str
    m: int | None = None
    n: int | None = None
    samples: int | None = None
    seed: int | None = None
    log_base: str = "e"
    workers: int = 1
    output_path: str | None = None
    format: str = "json"
    spectrum: Spectrum | None = None
    a: int | None = None
    b: int | None = None
    block_size: int = 2500
    checkpoint: str | None = None
    resume: bool = False
    convergence_csv: str | None = None
    function: str | None = None
    grid: int | None = None


def _parse_spectrum(text: str) -> Spectrum:
    parts = [p.strip() for p in text.split(",") if p.strip() != ""]
    if len(parts) < 2:
        raise ValueError(f"--spectrum needs at least 2 comma-separated values, got {text!r}")
    values: list[float] = []
    for part in parts:
        try:
            values.append(float(part))
        except ValueError:
            raise ValueError(f"--spectrum: {part!r} is not a number") from None
    if any(v < -EPSILON for v in values):
        raise ValueError(f"--spectrum: negative entry {min(values)!r}")
    total = math.fsum(values)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"--spectrum entries sum to {total!r}; they must sum to 1")
    values = [v / total for v in values]
    for i in range(len(values) - 1):
        if values[i] < values[i + 1]:
            raise ValueError(
                "--spectrum must be sorted in non-increasing order; "
                f"entries {i} and {i + 1} are {values[i]!r} < {values[i + 1]!r}"
            )
    return Spectrum(tuple(values))


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _rescale(value: float, log_base: str) -> float:
    return value / _LN2 if log_base == "2" else value


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _run_extrema(cfg: RunConfig) -> int:
    report = brute_force_extrema(cfg.spectrum, cfg.m, cfg.n)
    table = class_table(cfg.m, cfg.n)
    values = [_rescale(v, cfg.log_base) for v in report.values]
    if cfg.format == "csv":
        lines = ["class,word,cycle_label,value"]
        for cls, value in zip(table.classes, values):
            lines.append(f"{cls.index},{cls.word},{cls.cycle_label},{_fmt(value)}")
        _write_text(cfg.output_path, "\n".join(lines) + "\n")
        return 0

    def describe(indices: tuple[int, ...]) -> list[dict]:
        return [
            {
                "index": i,
                "display": table.get(i).display,
                "cycle_label": table.get(i).cycle_label,
            }
            for i in indices
        ]

    payload = {
        "schema_version": _SCHEMA_VERSION,
        "command": "extrema",
        "m": cfg.m,
        "n": cfg.n,
        "log_base": cfg.log_base,
        "spectrum": list(cfg.spectrum.values),
        "max_value": _rescale(report.max_value, cfg.log_base),
        "min_value": _rescale(report.min_value, cfg.log_base),
        "maxima": describe(report.maxima),
        "minima": describe(report.minima),
        "values": values,
    }
    _write_text(cfg.output_path, _json_text(payload))
    return 0


def _census_payload(report: CensusReport) -> dict:
    return {
        "schema_version": _SCHEMA_VERSION,
        "command": "census",
        "m": report.m,
        "n": report.n,
        "samples": report.samples,
        "samples_done": report.samples_done,
        "seed": report.seed,
        "block_size": report.block_size,
        "workers": report.workers,
        "n_classes": len(report.max_hits),
        "max_classes": list(report.max_classes),
        "min_classes": list(report.min_classes),
        "max_hits": {str(i + 1): h for i, h in enumerate(report.max_hits) if h},
        "min_hits": {str(i + 1): h for i, h in enumerate(report.min_hits) if h},
        "tie_events_max": report.tie_events_max,
        "tie_events_min": report.tie_events_min,
        "convergence": [
            {
                "samples": p.samples,
                "n_max_classes": p.n_max_classes,
                "n_min_classes": p.n_min_classes,
            }
            for p in report.convergence
        ],
    }


def _run_census(cfg: RunConfig) -> int:
    report = census(
        cfg.m,
        cfg.n,
        cfg.samples,
        cfg.seed,
        workers=cfg.workers,
        block_size=cfg.block_size,
        checkpoint_path=cfg.checkpoint,
        resume=cfg.resume,
    )
    _write_text(cfg.output_path, _json_text(_census_payload(report)))
    if cfg.convergence_csv is not None:
        lines = ["samples,n_max_classes,n_min_classes"]
        for p in report.convergence:
            lines.append(f"{p.samples},{p.n_max_classes},{p.n_min_classes}")
        _write_text(cfg.convergence_csv, "\n".join(lines) + "\n")
    return 0


def _run_relation(cfg: RunConfig) -> int:
    table = class_table(cfg.m, cfg.n)
    verdict = derive_relation(cfg.a, cfg.b, table=table)
    _write_text(cfg.output_path, verdict.render() + "\n")
    return 1 if verdict.is_inconclusive else 0


def _run_honeycomb(cfg: RunConfig) -> int:
    _write_text(cfg.output_path, honeycomb_dot(table=r23_table()))
    return 0


def _run_qubit2_scan(cfg: RunConfig) -> int:
    points, values = octahedron_scan(cfg.function, cfg.grid)
    lines = ["t11,t22,t33,value"]
    for (t11, t22, t33), value in zip(points, values):
        lines.append(
            f"{_fmt(t11)},{_fmt(t22)},{_fmt(t33)},{_fmt(_rescale(float(value), cfg.log_base))}"
        )
    _write_text(cfg.output_path, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _formatter(prog: str) -> argparse.HelpFormatter:
    return argparse.HelpFormatter(prog, width=96)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specmi",
        description="Mutual-information extrema over arrangements of a fixed spectrum.",
        formatter_class=_formatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser(
        "extrema",
        help="evaluate every arrangement class at one spectrum",
        formatter_class=_formatter,
    )
    p.add_argument("--m", type=int, required=True, help="number of rows")
    p.add_argument("--n", type=int, required=True, help="number of columns")
    p.add_argument(
        "--spectrum",
        required=True,
        help="comma-separated probabilities, sorted non-increasing, summing to 1",
    )
    p.add_argument("--log-base", choices=["e", "2"], default="e", help="unit of reported values")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", default=None, help="write to this file instead of stdout")

    p = sub.add_parser(
        "census",
        help="randomized census of extremal classes over uniform spectra",
        formatter_class=_formatter,
    )
    p.add_argument("--m", type=int, required=True, help="number of rows")
    p.add_argument("--n", type=int, required=True, help="number of columns")
    p.add_argument("--samples", type=int, required=True, help="number of random spectra")
    p.add_argument("--seed", type=int, required=True, help="random seed (reruns are identical)")
    p.add_argument("--workers", type=int, default=1, help="worker threads (result-invariant)")
    p.add_argument("--block-size", type=int, default=2500, help="samples per block")
    p.add_argument("--checkpoint", default=None, help="checkpoint JSON path")
    p.add_argument(
        "--resume",
        action="store_true",
        help="continue from the checkpoint if it exists (parameters must match)",
    )
    p.add_argument("--convergence-csv", default=None, help="also write the convergence table")
    p.add_argument("--output", default=None, help="write to this file instead of stdout")

    p = sub.add_parser(
        "relation",
        help="derive the a-priori information order between two classes",
        formatter_class=_formatter,
    )
    p.add_argument("--a", type=int, required=True, help="first class index (1-based)")
    p.add_argument("--b", type=int, required=True, help="second class index (1-based)")
    p.add_argument("--m", type=int, default=2, help="number of rows (default 2)")
    p.add_argument("--n", type=int, default=3, help="number of columns (default 3)")
    p.add_argument("--output", default=None, help="write to this file instead of stdout")

    p = sub.add_parser(
        "honeycomb",
        help="emit the certified 2x3 class diagram as Graphviz DOT",
        formatter_class=_formatter,
    )
    p.add_argument("--output", default=None, help="write to this file instead of stdout")

    p = sub.add_parser(
        "qubit2-scan",
        help="scan a two-qubit information quantity over the separability octahedron",
        formatter_class=_formatter,
    )
    p.add_argument(
        "--function",
        required=True,
        choices=["gamma-max", "gamma-min", "i-max-qmi", "i-min", "i-max-class"],
        help="quantity to evaluate",
    )
    p.add_argument("--grid", type=int, default=101, help="grid points per correlation axis")
    p.add_argument("--log-base", choices=["e", "2"], default="e", help="unit of reported values")
    p.add_argument("--output", default=None, help="write to this file instead of stdout")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    kwargs = {
        "command": args.command,
        "output_path": getattr(args, "output", None),
    }
    if args.command == "extrema":
        kwargs.update(
            m=args.m,
            n=args.n,
            spectrum=_parse_spectrum(args.spectrum),
            log_base=args.log_base,
            format=args.format,
        )
    elif args.command == "census":
        if args.samples < 1:
            raise ValueError("--samples must be at least 1")
        if args.workers < 1:
            raise ValueError("--workers must be at least 1")
        if args.block_size < 1:
            raise ValueError("--block-size must be at least 1")
        kwargs.update(
            m=args.m,
            n=args.n,
            samples=args.samples,
            seed=args.seed,
            workers=args.workers,
            block_size=args.block_size,
            checkpoint=args.checkpoint,
            resume=args.resume,
            convergence_csv=args.convergence_csv,
        )
    elif args.command == "relation":
        kwargs.update(m=args.m, n=args.n, a=args.a, b=args.b)
    elif args.command == "qubit2-scan":
        kwargs.update(
            function=args.function.replace("-", "_"),
            grid=args.grid,
            log_base=args.log_base,
        )
    return RunConfig(**kwargs)


_HANDLERS = {
    "extrema": _run_extrema,
    "census": _run_census,
    "relation": _run_relation,
    "honeycomb": _run_honeycomb,
    "qubit2-scan": _run_qubit2_scan,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    try:
        cfg = _config_from_args(args)
        return _HANDLERS[cfg.command](cfg)
    except CheckpointMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
