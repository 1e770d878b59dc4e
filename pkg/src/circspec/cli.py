"""Command-line front end.

``analyze`` runs the full pipeline on one weights file and writes a
JSON report plus a CSV curve table; ``compare`` turns two reports into
an equivalence verdict; ``selftest`` runs the built-in invariant suite.

Reports and curve files are byte-identical across runs with the same
configuration and seed.  Knobs that cannot change the numbers (worker
count, output locations) are deliberately left out of the report echo.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .circular_ensemble import build_conjugate_ensemble
from .equivalence import (
    DEFAULT_DELTA_THRESHOLD,
    DEFAULT_TAIL_FRACTION,
    DEFAULT_TAIL_TOL,
    EquivalenceVerdict,
    GridMismatchError,
    make_csd_report,
)
from .layer_ensemble import build_layer_ensemble
from .selftest import format_results, run_selftest
from .spectra import SCALING_MODES, EigenSolverError, SpectralGrid, pool_spectrum, spectral_density
from .tensor_ingest import SelectionPolicy, TensorFormatError, parse_tensor_file, select_weight_tensors

#: CLI reduction flag to pooling mode for the circular ensemble.
REDUCTIONS = {"modulus": "general-modulus", "real-part": "general-real"}


@dataclass
class AnalysisConfig:
    """Everything one ``analyze`` run depends on."""

    weights_path: str
    out_dir: str
    seed: int = 0
    eps_max: float = 6.0
    bins: int = 1000
    scaling: str = "none"
    reduction: str = "modulus"
    repetitions: int = 1
    max_order: int | None = None
    tail_fraction: float = DEFAULT_TAIL_FRACTION
    tail_tol: float = DEFAULT_TAIL_TOL
    delta_threshold: float = DEFAULT_DELTA_THRESHOLD
    workers: int = 1
    label: str | None = None


def cmd_analyze(config: AnalysisConfig) -> tuple[Path, Path]:
    """Run ingest -> ensembles -> spectra -> CSD and write report + curve files.

    Returns the report and curve paths.  Raises on unparseable input,
    empty selections, and solver failures (with the member identified).
    """
    weights_path = Path(config.weights_path)
    collection = parse_tensor_file(weights_path.read_bytes())
    policy = SelectionPolicy(max_order=config.max_order)
    tensors = select_weight_tensors(collection, policy)
    label = config.label or collection.metadata.get("architecture") or weights_path.stem

    ensemble = build_layer_ensemble(tensors, label)
    grid = SpectralGrid(eps_max=config.eps_max, bins=config.bins)
    layer_spectrum = pool_spectrum(ensemble, mode="symmetric", scaling=config.scaling, workers=config.workers)
    rho_layer = spectral_density(layer_spectrum, grid)

    cue = build_conjugate_ensemble(ensemble.orders, seed=config.seed, repetitions=config.repetitions)
    cue_spectrum = pool_spectrum(
        cue, mode=REDUCTIONS[config.reduction], scaling=config.scaling, workers=config.workers
    )
    rho_cue = spectral_density(cue_spectrum, grid)

    report = make_csd_report(rho_layer, rho_cue, tail_fraction=config.tail_fraction, tail_tol=config.tail_tol)

    document = {
        "tool_version": __version__,
        "config": {
            "weights": str(config.weights_path),
            "label": label,
            "seed": config.seed,
            "bins": config.bins,
            "eps_max": config.eps_max,
            "scaling": config.scaling,
            "reduction": config.reduction,
            "reps": config.repetitions,
            "max_order": config.max_order,
            "tail_fraction": config.tail_fraction,
            "tail_tol": config.tail_tol,
        },
        "ensemble": {
            "m": len(ensemble),
            "orders": list(ensemble.orders),
            "pooled_count": layer_spectrum.total_count,
            "in_range_fraction": rho_layer.in_range_fraction,
        },
        "cue": {
            "seed": config.seed,
            "reps": config.repetitions,
            "pooled_count": cue_spectrum.total_count,
            "in_range_fraction": rho_cue.in_range_fraction,
        },
        "csd": {
            "variance": report.variance,
            "cumulative_final": float(report.cumulative[-1]),
            "conjugate": report.conjugate,
            "tail_fraction": config.tail_fraction,
            "tail_tol": config.tail_tol,
        },
    }

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = weights_path.stem
    report_path = out_dir / f"{stem}.report.json"
    curve_path = out_dir / f"{stem}.curve.csv"
    report_path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    curve_path.write_text(_curve_table(grid, rho_layer, rho_cue, report), encoding="utf-8")
    return report_path, curve_path


def _curve_table(grid, rho_layer, rho_cue, report) -> str:
    lines = ["epsilon,rho_layer,rho_cue,delta,cumulative"]
    edges = grid.left_edges()
    for k in range(grid.bins):
        lines.append(
            f"{edges[k]},{rho_layer.density[k]},{rho_cue.density[k]},"
            f"{report.curve.delta[k]},{report.cumulative[k]}"
        )
    return "\n".join(lines) + "\n"


def cmd_compare(report_path_a: str, report_path_b: str, delta_threshold: float) -> dict:
    """Build an equivalence verdict document from two analyze reports."""
    doc_a = json.loads(Path(report_path_a).read_text(encoding="utf-8"))
    doc_b = json.loads(Path(report_path_b).read_text(encoding="utf-8"))
    for key in ("bins", "eps_max", "scaling", "reduction"):
        if doc_a["config"][key] != doc_b["config"][key]:
            raise GridMismatchError(
                f"reports are not comparable: {key} differs "
                f"({doc_a['config'][key]!r} vs {doc_b['config'][key]!r})"
            )
    verdict = EquivalenceVerdict(
        var_a=doc_a["csd"]["variance"],
        var_b=doc_b["csd"]["variance"],
        delta_threshold=delta_threshold,
        equivalent=(
            doc_a["csd"]["conjugate"]
            and doc_b["csd"]["conjugate"]
            and abs(doc_a["csd"]["variance"] - doc_b["csd"]["variance"]) <= delta_threshold
        ),
        conjugate_a=doc_a["csd"]["conjugate"],
        conjugate_b=doc_b["csd"]["conjugate"],
    )
    return {
        "tool_version": __version__,
        "report_a": str(report_path_a),
        "report_b": str(report_path_b),
        "label_a": doc_a["config"]["label"],
        "label_b": doc_b["config"]["label"],
        "delta_threshold": verdict.delta_threshold,
        "var_a": verdict.var_a,
        "var_b": verdict.var_b,
        "var_abs_diff": abs(verdict.var_a - verdict.var_b),
        "conjugate_a": verdict.conjugate_a,
        "conjugate_b": verdict.conjugate_b,
        "equivalent": verdict.equivalent,
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circspec",
        description="Conjugacy and equivalence analysis of weight-matrix ensembles "
        "against order-matched circular-unitary ensembles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze one weights file and write report + curve")
    analyze.add_argument("--weights", required=True, help="weight-tensor file to analyze")
    analyze.add_argument("--seed", type=int, default=0, help="seed for the circular ensemble")
    analyze.add_argument("--bins", type=int, default=1000, help="grid bins (default 1000)")
    analyze.add_argument("--eps-max", type=float, default=6.0, help="grid upper edge (default 6.0)")
    analyze.add_argument("--scaling", choices=SCALING_MODES, default="none", help="per-member eigenvalue scaling")
    analyze.add_argument(
        "--reduction", choices=sorted(REDUCTIONS), default="modulus",
        help="complex eigenvalue reduction for circular members",
    )
    analyze.add_argument("--reps", type=int, default=1, help="circular members per layer order")
    analyze.add_argument("--max-order", type=int, default=None, help="skip layers with leading dimension above this")
    analyze.add_argument("--tail-fraction", type=float, default=DEFAULT_TAIL_FRACTION)
    analyze.add_argument("--tail-tol", type=float, default=DEFAULT_TAIL_TOL)
    analyze.add_argument("--workers", type=int, default=1, help="threads for member eigensolves")
    analyze.add_argument("--label", default=None, help="override the ensemble label")
    analyze.add_argument("--out", required=True, help="output directory")

    compare = sub.add_parser("compare", help="equivalence verdict from two analyze reports")
    compare.add_argument("report_a")
    compare.add_argument("report_b")
    compare.add_argument("--delta", type=float, default=DEFAULT_DELTA_THRESHOLD,
                         help="variance difference threshold")

    selftest = sub.add_parser("selftest", help="run the built-in invariant suite")
    selftest.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            config = AnalysisConfig(
                weights_path=args.weights,
                out_dir=args.out,
                seed=args.seed,
                eps_max=args.eps_max,
                bins=args.bins,
                scaling=args.scaling,
                reduction=args.reduction,
                repetitions=args.reps,
                max_order=args.max_order,
                tail_fraction=args.tail_fraction,
                tail_tol=args.tail_tol,
                workers=args.workers,
                label=args.label,
            )
            report_path, curve_path = cmd_analyze(config)
            document = json.loads(report_path.read_text(encoding="utf-8"))
            print(
                f"{document['config']['label']}: m={document['ensemble']['m']}, "
                f"variance={document['csd']['variance']:.6g}, "
                f"conjugate={document['csd']['conjugate']}, "
                f"in_range(layer)={document['ensemble']['in_range_fraction']:.4f}, "
                f"in_range(cue)={document['cue']['in_range_fraction']:.4f}"
            )
            print(f"report: {report_path}")
            print(f"curve:  {curve_path}")
            return 0
        if args.command == "compare":
            verdict = cmd_compare(args.report_a, args.report_b, args.delta)
            print(json.dumps(verdict, indent=2, sort_keys=True))
            return 0
        if args.command == "selftest":
            results, passed = run_selftest(seed=args.seed)
            print(format_results(results))
            print("selftest: all checks passed" if passed else "selftest: FAILURES detected")
            return 0 if passed else 1
    except (TensorFormatError, EigenSolverError, GridMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
