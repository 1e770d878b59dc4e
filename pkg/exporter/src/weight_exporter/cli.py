"""Command-line exporter: pretrained snapshots or synthetic fixtures."""

from __future__ import annotations

import argparse
import sys

from .export import SUPPORTED_ARCHITECTURES, export_pretrained, export_synthetic


def _parse_shape(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}; expected e.g. 64x3x7x7") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weight-export")
    sub = parser.add_subparsers(dest="command", required=True)

    pretrained = sub.add_parser("pretrained", help="export one architecture (or 'all')")
    pretrained.add_argument("name", help=f"one of: all, {', '.join(SUPPORTED_ARCHITECTURES)}")
    pretrained.add_argument("--out", default="exports", help="output directory")
    pretrained.add_argument(
        "--random-init", action="store_true",
        help="export the random initialization instead of downloading the snapshot",
    )

    synthetic = sub.add_parser("synthetic", help="export seeded Gaussian tensors")
    synthetic.add_argument("--shape", action="append", type=_parse_shape, default=[],
                           metavar="PxQxR", help="tensor shape; repeatable")
    synthetic.add_argument("--seed", type=int, default=0)
    synthetic.add_argument("--out", required=True, help="output file path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "pretrained":
            weights = "random" if args.random_init else "pretrained"
            names = SUPPORTED_ARCHITECTURES if args.name == "all" else [args.name]
            for name in names:
                tensor_path, manifest_path = export_pretrained(name, args.out, weights=weights)
                print(f"wrote {tensor_path} ({manifest_path.name})")
            return 0
        if args.command == "synthetic":
            path = export_synthetic(args.shape, args.seed, args.out)
            print(f"wrote {path}")
            return 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # download failures, filesystem errors
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
