"""Full pretrained pipeline: export snapshots, analyze, tabulate variances.

Needs the companion exporter package (and network access to the model
hub for real snapshots).  Without network it falls back to random
initialization so the plumbing can still be exercised; variances from
random weights say nothing about the trained architectures, and the
script labels them as such.

Usage: python 05_pretrained_pipeline.py [arch ...]   (default: a small trio)
"""

import json
import subprocess
import sys
from pathlib import Path

ARCHES = sys.argv[1:] or ["resnet18", "resnet34", "resnet50"]
EXPORT_DIR = Path("exports")
REPORT_DIR = Path("reports")


def run(cmd: list[str]) -> int:
    print("$", " ".join(cmd))
    return subprocess.call(cmd)


def main() -> int:
    mode_note = "pretrained snapshots"
    for arch in ARCHES:
        if (EXPORT_DIR / f"{arch}.safetensors").exists():
            print(f"{arch}: already exported")
            continue
        if run(["weight-export", "pretrained", arch, "--out", str(EXPORT_DIR)]) != 0:
            print(f"{arch}: download failed, falling back to random initialization")
            mode_note = "RANDOM INITIALIZATION (values are not trained weights)"
            if run(["weight-export", "pretrained", arch, "--random-init", "--out", str(EXPORT_DIR)]) != 0:
                return 1

    rows = []
    for arch in ARCHES:
        weights = EXPORT_DIR / f"{arch}.safetensors"
        code = run([
            "circspec", "analyze", "--weights", str(weights), "--seed", "1",
            "--max-order", "1024", "--out", str(REPORT_DIR),
        ])
        if code != 0:
            return code
        doc = json.loads((REPORT_DIR / f"{arch}.report.json").read_text())
        rows.append((arch, doc["ensemble"]["m"], doc["csd"]["variance"], doc["csd"]["conjugate"],
                     doc["ensemble"]["in_range_fraction"], doc["cue"]["in_range_fraction"]))

    print(f"\nsource: {mode_note}")
    print(f"{'architecture':14s} {'m':>4s} {'Var(delta)':>11s} {'conj':>5s} {'in-range L':>10s} {'in-range C':>10s}")
    for arch, m, var, conj, frac_l, frac_c in rows:
        print(f"{arch:14s} {m:4d} {var:11.4f} {str(conj):>5s} {frac_l:10.4f} {frac_c:10.4f}")
    print("\ncompare any two reports, e.g.:")
    print(f"  circspec compare {REPORT_DIR}/{ARCHES[0]}.report.json {REPORT_DIR}/{ARCHES[-1]}.report.json --delta 0.05")
    return 0


if __name__ == "__main__":
    sys.exit(main())
