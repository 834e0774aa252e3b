#!/usr/bin/env python3
"""Run the full inequality suite over a seeded corpus and write reports.

Produces a CSV with one row per (body, inequality id) and a JSON document
with per-id verdict summaries and slack extrema.  The corpus is a pure
function of the seed, so reruns reproduce the reports bit for bit.

Usage:
    python3 scripts/run_corpus.py --seed 1 --out-dir reports/
    python3 scripts/run_corpus.py --seed 1 --hulls 50 --ids BLICHFELDT_1_1 MAIN_THM_1_1
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from blichfeldt import harness as hz
from blichfeldt import witnesses as wt


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--hulls", type=int, default=200)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--coord-bound", type=int, default=6)
    ap.add_argument("--ids", nargs="*", default=None,
                    help="inequality ids (default: all)")
    ap.add_argument("--out-dir", default="reports")
    args = ap.parse_args()

    spec = wt.CorpusSpec(
        seed=args.seed,
        dimensions=tuple(args.dims),
        num_random_hulls=args.hulls,
        coord_bound=args.coord_bound,
    )
    ids = (
        [hz.InequalityId(x) for x in args.ids]
        if args.ids
        else list(hz.InequalityId)
    )
    report = hz.run_corpus(spec, ids)

    os.makedirs(args.out_dir, exist_ok=True)
    csv_path = os.path.join(args.out_dir, f"corpus_seed{args.seed}.csv")
    json_path = os.path.join(args.out_dir, f"corpus_seed{args.seed}.json")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(hz.report_to_csv(report))
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(hz.report_to_json(report))

    for key, s in sorted(report.summary.items()):
        verdicts = ", ".join(f"{k}={v}" for k, v in sorted(s["verdicts"].items()))
        print(f"{key}: {verdicts}")
    print(f"rows: {len(report.rows)}")
    print(f"violations: {len(report.violations)}")
    print(f"wrote {csv_path} and {json_path}")

    bad = hz.soundness_failures(report)
    if bad:
        print(f"SOUNDNESS FAILURES: {len(bad)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
