#!/usr/bin/env python3
"""Reproduce the full experiment set through the command-line interface.

Runs every subcommand with fixed seeds and writes all artifacts under one
output directory (default: results/).  Everything is deterministic: re-running
with the same arguments reproduces every file byte for byte, regardless of
--jobs.

    python3 scripts/reproduce_results.py            # full desk-scale run
    python3 scripts/reproduce_results.py --fast     # small-scale smoke run
"""

import argparse
import os
import sys
import time

from bbnet.cli import main as bbnet_main


def run(argv: list[str]) -> None:
    pretty = " ".join(argv)
    print(f"\n$ bbnet {pretty}")
    start = time.monotonic()
    rc = bbnet_main(argv)
    if rc != 0:
        sys.exit(f"command failed with exit code {rc}: bbnet {pretty}")
    print(f"  ... done in {time.monotonic() - start:.1f}s")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results", help="output directory root")
    parser.add_argument("--jobs", type=int, default=max(1, (os.cpu_count() or 1) // 2),
                        help="worker processes for the sweep and synergy runs")
    parser.add_argument("--fast", action="store_true",
                        help="smaller budgets and populations (smoke test)")
    args = parser.parse_args()
    out = args.out
    jobs = str(args.jobs)

    if args.fast:
        bb_bits, bb_budget = "16", "10000"
        sweep_n, sweep_trials, sweep_budget = "8,16", "5", "2000"
        synergy_n, synergy_trials = "8", "2"
        run_n = "16"
    else:
        bb_bits, bb_budget = "20", "100000"
        sweep_n, sweep_trials, sweep_budget = "16,32,64", "50", "10000"
        synergy_n, synergy_trials = "32", "3"
        run_n = "32"

    table_dir = os.path.join(out, "bb")
    run([
        "bb", "--max-bits", bb_bits, "--budget", bb_budget,
        "--seed", "0", "--out", table_dir,
    ])
    table_csv = os.path.join(table_dir, "bb.csv")

    for family in ("star-broadcast", "replicated-hypercube", "replicated-random-regular"):
        run([
            "tvg", "--family", family, "--n", "64", "--seed", "0",
            "--out", os.path.join(out, "tvg", family),
        ])

    run([
        "run", "--family", "star-broadcast", "--n", run_n, "--w", "010001",
        "--seed", "0", "--out", os.path.join(out, "run"),
    ])

    run([
        "halting-sweep", "--bb-table", table_csv,
        "--n-list", sweep_n, "--trials", sweep_trials, "--w-max-bits", "6",
        "--budget", sweep_budget, "--seed", "0", "--jobs", jobs,
        "--out", os.path.join(out, "sweep"),
    ])

    for x in ("5", "10", "20"):
        run([
            "synergy", "--x", x, "--n", synergy_n, "--trials", synergy_trials,
            "--seed", "0", "--jobs", jobs,
            "--out", os.path.join(out, "synergy", f"x{x}"),
        ])

    run([
        "central", "--family", "replicated-hypercube", "--n", run_n,
        "--w", "010001", "--seed", "0", "--out", os.path.join(out, "central"),
    ])

    print(f"\nAll artifacts written under {out}/")


if __name__ == "__main__":
    main()
