#!/usr/bin/env python3
"""Solve a corpus, print the per-(n, k) ratio table and the worst cases.

Thin wrapper over the bench machinery for interactive studies; the CSV
lands next to whatever --out names.
"""

import argparse
import sys

from tritsp.bench import aggregate, format_summary, run_bench
from tritsp.solver import SolveOptions


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dir", required=True, help="corpus directory")
    parser.add_argument("--out", default="ratio_study.csv")
    parser.add_argument("--max-bad", type=int, default=9)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--top", type=int, default=10,
                        help="how many worst ratios to list")
    args = parser.parse_args(argv)

    rows = run_bench(args.dir, args.out,
                     SolveOptions(max_bad=args.max_bad, jobs=args.jobs))
    print(format_summary(aggregate(rows)))

    with_opt = [r for r in rows if r.opt_cost]
    with_opt.sort(key=lambda r: r.alg_cost / r.opt_cost, reverse=True)
    print(f"\nworst {min(args.top, len(with_opt))} ratios:")
    for r in with_opt[: args.top]:
        print(
            f"  {r.instance}: {r.alg_cost}/{r.opt_cost} "
            f"= {r.alg_cost / r.opt_cost:.4f} (n={r.n}, k={r.k})"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
