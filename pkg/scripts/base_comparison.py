#!/usr/bin/env python3
"""Tabulate the exponential-base improvement across k.

For each k the lower-bound construction grows like A^r with
A -> 1 + (k-1)^(k-1)/k^k, which this script compares against the older
base 1 + 1/(ek).  Optionally also prints the finite-n base A(k, n) for a
chosen n so one can see how much of the limit is already realised.
"""

import argparse
import csv
import sys
from fractions import Fraction

from zerosum.boundengine import ConstructionParams, compare_bases, finite_base_a
from zerosum.exactmath import PrecisionContext


def build_rows(k_from: int, k_to: int, n: int | None, ctx: PrecisionContext):
    rows = []
    for k in range(k_from, k_to + 1):
        new, prior, sharper = compare_bases(k, ctx)
        margin = ctx.to_mpf(new) - prior
        row = {
            "k": k,
            "asymptotic_base": str(Fraction(new)),
            "prior_base": ctx.mp.nstr(prior, 12),
            "margin": ctx.mp.nstr(margin, 6),
            "sharper": sharper,
        }
        if n is not None:
            a_n = finite_base_a(ConstructionParams(n=n, k=k, r=1), ctx)
            row[f"a_finite_n{n}"] = ctx.mp.nstr(a_n, 12)
        rows.append(row)
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k-from", type=int, default=3)
    parser.add_argument("--k-to", type=int, default=12)
    parser.add_argument("--n", type=int, default=None,
                        help="also evaluate the finite-n base at this n")
    parser.add_argument("--bits", type=int, default=256)
    parser.add_argument("--csv", type=str, default=None,
                        help="write CSV here instead of a plain table")
    args = parser.parse_args(argv)
    if args.k_from < 3 or args.k_to < args.k_from:
        parser.error("need 3 <= k-from <= k-to")

    ctx = PrecisionContext(bits=args.bits)
    rows = build_rows(args.k_from, args.k_to, args.n, ctx)
    fields = list(rows[0].keys())

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        print(f"wrote {args.csv} ({len(rows)} rows)")
    else:
        widths = {f: max(len(f), *(len(str(r[f])) for r in rows)) for f in fields}
        print("  ".join(f.ljust(widths[f]) for f in fields))
        for row in rows:
            print("  ".join(str(row[f]).ljust(widths[f]) for f in fields))
    return 0


if __name__ == "__main__":
    sys.exit(main())
