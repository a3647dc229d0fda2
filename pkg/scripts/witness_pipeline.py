#!/usr/bin/env python3
"""Run the full lower-bound pipeline for one parameter triple (n, k, r).

Steps: balance q, find the largest N with E[Z] < 1, run the seeded random
search for a zero-sum-free witness at that N, write the certificate, and
re-verify it from disk with the independent subset-sum checker.
"""

import argparse
import sys

from zerosum.boundengine import (
    ConstructionParams,
    balance_q,
    expected_z,
    max_witness_n,
)
from zerosum.exactmath import PrecisionContext
from zerosum.witness import (
    WitnessCertificate,
    load_certificate,
    search_witness,
    verify_certificate,
    write_certificate,
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--r", type=int, default=4)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--bits", type=int, default=256)
    parser.add_argument("--out", type=str, default="witness_cert.json")
    args = parser.parse_args(argv)

    ctx = PrecisionContext(bits=args.bits)
    params = ConstructionParams(n=args.n, k=args.k, r=args.r)
    q = balance_q(params, ctx)
    n_max = max_witness_n(params, q, ctx)
    print(f"params: n={args.n} k={args.k} r={args.r} (target length {params.L})")
    print(f"balanced q = {ctx.decimal_str(q)}")
    print(f"largest N with E[Z] < 1: {n_max}")
    print(f"E[Z]({n_max}) = {ctx.decimal_str(expected_z(params, q, n_max, ctx))}")
    print(f"E[Z]({n_max + 1}) = "
          f"{ctx.decimal_str(expected_z(params, q, n_max + 1, ctx))}")

    result = search_witness(params, n_max, q, args.trials, args.seed, ctx=ctx)
    if not isinstance(result, WitnessCertificate):
        print(f"no witness in {args.trials} trials; try more trials or lower N")
        return 1
    print(f"witness found at trial {result.trial_index}; claim: {result.claim}")
    write_certificate(result, args.out)
    print(f"wrote {args.out}")

    reloaded = load_certificate(args.out)
    verdict = "verified" if verify_certificate(reloaded) else "REFUTED"
    print(f"independent re-check: {verdict}")
    return 0 if verdict == "verified" else 2


if __name__ == "__main__":
    sys.exit(main())
