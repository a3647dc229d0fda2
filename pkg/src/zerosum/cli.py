"""Command-line surface for bounds, exact constants, and certificates.

Every run prints a ``# config`` line first, echoing the flags that determine
its output (thread count is deliberately excluded: results never depend on
it).  Numbers are rendered at 15 significant digits, with an ``(exact p/q)``
suffix whenever the underlying value is rational.  Exit codes: 0 success,
1 error or failed witness search, 2 refuted certificate, 3 malformed
certificate.  Environment overrides: ZEROSUM_BITS (default precision) and
ZEROSUM_THREADS (default worker count) only.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from fractions import Fraction

import mpmath

from .boundengine import (
    ConstructionParams,
    balance_q,
    bound_report,
    expected_z,
    max_witness_n,
    optimize_q,
)
from .egzexact import DEFAULT_MAX_NODES, EgzQuery, compute_s
from .exactmath import DEFAULT_BITS, PrecisionContext
from .groupseq import (
    BudgetExceededError,
    GroupParams,
    count_zero_sum_subsequences,
    parse_sequence_text,
)
from .witness import (
    MalformedCertificateError,
    WitnessCertificate,
    load_certificate,
    search_witness,
    verify_certificate,
    write_certificate,
)

_DIGITS = 15


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer, "
                         f"got {raw!r}") from None


def _resolve_bits(args) -> int:
    bits = getattr(args, "bits", None)
    if bits is None:
        bits = _env_int("ZEROSUM_BITS", DEFAULT_BITS)
    return bits


def _resolve_threads(args) -> int:
    threads = getattr(args, "threads", None)
    if threads is None:
        threads = _env_int("ZEROSUM_THREADS", os.cpu_count() or 1)
    return threads


def _resolve_q(text: str, params: ConstructionParams, ctx: PrecisionContext):
    """``auto`` means the balancing q*; anything else is an exact decimal."""
    if text == "auto":
        return balance_q(params, ctx)
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"--q must be 'auto' or a decimal in (0,1), got {text!r}") from None
    if not (0 < q < 1):
        raise ValueError("--q must lie strictly between 0 and 1")
    return q


def _fmt(x, ctx: PrecisionContext) -> str:
    if isinstance(x, Fraction):
        return (f"{mpmath.nstr(ctx.to_mpf(x), _DIGITS)} "
                f"(exact {x.numerator}/{x.denominator})")
    return mpmath.nstr(x, _DIGITS)


def _plain(x, ctx: PrecisionContext) -> str:
    return mpmath.nstr(ctx.to_mpf(x), _DIGITS)


def _echo(subcommand: str, pairs) -> None:
    rendered = " ".join(f"{key}={value}" for key, value in pairs)
    print(f"# config subcommand={subcommand} {rendered}")


def cmd_bound(args) -> int:
    bits = _resolve_bits(args)
    ctx = PrecisionContext(bits)
    params = ConstructionParams(n=args.n, k=args.k, r=args.r)
    _echo("bound", [("k", args.k), ("n", args.n), ("r", args.r), ("bits", bits)])
    rep = bound_report(params, ctx)
    print(f"q = {_fmt(rep.q, ctx)}")
    for i, p in enumerate(rep.profile):
        print(f"P[{i}] = {_fmt(p, ctx)}")
    print(f"Q = {_fmt(rep.coord_zero_prob, ctx)}")
    print(f"A_finite = {_fmt(rep.a_finite, ctx)}")
    print(f"A_finite_vacuous = {'true' if rep.vacuous else 'false'}")
    print(f"A_asymptotic = {_fmt(rep.a_asymptotic, ctx)}")
    print(f"prior_base = {_fmt(rep.prior_base, ctx)}")
    return 0


def cmd_maxn(args) -> int:
    bits = _resolve_bits(args)
    ctx = PrecisionContext(bits)
    params = ConstructionParams(n=args.n, k=args.k, r=args.r)
    _echo("maxn", [("k", args.k), ("n", args.n), ("r", args.r), ("q", args.q),
                   ("optimize_q", "true" if args.optimize_q else "false"),
                   ("bits", bits)])
    if args.optimize_q:
        q, n_max = optimize_q(params, ctx)
    else:
        q = _resolve_q(args.q, params, ctx)
        n_max = max_witness_n(params, q, ctx)
    print(f"q = {_fmt(q, ctx)}")
    print(f"max_witness_N = {n_max}")
    print(f"E[Z]({n_max}) = {_fmt(expected_z(params, q, n_max, ctx), ctx)}")
    print(f"E[Z]({n_max + 1}) = {_fmt(expected_z(params, q, n_max + 1, ctx), ctx)}")
    return 0


def cmd_witness(args) -> int:
    bits = _resolve_bits(args)
    threads = _resolve_threads(args)
    ctx = PrecisionContext(bits)
    params = ConstructionParams(n=args.n, k=args.k, r=args.r)
    _echo("witness", [("k", args.k), ("n", args.n), ("r", args.r),
                      ("N", args.N), ("q", args.q), ("trials", args.trials),
                      ("seed", args.seed), ("bits", bits), ("out", args.out)])
    q = _resolve_q(args.q, params, ctx)
    result = search_witness(params, args.N, q, args.trials, args.seed,
                            ctx=ctx, threads=threads)
    if isinstance(result, WitnessCertificate):
        write_certificate(result, args.out)
        print("result = success")
        print(f"trial_index = {result.trial_index}")
        print(f"vacuous = {'true' if result.vacuous else 'false'}")
        print(f"claim = {result.claim}")
        print(f"wrote = {args.out}")
        return 0
    print("result = failure")
    print(f"trials = {result.trials}")
    print(f"z_counts = {','.join(str(z) for z in result.z_counts)}")
    return 1


def cmd_verify(args) -> int:
    _echo("verify", [("file", args.file)])
    try:
        cert = load_certificate(args.file)
    except MalformedCertificateError as exc:
        print("verdict = malformed")
        print(f"reason = {exc}")
        return 3
    except OSError as exc:
        print("verdict = malformed")
        print(f"reason = unreadable file: {exc}")
        return 3
    if verify_certificate(cert):
        print("verdict = verified")
        print(f"claim = {cert.claim}")
        print(f"vacuous = {'true' if cert.vacuous else 'false'}")
        return 0
    print("verdict = refuted")
    print(f"claim = {cert.claim}")
    return 2


def cmd_count(args) -> int:
    _echo("count", [("n", args.n), ("r", args.r), ("L", args.L),
                    ("seq", args.seq)])
    group = GroupParams(args.n, args.r)
    with open(args.seq, "r", encoding="utf-8") as fh:
        seq = parse_sequence_text(fh.read(), group)
    print(f"count = {count_zero_sum_subsequences(seq, args.L)}")
    return 0


def cmd_exact(args) -> int:
    _echo("exact", [("L", args.L), ("n", args.n), ("r", args.r),
                    ("mmax", args.mmax), ("max_nodes", args.max_nodes)])
    group = GroupParams(args.n, args.r)
    query = EgzQuery(L=args.L, group=group, m_max=args.mmax)
    result = compute_s(query, max_nodes=args.max_nodes)
    if result.unknown:
        print("s = unknown")
        print(f"searched_up_to = {args.mmax}")
    else:
        print(f"s = {result.value}")
        print(f"free_at = {result.value - 1}")
        print(f"blocked_at = {result.value}")
    w = result.witness
    if w is not None:
        print(f"witness_m = {w.m}")
        body = ";".join(",".join(str(x) for x in e.residues) for e in w.sequence)
        print(f"witness = {body}")
    return 0


def cmd_sweep(args) -> int:
    bits = _resolve_bits(args)
    ctx = PrecisionContext(bits)
    if args.n_from < 1 or args.n_to < args.n_from:
        raise ValueError("need 1 <= --n-from <= --n-to")
    _echo("sweep", [("k", args.k), ("n_from", args.n_from),
                    ("n_to", args.n_to), ("bits", bits), ("csv", args.csv)])
    with open(args.csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "q", "Q", "a_finite", "gap_to_asymptotic",
                         "prior_base"])
        for n in range(args.n_from, args.n_to + 1):
            params = ConstructionParams(n=n, k=args.k, r=1)
            rep = bound_report(params, ctx)
            gap = ctx.to_mpf(rep.a_asymptotic) - ctx.to_mpf(rep.a_finite)
            writer.writerow([
                str(n),
                _plain(rep.q, ctx),
                _plain(rep.coord_zero_prob, ctx),
                _plain(rep.a_finite, ctx),
                _plain(gap, ctx),
                _plain(rep.prior_base, ctx),
            ])
    print(f"wrote = {args.csv}")
    print(f"rows = {args.n_to - args.n_from + 1}")
    return 0


def _add_bits(sub) -> None:
    sub.add_argument("--bits", type=int, default=None,
                     help="mantissa precision (default: ZEROSUM_BITS or 256)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zerosum",
        description="Lower bounds, exact desk-scale values, and witness "
                    "certificates for zero-sum constants s_L(C_n^r).")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("bound", help="analytic report at the balancing q")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    _add_bits(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("maxn", help="largest N with E[Z] < 1 and the "
                                    "bracketing E[Z] values")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", default="auto",
                   help="'auto' (balancing q) or an exact decimal in (0,1)")
    p.add_argument("--optimize-q", dest="optimize_q", action="store_true",
                   help="search q deterministically instead of balancing")
    _add_bits(p)
    p.set_defaults(func=cmd_maxn)

    p = sub.add_parser("witness", help="seeded search for a certificate "
                                       "proving s_L(C_n^r) > N")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--q", default="auto",
                   help="'auto' (balancing q) or an exact decimal in (0,1)")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="certificate file path")
    p.add_argument("--threads", type=int, default=None,
                   help="trial workers (default: ZEROSUM_THREADS or all cores)")
    _add_bits(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="check a certificate file "
                                      "(exit 0 verified / 2 refuted / 3 malformed)")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="exact zero-sum subsequence count for a "
                                     "sequence file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--seq", required=True, help="sequence text file")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("exact", help="exhaustive s_L(C_n^r) with certifying "
                                     "artifacts")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--max-nodes", dest="max_nodes", type=int,
                   default=DEFAULT_MAX_NODES)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("sweep", help="per-n CSV of q, Q, bases, and the gap "
                                     "to the asymptotic base")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-from", dest="n_from", type=int, required=True)
    p.add_argument("--n-to", dest="n_to", type=int, required=True)
    p.add_argument("--csv", required=True)
    _add_bits(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
