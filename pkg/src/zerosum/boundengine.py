"""First-moment machinery for random binary sequences over C_n^r.

Pick N vectors in {0,1}^r with i.i.d. Bernoulli(q) coordinates and let Z
count the index subsets of size L = k*n whose vector sum is zero.  Then
E[Z] = C(N, L) * Q^r where Q is the probability that a single coordinate of
L such bits sums to 0 mod n.  Whenever E[Z] < 1 some outcome has Z = 0, so
s_L(C_n^r) > N.  This module computes the balancing probability q* that
equates the first two terms of Q's profile, the profile itself, Q, E[Z],
the largest N that keeps E[Z] < 1, and the per-n growth base together with
its large-n limit 1 + (k-1)^(k-1)/k^k and the older base 1 + 1/(e*k).

Everything is duck-typed over two numeric tiers: exact ``Fraction`` (always
available at n = 1, where q* is rational) and arbitrary-precision ``mpf``
from a ``PrecisionContext``.  Quantities that are rational stay rational so
tests can compare them with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import (
    MAX_EXACT_BINOM_DIGITS,
    PrecisionContext,
    binom,
    binom_digits_upper,
    log_binom,
    nth_root_exact,
)

# Gate on the exact tier of expected_z: bit size of Q's numerator+denominator
# times r beyond which the log-domain path is used instead.
_MAX_EXACT_POW_BITS = 2_000_000

_OPT_GRID = 10_000
_OPT_TOL_BITS = 40


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters of the random construction: group C_n^r, target length k*n."""

    n: int
    k: int
    r: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be an integer >= 1")
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError("k must be an integer >= 2")
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError("r must be an integer >= 1")

    @property
    def L(self) -> int:
        """Target zero-sum subsequence length k*n."""
        return self.k * self.n


def _require_open_unit(q) -> None:
    if not (0 < q < 1):
        raise ValueError("q must lie strictly between 0 and 1")


def balance_q(params: ConstructionParams, ctx: PrecisionContext):
    """The probability q* = 1/(1 + C(L,n)^(1/n)) equating profile[0] and profile[1].

    q* solves (1-q)^L = C(L,n) q^n (1-q)^{(k-1)n} in (0,1).  Returns an exact
    ``Fraction`` whenever C(L,n) is a perfect n-th power (always at n = 1),
    otherwise an mpf at the context precision.
    """
    L, n = params.L, params.n
    c = binom(L, n)
    root = nth_root_exact(Fraction(c), n)
    if root is not None:
        return Fraction(1) / (1 + root)
    m = ctx.mp
    if binom_digits_upper(L, n) <= MAX_EXACT_BINOM_DIGITS:
        approx = m.root(m.mpf(c), n)
    else:
        approx = m.exp(log_binom(L, n, ctx) / n)
    return 1 / (1 + approx)


def coord_profile(params: ConstructionParams, q, ctx: PrecisionContext) -> list:
    """P_i = C(L, i*n) q^{i*n} (1-q)^{(k-i)*n} for i = 0..k.

    P_i is the probability that one coordinate of L Bernoulli(q) bits sums to
    exactly i*n.  The numeric tier follows the type of q.
    """
    _require_open_unit(q)
    L, n, k = params.L, params.n, params.k
    return [binom(L, i * n) * q ** (i * n) * (1 - q) ** ((k - i) * n)
            for i in range(k + 1)]


def coord_zero_prob(params: ConstructionParams, q, ctx: PrecisionContext):
    """Q = sum of the profile: probability one coordinate sums to 0 mod n."""
    profile = coord_profile(params, q, ctx)
    total = profile[0]
    for p in profile[1:]:
        total = total + p
    return total


def expected_z(params: ConstructionParams, q, N: int, ctx: PrecisionContext):
    """E[Z] = C(N, L) * Q^r, the expected number of zero-sum L-subsets.

    Returns 0 for N < L.  Rational q takes the exact path while the integers
    stay below the configured size gates; otherwise evaluation happens in the
    log domain at context precision.
    """
    _require_open_unit(q)
    if not isinstance(N, int) or N < 0:
        raise ValueError("N must be a nonnegative integer")
    L, r = params.L, params.r
    Q = coord_zero_prob(params, q, ctx)
    if N < L:
        return Fraction(0) if isinstance(Q, Fraction) else ctx.mp.mpf(0)
    if isinstance(Q, Fraction):
        pow_bits = r * (Q.numerator.bit_length() + Q.denominator.bit_length())
        if (binom_digits_upper(N, L) <= MAX_EXACT_BINOM_DIGITS
                and pow_bits <= _MAX_EXACT_POW_BITS):
            return binom(N, L) * Q ** r
    m = ctx.mp
    return m.exp(log_binom(N, L, ctx) + r * m.log(ctx.to_mpf(Q)))


def expected_z_upper(params: ConstructionParams, q, N: int, ctx: PrecisionContext):
    """Closed-form envelope (4N/L)^L (k+1)^r (1-q)^{L*r} dominating E[Z] at q*.

    Combines C(N, L) <= (4N/L)^L / 4 <= (4N/L)^L with Q <= (k+1)(1-q)^L,
    which holds at the balancing q where profile[0] is the largest term.
    """
    _require_open_unit(q)
    L, k, r = params.L, params.k, params.r
    if not isinstance(N, int) or N < L:
        raise ValueError("N must be an integer >= L")
    if isinstance(q, Fraction):
        return Fraction(4 * N, L) ** L * (k + 1) ** r * (1 - q) ** (L * r)
    m = ctx.mp
    return (m.mpf(4 * N) / L) ** L * m.mpf(k + 1) ** r * (1 - q) ** (L * r)


def max_witness_n(params: ConstructionParams, q, ctx: PrecisionContext) -> int:
    """Largest N with E[Z] < 1 strictly; at least L-1 (where E[Z] = 0).

    E[Z] is strictly increasing in N from N = L-1 on, so the answer comes
    from doubling followed by binary search on that monotone predicate.
    Exact ties E[Z] = 1 (possible on the rational tier, e.g. Q = 1 at n = 1)
    are excluded exactly; the mpf tier assumes no exact tie at its inputs.
    """
    _require_open_unit(q)
    L = params.L

    def lt_one(N: int) -> bool:
        return expected_z(params, q, N, ctx) < 1

    lo = L - 1
    hi = L
    while lt_one(hi):
        lo = hi
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if lt_one(mid):
            lo = mid
        else:
            hi = mid
    return lo


def optimize_q(params: ConstructionParams, ctx: PrecisionContext):
    """Deterministic search for q maximizing max_witness_n; returns (q_opt, n_opt).

    Since E[Z] = C(N,L) Q^r is increasing in Q, maximizing the witness length
    is exactly minimizing Q(q).  A fixed grid with step 10^-4 locates the
    minimum (first index on ties, i.e. smaller q); golden-section refines the
    bracket to width 2^-40, keeping the left subinterval on ties.  The result
    never underperforms the balancing q: whichever of the two yields the
    larger max_witness_n is returned (the refined q on equality).
    """
    m = ctx.mp

    def f(q):
        return coord_zero_prob(params, q, ctx)

    best_j = 1
    best_val = f(ctx.to_mpf(Fraction(1, _OPT_GRID)))
    for j in range(2, _OPT_GRID):
        val = f(ctx.to_mpf(Fraction(j, _OPT_GRID)))
        if val < best_val:
            best_val = val
            best_j = j
    a = ctx.to_mpf(Fraction(best_j - 1, _OPT_GRID))
    b = ctx.to_mpf(Fraction(best_j + 1, _OPT_GRID))
    invphi = (m.sqrt(5) - 1) / 2
    tol = m.mpf(2) ** (-_OPT_TOL_BITS)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    q_opt = (a + b) / 2
    n_opt = max_witness_n(params, q_opt, ctx)
    q_bal = balance_q(params, ctx)
    n_bal = max_witness_n(params, q_bal, ctx)
    if n_bal > n_opt:
        return q_bal, n_bal
    return q_opt, n_opt


def finite_base_a(params: ConstructionParams, ctx: PrecisionContext):
    """Per-n growth base A(k,n) = 1/((k+1)^{1/L} (1-q*)); r is irrelevant.

    E[Z] < 1 holds whenever N < A^L-ish scaling in r; A may dip below 1 at
    small n, where the resulting bound is vacuous (see BoundReport.vacuous).
    A(k,n) increases to 1 + (k-1)^(k-1)/k^k as n grows.
    """
    m = ctx.mp
    q = balance_q(params, ctx)
    return 1 / (m.root(m.mpf(params.k + 1), params.L) * ctx.to_mpf(1 - q))


def asymptotic_base(k: int) -> Fraction:
    """Exact large-n limit 1 + (k-1)^(k-1)/k^k of the growth base."""
    if not isinstance(k, int) or k < 2:
        raise ValueError("k must be an integer >= 2")
    return Fraction(1) + Fraction((k - 1) ** (k - 1), k ** k)


def prior_base(k: int, ctx: PrecisionContext):
    """The older growth base 1 + 1/(e*k) that asymptotic_base improves on."""
    if not isinstance(k, int) or k < 2:
        raise ValueError("k must be an integer >= 2")
    m = ctx.mp
    return 1 + 1 / (m.e * k)


def compare_bases(k: int, ctx: PrecisionContext):
    """(new, old, sharper): the exact new base vs the prior one, for k >= 3."""
    if not isinstance(k, int) or k < 3:
        raise ValueError("k must be an integer >= 3")
    new = asymptotic_base(k)
    old = prior_base(k, ctx)
    return new, old, bool(ctx.to_mpf(new) > old)


@dataclass(frozen=True)
class BoundReport:
    """Snapshot of every analytic quantity at the balancing q for one (n,k,r)."""

    params: ConstructionParams
    bits: int
    q: object
    profile: tuple
    coord_zero_prob: object
    a_finite: object
    a_asymptotic: Fraction
    prior_base: object

    @property
    def vacuous(self) -> bool:
        """True when the finite-n base is below 1 and certifies nothing."""
        return self.a_finite < 1


def bound_report(params: ConstructionParams, ctx: PrecisionContext) -> BoundReport:
    """Assemble a BoundReport at q = balance_q(params)."""
    q = balance_q(params, ctx)
    profile = tuple(coord_profile(params, q, ctx))
    total = coord_zero_prob(params, q, ctx)
    return BoundReport(
        params=params,
        bits=ctx.bits,
        q=q,
        profile=profile,
        coord_zero_prob=total,
        a_finite=finite_base_a(params, ctx),
        a_asymptotic=asymptotic_base(params.k),
        prior_base=prior_base(params.k, ctx),
    )
