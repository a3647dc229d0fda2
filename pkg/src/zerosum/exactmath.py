"""Exact and high-precision scalar arithmetic.

Two numeric tiers run through the whole package:

* an exact tier carried by ``fractions.Fraction`` (always reduced, positive
  denominator, value equality), used whenever a quantity is rational, and
* a high-precision floating tier carried by mpmath at a configurable mantissa
  precision (default 256 bits).

Every operation is a pure function of its arguments.  ``PrecisionContext``
wraps an independent mpmath context, so callers running at different
precisions never share mutable state and results are reproducible from
(inputs, bits) alone.

Binomials come in an exact form (``binom``) and a log-domain form
(``log_binom``) that switches to a log-gamma evaluation beyond a digit
cutoff, so quantities like C(N, L) for astronomically large N never
materialize as integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from mpmath import mp

ExactRational = Fraction

DEFAULT_BITS = 256

# Largest binomial (in decimal digits) evaluated exactly before log_binom
# falls back to log-gamma sums.
MAX_EXACT_BINOM_DIGITS = 10_000


@dataclass(frozen=True)
class PrecisionContext:
    """Reproducible high-precision evaluation context.

    Owns an independent mpmath context at ``bits`` of mantissa precision.
    mpf values created through it keep computing at that precision, so two
    contexts with different ``bits`` can be used concurrently without
    touching mpmath's global state.
    """

    bits: int = DEFAULT_BITS

    def __post_init__(self):
        if not isinstance(self.bits, int) or isinstance(self.bits, bool):
            raise ValueError("precision bits must be an integer")
        if self.bits < 64:
            raise ValueError("precision must be at least 64 bits")
        ctx = mp.clone()
        ctx.prec = self.bits
        object.__setattr__(self, "_mp", ctx)

    @property
    def mp(self):
        """The underlying mpmath context (mpf, log, exp, root, loggamma...)."""
        return self._mp

    def to_mpf(self, x):
        """Coerce ints, Fractions, floats, strings or foreign mpfs to this context."""
        if isinstance(x, Fraction):
            return self._mp.mpf(x.numerator) / self._mp.mpf(x.denominator)
        return self._mp.mpf(x)

    def decimal_str(self, x) -> str:
        """Decimal rendering of ``x`` at the full context precision."""
        import mpmath

        return mpmath.nstr(self.to_mpf(x), self._mp.dps)


def binom(a: int, b: int) -> int:
    """Exact binomial coefficient C(a, b); zero when b exceeds a."""
    if a < 0 or b < 0:
        raise ValueError("binom requires nonnegative arguments")
    return math.comb(a, b)


def binom_digits_upper(a: int, b: int) -> float:
    """Cheap upper estimate of the decimal digit count of C(a, b)."""
    b = min(b, a - b)
    if b <= 0:
        return 1.0
    # C(a, b) <= (a e / b)^b
    return b * (math.log10(a) - math.log10(b) + math.log10(math.e)) + 1.0


def log_binom(a: int, b: int, ctx: PrecisionContext, *,
              max_exact_digits: int = MAX_EXACT_BINOM_DIGITS):
    """Natural log of C(a, b) at context precision.

    Uses the exact integer below ``max_exact_digits`` decimal digits and a
    log-gamma difference beyond it.  The log-gamma branch runs at a boosted
    working precision (bits + bit length of a) because the three terms
    cancel down from magnitude ~a*ln(a) to ~b*ln(a).
    """
    if a < 0 or b < 0:
        raise ValueError("log_binom requires nonnegative arguments")
    if b > a:
        raise ValueError("log_binom undefined for b > a (C(a, b) = 0)")
    m = ctx.mp
    if b == 0 or b == a:
        return m.mpf(0)
    if binom_digits_upper(a, b) <= max_exact_digits:
        return m.log(m.mpf(math.comb(a, b)))
    guard = a.bit_length() + 48
    with m.workprec(ctx.bits + guard):
        return (m.loggamma(m.mpf(a + 1))
                - m.loggamma(m.mpf(b + 1))
                - m.loggamma(m.mpf(a - b + 1)))


def _check_sondow_args(k: int, n: int) -> None:
    if not isinstance(k, int) or not isinstance(n, int):
        raise ValueError("k and n must be integers")
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < 1:
        raise ValueError("n must be at least 1")


def sondow_lower(k: int, n: int) -> Fraction:
    """Exact k^(kn) / ((k-1)^((k-1)n) * 4(k-1)n), a strict lower bound on C(kn, n)."""
    _check_sondow_args(k, n)
    return Fraction(k ** (k * n), (k - 1) ** ((k - 1) * n) * 4 * (k - 1) * n)


def sondow_upper(k: int, n: int) -> Fraction:
    """Exact k^(kn) / (k-1)^((k-1)n), a strict upper bound on C(kn, n)."""
    _check_sondow_args(k, n)
    return Fraction(k ** (k * n), (k - 1) ** ((k - 1) * n))


def check_sondow(k: int, n: int) -> bool:
    """True iff sondow_lower(k,n) < C(kn, n) < sondow_upper(k,n), compared exactly."""
    _check_sondow_args(k, n)
    c = binom(k * n, n)
    return sondow_lower(k, n) < c < sondow_upper(k, n)


def nth_root_exact(x, n: int):
    """Exact rational n-th root of a positive rational, or None if irrational."""
    if n < 1:
        raise ValueError("root index must be at least 1")
    x = Fraction(x)
    if x <= 0:
        raise ValueError("nth_root requires positive input")
    num_root, num_exact = gmpy2.iroot(gmpy2.mpz(x.numerator), n)
    if not num_exact:
        return None
    den_root, den_exact = gmpy2.iroot(gmpy2.mpz(x.denominator), n)
    if not den_exact:
        return None
    return Fraction(int(num_root), int(den_root))


def nth_root(x, n: int, ctx: PrecisionContext):
    """Principal n-th root of x > 0.

    Returns an exact Fraction when x is a perfect rational n-th power,
    otherwise an mpf at context precision (|y^n - x| relatively below
    2^-(bits-8)).
    """
    if n < 1:
        raise ValueError("root index must be at least 1")
    if isinstance(x, (int, Fraction)):
        exact = nth_root_exact(x, n)
        if exact is not None:
            return exact
        return ctx.mp.root(ctx.to_mpf(Fraction(x)), n)
    if not x > 0:
        raise ValueError("nth_root requires positive input")
    return ctx.mp.root(ctx.to_mpf(x), n)
