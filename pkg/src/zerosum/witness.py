"""Randomized witness construction and machine-checkable certificates.

Samples length-N sequences of {0,1}^r vectors with i.i.d. Bernoulli(q)
coordinates, keeps the first trial whose sequence has no zero-sum subsequence
of length L = k*n, and packages it as a certificate of s_L(C_n^r) > N.  The
certificate is self-contained: verification replays only the dynamic-program
check on the stored sequence and never trusts the recorded seed or q.

Randomness is counter-based (Philox keyed by seed XOR trial index), so trials
are independent streams that can run in any order, serially or in parallel,
with identical results.  q is consumed through the exact threshold
floor(q * 2^64) on raw 64-bit draws, i.e. quantized to multiples of 2^-64.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .boundengine import ConstructionParams
from .exactmath import PrecisionContext
from .groupseq import (
    GroupParams,
    Sequence,
    count_zero_sum_subsequences,
    has_zero_sum_subsequence,
)

CERT_SCHEMA = "zerosum-cert/1"

_CERT_KEYS = ("schema", "claim", "params", "N", "q_used", "seed",
              "trial_index", "vacuous", "sequence")


class MalformedCertificateError(ValueError):
    """A certificate document violates the schema (distinct from refutation)."""


def _claim_string(params: ConstructionParams, N: int) -> str:
    return f"s_{params.L}(C_{params.n}^{params.r}) > {N}"


def bernoulli_threshold(q) -> int:
    """floor(q * 2^64): a raw uint64 draw below this has probability ~q.

    Exact for Fraction and for binary floating-point q (the product is an
    exponent shift); the induced Bernoulli parameter is q rounded down to a
    multiple of 2^-64.
    """
    if not (0 < q < 1):
        raise ValueError("q must lie strictly between 0 and 1")
    return int(q * (1 << 64))


def _check_seed(seed) -> int:
    if type(seed) is not int or not (0 <= seed < 1 << 64):
        raise ValueError("seed must be an integer in [0, 2^64)")
    return seed


def sample_sequence(params: ConstructionParams, q, N: int, seed: int) -> Sequence:
    """N vectors over C_n^r with each coordinate Bernoulli(q) in {0,1}.

    Fully determined by (params, q, N, seed); the bit source is the raw
    Philox stream keyed by ``seed``.  For n = 1 the sampled 1-bits reduce to
    the zero residue, as every element of C_1 must.
    """
    if type(N) is not int or N < 0:
        raise ValueError("N must be a nonnegative integer")
    _check_seed(seed)
    threshold = bernoulli_threshold(q)
    raw = np.random.Philox(key=seed).random_raw(N * params.r)
    bits = (np.asarray(raw, dtype=np.uint64) < np.uint64(threshold))
    rows = bits.astype(np.uint8).reshape(N, params.r).tolist()
    group = GroupParams(params.n, params.r)
    return Sequence.from_residues(group, rows)


@dataclass(frozen=True)
class WitnessCertificate:
    """A stored free sequence proving the claim s_L(C_n^r) > N.

    Construction re-validates every field and raises
    MalformedCertificateError on any inconsistency; a certificate object
    that exists is structurally sound (its mathematical claim still needs
    verify_certificate).
    """

    params: ConstructionParams
    N: int
    q_used: str
    seed: int
    trial_index: int
    sequence: Sequence
    vacuous: bool
    claim: str

    def __post_init__(self):
        try:
            if not isinstance(self.params, ConstructionParams):
                raise ValueError("params must be ConstructionParams")
            if type(self.N) is not int or self.N < 0:
                raise ValueError("N must be a nonnegative integer")
            if type(self.q_used) is not str:
                raise ValueError("q_used must be a decimal string")
            Fraction(self.q_used)
            _check_seed(self.seed)
            if type(self.trial_index) is not int or self.trial_index < 0:
                raise ValueError("trial_index must be a nonnegative integer")
            if not isinstance(self.sequence, Sequence):
                raise ValueError("sequence must be a Sequence")
            if self.sequence.params != GroupParams(self.params.n, self.params.r):
                raise ValueError("sequence group disagrees with params")
            if len(self.sequence) != self.N:
                raise ValueError("sequence length disagrees with N")
            for e in self.sequence:
                for x in e.residues:
                    if x not in (0, 1):
                        raise ValueError("sequence entries must be 0 or 1")
            if type(self.vacuous) is not bool or self.vacuous != (self.N < self.params.L):
                raise ValueError("vacuous flag must equal (N < k*n)")
            if self.claim != _claim_string(self.params, self.N):
                raise ValueError("claim string disagrees with params and N")
        except MalformedCertificateError:
            raise
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedCertificateError(str(exc)) from exc


def make_certificate(params: ConstructionParams, N: int, q_used: str,
                     seed: int, trial_index: int,
                     sequence: Sequence) -> WitnessCertificate:
    """Assemble a certificate, deriving the claim and the vacuous flag."""
    return WitnessCertificate(
        params=params, N=N, q_used=q_used, seed=seed, trial_index=trial_index,
        sequence=sequence, vacuous=N < params.L, claim=_claim_string(params, N))


@dataclass(frozen=True)
class SearchFailure:
    """All trials produced sequences with zero-sum L-subsequences."""

    params: ConstructionParams
    N: int
    q_used: str
    seed: int
    trials: int
    z_counts: tuple


def search_witness(params: ConstructionParams, N: int, q, trials: int,
                   seed: int, *, ctx: PrecisionContext = None,
                   threads: int = 1) -> Union[WitnessCertificate, SearchFailure]:
    """First trial (by index) whose sample is free becomes the certificate.

    Trial t draws from the stream keyed by seed XOR t.  With threads > 1 the
    trials of each wave run concurrently, but the winner is still the lowest
    successful index, so the returned value is independent of thread count.
    A failure report carries the per-trial zero-sum counts.
    """
    if type(trials) is not int or trials < 1:
        raise ValueError("trials must be an integer >= 1")
    _check_seed(seed)
    if ctx is None:
        ctx = PrecisionContext()
    if threads < 1:
        raise ValueError("threads must be >= 1")
    q_used = ctx.decimal_str(q)
    L = params.L

    def run_trial(t: int):
        seq = sample_sequence(params, q, N, seed ^ t)
        return seq, count_zero_sum_subsequences(seq, L)

    z_counts = []
    if threads == 1:
        for t in range(trials):
            seq, z = run_trial(t)
            if z == 0:
                return make_certificate(params, N, q_used, seed, t, seq)
            z_counts.append(z)
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for start in range(0, trials, threads):
                wave = range(start, min(start + threads, trials))
                for t, (seq, z) in zip(wave, ex.map(run_trial, wave)):
                    if z == 0:
                        return make_certificate(params, N, q_used, seed, t, seq)
                    z_counts.append(z)
    return SearchFailure(params=params, N=N, q_used=q_used, seed=seed,
                         trials=trials, z_counts=tuple(z_counts))


def verify_certificate(cert: WitnessCertificate) -> bool:
    """True iff the stored sequence has no zero-sum subsequence of length L.

    Pure re-computation on the stored data; the recorded seed, trial index
    and q play no role.  Structural validity was already enforced when the
    certificate object was built.
    """
    return not has_zero_sum_subsequence(cert.sequence, cert.params.L)


def certificate_to_json(cert: WitnessCertificate) -> str:
    """Serialize with a fixed key order; byte-stable for identical inputs."""
    doc = {
        "schema": CERT_SCHEMA,
        "claim": cert.claim,
        "params": {"n": cert.params.n, "k": cert.params.k, "r": cert.params.r},
        "N": cert.N,
        "q_used": cert.q_used,
        "seed": cert.seed,
        "trial_index": cert.trial_index,
        "vacuous": cert.vacuous,
        "sequence": [list(e.residues) for e in cert.sequence],
    }
    return json.dumps(doc, indent=2) + "\n"


def certificate_from_json(text: str) -> WitnessCertificate:
    """Strict parse: unknown keys, missing keys, or wrong types are malformed.

    Group-order budget violations propagate as BudgetExceededError — such a
    document is well-formed yet unverifiable within configured resources.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificateError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != set(_CERT_KEYS):
        raise MalformedCertificateError(
            f"document must contain exactly the keys {_CERT_KEYS}")
    if doc["schema"] != CERT_SCHEMA:
        raise MalformedCertificateError(
            f"unsupported schema {doc['schema']!r} (expected {CERT_SCHEMA!r})")
    p = doc["params"]
    if not isinstance(p, dict) or set(p) != {"n", "k", "r"}:
        raise MalformedCertificateError("params must hold exactly n, k, r")
    for key in ("n", "k", "r"):
        if type(p[key]) is not int:
            raise MalformedCertificateError(f"params.{key} must be an integer")
    for key, typ in (("N", int), ("q_used", str), ("seed", int),
                     ("trial_index", int), ("vacuous", bool), ("claim", str)):
        if type(doc[key]) is not typ:
            raise MalformedCertificateError(f"{key} must be of type {typ.__name__}")
    try:
        params = ConstructionParams(n=p["n"], k=p["k"], r=p["r"])
    except ValueError as exc:
        raise MalformedCertificateError(str(exc)) from exc
    rows = doc["sequence"]
    if not isinstance(rows, list):
        raise MalformedCertificateError("sequence must be a list of rows")
    limit = 1 if params.n >= 2 else 0
    for row in rows:
        if not isinstance(row, list) or len(row) != params.r:
            raise MalformedCertificateError(
                f"every sequence row must be a list of {params.r} residues")
        for x in row:
            if type(x) is not int or x < 0 or x > limit:
                raise MalformedCertificateError(
                    "sequence entries must be integers in {0,1} and valid "
                    f"residues mod {params.n}")
    group = GroupParams(params.n, params.r)
    sequence = Sequence.from_residues(group, rows)
    return WitnessCertificate(
        params=params, N=doc["N"], q_used=doc["q_used"], seed=doc["seed"],
        trial_index=doc["trial_index"], sequence=sequence,
        vacuous=doc["vacuous"], claim=doc["claim"])


def write_certificate(cert: WitnessCertificate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(certificate_to_json(cert))


def load_certificate(path) -> WitnessCertificate:
    with open(path, "r", encoding="utf-8") as fh:
        return certificate_from_json(fh.read())
