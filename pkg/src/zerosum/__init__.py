"""Zero-sum constants of C_n^r: probabilistic lower bounds, exact desk-scale
values, and seeded witness certificates.

The package splits into exact/high-precision numerics (``exactmath``), the
first-moment bound machinery (``boundengine``), group sequences with zero-sum
counting (``groupseq``), exhaustive exact constants (``egzexact``), certificate
search and verification (``witness``), and the command-line surface (``cli``).
"""

from .boundengine import (
    BoundReport,
    ConstructionParams,
    asymptotic_base,
    balance_q,
    bound_report,
    compare_bases,
    coord_profile,
    coord_zero_prob,
    expected_z,
    expected_z_upper,
    finite_base_a,
    max_witness_n,
    optimize_q,
    prior_base,
)
from .egzexact import EgzQuery, EgzResult, ExtremalWitness, compute_s, exists_free_sequence
from .exactmath import PrecisionContext, check_sondow, sondow_lower, sondow_upper
from .groupseq import (
    BudgetExceededError,
    GroupElem,
    GroupParams,
    Sequence,
    count_zero_sum_subsequences,
    has_zero_sum_subsequence,
)
from .witness import (
    MalformedCertificateError,
    SearchFailure,
    WitnessCertificate,
    load_certificate,
    sample_sequence,
    search_witness,
    verify_certificate,
    write_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BudgetExceededError",
    "ConstructionParams",
    "EgzQuery",
    "EgzResult",
    "ExtremalWitness",
    "GroupElem",
    "GroupParams",
    "MalformedCertificateError",
    "PrecisionContext",
    "SearchFailure",
    "Sequence",
    "WitnessCertificate",
    "asymptotic_base",
    "balance_q",
    "bound_report",
    "check_sondow",
    "compare_bases",
    "compute_s",
    "coord_profile",
    "coord_zero_prob",
    "count_zero_sum_subsequences",
    "exists_free_sequence",
    "expected_z",
    "expected_z_upper",
    "finite_base_a",
    "has_zero_sum_subsequence",
    "load_certificate",
    "max_witness_n",
    "optimize_q",
    "prior_base",
    "sample_sequence",
    "search_witness",
    "sondow_lower",
    "sondow_upper",
    "verify_certificate",
    "write_certificate",
    "__version__",
]
