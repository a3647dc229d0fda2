"""Elements and sequences over C_n^r with zero-sum subsequence counting.

A group element is a length-r tuple of residues mod n.  Inside the dynamic
programs every element is flattened to a single index in [0, n^r)
(little-endian base n), and adding a fixed element acts as a permutation of
those indices; ``AdditionTable`` caches one permutation per distinct element.

Counting walks states (chosen count <= L, group element) and keeps exact
integer counts, since they overflow 64 bits already at modest sizes.  The
existence tester runs the same recurrence on reachable sets with an early
exit, which is the fast path used for witness verification.  Both agree by
construction; ``brute_force_count`` enumerates index subsets outright and
serves as the independent oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

DEFAULT_MAX_ORDER = 1 << 20
BRUTE_FORCE_BUDGET = 10 ** 7


class BudgetExceededError(RuntimeError):
    """A computation was refused because it exceeds its configured budget."""


class SequenceFormatError(ValueError):
    """A sequence text file could not be parsed."""


@dataclass(frozen=True)
class GroupParams:
    """The group C_n^r: residues mod n in each of r coordinates.

    ``max_order`` caps n^r so the DP tables stay feasible; it does not take
    part in equality (two handles to the same group compare equal regardless
    of their budgets).
    """

    n: int
    r: int
    max_order: int = field(default=DEFAULT_MAX_ORDER, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("group modulus n must be an integer >= 1")
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError("group rank r must be an integer >= 1")
        if self.n ** self.r > self.max_order:
            raise BudgetExceededError(
                f"group order {self.n}^{self.r} exceeds budget {self.max_order}")

    @property
    def order(self) -> int:
        return self.n ** self.r

    @property
    def zero(self) -> "GroupElem":
        return GroupElem(self, (0,) * self.r)


@dataclass(frozen=True)
class GroupElem:
    """One element of C_n^r; residues are reduced mod n on construction."""

    params: GroupParams
    residues: tuple

    def __post_init__(self):
        if len(self.residues) != self.params.r:
            raise ValueError(
                f"expected {self.params.r} residues, got {len(self.residues)}")
        n = self.params.n
        object.__setattr__(
            self, "residues", tuple(int(x) % n for x in self.residues))


@dataclass(frozen=True)
class Sequence:
    """An ordered finite sequence of elements of one group."""

    params: GroupParams
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for e in self.elements:
            if e.params != self.params:
                raise ValueError("sequence elements must share group parameters")

    @classmethod
    def from_residues(cls, params: GroupParams, rows) -> "Sequence":
        return cls(params, tuple(GroupElem(params, tuple(row)) for row in rows))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


def elem_add(a: GroupElem, b: GroupElem) -> GroupElem:
    """Componentwise sum mod n."""
    if a.params != b.params:
        raise ValueError("mismatched group parameters")
    n = a.params.n
    return GroupElem(a.params, tuple((x + y) % n for x, y in zip(a.residues, b.residues)))


def seq_sum(s: Sequence) -> GroupElem:
    """Sum of all elements; the zero element for an empty sequence."""
    total = s.params.zero
    for e in s:
        total = elem_add(total, e)
    return total


def encode_residues(residues, n: int) -> int:
    """Flatten residues to a single index in [0, n^r), little-endian base n."""
    x = 0
    for d in reversed(residues):
        x = x * n + d
    return x


def decode_index(x: int, n: int, r: int) -> tuple:
    out = []
    for _ in range(r):
        out.append(x % n)
        x //= n
    return tuple(out)


class AdditionTable:
    """Per-group cache of index permutations 'add this element'."""

    def __init__(self, params: GroupParams):
        self.params = params
        self._cache = {}

    def perm(self, residues) -> list:
        residues = tuple(residues)
        hit = self._cache.get(residues)
        if hit is not None:
            return hit
        n, r = self.params.n, self.params.r
        order = self.params.order
        table = [0] * order
        for v in range(order):
            vr = decode_index(v, n, r)
            table[v] = encode_residues(
                tuple((a + b) % n for a, b in zip(vr, residues)), n)
        self._cache[residues] = table
        return table


def count_zero_sum_subsequences(s: Sequence, length: int) -> int:
    """Exact number of index subsets of size ``length`` summing to zero.

    DP over (prefix, chosen count, flattened element), O(len * length * n^r)
    with arbitrary-precision counts.  Returns 0 when ``length`` exceeds the
    sequence length and 1 for length 0 (the empty subsequence sums to zero).
    """
    if length < 0:
        raise ValueError("subsequence length must be nonnegative")
    if length == 0:
        return 1
    if length > len(s):
        return 0
    order = s.params.order
    table = AdditionTable(s.params)
    rows = [[0] * order for _ in range(length + 1)]
    rows[0][0] = 1
    for idx, e in enumerate(s):
        p = table.perm(e.residues)
        for c in range(min(idx + 1, length), 0, -1):
            src = rows[c - 1]
            dst = rows[c]
            for v in range(order):
                x = src[v]
                if x:
                    dst[p[v]] += x
    return rows[length][0]


def brute_force_count(s: Sequence, length: int) -> int:
    """Oracle: count zero-sum subsets of size ``length`` by explicit enumeration."""
    if length < 0:
        raise ValueError("subsequence length must be nonnegative")
    if length > len(s):
        return 0
    if math.comb(len(s), length) > BRUTE_FORCE_BUDGET:
        raise BudgetExceededError(
            f"C({len(s)}, {length}) exceeds brute-force budget {BRUTE_FORCE_BUDGET}")
    n, r = s.params.n, s.params.r
    zero = (0,) * r
    count = 0
    for combo in itertools.combinations(s.elements, length):
        acc = zero
        for e in combo:
            acc = tuple((a + b) % n for a, b in zip(acc, e.residues))
        if acc == zero:
            count += 1
    return count


def has_zero_sum_subsequence(s: Sequence, length: int) -> bool:
    """True iff some index subset of size ``length`` sums to zero.

    Reachable-set DP with an early exit; agrees with the counter being
    positive by construction.
    """
    if length < 0:
        raise ValueError("subsequence length must be nonnegative")
    if length == 0:
        return True
    if length > len(s):
        return False
    table = AdditionTable(s.params)
    reach = [set() for _ in range(length + 1)]
    reach[0].add(0)
    for idx, e in enumerate(s):
        p = table.perm(e.residues)
        for c in range(min(idx + 1, length), 0, -1):
            src = reach[c - 1]
            if src:
                dst = reach[c]
                for v in src:
                    dst.add(p[v])
        if 0 in reach[length]:
            return True
    return False


def parse_sequence_text(text: str, params: GroupParams) -> Sequence:
    """Parse the on-disk sequence format.

    One element per line as comma-separated residues; ``#`` starts a comment;
    blank lines are ignored; residues are reduced mod n.
    """
    elems = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise SequenceFormatError(
                f"line {lineno}: expected comma-separated integers, got {line!r}")
        if len(values) != params.r:
            raise SequenceFormatError(
                f"line {lineno}: expected {params.r} residues, got {len(values)}")
        elems.append(GroupElem(params, tuple(values)))
    return Sequence(params, tuple(elems))


def format_sequence_text(s: Sequence) -> str:
    """Inverse of parse_sequence_text (no comments, one element per line)."""
    return "\n".join(",".join(str(x) for x in e.residues) for e in s) + ("\n" if len(s) else "")
