"""Exact values of s_L(C_n^r) at desk scale by exhaustive multiset search.

s_L is the least m such that every length-m sequence contains a zero-sum
subsequence of length L.  Zero-sum-freeness is permutation invariant, so it
suffices to enumerate multisets (canonical nondecreasing order of flattened
element indices), and it is downward closed, so a branch dies as soon as the
partial sequence stops being free.  The searcher carries the reachable-set
dynamic program down the tree incrementally; a node budget turns runaway
searches into an explicit error instead of a hang.

A returned value is certified two-sidedly: a concrete free sequence at s-1
(re-verified on construction) plus an exhausted search at s.  When free
sequences persist at the length budget the result is reported as unknown,
with the longest witness found attached.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .groupseq import (
    AdditionTable,
    BudgetExceededError,
    GroupElem,
    GroupParams,
    Sequence,
    decode_index,
    has_zero_sum_subsequence,
)

DEFAULT_MAX_NODES = 5_000_000


@dataclass(frozen=True)
class EgzQuery:
    """Ask for s_L over the given group, searching lengths up to m_max."""

    L: int
    group: GroupParams
    m_max: int

    def __post_init__(self):
        if not isinstance(self.L, int) or self.L < 1:
            raise ValueError("target length L must be an integer >= 1")
        if not isinstance(self.m_max, int) or self.m_max < self.L:
            raise ValueError("length budget m_max must be an integer >= L")


@dataclass(frozen=True)
class ExtremalWitness:
    """A length-m sequence with no zero-sum subsequence of length target_len."""

    m: int
    target_len: int
    sequence: Sequence

    def __post_init__(self):
        if len(self.sequence) != self.m:
            raise ValueError("witness length disagrees with m")
        if has_zero_sum_subsequence(self.sequence, self.target_len):
            raise ValueError(
                "witness contains a zero-sum subsequence of the target length")


@dataclass(frozen=True)
class EgzResult:
    """Outcome of compute_s: the value, or unknown with the longest witness."""

    query: EgzQuery
    value: Optional[int]
    witness: ExtremalWitness

    @property
    def unknown(self) -> bool:
        return self.value is None


def exists_free_sequence(m: int, L: int, group: GroupParams, *,
                         max_nodes: int = DEFAULT_MAX_NODES) -> Optional[ExtremalWitness]:
    """Find a length-m sequence free of zero-sum L-subsequences, or None.

    Depth-first search over multisets in nondecreasing flattened-index order.
    Each extension updates the reachable-set table (choose-c sums) in O(L n^r)
    and is rejected immediately if the zero element becomes reachable with
    exactly L choices.  Raises BudgetExceededError past ``max_nodes``
    extension attempts, which is distinct from an exhausted (None) search.
    """
    if not isinstance(m, int) or m < 0:
        raise ValueError("sequence length m must be a nonnegative integer")
    if not isinstance(L, int) or L < 1:
        raise ValueError("target length L must be an integer >= 1")
    order = group.order
    table = AdditionTable(group)
    perms = [table.perm(decode_index(v, group.n, group.r)) for v in range(order)]
    nodes = 0
    chosen: list = []

    def dfs(start: int, reach: list) -> bool:
        nonlocal nodes
        if len(chosen) == m:
            return True
        for v in range(start, order):
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceededError(
                    f"free-sequence search exceeded {max_nodes} nodes "
                    f"(m={m}, L={L}, group order {order})")
            p = perms[v]
            new_reach = [set(s) for s in reach]
            for c in range(min(len(chosen) + 1, L), 0, -1):
                dst = new_reach[c]
                for x in new_reach[c - 1]:
                    dst.add(p[x])
            if 0 in new_reach[L]:
                continue
            chosen.append(v)
            if dfs(v, new_reach):
                return True
            chosen.pop()
        return False

    reach: list = [set() for _ in range(L + 1)]
    reach[0].add(0)
    if not dfs(0, reach):
        return None
    seq = Sequence(group, tuple(
        GroupElem(group, decode_index(v, group.n, group.r)) for v in chosen))
    return ExtremalWitness(m=m, target_len=L, sequence=seq)


def compute_s(query: EgzQuery, *, max_nodes: int = DEFAULT_MAX_NODES) -> EgzResult:
    """Least m such that no free length-m sequence exists, certified two-sidedly.

    Scans m = L-1, L, ... up to m_max.  Lengths below L always yield a free
    sequence, so the loop both collects the witness at s-1 and observes the
    exhausted search at s.  If a free sequence still exists at m_max the
    result is unknown, carrying that witness.
    """
    last_witness = None
    for m in range(query.L - 1, query.m_max + 1):
        w = exists_free_sequence(m, query.L, query.group, max_nodes=max_nodes)
        if w is None:
            return EgzResult(query=query, value=m, witness=last_witness)
        last_witness = w
    return EgzResult(query=query, value=None, witness=last_witness)
