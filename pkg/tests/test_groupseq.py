import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zerosum.groupseq import (
    BudgetExceededError,
    GroupElem,
    GroupParams,
    Sequence,
    SequenceFormatError,
    brute_force_count,
    count_zero_sum_subsequences,
    decode_index,
    elem_add,
    encode_residues,
    format_sequence_text,
    has_zero_sum_subsequence,
    parse_sequence_text,
    seq_sum,
)

GROUPS = [GroupParams(3, 1), GroupParams(4, 1), GroupParams(2, 2), GroupParams(2, 3)]


# strategy: (params, sequence rows, L) over the small test groups
@st.composite
def seq_cases(draw, max_len=10):
    params = draw(st.sampled_from(GROUPS))
    length = draw(st.integers(0, max_len))
    rows = draw(st.lists(
        st.lists(st.integers(0, params.n - 1), min_size=params.r, max_size=params.r),
        min_size=length, max_size=length))
    L = draw(st.integers(0, max_len))
    return params, rows, L


class TestGroupBasics:
    def test_params_validation(self):
        with pytest.raises(ValueError):
            GroupParams(0, 1)
        with pytest.raises(ValueError):
            GroupParams(2, 0)

    def test_order_budget(self):
        with pytest.raises(BudgetExceededError):
            GroupParams(2, 21)  # 2^21 > default budget 2^20
        assert GroupParams(2, 21, max_order=1 << 22).order == 1 << 21

    def test_budget_not_part_of_identity(self):
        assert GroupParams(2, 3) == GroupParams(2, 3, max_order=1 << 22)

    def test_elem_reduction_and_arity(self):
        g = GroupParams(3, 2)
        assert GroupElem(g, (4, -1)).residues == (1, 2)
        with pytest.raises(ValueError):
            GroupElem(g, (1,))

    def test_elem_add(self):
        g = GroupParams(3, 2)
        a = GroupElem(g, (1, 2))
        b = GroupElem(g, (2, 2))
        assert elem_add(a, b).residues == (0, 1)
        assert elem_add(a, g.zero) == a
        inv = GroupElem(g, (3 - 1, 3 - 2))
        assert elem_add(a, inv) == g.zero

    def test_elem_add_rejects_mismatch(self):
        a = GroupElem(GroupParams(3, 1), (1,))
        b = GroupElem(GroupParams(4, 1), (1,))
        with pytest.raises(ValueError):
            elem_add(a, b)

    def test_seq_sum(self):
        g2 = GroupParams(2, 1)
        assert seq_sum(Sequence(g2, ())) == g2.zero
        assert seq_sum(Sequence.from_residues(g2, [[1], [1]])) == g2.zero
        g32 = GroupParams(3, 2)
        s = Sequence.from_residues(g32, [[1, 1], [2, 0], [0, 2]])
        assert seq_sum(s) == g32.zero

    def test_encode_decode_roundtrip(self):
        g = GroupParams(3, 3)
        for v in range(g.order):
            assert encode_residues(decode_index(v, 3, 3), 3) == v


class TestCounting:
    def test_hand_examples(self):
        g = GroupParams(2, 1)
        zeros = Sequence.from_residues(g, [[0], [0], [0]])
        assert count_zero_sum_subsequences(zeros, 2) == 3
        mixed = Sequence.from_residues(g, [[1], [1], [0]])
        assert count_zero_sum_subsequences(mixed, 2) == 1

    def test_length_edges(self):
        g = GroupParams(2, 1)
        s = Sequence.from_residues(g, [[1], [0]])
        assert count_zero_sum_subsequences(s, 0) == 1
        assert count_zero_sum_subsequences(s, 3) == 0
        assert brute_force_count(s, 3) == 0
        with pytest.raises(ValueError):
            count_zero_sum_subsequences(s, -1)

    def test_all_zeros_full_take(self):
        g = GroupParams(5, 1)
        s = Sequence.from_residues(g, [[0]] * 4)
        assert brute_force_count(s, 4) == 1
        assert count_zero_sum_subsequences(s, 4) == 1

    @given(seq_cases())
    def test_dp_matches_brute_force(self, case):
        params, rows, L = case
        s = Sequence.from_residues(params, rows)
        assert count_zero_sum_subsequences(s, L) == brute_force_count(s, L)

    @given(seq_cases())
    def test_existence_matches_counter(self, case):
        params, rows, L = case
        s = Sequence.from_residues(params, rows)
        assert has_zero_sum_subsequence(s, L) == (count_zero_sum_subsequences(s, L) > 0)

    @given(seq_cases(max_len=8), st.randoms(use_true_random=False))
    def test_permutation_invariance(self, case, rng):
        params, rows, L = case
        shuffled = list(rows)
        rng.shuffle(shuffled)
        a = count_zero_sum_subsequences(Sequence.from_residues(params, rows), L)
        b = count_zero_sum_subsequences(Sequence.from_residues(params, shuffled), L)
        assert a == b

    @given(seq_cases(max_len=8))
    def test_negation_invariance(self, case):
        params, rows, L = case
        negated = [[(-x) % params.n for x in row] for row in rows]
        a = count_zero_sum_subsequences(Sequence.from_residues(params, rows), L)
        b = count_zero_sum_subsequences(Sequence.from_residues(params, negated), L)
        assert a == b

    @given(seq_cases(max_len=8))
    def test_coordinate_permutation_invariance(self, case):
        params, rows, L = case
        rotated = [row[1:] + row[:1] for row in rows]
        a = count_zero_sum_subsequences(Sequence.from_residues(params, rows), L)
        b = count_zero_sum_subsequences(Sequence.from_residues(params, rotated), L)
        assert a == b

    @given(seq_cases())
    def test_complement_identity(self, case):
        params, rows, _ = case
        s = Sequence.from_residues(params, rows)
        want = 1 if seq_sum(s) == params.zero else 0
        assert count_zero_sum_subsequences(s, len(s)) == want

    def test_exhaustive_c2_short(self):
        g = GroupParams(2, 1)
        for length in range(0, 6):
            for mask in range(2 ** length):
                rows = [[(mask >> i) & 1] for i in range(length)]
                s = Sequence.from_residues(g, rows)
                for L in range(0, length + 2):
                    assert (count_zero_sum_subsequences(s, L)
                            == brute_force_count(s, L))

    def test_counts_can_exceed_word_size(self):
        g = GroupParams(2, 1)
        s = Sequence.from_residues(g, [[0]] * 80)
        assert count_zero_sum_subsequences(s, 40) == math.comb(80, 40)

    def test_brute_force_budget(self):
        g = GroupParams(2, 1)
        s = Sequence.from_residues(g, [[0]] * 40)
        with pytest.raises(BudgetExceededError):
            brute_force_count(s, 20)


class TestExistence:
    def test_hand_examples(self):
        g = GroupParams(2, 1)
        assert has_zero_sum_subsequence(
            Sequence.from_residues(g, [[0]] * 4), 4)
        assert not has_zero_sum_subsequence(
            Sequence.from_residues(g, [[1], [0]]), 2)

    def test_early_exit_is_consistent(self):
        # prefix already contains the zero-sum subset; suffix is irrelevant
        g = GroupParams(3, 1)
        s = Sequence.from_residues(g, [[1], [2], [1], [1], [1]])
        assert has_zero_sum_subsequence(s, 2)
        # the lone 2 pairs with each of the four 1s
        assert count_zero_sum_subsequences(s, 2) == 4


class TestTextFormat:
    def test_parse_with_comments_and_blanks(self):
        g = GroupParams(2, 2)
        text = "# header\n0,1 # inline\n\n  1,1\n"
        s = parse_sequence_text(text, g)
        assert [e.residues for e in s] == [(0, 1), (1, 1)]

    def test_parse_reduces_mod_n(self):
        g = GroupParams(2, 2)
        s = parse_sequence_text("3,-1\n", g)
        assert s[0].residues == (1, 1)

    def test_parse_rejects_garbage(self):
        g = GroupParams(2, 2)
        with pytest.raises(SequenceFormatError):
            parse_sequence_text("0,x\n", g)
        with pytest.raises(SequenceFormatError):
            parse_sequence_text("0,1,1\n", g)

    @given(seq_cases())
    def test_roundtrip(self, case):
        params, rows, _ = case
        s = Sequence.from_residues(params, rows)
        assert parse_sequence_text(format_sequence_text(s), params) == s

    def test_format_empty(self):
        g = GroupParams(2, 1)
        assert format_sequence_text(Sequence(g, ())) == ""
