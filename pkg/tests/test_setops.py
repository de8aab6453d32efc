"""Bit-vector subsets and exact set arithmetic, cross-checked against loops."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffsets.errors import DomainError, GroupMismatchError
from diffsets.formulas import min_self_sumset_size
from diffsets.groups import GroupSpec
from diffsets.setops import (
    GroupSubset,
    difference_set,
    negate_set,
    signed_sumset_2,
    sumset,
    translate,
)
from helpers import (
    brute_difference,
    brute_negate,
    brute_signed2,
    brute_sumset,
    small_groups,
    subset_of,
)

SAMPLE_GROUPS = [
    GroupSpec(()),
    GroupSpec((5,)),
    GroupSpec((6,)),
    GroupSpec((4, 2)),
    GroupSpec((3, 3)),
    GroupSpec((2, 2, 2)),
    GroupSpec((12,)),
    GroupSpec((2, 3, 4)),
    GroupSpec((5, 5)),
]

subset_case = st.sampled_from(SAMPLE_GROUPS).flatmap(
    lambda g: st.tuples(
        st.just(g),
        st.integers(0, (1 << g.order) - 1),
        st.integers(0, (1 << g.order) - 1),
    )
)


class TestGroupSubsetBasics:
    def test_construction_and_cardinality(self):
        g = GroupSpec((4, 2))
        a = GroupSubset.from_elements(g, [(0, 0), (3, 1)])
        assert len(a) == 2
        assert sorted(a.indices()) == [0, 7]
        assert (3, 1) in a and (1, 1) not in a

    def test_bits_must_fit(self):
        with pytest.raises(DomainError):
            GroupSubset(GroupSpec((2,)), 1 << 3)

    def test_witness_round_trip(self):
        g = GroupSpec((3, 3))
        a = GroupSubset.from_indices(g, [0, 1, 2, 3])
        again = GroupSubset.from_witness_json(a.to_witness_json())
        assert again == a
        payload = a.to_witness_dict()
        assert payload["group"] == "3,3"
        assert payload["elements"] == [[0, 0], [0, 1], [0, 2], [1, 0]]

    def test_witness_round_trip_trivial_group(self):
        a = GroupSubset.from_indices(GroupSpec(()), [0])
        assert GroupSubset.from_witness_json(a.to_witness_json()) == a

    def test_group_mismatch_rejected(self):
        a = GroupSubset.full(GroupSpec((4,)))
        b = GroupSubset.full(GroupSpec((2, 2)))
        with pytest.raises(GroupMismatchError):
            sumset(a, b)
        with pytest.raises(GroupMismatchError):
            difference_set(a, b)


class TestFrozenExamples:
    def test_sumset_examples(self):
        g5 = GroupSpec((5,))
        assert sorted(sumset(subset_of(g5, [1, 2]), subset_of(g5, [1, 2])).indices()) == [2, 3, 4]
        g33 = GroupSpec((3, 3))
        lex4 = GroupSubset.from_indices(g33, range(4))
        assert len(sumset(lex4, lex4)) == 7
        identity_only = subset_of(g33, [0])
        anything = subset_of(g33, [2, 5, 7])
        assert sumset(identity_only, anything) == anything

    def test_empty_semantics(self):
        g = GroupSpec((6,))
        empty = GroupSubset.empty(g)
        assert len(sumset(empty, GroupSubset.full(g))) == 0
        assert len(difference_set(empty, empty)) == 0
        assert negate_set(empty) == empty

    def test_difference_examples(self):
        g4 = GroupSpec((4,))
        assert len(difference_set(subset_of(g4, [0, 1, 2]), subset_of(g4, [0, 1, 2]))) == 4
        g33 = GroupSpec((3, 3))
        lex4 = GroupSubset.from_indices(g33, range(4))
        assert len(difference_set(lex4, lex4)) == 9
        singleton = subset_of(g33, [5])
        assert difference_set(singleton, singleton).elements() == [(0, 0)]

    def test_negate_examples(self):
        g6 = GroupSpec((6,))
        assert sorted(negate_set(subset_of(g6, [1, 2])).indices()) == [4, 5]
        g22 = GroupSpec((2, 2))
        for bits in range(16):
            a = GroupSubset(g22, bits)
            assert negate_set(a) == a

    def test_signed_examples(self):
        g5 = GroupSpec((5,))
        assert sorted(signed_sumset_2(subset_of(g5, [1, 2])).indices()) == [1, 2, 3, 4]
        g7 = GroupSpec((7,))
        assert signed_sumset_2(subset_of(g7, [0])).elements() == [(0,)]
        with pytest.raises(DomainError):
            signed_sumset_2(GroupSubset.empty(g5))

    def test_signed_extremal_witness_in_25(self):
        # A six-element set achieving the smallest possible signed sumset
        # size 15 = 3*5 in (Z/5Z)^2.
        g = GroupSpec((5, 5))
        witness = GroupSubset.from_elements(
            g, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 0), (4, 0)]
        )
        assert len(signed_sumset_2(witness)) == 15

    def test_translate_examples(self):
        g4 = GroupSpec((4,))
        assert sorted(translate(subset_of(g4, [0, 1]), (2,)).indices()) == [2, 3]
        g33 = GroupSpec((3, 3))
        a = GroupSubset.from_elements(g33, [(0, 0), (1, 1)])
        assert translate(a, (0, 0)) == a
        moved = translate(a, (2, 2))
        assert sorted(moved.elements()) == [(0, 0), (2, 2)]


class TestAgainstBruteForce:
    @settings(max_examples=150, deadline=None)
    @given(subset_case)
    def test_sumset_matches_pairwise_loops(self, case):
        group, abits, bbits = case
        a, b = GroupSubset(group, abits), GroupSubset(group, bbits)
        expected = brute_sumset(group, a.indices(), b.indices())
        assert set(sumset(a, b).indices()) == expected

    @settings(max_examples=150, deadline=None)
    @given(subset_case)
    def test_difference_matches_pairwise_loops(self, case):
        group, abits, bbits = case
        a, b = GroupSubset(group, abits), GroupSubset(group, bbits)
        expected = brute_difference(group, a.indices(), b.indices())
        assert set(difference_set(a, b).indices()) == expected

    @settings(max_examples=150, deadline=None)
    @given(subset_case)
    def test_negate_and_signed_match_loops(self, case):
        group, abits, _ = case
        a = GroupSubset(group, abits)
        assert set(negate_set(a).indices()) == brute_negate(group, a.indices())
        assert negate_set(negate_set(a)) == a
        if abits:
            signed = signed_sumset_2(a)
            assert set(signed.indices()) == brute_signed2(group, a.indices())
            assert negate_set(signed) == signed  # symmetric about 0


def test_difference_symmetry_and_lower_bound_exhaustive():
    # Every A-A is symmetric about 0 and at least as large as the two-set
    # sumset minimum at (|A|, |A|); exhaustive over all subsets, orders <= 16.
    for group in small_groups(16):
        n = group.order
        floor = [None] + [min_self_sumset_size(group, r) for r in range(1, n + 1)]
        for bits in range(1, 1 << n):
            a = GroupSubset(group, bits)
            diff = difference_set(a, a)
            assert negate_set(diff) == diff
            assert len(diff) >= floor[len(a)]


def test_translate_invariance_exhaustive():
    # (A+t) - (A+t) equals A - A for every subset and translation, orders <= 12.
    for group in small_groups(12):
        n = group.order
        points = list(group.elements())
        for bits in range(1, 1 << n):
            a = GroupSubset(group, bits)
            diff = difference_set(a, a)
            summ = sumset(a, a)
            for t in points[1:]:
                shifted = translate(a, t)
                assert difference_set(shifted, shifted) == diff
                assert len(sumset(shifted, shifted)) == len(summ)
