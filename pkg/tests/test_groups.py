"""Group arithmetic, divisor machinery, subgroups, and class enumeration."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffsets.errors import DomainError, InvalidElementError
from diffsets.groups import (
    GroupSpec,
    abelian_group_count,
    divisors,
    elementary_divisors,
    enumerate_abelian_groups,
    invariant_factors,
    partition_count,
    restricted_divisor_set,
    subgroup_of_order,
)
from helpers import element_order, partition_count_pentagonal, small_groups

group_strategy = st.lists(st.integers(2, 9), max_size=3).map(lambda f: GroupSpec(tuple(f)))


class TestGroupSpec:
    def test_parse_and_format(self):
        assert GroupSpec.parse("4,2").factors == (4, 2)
        assert GroupSpec.parse("1").factors == ()
        assert GroupSpec.parse("").factors == ()
        assert str(GroupSpec((4, 2))) == "4,2"
        assert str(GroupSpec(())) == "1"

    def test_parse_rejects_garbage(self):
        with pytest.raises(DomainError):
            GroupSpec.parse("3,x")
        with pytest.raises(DomainError):
            GroupSpec((1, 3))

    def test_order_and_exponent(self):
        g = GroupSpec((4, 6))
        assert g.order == 24
        assert g.exponent == 12
        trivial = GroupSpec(())
        assert trivial.order == 1
        assert trivial.exponent == 1

    def test_add_examples(self):
        assert GroupSpec((4, 2)).add((3, 1), (2, 1)) == (1, 0)
        assert GroupSpec((5,)).add((0,), (4,)) == (4,)
        assert GroupSpec(()).add((), ()) == ()

    def test_neg_examples(self):
        assert GroupSpec((6,)).neg((2,)) == (4,)
        assert GroupSpec((3, 3)).neg((0, 0)) == (0, 0)
        assert GroupSpec((2, 2)).neg((1, 1)) == (1, 1)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidElementError):
            GroupSpec((4, 2)).add((1,), (0, 0))
        with pytest.raises(InvalidElementError):
            GroupSpec((6,)).neg((6,))

    def test_element_format(self):
        assert GroupSpec((4, 2)).format_element((3, 1)) == "(3,1)"
        assert GroupSpec(()).format_element(()) == "()"

    @given(group_strategy)
    def test_index_round_trip(self, group):
        for i in range(group.order):
            assert group.index_of(group.element_at(i)) == i

    @given(group_strategy, st.data())
    def test_random_group_laws(self, group, data):
        pick = lambda: group.element_at(data.draw(st.integers(0, group.order - 1)))
        a, b, c = pick(), pick(), pick()
        assert group.add(a, b) == group.add(b, a)
        assert group.add(group.add(a, b), c) == group.add(a, group.add(b, c))
        assert group.add(a, group.neg(a)) == group.identity


def test_group_laws_exhaustive_up_to_64():
    for group in small_groups(64):
        n = group.order
        elements = list(group.elements())
        index = {e: i for i, e in enumerate(elements)}
        table = [[index[group.add(a, b)] for b in elements] for a in elements]
        zero = index[group.identity]
        assert zero == 0
        for a in range(n):
            assert table[a][0] == a  # identity
            assert any(table[a][b] == 0 for b in range(n))  # inverse exists
            for b in range(a + 1, n):
                assert table[a][b] == table[b][a]  # commutativity
        for a in range(n):
            row_a = table[a]
            for b in range(n):
                lhs = table[row_a[b]]
                rhs = [row_a[x] for x in table[b]]
                assert lhs == rhs  # associativity, all c at once


class TestDivisors:
    def test_examples(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]
        assert divisors(9) == [1, 3, 9]

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            divisors(0)

    def test_restricted_examples(self):
        assert restricted_divisor_set(9, 3, 4) == [3, 9]
        assert restricted_divisor_set(9, 3, 2) == [1, 3, 9]

    def test_restricted_prime_power_pattern(self):
        # For order p^d with exponent p, the set is {p^t, ..., p^d} where
        # p^t < r <= p^(t+1).
        for p, d in [(3, 3), (2, 4), (5, 2)]:
            for r in range(2, p**d + 1):
                t = 0
                while p ** (t + 1) < r:
                    t += 1
                expected = [p**k for k in range(t, d + 1)]
                assert restricted_divisor_set(p**d, p, r) == expected

    def test_restricted_cyclic_is_all_divisors(self):
        for n in range(1, 40):
            for r in range(1, n + 1):
                assert restricted_divisor_set(n, n, r) == divisors(n)

    def test_restricted_rejects_bad_input(self):
        with pytest.raises(DomainError):
            restricted_divisor_set(9, 3, 0)
        with pytest.raises(DomainError):
            restricted_divisor_set(9, 2, 1)


class TestInvariantFactors:
    def test_examples(self):
        assert invariant_factors(GroupSpec((4, 3))).factors == (12,)
        assert invariant_factors(GroupSpec((2, 2, 3))).factors == (2, 6)
        # ascending divisibility chain normal form
        assert invariant_factors(GroupSpec((8, 4, 2))).factors == (2, 4, 8)

    def test_properties_up_to_64(self):
        for group in small_groups(64):
            inv = invariant_factors(group)
            assert inv.order == group.order
            assert inv.exponent == group.exponent
            factors = inv.factors
            assert all(factors[i + 1] % factors[i] == 0 for i in range(len(factors) - 1))
            if factors:
                assert factors[-1] == group.exponent
            assert elementary_divisors(inv) == elementary_divisors(group)


class TestSubgroupOfOrder:
    def test_examples(self):
        assert sorted(subgroup_of_order(GroupSpec((12,)), 3).indices()) == [0, 4, 8]
        assert subgroup_of_order(GroupSpec((3, 3)), 3).elements() == [(0, 0), (0, 1), (0, 2)]
        assert subgroup_of_order(GroupSpec((6, 2)), 1).elements() == [(0, 0)]

    def test_rejects_non_divisor(self):
        with pytest.raises(DomainError):
            subgroup_of_order(GroupSpec((12,)), 5)

    def test_closed_subgroup_all_orders_up_to_64(self):
        for group in small_groups(64):
            for d in divisors(group.order):
                sub = subgroup_of_order(group, d)
                members = sub.elements()
                assert len(sub) == d
                member_set = set(members)
                for a in members:
                    assert group.neg(a) in member_set
                    for b in members:
                        assert group.add(a, b) in member_set


class TestEnumerateAbelianGroups:
    def test_examples(self):
        assert [g.factors for g in enumerate_abelian_groups(8)] == [(8,), (4, 2), (2, 2, 2)]
        assert [g.factors for g in enumerate_abelian_groups(12)] == [(4, 3), (2, 2, 3)]
        assert [g.factors for g in enumerate_abelian_groups(1)] == [()]

    def test_counts_match_partition_products(self):
        for n in range(1, 121):
            groups = enumerate_abelian_groups(n)
            assert len(groups) == abelian_group_count(n)
            # no duplicated isomorphism classes
            keys = {elementary_divisors(g) for g in groups}
            assert len(keys) == len(groups)
            assert all(g.order == n for g in groups)

    def test_partition_count_against_pentagonal_recurrence(self):
        for n in range(0, 40):
            assert partition_count(n) == partition_count_pentagonal(n)


def test_element_orders_divide_group_order():
    for group in small_groups(24):
        for a in group.elements():
            assert group.order % element_order(group, a) == 0
