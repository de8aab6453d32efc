"""Independent brute-force oracles used to pin expected values.

Everything here recomputes set arithmetic with plain pairwise loops over
coordinate tuples, deliberately avoiding the bit-vector fast paths in
diffsets.setops, so the two routes check each other.
"""

from __future__ import annotations

from itertools import combinations

from diffsets.groups import GroupSpec
from diffsets.setops import GroupSubset


def _coords(group: GroupSpec, indices) -> list[tuple[int, ...]]:
    return [group.element_at(i) for i in indices]


def brute_sumset(group: GroupSpec, a_idx, b_idx) -> set[int]:
    xs, ys = _coords(group, a_idx), _coords(group, b_idx)
    out = set()
    for x in xs:
        for y in ys:
            out.add(group.index_of(group.add(x, y)))
    return out


def brute_difference(group: GroupSpec, a_idx, b_idx) -> set[int]:
    xs, ys = _coords(group, a_idx), _coords(group, b_idx)
    out = set()
    for x in xs:
        for y in ys:
            out.add(group.index_of(group.add(x, group.neg(y))))
    return out


def brute_negate(group: GroupSpec, a_idx) -> set[int]:
    return {group.index_of(group.neg(x)) for x in _coords(group, a_idx)}


def brute_signed2(group: GroupSpec, a_idx) -> set[int]:
    members = _coords(group, a_idx)
    out = set()
    for x in members:
        double = group.add(x, x)
        out.add(group.index_of(double))
        out.add(group.index_of(group.neg(double)))
    for x, y in combinations(members, 2):
        s = group.add(x, y)
        d = group.add(x, group.neg(y))
        for value in (s, group.neg(s), d, group.neg(d)):
            out.add(group.index_of(value))
    return out


def brute_objective(group: GroupSpec, indices, objective: str) -> int:
    if objective == "diff":
        return len(brute_difference(group, indices, indices))
    if objective == "sum":
        return len(brute_sumset(group, indices, indices))
    return len(brute_signed2(group, indices))


def brute_minimum(group: GroupSpec, r: int, objective: str, require_identity=False) -> int:
    """Global minimum over all r-subsets by raw enumeration."""
    n = group.order
    best = None
    if require_identity:
        pools = ((0,) + rest for rest in combinations(range(1, n), r - 1))
    else:
        pools = combinations(range(n), r)
    for combo in pools:
        value = brute_objective(group, combo, objective)
        if best is None or value < best:
            best = value
    return best


def subset_of(group: GroupSpec, indices) -> GroupSubset:
    return GroupSubset.from_indices(group, indices)


def element_order(group: GroupSpec, a) -> int:
    order = 1
    acc = a
    while acc != group.identity:
        acc = group.add(acc, a)
        order += 1
    return order


def partition_count_pentagonal(n: int) -> int:
    """Partition counts via the pentagonal-number recurrence (independent route)."""
    counts = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            for sign_k in (k, -k):
                g = sign_k * (3 * sign_k - 1) // 2
                if g > m:
                    continue
                term = counts[m - g]
                total += term if (k % 2 == 1) else -term
            if k * (3 * k - 1) // 2 > m and k * (3 * k + 1) // 2 > m:
                break
            k += 1
        counts[m] = total
    return counts[n]


def small_groups(max_order: int) -> list[GroupSpec]:
    from diffsets.groups import enumerate_abelian_groups

    out = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_abelian_groups(n))
    return out
