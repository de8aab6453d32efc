"""Finite abelian groups given by their cyclic factor orders.

A :class:`GroupSpec` is an ordered tuple of cyclic factor orders, e.g.
``GroupSpec((4, 2))`` for Z/4 x Z/2; the empty tuple is the trivial group.
Elements are coordinate tuples.  Every element also has a linear index in
row-major mixed-radix order (last coordinate varies fastest); that index is
the bit position used by :mod:`diffsets.setops`, so it is part of the file
format contract and must never change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import TYPE_CHECKING, Iterable, Iterator

from .errors import DomainError, InvalidElementError

if TYPE_CHECKING:
    from .setops import GroupSubset

Element = tuple[int, ...]


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group as an ordered product of cyclic groups."""

    factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        for n in self.factors:
            if n < 2:
                raise DomainError(f"cyclic factor orders must be >= 2, got {n}")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse a comma-separated factor list; "" and "1" denote the trivial group."""
        text = text.strip()
        if text in ("", "1"):
            return cls(())
        try:
            factors = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise DomainError(f"malformed group string {text!r}") from None
        return cls(factors)

    def __str__(self) -> str:
        return ",".join(str(n) for n in self.factors) if self.factors else "1"

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.factors) if self.factors else 1

    @cached_property
    def strides(self) -> tuple[int, ...]:
        """Row-major strides: index = sum(x_i * strides[i])."""
        out = []
        acc = 1
        for n in reversed(self.factors):
            out.append(acc)
            acc *= n
        return tuple(reversed(out))

    @property
    def identity(self) -> Element:
        return (0,) * len(self.factors)

    def elements(self) -> Iterator[Element]:
        """All elements, in linear-index order."""
        return cartesian(*(range(n) for n in self.factors))

    def validate_element(self, a: Element) -> None:
        if len(a) != len(self.factors):
            raise InvalidElementError(
                f"element {a!r} has {len(a)} coordinates, group {self} needs "
                f"{len(self.factors)}"
            )
        for x, n in zip(a, self.factors):
            if not 0 <= x < n:
                raise InvalidElementError(f"coordinate {x} out of range [0, {n}) in {a!r}")

    def index_of(self, a: Element) -> int:
        self.validate_element(a)
        return sum(x * s for x, s in zip(a, self.strides))

    def element_at(self, index: int) -> Element:
        if not 0 <= index < self.order:
            raise InvalidElementError(f"linear index {index} out of range [0, {self.order})")
        coords = []
        for n, s in zip(self.factors, self.strides):
            coords.append((index // s) % n)
        return tuple(coords)

    def add(self, a: Element, b: Element) -> Element:
        self.validate_element(a)
        self.validate_element(b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def neg(self, a: Element) -> Element:
        self.validate_element(a)
        return tuple((-x) % n for x, n in zip(a, self.factors))

    def scale(self, k: int, a: Element) -> Element:
        self.validate_element(a)
        return tuple((k * x) % n for x, n in zip(a, self.factors))

    def format_element(self, a: Element) -> str:
        self.validate_element(a)
        return "(" + ",".join(str(x) for x in a) + ")"

    def is_cyclic(self) -> bool:
        return len(invariant_factors(self).factors) <= 1

    def elementary_abelian_prime(self) -> int | None:
        """The prime p if this group is (Z/pZ)^d with d >= 1, else None."""
        inv = invariant_factors(self).factors
        if not inv:
            return None
        p = inv[0]
        if any(f != p for f in inv) or not is_prime(p):
            return None
        return p


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factorization(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise DomainError(f"cannot factor {n}; need a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise DomainError(f"divisors undefined for {n}; need a positive integer")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def restricted_divisor_set(order: int, exponent: int, r: int) -> list[int]:
    """Divisor products d1*d2 with d1 | order/exponent, d2 | exponent, d1*exponent >= r.

    Deduplicated and ascending.  These are the subgroup orders eligible to
    carry a coset-progression witness for a set of cardinality ``r``.
    """
    if order < 1 or exponent < 1 or order % exponent != 0:
        raise DomainError(f"exponent {exponent} must divide order {order}")
    if not 1 <= r <= order:
        raise DomainError(f"cardinality r={r} out of range [1, {order}]")
    out = set()
    for d1 in divisors(order // exponent):
        if d1 * exponent < r:
            continue
        for d2 in divisors(exponent):
            out.add(d1 * d2)
    return sorted(out)


def elementary_divisors(group: GroupSpec) -> tuple[int, ...]:
    """Prime-power cyclic orders of the group, sorted ascending.

    This multiset is a canonical form: two groups are isomorphic iff their
    elementary divisors agree.
    """
    parts: list[int] = []
    for n in group.factors:
        for p, a in prime_factorization(n).items():
            parts.append(p**a)
    return tuple(sorted(parts))


def invariant_factors(group: GroupSpec) -> GroupSpec:
    """The isomorphic invariant-factor form d1 | d2 | ... | dm, ascending.

    The last (largest) factor equals the exponent of the group.
    """
    per_prime: dict[int, list[int]] = {}
    for n in group.factors:
        for p, a in prime_factorization(n).items():
            per_prime.setdefault(p, []).append(a)
    for exps in per_prime.values():
        exps.sort(reverse=True)
    depth = max((len(v) for v in per_prime.values()), default=0)
    descending = []
    for j in range(depth):
        d = 1
        for p, exps in per_prime.items():
            if j < len(exps):
                d *= p ** exps[j]
        descending.append(d)
    return GroupSpec(tuple(reversed(descending)))


def subgroup_of_order(group: GroupSpec, d: int) -> "GroupSubset":
    """An explicit subgroup of cardinality exactly d (one per requested order).

    Works whenever d divides the group order: split d into prime powers, then
    for each prime give its exponent greedily to the factors with the largest
    p-part (later factors win ties), taking in each cyclic factor Z/n the
    subgroup generated by n / (allocated order).
    """
    from .setops import GroupSubset

    n = group.order
    if d < 1 or n % d != 0:
        raise DomainError(f"subgroup order {d} does not divide group order {n}")
    alloc = [1] * len(group.factors)  # per-factor subgroup order
    factor_parts = [prime_factorization(f) for f in group.factors]
    for p, want in prime_factorization(d).items():
        slots = sorted(
            ((parts.get(p, 0), i) for i, parts in enumerate(factor_parts)),
            key=lambda t: (-t[0], -t[1]),
        )
        remaining = want
        for capacity, i in slots:
            if remaining == 0:
                break
            take = min(capacity, remaining)
            alloc[i] *= p**take
            remaining -= take
        if remaining:
            raise AssertionError("allocation failed despite d | order")
    axes = []
    for f, m in zip(group.factors, alloc):
        gen = f // m
        axes.append([k * gen for k in range(m)])
    members = [coords for coords in cartesian(*axes)] if group.factors else [()]
    return GroupSubset.from_elements(group, members)


def _partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing partitions of n, largest part first."""

    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return rec(n, n)


def enumerate_abelian_groups(n: int) -> list[GroupSpec]:
    """One representative per isomorphism class of abelian groups of order n.

    Representatives list prime-power factors with primes ascending and, within
    each prime, exponents descending (e.g. order 12 gives [4,3] and [2,2,3]).
    """
    if n < 1:
        raise DomainError(f"group order must be >= 1, got {n}")
    if n == 1:
        return [GroupSpec(())]
    per_prime_choices = []
    for p, a in sorted(prime_factorization(n).items()):
        per_prime_choices.append([tuple(p**e for e in part) for part in _partitions(a)])
    out = []
    for combo in cartesian(*per_prime_choices):
        factors: tuple[int, ...] = ()
        for chunk in combo:
            factors += chunk
        out.append(GroupSpec(factors))
    return out


def partition_count(n: int) -> int:
    """Number of integer partitions of n (p(0) = 1)."""
    if n < 0:
        raise DomainError("partition count undefined for negative integers")
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def abelian_group_count(n: int) -> int:
    """Number of isomorphism classes of abelian groups of order n."""
    if n < 1:
        raise DomainError(f"group order must be >= 1, got {n}")
    count = 1
    for a in prime_factorization(n).values():
        count *= partition_count(a)
    return count
