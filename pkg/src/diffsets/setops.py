"""Group subsets as bit vectors, plus exact set arithmetic.

A :class:`GroupSubset` stores one bit per element, at the element's linear
index.  Sumsets and difference sets are computed by OR-ing translated copies
of the larger operand over the smaller one; a translation decomposes into one
masked bit-rotation per coordinate, so each translate costs O(k) big-int
operations instead of O(N) single-bit updates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError, GroupMismatchError
from .groups import Element, GroupSpec


@dataclass(frozen=True)
class GroupSubset:
    """A subset of a finite abelian group, as a fixed-length bit vector."""

    group: GroupSpec
    bits: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.bits < (1 << self.group.order):
            raise DomainError(
                f"bit vector does not fit a group of order {self.group.order}"
            )

    @classmethod
    def empty(cls, group: GroupSpec) -> "GroupSubset":
        return cls(group, 0)

    @classmethod
    def full(cls, group: GroupSpec) -> "GroupSubset":
        return cls(group, (1 << group.order) - 1)

    @classmethod
    def from_indices(cls, group: GroupSpec, indices: Iterable[int]) -> "GroupSubset":
        bits = 0
        n = group.order
        for i in indices:
            if not 0 <= i < n:
                raise DomainError(f"linear index {i} out of range [0, {n})")
            bits |= 1 << i
        return cls(group, bits)

    @classmethod
    def from_elements(cls, group: GroupSpec, members: Iterable[Element]) -> "GroupSubset":
        return cls.from_indices(group, (group.index_of(tuple(a)) for a in members))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, a: Element) -> bool:
        return bool(self.bits >> self.group.index_of(tuple(a)) & 1)

    def indices(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def elements(self) -> list[Element]:
        return [self.group.element_at(i) for i in self.indices()]

    def __str__(self) -> str:
        inner = ",".join(self.group.format_element(a) for a in self.elements())
        return "{" + inner + "}"

    def to_witness_dict(self) -> dict:
        return {"group": str(self.group), "elements": [list(a) for a in self.elements()]}

    @classmethod
    def from_witness_dict(cls, payload: dict) -> "GroupSubset":
        try:
            group = GroupSpec.parse(payload["group"])
            members = [tuple(e) for e in payload["elements"]]
        except (KeyError, TypeError):
            raise DomainError("witness payload needs 'group' and 'elements' keys") from None
        return cls.from_elements(group, members)

    def to_witness_json(self) -> str:
        return json.dumps(self.to_witness_dict())

    @classmethod
    def from_witness_json(cls, text: str) -> "GroupSubset":
        return cls.from_witness_dict(json.loads(text))


class _Translator:
    """Per-group tables for translating bit vectors by group elements."""

    def __init__(self, group: GroupSpec):
        self.group = group
        self.n = group.order
        self.neg_index = [
            group.index_of(group.neg(a)) for a in group.elements()
        ]
        self._rotations: dict[tuple[int, int], tuple[int, int, int, int]] = {}

    def _rotation(self, axis: int, shift: int) -> tuple[int, int, int, int]:
        cached = self._rotations.get((axis, shift))
        if cached is None:
            size = self.group.factors[axis]
            stride = self.group.strides[axis]
            block = size * stride
            up = shift * stride
            down = (size - shift) * stride
            low_pattern = (1 << down) - 1
            low_mask = 0
            for offset in range(0, self.n, block):
                low_mask |= low_pattern << offset
            high_mask = ((1 << self.n) - 1) ^ low_mask
            cached = (low_mask, high_mask, up, down)
            self._rotations[(axis, shift)] = cached
        return cached

    def translate(self, bits: int, by: Element) -> int:
        for axis, shift in enumerate(by):
            if shift:
                low_mask, high_mask, up, down = self._rotation(axis, shift)
                bits = ((bits & low_mask) << up) | ((bits & high_mask) >> down)
        return bits

    def negate(self, bits: int) -> int:
        out = 0
        neg = self.neg_index
        while bits:
            low = bits & -bits
            out |= 1 << neg[low.bit_length() - 1]
            bits ^= low
        return out


@lru_cache(maxsize=None)
def _translator(group: GroupSpec) -> _Translator:
    return _Translator(group)


def _same_group(a: GroupSubset, b: GroupSubset) -> GroupSpec:
    if a.group != b.group:
        raise GroupMismatchError(f"operands live in different groups: {a.group} vs {b.group}")
    return a.group


def sumset(a: GroupSubset, b: GroupSubset) -> GroupSubset:
    """A + B = {x + y | x in A, y in B}.  Empty if either operand is empty."""
    group = _same_group(a, b)
    trans = _translator(group)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    bits = 0
    for x in small.elements():
        bits |= trans.translate(large.bits, x)
    return GroupSubset(group, bits)


def negate_set(a: GroupSubset) -> GroupSubset:
    """{-x | x in A}; an involution."""
    return GroupSubset(a.group, _translator(a.group).negate(a.bits))


def difference_set(a: GroupSubset, b: GroupSubset) -> GroupSubset:
    """A - B = {x - y | x in A, y in B}."""
    group = _same_group(a, b)
    trans = _translator(group)
    bits = 0
    if len(b) <= len(a):
        for y in b.elements():
            bits |= trans.translate(a.bits, group.neg(y))
    else:
        neg_b = trans.negate(b.bits)
        for x in a.elements():
            bits |= trans.translate(neg_b, x)
    return GroupSubset(group, bits)


def translate(a: GroupSubset, t: Element) -> GroupSubset:
    """A + t.  Preserves |A+A| and |A-A|."""
    a.group.validate_element(tuple(t))
    return GroupSubset(a.group, _translator(a.group).translate(a.bits, tuple(t)))


def signed_sumset_2(a: GroupSubset) -> GroupSubset:
    """The 2-fold signed sumset: {2x, -2x | x in A} u {x+y, x-y, -x-y | x != y in A}.

    Signed combinations c1*x + c2*y with x, y distinct and |c1| + |c2| = 2.
    Requires a nonempty A.
    """
    if len(a) == 0:
        raise DomainError("signed sumset of the empty set is undefined")
    group = a.group
    members = a.elements()
    out = 0
    for i, x in enumerate(members):
        double = group.add(x, x)
        out |= 1 << group.index_of(double)
        out |= 1 << group.index_of(group.neg(double))
        for y in members[i + 1 :]:
            s = group.add(x, y)
            d = group.add(x, group.neg(y))
            out |= 1 << group.index_of(s)
            out |= 1 << group.index_of(group.neg(s))
            out |= 1 << group.index_of(d)
            out |= 1 << group.index_of(group.neg(d))
    return GroupSubset(group, out)
