"""Explicit witness sets meeting the difference-size bounds.

Three constructions, each returning a :class:`WitnessReport` whose measured
size is computed with :mod:`diffsets.setops` (never assumed):

* ``coset_progression``: in Z/N, a union of consecutive cosets of the
  subgroup of order d, translated by the generator 1.
* ``product_construction``: in any group, a product A1 x A2 of a subgroup of
  the complement-of-exponent part with a cyclic coset progression, realized
  inside the original coordinates through an explicit isomorphism with the
  invariant-factor form.
* ``lex_prefix``: in (Z/pZ)^d, the r smallest elements in lexicographic
  order (equivalently the first r linear indices).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .formulas import _ceil_div, min_difference_size_vector_space
from .groups import (
    Element,
    GroupSpec,
    invariant_factors,
    is_prime,
    prime_factorization,
    subgroup_of_order,
)
from .setops import GroupSubset, difference_set, sumset

COSET_PROGRESSION = "coset-progression"
PRODUCT = "product"
LEX_PREFIX = "lex-prefix"


@dataclass(frozen=True)
class WitnessReport:
    """A constructed set together with its measured and promised sizes."""

    subset: GroupSubset
    achieved_size: int
    target_bound: int
    construction_name: str
    requested_size: int
    sum_size: int | None = None

    def __post_init__(self) -> None:
        if self.achieved_size > self.target_bound:
            raise AssertionError(
                f"{self.construction_name} exceeded its bound: "
                f"{self.achieved_size} > {self.target_bound}"
            )
        if len(self.subset) < self.requested_size:
            raise AssertionError(f"{self.construction_name} produced too small a set")


def _measure_diff(subset: GroupSubset) -> int:
    return len(difference_set(subset, subset))


def coset_progression(modulus: int, r: int, d: int) -> WitnessReport:
    """Union of ceil(r/d) consecutive cosets H, H+1, ..., of the order-d subgroup of Z/N.

    The set has d*ceil(r/d) >= r elements and its difference set has at most
    d*(2*ceil(r/d) - 1) elements.
    """
    if modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}")
    if modulus % d != 0 or d < 1:
        raise DomainError(f"d={d} does not divide {modulus}")
    if not 1 <= r <= modulus:
        raise DomainError(f"cardinality r={r} out of range [1, {modulus}]")
    group = GroupSpec(()) if modulus == 1 else GroupSpec((modulus,))
    step = modulus // d
    blocks = _ceil_div(r, d)
    indices = [(k * step + i) % modulus for k in range(d) for i in range(blocks)]
    subset = GroupSubset.from_indices(group, indices)
    return WitnessReport(
        subset=subset,
        achieved_size=_measure_diff(subset),
        target_bound=d * (2 * blocks - 1),
        construction_name=COSET_PROGRESSION,
        requested_size=r,
    )


def invariant_generators(group: GroupSpec) -> list[Element]:
    """Independent elements of the group whose orders are its invariant factors.

    The k-th returned element has order equal to the k-th (ascending)
    invariant factor, and together they span the group as an internal direct
    sum; this realizes the isomorphism with the invariant-factor form inside
    the original coordinates.
    """
    per_prime: dict[int, list[tuple[int, int]]] = {}
    for i, n in enumerate(group.factors):
        for p, a in prime_factorization(n).items():
            per_prime.setdefault(p, []).append((a, i))
    for slots in per_prime.values():
        slots.sort(key=lambda t: (-t[0], -t[1]))
    depth = max((len(v) for v in per_prime.values()), default=0)
    gens_descending = []
    for j in range(depth):
        coords = [0] * len(group.factors)
        for p, slots in per_prime.items():
            if j < len(slots):
                exp, i = slots[j]
                coords[i] = (coords[i] + group.factors[i] // p**exp) % group.factors[i]
        gens_descending.append(tuple(coords))
    return list(reversed(gens_descending))


def product_construction(group: GroupSpec, r: int, d1: int, d2: int) -> WitnessReport:
    """A product witness A1 x A2 under the decomposition G = H x Z/exp(G).

    A1 is a subgroup of H with |A1| = d1; A2 is the first ceil(r/d1) elements
    of a coset progression in Z/exp(G) with divisor d2.  Requires d1 to divide
    |G|/exp(G), d2 to divide exp(G), and d1*exp(G) >= r, so that the result
    has d1*ceil(r/d1) >= r elements and difference set at most
    d1*d2*(2*ceil(r/(d1*d2)) - 1).
    """
    n, e = group.order, group.exponent
    if not 1 <= r <= n:
        raise DomainError(f"cardinality r={r} out of range [1, {n}]")
    if d1 < 1 or (n // e) % d1 != 0:
        raise DomainError(f"d1={d1} does not divide {n // e} (order/exponent)")
    if d2 < 1 or e % d2 != 0:
        raise DomainError(f"d2={d2} does not divide the exponent {e}")
    if d1 * e < r:
        raise DomainError(f"need d1*exponent >= r, got {d1}*{e} < {r}")

    inv = invariant_factors(group)
    gens = invariant_generators(group)
    complement_spec = GroupSpec(inv.factors[:-1]) if inv.factors else GroupSpec(())
    complement_gens = gens[:-1]
    exponent_gen = gens[-1] if gens else None

    part_a = subgroup_of_order(complement_spec, d1).elements()
    s = _ceil_div(r, d1)
    progression = coset_progression(e, s, d2).subset
    part_b = sorted(progression.indices())[:s]

    members = []
    for h in part_a:
        base = group.identity
        for coord, gen in zip(h, complement_gens):
            base = group.add(base, group.scale(coord, gen))
        for c in part_b:
            member = base if exponent_gen is None else group.add(base, group.scale(c, exponent_gen))
            members.append(member)
    subset = GroupSubset.from_elements(group, members)
    if len(subset) != d1 * s:
        raise AssertionError("product embedding failed to be injective")
    d = d1 * d2
    return WitnessReport(
        subset=subset,
        achieved_size=_measure_diff(subset),
        target_bound=d * (2 * _ceil_div(r, d) - 1),
        construction_name=PRODUCT,
        requested_size=r,
    )


def lex_prefix(p: int, d: int, r: int) -> WitnessReport:
    """The r lexicographically smallest elements of (Z/pZ)^d.

    Lexicographic order coincides with linear-index order, so this is the
    prefix {0, ..., r-1} of indices.  Its difference set realizes the
    vector-space minimum exactly, and its sumset realizes the self-sumset
    minimum; both measured sizes are reported.
    """
    if not is_prime(p):
        raise DomainError(f"p={p} is not prime")
    if d < 0:
        raise DomainError(f"dimension d={d} must be >= 0")
    if not 1 <= r <= p**d:
        raise DomainError(f"cardinality r={r} out of range [1, {p ** d}]")
    group = GroupSpec((p,) * d)
    subset = GroupSubset.from_indices(group, range(r))
    return WitnessReport(
        subset=subset,
        achieved_size=_measure_diff(subset),
        target_bound=min_difference_size_vector_space(p, d, r),
        construction_name=LEX_PREFIX,
        requested_size=r,
        sum_size=len(sumset(subset, subset)),
    )
