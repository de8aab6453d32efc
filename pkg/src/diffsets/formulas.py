"""Closed-form evaluators for the extremal set-size quantities.

All minima are computed by explicit enumeration over the relevant divisor
sets; the group orders involved are small enough that clarity wins over
number-theoretic shortcuts.

Status of the values returned here:

* ``min_sumset_size`` / ``min_self_sumset_size`` are exact for every finite
  abelian group (they depend only on the group order).
* ``conjectured_min_difference_size`` is a proven upper bound that is known
  to be exact for cyclic groups and for vector spaces (Z/pZ)^d, and is
  conjectured to be exact in general; :func:`difference_size_status` reports
  which case applies.  Never present it as a theorem for other groups.
"""

from __future__ import annotations

from .errors import DomainError, UnsupportedRegimeError
from .groups import GroupSpec, divisors, is_prime, restricted_divisor_set

STATUS_THEOREM_CYCLIC = "theorem-cyclic"
STATUS_THEOREM_VECTOR_SPACE = "theorem-vector-space"
STATUS_CONJECTURED = "conjectured"
STATUS_UPPER_BOUND = "upper-bound-only"

STATUS_LABELS = {
    STATUS_THEOREM_CYCLIC: "theorem (cyclic)",
    STATUS_THEOREM_VECTOR_SPACE: "theorem (elementary abelian)",
    STATUS_CONJECTURED: "conjectured",
    STATUS_UPPER_BOUND: "upper bound only",
}


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_cardinality(group: GroupSpec, value: int, name: str) -> None:
    if not 1 <= value <= group.order:
        raise DomainError(f"cardinality {name}={value} out of range [1, {group.order}]")


def min_sumset_size(group: GroupSpec, r: int, s: int) -> int:
    """Smallest |A + B| over A, B in the group with |A| = r, |B| = s.

    Equals min over divisors d of the group order of d*(ceil(r/d) +
    ceil(s/d) - 1); depends only on the order, not the group structure.
    """
    _check_cardinality(group, r, "r")
    _check_cardinality(group, s, "s")
    n = group.order
    return min(d * (_ceil_div(r, d) + _ceil_div(s, d) - 1) for d in divisors(n))


def min_self_sumset_size(group: GroupSpec, r: int) -> int:
    """Smallest |A + A| over subsets of cardinality r; equals min_sumset_size(r, r)."""
    return min_sumset_size(group, r, r)


def conjectured_min_difference_size(group: GroupSpec, r: int) -> int:
    """Predicted smallest |A - A| over subsets of cardinality r.

    min over d in restricted_divisor_set(N, exp, r) of d*(2*ceil(r/d) - 1).
    Proven exact for cyclic groups and for (Z/pZ)^d; an upper bound,
    conjectured exact, for every other finite abelian group.
    """
    _check_cardinality(group, r, "r")
    eligible = restricted_divisor_set(group.order, group.exponent, r)
    return min(d * (2 * _ceil_div(r, d) - 1) for d in eligible)


def difference_size_status(group: GroupSpec) -> str:
    """How strong the difference-size formula is for this group."""
    if group.is_cyclic():
        return STATUS_THEOREM_CYCLIC
    if group.elementary_abelian_prime() is not None:
        return STATUS_THEOREM_VECTOR_SPACE
    return STATUS_CONJECTURED


def min_difference_size_vector_space(p: int, d: int, r: int) -> int:
    """Smallest |A - A| over subsets of (Z/pZ)^d with |A| = r, in closed form.

    With t the integer satisfying p^t < r <= p^(t+1), the value is
    p^t * min(2*ceil(r/p^t) - 1, p).  The r = 1 case is handled first
    (a singleton's difference set is {0}).
    """
    if not is_prime(p):
        raise DomainError(f"p={p} is not prime")
    if d < 0:
        raise DomainError(f"dimension d={d} must be >= 0")
    if not 1 <= r <= p**d:
        raise DomainError(f"cardinality r={r} out of range [1, {p ** d}]")
    if r == 1:
        return 1
    t = 0
    while p ** (t + 1) < r:
        t += 1
    return p**t * min(2 * _ceil_div(r, p**t) - 1, p)


def predicted_min_signed_sumset_size(p: int, c: int, v: int) -> int:
    """Smallest |2-fold signed sumset| over subsets of (Z/pZ)^2 of size c*p + v.

    Covers exactly two parameter regimes for odd primes p:

    * 1 <= c <= (p-3)/2 and 1 <= v <= p:  value (2c+1)*p;
    * c = (p-1)/2 and 1 <= v <= (p-1)/2:  value p^2 - 1.

    Outside these regimes no prediction is available and the call is refused.
    """
    if not is_prime(p) or p <= 2:
        raise DomainError(f"p={p} must be an odd prime")
    if 1 <= c <= (p - 3) // 2 and 1 <= v <= p:
        return (2 * c + 1) * p
    if c == (p - 1) // 2 and 1 <= v <= (p - 1) // 2:
        return p * p - 1
    raise UnsupportedRegimeError(
        f"no predicted value for p={p}, c={c}, v={v}; supported regimes are "
        f"1<=c<=(p-3)/2 with 1<=v<=p, and c=(p-1)/2 with 1<=v<=(p-1)/2"
    )
