"""Executable checkers for the combinatorial inequalities behind the bounds.

Two families:

* Partition-profile inequalities.  For a weakly decreasing positive sequence
  ``parts`` (an integer partition), its *sumset profile* has entry
  max(parts[i] + parts[j] - 1) over i + j - 1 = k; geometrically these are
  the row widths of the planar sumset F + F of the partition's Ferrers
  diagram F.  The checkers test a doubling bound (profile total >= 3*total -
  3) and a prime-capped variant with threshold (2n+1)p.

* A hyperplane-counting implication in (Z/pZ)^d, d >= 3: if a subset meets
  every vector hyperplane in at least m*p^(d-2) points, it has at least
  m*p^(d-1) points overall.

Hypothesis violations are reported as a distinct result kind, never as a
pass or a failure, so sweeps cannot count vacuous cases as coverage.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, GroupMismatchError
from .groups import GroupSpec, is_prime
from .setops import GroupSubset

OK = "ok"
HYPOTHESIS_VIOLATION = "hypothesis-violation"


@dataclass(frozen=True)
class LemmaCheck:
    """Outcome of one inequality check."""

    status: str  # OK or HYPOTHESIS_VIOLATION
    holds: bool | None = None  # None when the hypotheses were not met
    slack: int | None = None  # lhs - rhs when status == OK
    reason: str | None = None  # which hypothesis failed

    @property
    def vacuous(self) -> bool:
        return self.status == HYPOTHESIS_VIOLATION


@dataclass(frozen=True)
class ImplicationCheck:
    """Outcome of a hypothesis => conclusion check."""

    hypothesis_holds: bool
    conclusion_holds: bool

    @property
    def implication_ok(self) -> bool:
        return (not self.hypothesis_holds) or self.conclusion_holds


@dataclass(frozen=True)
class SweepSummary:
    checked: int
    passed: int
    vacuous: int
    failed: int

    def __str__(self) -> str:
        return (
            f"checked={self.checked} passed={self.passed} "
            f"vacuous={self.vacuous} failed={self.failed}"
        )


def _as_partition(parts: Sequence[int]) -> tuple[int, ...]:
    values = tuple(int(x) for x in parts)
    if not values:
        raise DomainError("partition must have at least one part")
    if any(x <= 0 for x in values):
        raise DomainError(f"partition parts must be positive: {values}")
    if any(values[i] < values[i + 1] for i in range(len(values) - 1)):
        raise DomainError(f"partition must be weakly decreasing: {values}")
    return values


def sumset_profile(parts: Sequence[int]) -> tuple[int, ...]:
    """Row widths of F + F for the Ferrers diagram F of ``parts``.

    Entry k (1-based, k = 1 .. 2m-1) is max(parts[i] + parts[j] - 1) over all
    1 <= i, j <= m with i + j - 1 = k.
    """
    values = _as_partition(parts)
    m = len(values)
    out = []
    for k in range(1, 2 * m):
        best = 0
        for i in range(max(1, k - m + 1), min(m, k) + 1):
            j = k + 1 - i
            best = max(best, values[i - 1] + values[j - 1] - 1)
        out.append(best)
    return tuple(out)


def capped_profile(p: int, parts: Sequence[int]) -> tuple[int, ...]:
    """The minimal profile feasible under the cap: max of min(parts[i]+parts[j]-1, p).

    Any sequence satisfying the pairwise constraint entrywise dominates this
    one, so checking an inequality on it checks it for all feasible profiles.
    """
    values = _as_partition(parts)
    m = len(values)
    out = []
    for k in range(1, 2 * m):
        best = 0
        for i in range(max(1, k - m + 1), min(m, k) + 1):
            j = k + 1 - i
            best = max(best, min(values[i - 1] + values[j - 1] - 1, p))
        out.append(best)
    return tuple(out)


def check_ferrers_doubling(parts: Sequence[int]) -> LemmaCheck:
    """Sum of the sumset profile is at least 3*(sum of parts) - 3.

    Hypotheses: at least two parts, and the largest part exceeds 1 (so the
    Ferrers diagram is genuinely two-dimensional).
    """
    values = _as_partition(parts)
    if len(values) <= 1:
        return LemmaCheck(HYPOTHESIS_VIOLATION, reason="need more than one part")
    if values[0] <= 1:
        return LemmaCheck(HYPOTHESIS_VIOLATION, reason="largest part must exceed 1")
    lhs = sum(sumset_profile(values))
    rhs = 3 * sum(values) - 3
    return LemmaCheck(OK, holds=lhs >= rhs, slack=lhs - rhs)


def check_capped_doubling(
    p: int, n: int, parts: Sequence[int], profile: Sequence[int] | None = None
) -> LemmaCheck:
    """Capped-profile total is at least (2n+1)*p.

    Hypotheses: p prime; n >= 1; the number of parts m satisfies
    n + 2 <= m <= (p-1)/2; parts bounded by p; parts total at least n*p + 1.
    When ``profile`` is given it must have length 2m-1 and dominate the
    pairwise capped bound entrywise; when omitted, the minimal feasible
    profile is generated and tested, which implies the result for every
    feasible profile.
    """
    if not is_prime(p):
        raise DomainError(f"p={p} is not prime")
    values = _as_partition(parts)
    m = len(values)
    if n < 1:
        return LemmaCheck(HYPOTHESIS_VIOLATION, reason=f"need n >= 1, got {n}")
    if not n + 2 <= m <= (p - 1) // 2:
        return LemmaCheck(
            HYPOTHESIS_VIOLATION,
            reason=f"need n+2 <= m <= (p-1)/2, got m={m} with n={n}, p={p}",
        )
    if values[0] > p:
        return LemmaCheck(HYPOTHESIS_VIOLATION, reason=f"largest part {values[0]} exceeds p={p}")
    if sum(values) < n * p + 1:
        return LemmaCheck(
            HYPOTHESIS_VIOLATION, reason=f"parts total {sum(values)} below n*p+1 = {n * p + 1}"
        )
    minimal = capped_profile(p, values)
    if profile is None:
        used = minimal
    else:
        used = tuple(int(x) for x in profile)
        if len(used) != 2 * m - 1:
            return LemmaCheck(
                HYPOTHESIS_VIOLATION, reason=f"profile must have length {2 * m - 1}"
            )
        if any(u < lo for u, lo in zip(used, minimal)):
            return LemmaCheck(
                HYPOTHESIS_VIOLATION, reason="profile violates the pairwise capped bound"
            )
    lhs = sum(used)
    rhs = (2 * n + 1) * p
    return LemmaCheck(OK, holds=lhs >= rhs, slack=lhs - rhs)


def ferrers_diagram(parts: Sequence[int]) -> set[tuple[int, int]]:
    """Planar point set with parts[k] points in row k: {(x, y) : 0 <= x < parts[y]}."""
    values = _as_partition(parts)
    return {(x, y) for y, width in enumerate(values) for x in range(width)}


def planar_sumset(a: Iterable[tuple[int, int]], b: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    b = list(b)
    return {(xa + xb, ya + yb) for (xa, ya) in a for (xb, yb) in b}


def ferrers_sumset_contained(parts: Sequence[int]) -> bool:
    """F + F lies inside the Ferrers diagram of the sumset profile.

    This is the geometric step behind :func:`check_ferrers_doubling`; it
    holds for every partition, hypotheses or not.
    """
    diagram = ferrers_diagram(parts)
    return planar_sumset(diagram, diagram) <= ferrers_diagram(sumset_profile(parts))


# ---------------------------------------------------------------------------
# Hyperplane counting in (Z/pZ)^d


@lru_cache(maxsize=None)
def hyperplane_masks(p: int, d: int) -> tuple[int, ...]:
    """Bit masks of all vector hyperplanes of (Z/pZ)^d, one per hyperplane.

    Hyperplanes are kernels of nonzero linear functionals; functionals are
    normalized so the first nonzero coefficient is 1, giving exactly
    (p^d - 1) / (p - 1) masks.
    """
    if not is_prime(p):
        raise DomainError(f"p={p} is not prime")
    if d < 1:
        raise DomainError(f"dimension d={d} must be >= 1")
    group = GroupSpec((p,) * d)
    points = list(group.elements())
    masks = []
    for coeffs in cartesian(*(range(p) for _ in range(d))):
        nonzero = [c for c in coeffs if c]
        if not nonzero or nonzero[0] != 1:
            continue
        mask = 0
        for idx, x in enumerate(points):
            if sum(c * xi for c, xi in zip(coeffs, x)) % p == 0:
                mask |= 1 << idx
        masks.append(mask)
    return tuple(masks)


def check_hyperplane_bound(p: int, d: int, m: int, subset: GroupSubset) -> ImplicationCheck:
    """If |S n H| >= m*p^(d-2) for every vector hyperplane H, then |S| >= m*p^(d-1).

    Requires dimension d >= 3; evaluates the hypothesis exhaustively over all
    (p^d - 1)/(p - 1) hyperplanes and reports both sides of the implication.
    """
    if d < 3:
        raise DomainError(f"hyperplane bound needs dimension d >= 3, got {d}")
    if m < 0:
        raise DomainError(f"threshold multiplier m={m} must be >= 0")
    group = GroupSpec((p,) * d)
    if subset.group != group:
        raise GroupMismatchError(f"subset lives in {subset.group}, expected {group}")
    need_each = m * p ** (d - 2)
    hypothesis = all(
        (subset.bits & mask).bit_count() >= need_each for mask in hyperplane_masks(p, d)
    )
    conclusion = len(subset) >= m * p ** (d - 1)
    return ImplicationCheck(hypothesis_holds=hypothesis, conclusion_holds=conclusion)


# ---------------------------------------------------------------------------
# Exhaustive / randomized sweeps


def bounded_partitions(
    max_len: int, max_first: int, exact_len: int | None = None,
    min_total: int | None = None, max_total: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing positive sequences with the given bounds."""

    def rec(prefix: list[int], cap: int, total: int) -> Iterator[tuple[int, ...]]:
        length = len(prefix)
        if length and (exact_len is None or length == exact_len):
            if (min_total is None or total >= min_total) and (
                max_total is None or total <= max_total
            ):
                yield tuple(prefix)
        if length == (exact_len if exact_len is not None else max_len):
            return
        for value in range(cap, 0, -1):
            if max_total is not None and total + value > max_total:
                continue
            prefix.append(value)
            yield from rec(prefix, value, total + value)
            prefix.pop()

    yield from rec([], max_first, 0)


def sweep_ferrers_doubling(max_len: int = 6, max_first: int = 6) -> SweepSummary:
    """Check the doubling bound and the geometric containment on all small partitions."""
    checked = passed = vacuous = failed = 0
    for parts in bounded_partitions(max_len, max_first):
        checked += 1
        if not ferrers_sumset_contained(parts):
            failed += 1
            continue
        result = check_ferrers_doubling(parts)
        if result.vacuous:
            vacuous += 1
        elif result.holds:
            passed += 1
        else:
            failed += 1
    return SweepSummary(checked, passed, vacuous, failed)


def sweep_capped_doubling(p: int) -> SweepSummary:
    """Check the capped bound, minimal-profile mode, over its whole hypothesis range.

    Ranges: n >= 1, n + 2 <= m <= (p-1)/2, parts of exact length m bounded by
    p with total between n*p + 1 and n*p + p.
    """
    if not is_prime(p):
        raise DomainError(f"p={p} is not prime")
    checked = passed = vacuous = failed = 0
    n = 1
    while n + 2 <= (p - 1) // 2:
        for m in range(n + 2, (p - 1) // 2 + 1):
            for parts in bounded_partitions(
                m, p, exact_len=m, min_total=n * p + 1, max_total=n * p + p
            ):
                checked += 1
                result = check_capped_doubling(p, n, parts)
                if result.vacuous:
                    vacuous += 1
                elif result.holds:
                    passed += 1
                else:
                    failed += 1
        n += 1
    return SweepSummary(checked, passed, vacuous, failed)


def sweep_hyperplane_exhaustive(p: int, d: int, thresholds: Sequence[int]) -> SweepSummary:
    """Check the hyperplane implication for every subset of (Z/pZ)^d."""
    group = GroupSpec((p,) * d)
    n = group.order
    if n > 16:
        raise DomainError(f"exhaustive sweep infeasible for order {n} > 16")
    checked = passed = vacuous = failed = 0
    for m in thresholds:
        for bits in range(1 << n):
            subset = GroupSubset(group, bits)
            result = check_hyperplane_bound(p, d, m, subset)
            checked += 1
            if not result.hypothesis_holds:
                vacuous += 1
            elif result.conclusion_holds:
                passed += 1
            else:
                failed += 1
    return SweepSummary(checked, passed, vacuous, failed)


def sweep_hyperplane_random(
    p: int, d: int, m: int, samples: int = 10_000, seed: int = 0
) -> SweepSummary:
    """Check the hyperplane implication on random subsets plus structured ones.

    Structured subsets (empty, full, each hyperplane, unions of hyperplane
    pairs) are included so the hypothesis side is exercised non-vacuously.
    """
    group = GroupSpec((p,) * d)
    n = group.order
    rng = random.Random(seed)
    masks = hyperplane_masks(p, d)
    pool: list[int] = [0, (1 << n) - 1]
    pool.extend(masks)
    pool.extend(a | b for i, a in enumerate(masks) for b in masks[i + 1 :])
    pool.extend(rng.getrandbits(n) for _ in range(samples))
    checked = passed = vacuous = failed = 0
    for bits in pool:
        result = check_hyperplane_bound(p, d, m, GroupSubset(group, bits))
        checked += 1
        if not result.hypothesis_holds:
            vacuous += 1
        elif result.conclusion_holds:
            passed += 1
        else:
            failed += 1
    return SweepSummary(checked, passed, vacuous, failed)
