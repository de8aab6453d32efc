"""Exact minima of |A-A|, |A+A|, and |2-fold signed sumset| by search.

Two modes:

* ``exhaustive``: plain enumeration, the correctness oracle for everything
  else.  For the diff and sum objectives the enumeration fixes the identity
  in A (sound by translation invariance); the signed objective is *not*
  translation invariant, so its enumeration is unrestricted.
* ``bnb``: branch and bound.  Partial objective sets only grow under set
  extension, so the popcount of the partial mask is an admissible bound; for
  diff and sum the known lower bound min|A+B| (|A|=|B|=r) is folded in.
  Optional automorphism pruning for elementary abelian groups keeps only
  prefixes that are lexicographically minimal in their orbit under the
  invertible linear maps; every orbit retains its minimal member, so minima
  are unaffected.

Certificates carry the witness subset; the witness is re-measured through
:mod:`diffsets.setops` before being returned.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Callable, Iterable, Sequence

from .errors import DomainError, NodeBudgetExceeded
from .formulas import conjectured_min_difference_size, min_self_sumset_size
from .groups import GroupSpec, enumerate_abelian_groups
from .setops import GroupSubset, difference_set, signed_sumset_2, sumset

OBJECTIVES = ("diff", "sum", "signed2")

DEFAULT_NODE_BUDGET = 200_000_000


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for one search job."""

    mode: str = "bnb"  # "bnb" | "exhaustive"
    automorphisms: bool = False  # orbit pruning; elementary abelian groups only
    sym_depth: int = 3  # prefix depth up to which orbit minimality is enforced
    node_budget: int = DEFAULT_NODE_BUDGET
    workers: int = 1


@dataclass
class SearchCertificate:
    """An exact minimum with a witness achieving it."""

    group: GroupSpec
    r: int
    objective: str
    minimum: int
    witness: GroupSubset
    nodes: int
    mode: str
    millis: float

    def as_report_dict(self, conjectured: int | None = None) -> dict:
        equal = None if conjectured is None else self.minimum == conjectured
        return {
            "group": str(self.group),
            "r": self.r,
            "objective": self.objective,
            "minimum": self.minimum,
            "conjectured": conjectured,
            "equal": equal,
            "witness": [list(a) for a in self.witness.elements()],
            "nodes": self.nodes,
            "millis": round(self.millis, 3),
        }


def measure(objective: str, subset: GroupSubset) -> int:
    """Objective value of a concrete subset, via the setops route."""
    if objective == "diff":
        return len(difference_set(subset, subset))
    if objective == "sum":
        return len(sumset(subset, subset))
    if objective == "signed2":
        return len(signed_sumset_2(subset))
    raise DomainError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")


# ---------------------------------------------------------------------------
# Per-job tables


class _Context:
    """Masks for incremental objective updates along the search tree.

    ``self_mask[a]`` is what element a contributes alone; ``pair_mask[a][b]``
    is what the pair {a, b} contributes.  The objective value of a subset is
    the popcount of the OR of its members' contributions.
    """

    def __init__(self, group: GroupSpec, objective: str):
        if objective not in OBJECTIVES:
            raise DomainError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
        self.group = group
        self.objective = objective
        self.n = n = group.order
        self.normalized = objective in ("diff", "sum")
        elements = list(group.elements())
        index = {e: i for i, e in enumerate(elements)}
        add = [[index[group.add(a, b)] for b in elements] for a in elements]
        neg = [index[group.neg(a)] for a in elements]
        self.neg_index = neg
        self_mask = []
        pair_mask = []
        if objective == "diff":
            for i in range(n):
                self_mask.append(1)  # a - a = identity, index 0
                row = []
                for j in range(n):
                    diff_ij = add[i][neg[j]]
                    diff_ji = add[j][neg[i]]
                    row.append((1 << diff_ij) | (1 << diff_ji))
                pair_mask.append(row)
        elif objective == "sum":
            for i in range(n):
                self_mask.append(1 << add[i][i])
                pair_mask.append([1 << add[i][j] for j in range(n)])
        else:  # signed2
            for i in range(n):
                double = add[i][i]
                self_mask.append((1 << double) | (1 << neg[double]))
                row = []
                for j in range(n):
                    s = add[i][j]
                    d = add[i][neg[j]]
                    row.append((1 << s) | (1 << neg[s]) | (1 << d) | (1 << neg[d]))
                pair_mask.append(row)
        self.self_mask = self_mask
        self.pair_mask = pair_mask

    def prefix_mask(self, prefix: Sequence[int]) -> int:
        mask = 0
        for t, a in enumerate(prefix):
            mask |= self.self_mask[a]
            row = self.pair_mask[a]
            for b in prefix[:t]:
                mask |= row[b]
        return mask


# ---------------------------------------------------------------------------
# Linear symmetries of (Z/pZ)^d


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [row[:] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((k for k in range(rank, len(rows)) if rows[k][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for k in range(len(rows)):
            if k != rank and rows[k][col] % p:
                factor = rows[k][col]
                rows[k] = [(x - factor * y) % p for x, y in zip(rows[k], rows[rank])]
        rank += 1
    return rank


_PERM_CACHE: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}


def linear_symmetry_perms(p: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Index permutations of (Z/pZ)^d induced by its invertible linear maps.

    The identity permutation is omitted.  These maps fix the identity element
    and preserve all three objectives, so any of them may be used to
    canonicalize search prefixes.
    """
    cached = _PERM_CACHE.get((p, d))
    if cached is not None:
        return cached
    group = GroupSpec((p,) * d)
    points = list(group.elements())
    powers = [p ** (d - 1 - i) for i in range(d)]
    perms = []
    identity = tuple(range(p**d))
    for flat in cartesian(range(p), repeat=d * d):
        matrix = [list(flat[i * d : (i + 1) * d]) for i in range(d)]
        if _rank_mod_p(matrix, p) < d:
            continue
        perm = tuple(
            sum(powers[i] * (sum(matrix[i][j] * x[j] for j in range(d)) % p) for i in range(d))
            for x in points
        )
        if perm != identity:
            perms.append(perm)
    result = tuple(perms)
    _PERM_CACHE[(p, d)] = result
    return result


def _orbit_minimal(prefix: list[int], perms: Sequence[Sequence[int]]) -> bool:
    for perm in perms:
        if sorted(perm[i] for i in prefix) < prefix:
            return False
    return True


# ---------------------------------------------------------------------------
# Seeds: measured starting witnesses for the signed objective

def _signed_seed_prefixes(group: GroupSpec, m: int) -> list[tuple[int, ...]]:
    """Deterministic candidate subsets likely to have small signed sumsets.

    Each candidate is later measured through setops, so these only seed the
    incumbent; they never influence correctness.
    """
    n = group.order
    neg = [group.index_of(group.neg(a)) for a in group.elements()]
    seeds: list[tuple[int, ...]] = [tuple(range(m))]

    # Greedy negation-free prefix: skip 0 and anything whose negative is taken.
    chosen: list[int] = []
    taken = set()
    for i in range(1, n):
        if len(chosen) == m:
            break
        if i in taken or neg[i] in taken:
            continue
        chosen.append(i)
        taken.add(i)
    for i in range(n):
        if len(chosen) == m:
            break
        if i not in taken:
            chosen.append(i)
            taken.add(i)
    seeds.append(tuple(sorted(chosen)))

    # Symmetric set (a union of {x, -x} pairs, plus 0 when m is odd).
    chosen, taken = [], set()
    if m % 2 == 1:
        chosen.append(0)
        taken.add(0)
    for i in range(1, n):
        if len(chosen) >= m - 1:
            break
        if i in taken or neg[i] == i:
            continue
        chosen.extend((i, neg[i]))
        taken.update((i, neg[i]))
    for i in range(n):
        if len(chosen) == m:
            break
        if i not in taken:
            chosen.append(i)
            taken.add(i)
    seeds.append(tuple(sorted(chosen[:m])))

    # Centered runs of consecutive indices (half-way cosets double into the
    # low rows, keeping sums and differences in the same few rows).
    p = group.elementary_abelian_prime()
    starts = {(n - m) // 2, (n - m + 1) // 2}
    if p is not None and len(group.factors) >= 1:
        row = n // p
        starts.add(((p - 1) // 2) * row)
    for start in sorted(starts):
        if 0 <= start and start + m <= n:
            seeds.append(tuple(range(start, start + m)))

    unique = sorted(set(s for s in seeds if len(s) == m))
    return unique


# ---------------------------------------------------------------------------
# The tree walk


class _SharedIncumbent:
    """Thin wrapper over a multiprocessing.Value used by parallel workers."""

    def __init__(self, value):
        self._value = value

    def peek(self) -> int:
        return self._value.value

    def publish(self, candidate: int) -> None:
        with self._value.get_lock():
            if candidate < self._value.value:
                self._value.value = candidate


def _walk(
    ctx: _Context,
    r: int,
    *,
    prune: bool,
    lb: int,
    perms: Sequence[Sequence[int]] | None,
    sym_depth: int,
    incumbent: int,
    best: tuple[int, ...] | None,
    roots: Iterable[tuple[int, ...]] | None = None,
    shared: _SharedIncumbent | None = None,
) -> tuple[int, tuple[int, ...] | None, int]:
    """DFS over index-increasing subsets; returns (incumbent, best, nodes)."""
    n = ctx.n
    self_mask = ctx.self_mask
    pair_mask = ctx.pair_mask
    nodes = 0
    stop = False
    sync_every = 4096

    def recurse(chosen: list[int], mask: int, start: int) -> None:
        nonlocal incumbent, best, nodes, stop
        k = len(chosen)
        if k == r:
            value = mask.bit_count()
            if value < incumbent:
                incumbent = value
                best = tuple(chosen)
                if shared is not None:
                    shared.publish(incumbent)
                if prune and incumbent <= lb:
                    stop = True
            return
        limit = n - (r - k) + 1
        for a in range(start, limit):
            new_mask = mask | self_mask[a]
            row = pair_mask[a]
            for b in chosen:
                new_mask |= row[b]
            nodes += 1
            if shared is not None and nodes % sync_every == 0:
                seen = shared.peek()
                if seen < incumbent:
                    incumbent = seen
            if prune and new_mask.bit_count() >= incumbent:
                continue
            chosen.append(a)
            if perms is not None and k + 1 <= sym_depth and not _orbit_minimal(chosen, perms):
                chosen.pop()
                continue
            recurse(chosen, new_mask, a + 1)
            chosen.pop()
            if stop:
                return

    if prune and incumbent <= lb:
        return incumbent, best, nodes

    if roots is None:
        starts = [0] if ctx.normalized else range(n - r + 1)
        root_prefixes = [(a,) for a in starts]
    else:
        root_prefixes = list(roots)

    for prefix in root_prefixes:
        chosen = list(prefix)
        nodes += len(chosen)
        if perms is not None and len(chosen) <= sym_depth and not _orbit_minimal(chosen, perms):
            continue
        mask = ctx.prefix_mask(chosen)
        if len(chosen) == r:
            value = mask.bit_count()
            if value < incumbent:
                incumbent = value
                best = tuple(chosen)
                if shared is not None:
                    shared.publish(incumbent)
                if prune and incumbent <= lb:
                    break
            continue
        if prune and mask.bit_count() >= incumbent:
            continue
        recurse(chosen, mask, chosen[-1] + 1)
        if stop:
            break
    return incumbent, best, nodes


def _node_estimate(n: int, r: int, normalized: bool, sym_count: int) -> int:
    pool = n - 1 if normalized else n
    depth = r - 1 if normalized else r
    estimate = sum(math.comb(pool, k) for k in range(depth + 1))
    if sym_count:
        estimate = max(1, estimate // (sym_count + 1))
    return estimate


# ---------------------------------------------------------------------------
# Parallel workers

_WORKER_STATE: dict = {}


def _worker_init(factors, objective, r, prune, lb, perms, sym_depth, shared_value):
    ctx = _Context(GroupSpec(factors), objective)
    _WORKER_STATE.update(
        ctx=ctx,
        r=r,
        prune=prune,
        lb=lb,
        perms=perms,
        sym_depth=sym_depth,
        shared=_SharedIncumbent(shared_value),
    )


def _worker_task(prefix):
    state = _WORKER_STATE
    shared = state["shared"]
    incumbent, best, nodes = _walk(
        state["ctx"],
        state["r"],
        prune=state["prune"],
        lb=state["lb"],
        perms=state["perms"],
        sym_depth=state["sym_depth"],
        incumbent=shared.peek(),
        best=None,
        roots=[tuple(prefix)],
        shared=shared,
    )
    return incumbent, best, nodes


def _run_parallel(ctx, r, options, perms, lb, incumbent, best):
    import multiprocessing as mp

    n = ctx.n
    starts = [0] if ctx.normalized else list(range(n - r + 1))
    prefixes = []
    for a in starts:
        if perms is not None and not _orbit_minimal([a], perms):
            continue
        if r == 1:
            prefixes.append((a,))
            continue
        for b in range(a + 1, n - (r - 2)):
            prefix = [a, b]
            if perms is not None and 2 <= options.sym_depth and not _orbit_minimal(prefix, perms):
                continue
            prefixes.append((a, b))
    try:
        mp_ctx = mp.get_context("fork")
    except ValueError:  # platforms without fork
        mp_ctx = mp.get_context("spawn")
    shared_value = mp_ctx.Value("q", incumbent)
    init_args = (
        ctx.group.factors,
        ctx.objective,
        r,
        options.mode == "bnb",
        lb,
        perms,
        options.sym_depth,
        shared_value,
    )
    with mp_ctx.Pool(options.workers, initializer=_worker_init, initargs=init_args) as pool:
        results = pool.map(_worker_task, prefixes)
    nodes = sum(res[2] for res in results)
    found = [(res[0], res[1]) for res in results if res[1] is not None]
    if best is not None:
        found.append((incumbent, best))
    if not found:
        return incumbent, best, nodes
    minimum = min(v for v, _ in found)
    witness = min(w for v, w in found if v == minimum)
    return minimum, witness, nodes


# ---------------------------------------------------------------------------
# Public entry points


def search_minimum(
    group: GroupSpec, r: int, objective: str = "diff", options: SearchOptions | None = None
) -> SearchCertificate:
    """Exact minimum objective value over subsets of cardinality r, with witness.

    Witness tie-breaking: with one worker and no automorphism pruning, the
    witness is the first optimum in lexicographic subset order.  Automorphism
    pruning, seeding (signed objective), and multiple workers may select a
    different witness for the same minimum.
    """
    options = options or SearchOptions()
    if options.mode not in ("bnb", "exhaustive"):
        raise DomainError(f"unknown search mode {options.mode!r}")
    if objective not in OBJECTIVES:
        raise DomainError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
    n = group.order
    if not 1 <= r <= n:
        raise DomainError(f"cardinality r={r} out of range [1, {n}]")

    perms = None
    if options.automorphisms:
        if options.mode != "bnb":
            raise DomainError("automorphism pruning is a bnb-mode feature")
        p = group.elementary_abelian_prime()
        if p is None:
            raise DomainError(
                f"automorphism pruning needs an elementary abelian group, got {group}"
            )
        perms = linear_symmetry_perms(p, len(group.factors))

    started = time.perf_counter()
    ctx = _Context(group, objective)
    estimate = _node_estimate(n, r, ctx.normalized, len(perms) if perms else 0)
    if estimate > options.node_budget:
        raise NodeBudgetExceeded(estimate, options.node_budget)

    prune = options.mode == "bnb"
    lb = min_self_sumset_size(group, r) if ctx.normalized else 1

    incumbent = n + 1
    best: tuple[int, ...] | None = None
    if prune and objective == "signed2":
        for seed in _signed_seed_prefixes(group, r):
            value = measure(objective, GroupSubset.from_indices(group, seed))
            if value < incumbent:
                incumbent, best = value, seed

    if options.workers > 1 and r >= 3:
        minimum, witness_prefix, nodes = _run_parallel(ctx, r, options, perms, lb, incumbent, best)
    else:
        minimum, witness_prefix, nodes = _walk(
            ctx,
            r,
            prune=prune,
            lb=lb,
            perms=perms,
            sym_depth=options.sym_depth,
            incumbent=incumbent,
            best=best,
        )
    if witness_prefix is None:
        raise AssertionError("search terminated without a witness")
    witness = GroupSubset.from_indices(group, witness_prefix)
    check = measure(objective, witness)
    if check != minimum:
        raise AssertionError(
            f"certificate mismatch: witness measures {check}, search reported {minimum}"
        )
    millis = (time.perf_counter() - started) * 1000.0
    return SearchCertificate(
        group=group,
        r=r,
        objective=objective,
        minimum=minimum,
        witness=witness,
        nodes=nodes,
        mode=options.mode,
        millis=millis,
    )


# ---------------------------------------------------------------------------
# Conjecture verification


@dataclass
class ConjectureRecord:
    """One (group, cardinality) comparison of search against the formula."""

    group: GroupSpec
    r: int
    minimum: int
    conjectured: int
    witness: GroupSubset
    nodes: int
    millis: float

    @property
    def equal(self) -> bool:
        return self.minimum == self.conjectured

    def as_report_dict(self) -> dict:
        return {
            "group": str(self.group),
            "r": self.r,
            "objective": "diff",
            "minimum": self.minimum,
            "conjectured": self.conjectured,
            "equal": self.equal,
            "witness": [list(a) for a in self.witness.elements()],
            "nodes": self.nodes,
            "millis": round(self.millis, 3),
        }


@dataclass
class ConjectureReport:
    max_order: int
    records: list[ConjectureRecord] = field(default_factory=list)
    millis: float = 0.0

    @property
    def counterexamples(self) -> list[ConjectureRecord]:
        return [rec for rec in self.records if not rec.equal]

    @property
    def all_equal(self) -> bool:
        return not self.counterexamples


def verify_conjecture(
    max_order: int,
    options: SearchOptions | None = None,
    on_record: Callable[[ConjectureRecord], None] | None = None,
) -> ConjectureReport:
    """Compare exact min |A-A| against the predicted formula, exhaustively.

    Covers every isomorphism class of abelian groups of order <= max_order
    and every cardinality 1 <= r <= order.  Any record with equal=False is a
    counterexample to the predicted formula and is surfaced by the report.
    """
    if max_order < 1:
        raise DomainError(f"max order must be >= 1, got {max_order}")
    options = options or SearchOptions()
    started = time.perf_counter()
    report = ConjectureReport(max_order=max_order)
    for order in range(1, max_order + 1):
        for group in enumerate_abelian_groups(order):
            for r in range(1, order + 1):
                cert = search_minimum(group, r, "diff", options)
                record = ConjectureRecord(
                    group=group,
                    r=r,
                    minimum=cert.minimum,
                    conjectured=conjectured_min_difference_size(group, r),
                    witness=cert.witness,
                    nodes=cert.nodes,
                    millis=cert.millis,
                )
                report.records.append(record)
                if on_record is not None:
                    on_record(record)
    report.millis = (time.perf_counter() - started) * 1000.0
    return report
