"""Command-line interface.

Subcommands: formula, construct, search, signed, verify-conjecture, lemmas.
Every number printed comes from a library call; the CLI does no arithmetic of
its own.  Exit codes: 0 success, 1 domain error (a named precondition
failed), 2 search refused by the node budget, 3 conjecture counterexample
found.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from typing import IO, Sequence

from . import constructions, formulas, lemmas, search
from .errors import DomainError, NodeBudgetExceeded
from .groups import GroupSpec
from .setops import GroupSubset

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_BUDGET_REFUSED = 2
EXIT_COUNTEREXAMPLE = 3

WORKERS_ENV_VAR = "DIFFSETS_WORKERS"


@dataclass(frozen=True)
class JobConfig:
    """Shared knobs parsed from the command line."""

    fmt: str = "text"
    out: str | None = None
    workers: int = 1
    node_budget: int = search.DEFAULT_NODE_BUDGET
    mode: str = "bnb"
    symmetry: str = "auto"

    def search_options(self, group: GroupSpec) -> search.SearchOptions:
        if self.symmetry == "on":
            automorphisms = True
        elif self.symmetry == "off":
            automorphisms = False
        else:  # auto: on exactly for the rank-2 elementary abelian jobs
            automorphisms = (
                group.elementary_abelian_prime() is not None and len(group.factors) == 2
            )
        return search.SearchOptions(
            mode=self.mode,
            automorphisms=automorphisms,
            node_budget=self.node_budget,
            workers=self.workers,
        )


class _Parser(argparse.ArgumentParser):
    """Argparse variant that reports usage problems as domain errors."""

    def error(self, message):  # noqa: D102 - argparse hook
        raise DomainError(message)


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise DomainError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diffsets", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, search_knobs: bool = False) -> None:
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", help="write output to this file instead of stdout")
        if search_knobs:
            p.add_argument("--mode", choices=("bnb", "exhaustive"), default="bnb")
            p.add_argument("--symmetry", choices=("auto", "on", "off"), default="auto")
            p.add_argument("--workers", type=int, default=_default_workers())
            p.add_argument("--node-budget", type=int, default=search.DEFAULT_NODE_BUDGET)

    formula = sub.add_parser("formula", help="closed-form minimum sizes")
    formula.add_argument(
        "kind",
        choices=(
            "sumset-min",
            "self-sumset-min",
            "difference-min",
            "difference-min-elementary",
            "signed-min-predicted",
        ),
    )
    formula.add_argument("--group")
    formula.add_argument("--r", type=int)
    formula.add_argument("--s", type=int)
    formula.add_argument("--p", type=int)
    formula.add_argument("--d", type=int)
    formula.add_argument("--c", type=int)
    formula.add_argument("--v", type=int)
    add_common(formula)

    construct = sub.add_parser("construct", help="explicit witness sets meeting the bounds")
    construct.add_argument("kind", choices=("coset-progression", "product", "lex-prefix"))
    construct.add_argument("--modulus", type=int)
    construct.add_argument("--divisor", type=int)
    construct.add_argument("--group")
    construct.add_argument("--r", type=int)
    construct.add_argument("--d1", type=int)
    construct.add_argument("--d2", type=int)
    construct.add_argument("--p", type=int)
    construct.add_argument("--d", type=int)
    construct.add_argument("--witness-out", help="also write the witness set as JSON")
    add_common(construct)

    search_cmd = sub.add_parser("search", help="exact minimum by exhaustive or pruned search")
    search_cmd.add_argument("--group", required=True)
    search_cmd.add_argument("--r", type=int, required=True)
    search_cmd.add_argument("--objective", choices=search.OBJECTIVES, default="diff")
    search_cmd.add_argument("--witness-out")
    add_common(search_cmd, search_knobs=True)

    signed = sub.add_parser("signed", help="exact minimum 2-fold signed sumset size")
    signed.add_argument("--group", required=True)
    signed.add_argument("--m", type=int, required=True)
    signed.add_argument("--witness-out")
    add_common(signed, search_knobs=True)

    verify = sub.add_parser(
        "verify-conjecture",
        help="compare exact difference minima against the predicted formula",
    )
    verify.add_argument("--max-order", type=int, required=True)
    add_common(verify, search_knobs=True)

    lem = sub.add_parser("lemmas", help="combinatorial inequality checkers and sweeps")
    lem.add_argument(
        "kind",
        choices=(
            "doubling",
            "capped-doubling",
            "hyperplane",
            "ferrers-containment",
            "sweep-doubling",
            "sweep-capped",
            "sweep-hyperplane",
        ),
    )
    lem.add_argument("--parts", help="comma-separated weakly decreasing positive integers")
    lem.add_argument("--profile", help="comma-separated integers (optional explicit profile)")
    lem.add_argument("--prime", type=int)
    lem.add_argument("--n", type=int)
    lem.add_argument("--d", type=int)
    lem.add_argument("--m", help="threshold multiplier(s), comma-separated")
    lem.add_argument("--set-file", help="witness JSON file with the subset to check")
    lem.add_argument("--indices", help="comma-separated linear indices of the subset")
    lem.add_argument("--max-len", type=int, default=6)
    lem.add_argument("--max-first", type=int, default=6)
    lem.add_argument("--samples", type=int, default=10_000)
    lem.add_argument("--seed", type=int, default=0)
    add_common(lem)

    return parser


# ---------------------------------------------------------------------------
# Output helpers


def _open_out(config: JobConfig) -> tuple[IO[str], bool]:
    if config.out:
        return open(config.out, "w", encoding="utf-8"), True
    return sys.stdout, False


def _csv_cell(value):
    if isinstance(value, (list, dict, bool)) or value is None:
        return json.dumps(value)
    return value


def _emit_records(records: list[dict], config: JobConfig, text_lines: list[str]) -> None:
    handle, owned = _open_out(config)
    try:
        if config.fmt == "json":
            for record in records:
                handle.write(json.dumps(record) + "\n")
        elif config.fmt == "csv":
            writer = csv.writer(handle)
            if records:
                keys = list(records[0].keys())
                writer.writerow(keys)
                for record in records:
                    writer.writerow([_csv_cell(record[k]) for k in keys])
        else:
            for line in text_lines:
                handle.write(line + "\n")
    finally:
        if owned:
            handle.close()


def _require(args: argparse.Namespace, names: Sequence[str], kind: str) -> None:
    missing = [name for name in names if getattr(args, name.replace("-", "_"), None) is None]
    if missing:
        flags = ", ".join("--" + name for name in missing)
        raise DomainError(f"{kind} requires {flags}")


def _config(args: argparse.Namespace) -> JobConfig:
    return JobConfig(
        fmt=getattr(args, "format", "text"),
        out=getattr(args, "out", None),
        workers=getattr(args, "workers", 1),
        node_budget=getattr(args, "node_budget", search.DEFAULT_NODE_BUDGET),
        mode=getattr(args, "mode", "bnb"),
        symmetry=getattr(args, "symmetry", "auto"),
    )


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_formula(args: argparse.Namespace) -> int:
    config = _config(args)
    kind = args.kind
    if kind == "sumset-min":
        _require(args, ("group", "r", "s"), kind)
        group = GroupSpec.parse(args.group)
        value = formulas.min_sumset_size(group, args.r, args.s)
        status = "theorem"
        record = {"operation": kind, "group": str(group), "r": args.r, "s": args.s}
    elif kind == "self-sumset-min":
        _require(args, ("group", "r"), kind)
        group = GroupSpec.parse(args.group)
        value = formulas.min_self_sumset_size(group, args.r)
        status = "theorem"
        record = {"operation": kind, "group": str(group), "r": args.r}
    elif kind == "difference-min":
        _require(args, ("group", "r"), kind)
        group = GroupSpec.parse(args.group)
        value = formulas.conjectured_min_difference_size(group, args.r)
        status = formulas.difference_size_status(group)
        record = {"operation": kind, "group": str(group), "r": args.r}
    elif kind == "difference-min-elementary":
        _require(args, ("p", "d", "r"), kind)
        value = formulas.min_difference_size_vector_space(args.p, args.d, args.r)
        status = formulas.STATUS_THEOREM_VECTOR_SPACE
        record = {"operation": kind, "p": args.p, "d": args.d, "r": args.r}
    else:  # signed-min-predicted
        _require(args, ("p", "c", "v"), kind)
        value = formulas.predicted_min_signed_sumset_size(args.p, args.c, args.v)
        status = formulas.STATUS_THEOREM_VECTOR_SPACE
        record = {"operation": kind, "p": args.p, "c": args.c, "v": args.v}
    record.update(value=value, status=status)
    label = formulas.STATUS_LABELS.get(status, status)
    params = ", ".join(f"{k}={v}" for k, v in record.items() if k not in ("operation", "value", "status"))
    _emit_records([record], config, [f"{kind}({params}) = {value} [{label}]"])
    return EXIT_OK


def _report_from_witness(report: constructions.WitnessReport) -> dict:
    record = {
        "construction": report.construction_name,
        "group": str(report.subset.group),
        "r": report.requested_size,
        "witness_size": len(report.subset),
        "achieved_size": report.achieved_size,
        "target_bound": report.target_bound,
        "bound_status": formulas.STATUS_UPPER_BOUND,
        "witness": [list(a) for a in report.subset.elements()],
    }
    if report.sum_size is not None:
        record["sum_size"] = report.sum_size
    return record


def _cmd_construct(args: argparse.Namespace) -> int:
    config = _config(args)
    kind = args.kind
    if kind == "coset-progression":
        _require(args, ("modulus", "r", "divisor"), kind)
        report = constructions.coset_progression(args.modulus, args.r, args.divisor)
    elif kind == "product":
        _require(args, ("group", "r", "d1", "d2"), kind)
        report = constructions.product_construction(
            GroupSpec.parse(args.group), args.r, args.d1, args.d2
        )
    else:  # lex-prefix
        _require(args, ("p", "d", "r"), kind)
        report = constructions.lex_prefix(args.p, args.d, args.r)
    if args.witness_out:
        with open(args.witness_out, "w", encoding="utf-8") as fh:
            fh.write(report.subset.to_witness_json() + "\n")
    record = _report_from_witness(report)
    lines = [
        f"{record['construction']} in group {record['group']} for r={record['r']}:",
        f"  witness size {record['witness_size']},"
        f" measured difference-set size {record['achieved_size']},"
        f" target bound {record['target_bound']} [{formulas.STATUS_LABELS[formulas.STATUS_UPPER_BOUND]}]",
    ]
    if "sum_size" in record:
        lines.append(f"  measured sumset size {record['sum_size']}")
    lines.append(f"  witness {report.subset}")
    _emit_records([record], config, lines)
    return EXIT_OK


def _reference_value(group: GroupSpec, r: int, objective: str) -> int | None:
    """The formula value a search result should be compared against, if any."""
    if objective == "diff":
        return formulas.conjectured_min_difference_size(group, r)
    if objective == "sum":
        return formulas.min_self_sumset_size(group, r)
    p = group.elementary_abelian_prime()
    if p is not None and len(group.factors) == 2 and p > 2:
        c, v = divmod(r - 1, p)
        v += 1
        try:
            return formulas.predicted_min_signed_sumset_size(p, c, v)
        except DomainError:
            return None
    return None


def _run_search_command(group: GroupSpec, r: int, objective: str, args) -> int:
    config = _config(args)
    cert = search.search_minimum(group, r, objective, config.search_options(group))
    record = cert.as_report_dict(_reference_value(group, r, objective))
    if getattr(args, "witness_out", None):
        with open(args.witness_out, "w", encoding="utf-8") as fh:
            fh.write(cert.witness.to_witness_json() + "\n")
    equal_note = ""
    if record["conjectured"] is not None:
        relation = "==" if record["equal"] else "!="
        equal_note = f" ({relation} predicted {record['conjectured']})"
    lines = [
        f"minimum {objective} size over |A|={r} subsets of {group}: "
        f"{cert.minimum}{equal_note}",
        f"  witness {cert.witness}",
        f"  mode {cert.mode}, nodes {cert.nodes}, millis {record['millis']}",
    ]
    _emit_records([record], config, lines)
    return EXIT_OK


def _cmd_search(args: argparse.Namespace) -> int:
    return _run_search_command(GroupSpec.parse(args.group), args.r, args.objective, args)


def _cmd_signed(args: argparse.Namespace) -> int:
    return _run_search_command(GroupSpec.parse(args.group), args.m, "signed2", args)


def _cmd_verify(args: argparse.Namespace) -> int:
    config = _config(args)
    handle, owned = _open_out(config)
    writer = None
    try:

        def stream(record: search.ConjectureRecord) -> None:
            nonlocal writer
            payload = record.as_report_dict()
            if config.fmt == "json":
                handle.write(json.dumps(payload) + "\n")
            elif config.fmt == "csv":
                if writer is None:
                    writer = csv.writer(handle)
                    writer.writerow(list(payload.keys()))
                writer.writerow(
                    [
                        json.dumps(v) if isinstance(v, (list, dict)) else v
                        for v in payload.values()
                    ]
                )
            else:
                flag = "ok" if payload["equal"] else "COUNTEREXAMPLE"
                handle.write(
                    f"group {payload['group']:>12}  r={payload['r']:<3} "
                    f"exact={payload['minimum']:<4} predicted={payload['conjectured']:<4} {flag}\n"
                )
            handle.flush()

        # Verification ranges over arbitrary groups, so automorphism pruning
        # (elementary abelian only) stays off regardless of --symmetry.
        options = search.SearchOptions(
            mode=config.mode, node_budget=config.node_budget, workers=config.workers
        )
        report = search.verify_conjecture(args.max_order, options, on_record=stream)
        summary = {
            "summary": {
                "max_order": report.max_order,
                "records": len(report.records),
                "counterexamples": [rec.as_report_dict() for rec in report.counterexamples],
                "all_equal": report.all_equal,
                "millis": round(report.millis, 3),
            }
        }
        if config.fmt == "json":
            handle.write(json.dumps(summary) + "\n")
        elif config.fmt == "text":
            verdict = "all equal" if report.all_equal else "COUNTEREXAMPLES FOUND"
            handle.write(
                f"checked {len(report.records)} (group, r) pairs up to order "
                f"{report.max_order}: {verdict}\n"
            )
            for rec in sorted(report.counterexamples, key=lambda rec: (rec.group.order, rec.r)):
                handle.write(
                    f"  counterexample: group {rec.group} r={rec.r} "
                    f"exact={rec.minimum} predicted={rec.conjectured} "
                    f"witness={rec.witness}\n"
                )
    finally:
        if owned:
            handle.close()
    return EXIT_OK if report.all_equal else EXIT_COUNTEREXAMPLE


def _lemma_subset(args: argparse.Namespace, group: GroupSpec) -> GroupSubset:
    if args.set_file:
        with open(args.set_file, encoding="utf-8") as fh:
            subset = GroupSubset.from_witness_json(fh.read())
        return subset
    if args.indices is not None:
        return GroupSubset.from_indices(group, _parse_int_list(args.indices, "--indices"))
    raise DomainError("hyperplane check requires --set-file or --indices")


def _cmd_lemmas(args: argparse.Namespace) -> int:
    config = _config(args)
    kind = args.kind
    if kind == "doubling":
        _require(args, ("parts",), kind)
        parts = _parse_int_list(args.parts, "--parts")
        result = lemmas.check_ferrers_doubling(parts)
        record = {
            "check": kind,
            "parts": parts,
            "status": result.status,
            "holds": result.holds,
            "slack": result.slack,
            "reason": result.reason,
            "profile": list(lemmas.sumset_profile(parts)),
        }
        if result.vacuous:
            text = f"doubling(parts={args.parts}): hypothesis violation ({result.reason})"
        else:
            text = (
                f"doubling(parts={args.parts}): holds={result.holds} slack={result.slack}"
            )
        _emit_records([record], config, [text])
    elif kind == "capped-doubling":
        _require(args, ("prime", "n", "parts"), kind)
        parts = _parse_int_list(args.parts, "--parts")
        profile = _parse_int_list(args.profile, "--profile") if args.profile else None
        result = lemmas.check_capped_doubling(args.prime, args.n, parts, profile)
        record = {
            "check": kind,
            "prime": args.prime,
            "n": args.n,
            "parts": parts,
            "profile": list(profile) if profile else list(lemmas.capped_profile(args.prime, parts)),
            "status": result.status,
            "holds": result.holds,
            "slack": result.slack,
            "reason": result.reason,
        }
        if result.vacuous:
            text = f"capped-doubling: hypothesis violation ({result.reason})"
        else:
            text = f"capped-doubling: holds={result.holds} slack={result.slack}"
        _emit_records([record], config, [text])
    elif kind == "hyperplane":
        _require(args, ("prime", "d", "m"), kind)
        m_values = _parse_int_list(args.m, "--m")
        group = GroupSpec((args.prime,) * args.d)
        subset = _lemma_subset(args, group)
        records, texts = [], []
        for m in m_values:
            result = lemmas.check_hyperplane_bound(args.prime, args.d, m, subset)
            records.append(
                {
                    "check": kind,
                    "prime": args.prime,
                    "d": args.d,
                    "m": m,
                    "subset_size": len(subset),
                    "hypothesis_holds": result.hypothesis_holds,
                    "conclusion_holds": result.conclusion_holds,
                    "implication_ok": result.implication_ok,
                }
            )
            texts.append(
                f"hyperplane(p={args.prime}, d={args.d}, m={m}, |S|={len(subset)}): "
                f"hypothesis={result.hypothesis_holds} conclusion={result.conclusion_holds} "
                f"implication_ok={result.implication_ok}"
            )
        _emit_records(records, config, texts)
    elif kind == "ferrers-containment":
        _require(args, ("parts",), kind)
        parts = _parse_int_list(args.parts, "--parts")
        contained = lemmas.ferrers_sumset_contained(parts)
        record = {"check": kind, "parts": parts, "contained": contained}
        _emit_records([record], config, [f"ferrers-containment(parts={args.parts}): {contained}"])
    elif kind == "sweep-doubling":
        summary = lemmas.sweep_ferrers_doubling(args.max_len, args.max_first)
        _emit_records(
            [{"sweep": kind, **summary.__dict__}], config, [f"sweep-doubling: {summary}"]
        )
    elif kind == "sweep-capped":
        _require(args, ("prime",), kind)
        summary = lemmas.sweep_capped_doubling(args.prime)
        _emit_records(
            [{"sweep": kind, "prime": args.prime, **summary.__dict__}],
            config,
            [f"sweep-capped(p={args.prime}): {summary}"],
        )
    else:  # sweep-hyperplane
        _require(args, ("prime", "d", "m"), kind)
        m_values = _parse_int_list(args.m, "--m")
        order = args.prime**args.d
        if order <= 16:
            summary = lemmas.sweep_hyperplane_exhaustive(args.prime, args.d, m_values)
            style = "exhaustive"
        else:
            if len(m_values) != 1:
                raise DomainError("random hyperplane sweep takes a single --m value")
            summary = lemmas.sweep_hyperplane_random(
                args.prime, args.d, m_values[0], samples=args.samples, seed=args.seed
            )
            style = "random"
        _emit_records(
            [{"sweep": kind, "style": style, **summary.__dict__}],
            config,
            [f"sweep-hyperplane[{style}]: {summary}"],
        )
    return EXIT_OK


_COMMANDS = {
    "formula": _cmd_formula,
    "construct": _cmd_construct,
    "search": _cmd_search,
    "signed": _cmd_signed,
    "verify-conjecture": _cmd_verify,
    "lemmas": _cmd_lemmas,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv, dispatch, and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except NodeBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET_REFUSED
    except DomainError as exc:
        print(f"error: precondition violated: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
