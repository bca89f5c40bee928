"""Command-line front end.

Commands: table, detect-l3, check-deformation, fingerprint,
validate-catalog.  Exit codes: 0 success, 2 validation or input failure,
3 enumeration budget exceeded.  Identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Optional, Sequence

from .catalog import (
    CatalogValidationError,
    build_group,
    group_keys,
    load_deformation_catalog,
    load_fixtures,
    load_group,
)
from .deform import ObstructionEntry, obstruction_report
from .groups import BudgetExceeded, GroupId, SubgroupHandle, fingerprint, identify
from .invariants import classification_table, detect_l3
from .linalg import MatC, mat_from_strings

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_VALIDATION):
        super().__init__(message)
        self.code = code


# -- subgroup specifications ---------------------------------------------------


_WORD_TOKEN = re.compile(r"\s*(g\d+|\^|\*|\(|\)|-?\d+)")


def _parse_word(expr: str, gens: Sequence[MatC]) -> MatC:
    """A product expression over the catalog generators: g1*g2^2, parens."""
    toks = []
    pos = 0
    while pos < len(expr):
        m = _WORD_TOKEN.match(expr, pos)
        if not m:
            if expr[pos:].strip():
                raise CliError(f"bad token in generator word: {expr[pos:]!r}")
            break
        toks.append(m.group(1))
        pos = m.end()
    state = {"i": 0}

    def peek():
        return toks[state["i"]] if state["i"] < len(toks) else None

    def take():
        t = peek()
        state["i"] += 1
        return t

    def atom() -> MatC:
        t = take()
        if t == "(":
            out = product()
            if take() != ")":
                raise CliError(f"unbalanced parentheses in word {expr!r}")
        elif t and t.startswith("g"):
            k = int(t[1:])
            if not 1 <= k <= len(gens):
                raise CliError(f"generator {t} out of range; group has {len(gens)} generators")
            out = gens[k - 1]
        else:
            raise CliError(f"unexpected token {t!r} in word {expr!r}")
        if peek() == "^":
            take()
            e = take()
            if e is None or not re.fullmatch(r"-?\d+", e):
                raise CliError(f"bad exponent in word {expr!r}")
            out = out.pow(int(e))
        return out

    def product() -> MatC:
        out = atom()
        while peek() == "*":
            take()
            out = out * atom()
        return out

    result = product()
    if peek() is not None:
        raise CliError(f"trailing tokens in word {expr!r}")
    return result


def parse_subgroup_spec(spec: str, gens: Sequence[MatC]) -> list[MatC]:
    """One --subgroup value: comma-separated generator words, or an inline
    matrix of the form mat:entry,...;entry,...  (rows split by ';')."""
    if spec.startswith("mat:"):
        rows = [cell.split(",") for cell in spec[4:].split(";")]
        return [mat_from_strings(rows)]
    return [_parse_word(part, gens) for part in spec.split(",") if part.strip()]


def _resolve_subgroups(group, definition, specs: Sequence[str]) -> list[SubgroupHandle]:
    from .groups import ProjElem

    out = []
    for spec in specs:
        mats = parse_subgroup_spec(spec, definition.generators)
        try:
            idxs = [group.index_of(ProjElem(m)) for m in mats]
        except KeyError:
            raise CliError(f"subgroup specification {spec!r} leaves the ambient group")
        out.append(group.subgroup(gens=idxs))
    return out


# -- formatting -----------------------------------------------------------------


def _gid_str(gid) -> str:
    return str(gid)


def _gid_json(gid):
    if isinstance(gid, GroupId):
        return [gid.order, gid.gid]
    return {"order": gid.order, "unidentified": True}


TABLE_COLUMNS = ["class", "(order,id)", "rank", "n2", "N3", "n3", "n31", "n32", "b2", "pi1"]


def _record_cells(r) -> list[str]:
    return [
        str(r.class_index),
        _gid_str(r.group_id),
        r.rank_str(),
        str(r.n2),
        str(r.n3_subgroups),
        str(r.n3),
        str(r.n31),
        str(r.n32),
        r.b2_str(),
        _gid_str(r.pi1),
    ]


def render_records(records, fmt: str, ambient: str, mode: str) -> str:
    if fmt == "structured":
        rows = []
        for r in records:
            rows.append(
                {
                    "class_index": r.class_index,
                    "order": r.order,
                    "group_id": _gid_json(r.group_id),
                    "rank": r.rank_resolution.rank,
                    "rank_candidates": list(r.rank_resolution.candidates),
                    "rank_method": r.rank_resolution.method,
                    "n2": r.n2,
                    "N3": r.n3_subgroups,
                    "n3": r.n3,
                    "n31": r.n31,
                    "n32": r.n32,
                    "b2": r.b2,
                    "b2_candidates": list(r.b2_candidates),
                    "pi1": _gid_json(r.pi1),
                    "pi1_trivial": r.pi1_trivial,
                }
            )
        return json.dumps({"ambient": ambient, "mode": mode, "rows": rows}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        for r in records:
            writer.writerow(_record_cells(r))
        return buf.getvalue()
    # aligned text table
    rows = [TABLE_COLUMNS] + [_record_cells(r) for r in records]
    widths = [max(len(row[i]) for row in rows) for i in range(len(TABLE_COLUMNS))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


# -- commands -------------------------------------------------------------------


def cmd_table(args) -> int:
    definition = load_group(args.group)
    if args.mode == "targeted":
        group = build_group(args.group, cache_dir=args.cache_dir, no_cache=args.no_cache)
        targeted = _resolve_subgroups(group, definition, args.subgroup or [])
        if not targeted:
            raise CliError("targeted mode requires at least one --subgroup")
    else:
        targeted = None
    records = classification_table(
        args.group,
        mode=args.mode,
        targeted=targeted,
        budget=args.budget,
        all_subgroups=args.all_subgroups,
        resolve_ranks=not args.no_rank_resolution,
        cache_dir=args.cache_dir,
        no_cache=args.no_cache,
    )
    sys.stdout.write(render_records(records, args.format, args.group, args.mode))
    return EXIT_OK


def cmd_detect_l3(args) -> int:
    group = build_group(args.group, cache_dir=args.cache_dir, no_cache=args.no_cache)
    l3 = detect_l3(group)
    out = [f"group {args.group}: {l3.count} codimension-2 order-3 subgroup(s)"]
    for k, gen in enumerate(l3.generators, start=1):
        out.append(f"subgroup {k}: generator element {gen}")
        for row in group.elements[gen].mat.to_strings():
            out.append("  " + ", ".join(row))
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_check_deformation(args) -> int:
    try:
        fixtures = load_fixtures(args.fixtures)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read fixtures: {exc}")
    entries = [ObstructionEntry(f.group_id, f.b2, f.ambient_order) for f in fixtures]
    report = obstruction_report(entries, load_deformation_catalog())
    if args.format == "structured":
        def enc(es):
            return [
                {"group_id": _gid_json(e.group_id), "b2": e.b2, "ambient_order": e.ambient_order}
                for e in es
            ]

        payload = {
            "fujiki_unmatched": enc(report.fujiki_unmatched),
            "hilbert_square_unmatched": enc(report.hilbert_square_unmatched),
            "kummer_unmatched": enc(report.kummer_unmatched),
            "new_candidates": enc(report.new_candidates),
        }
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        return EXIT_OK
    sections = [
        ("unmatched against Fujiki fourfolds", report.fujiki_unmatched),
        ("unmatched against Hilbert-square quotients", report.hilbert_square_unmatched),
        ("unmatched against Kummer-fourfold quotients", report.kummer_unmatched),
        ("new deformation-class candidates", report.new_candidates),
    ]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["section", "group_id", "b2", "ambient_order"])
        for name, entries_ in sections:
            for e in entries_:
                writer.writerow([name, _gid_str(e.group_id), e.b2, e.ambient_order])
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    out = []
    for name, entries_ in sections:
        out.append(f"{name} ({len(entries_)}):")
        for e in entries_:
            out.append(f"  {_gid_str(e.group_id)}  b2={e.b2}  ambient={e.ambient_order}")
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_fingerprint(args) -> int:
    group = build_group(args.group, cache_dir=args.cache_dir, no_cache=args.no_cache)
    fp = fingerprint(group.view)
    gid = identify(group.view)
    lines = [
        f"group {args.group}",
        f"order: {fp.order}",
        f"identification: {_gid_str(gid)}",
        f"order histogram: {fp.order_histogram}",
        f"conjugacy classes: {fp.class_count}",
        f"abelian invariants: {fp.abelian_invariants}",
        f"center order: {fp.center_order}",
        f"derived series sizes: {fp.derived_sizes}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_validate_catalog(args) -> int:
    keys = [args.group] if args.group else list(group_keys())
    failures = []
    for key in keys:
        definition = load_group(key)
        try:
            group = build_group(key, cache_dir=args.cache_dir, no_cache=args.no_cache)
        except CatalogValidationError as exc:
            failures.append(f"{key}: {exc}")
            continue
        gid = identify(group.view)
        if gid != definition.group_id:
            failures.append(f"{key}: identified as {gid}, declared {definition.group_id}")
            continue
        sys.stdout.write(f"{key}: order {group.n}, id {gid} ok\n")
    if failures:
        for f in failures:
            sys.stdout.write(f"FAIL {f}\n")
        return EXIT_VALIDATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanoterm",
        description="Classification of terminalizations of symplectic quotients "
        "of Fano varieties of lines on cubic fourfolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group_required=True):
        if group_required:
            p.add_argument("--group", required=True, choices=group_keys())
        p.add_argument("--cache-dir", default=None, help="group enumeration cache directory")
        p.add_argument("--no-cache", action="store_true", help="bypass the disk cache")

    p = sub.add_parser("table", help="classification table for one ambient group")
    common(p)
    p.add_argument("--mode", default="full-sweep",
                   choices=["full-sweep", "full-group-only", "targeted"])
    p.add_argument("--subgroup", action="append", default=[],
                   help="targeted subgroup: comma-separated generator words over "
                        "g1..gN, or mat:row;row;... (repeatable)")
    p.add_argument("--format", default="table", choices=["table", "csv", "structured"])
    p.add_argument("--budget", type=int, default=1000,
                   help="maximum ambient order for a full sweep")
    p.add_argument("--all-subgroups", action="store_true",
                   help="emit every class, not only the non-terminal ones")
    p.add_argument("--no-rank-resolution", action="store_true",
                   help="report raw rank candidate sets without resolving")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("detect-l3", help="codimension-2 order-3 subgroups of an action")
    common(p)
    p.set_defaults(func=cmd_detect_l3)

    p = sub.add_parser("check-deformation", help="numerical deformation obstruction report")
    p.add_argument("--fixtures", default=None, help="alternative fixture list file")
    p.add_argument("--format", default="table", choices=["table", "csv", "structured"])
    p.set_defaults(func=cmd_check_deformation)

    p = sub.add_parser("fingerprint", help="isomorphism invariants of an ambient group")
    common(p)
    p.set_defaults(func=cmd_fingerprint)

    p = sub.add_parser("validate-catalog", help="re-enumerate and check the shipped definitions")
    p.add_argument("--group", default=None, choices=group_keys())
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_validate_catalog)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}; raise --budget to force the sweep\n")
        return EXIT_BUDGET
    except CatalogValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except KeyError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
