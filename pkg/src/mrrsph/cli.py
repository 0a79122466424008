"""Command-line front end.

Exit codes: 0 success, 1 an internal consistency check failed, 2 the
input could not be parsed, 3 a size cap or search budget ran out.
"""

from __future__ import annotations

import argparse
import difflib
import json
import os
import sys
from typing import Sequence

from . import acceptance
from .dimcrit import search_infinite_witness, validate_witness
from .finiteoracle import COLUMNS, SizeCapError, count_row
from .rootsys import RootSystemError, parse_group
from .spherical import (
    KINDS,
    TABLE_KINDS,
    classify,
    find_complement,
    in_table,
    is_anti_open,
    lawther_node_condition,
    load_table,
    table_entries,
)
from .subsystems import (
    LabelError,
    MRRSubgroup,
    TypeLabel,
    UndecidedError,
    apply_recipe,
    bds_children,
    enumerate_generic_mrr,
    full_group,
    levi,
    levi_subsystems,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from e


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _group(spec: str):
    try:
        return parse_group(spec)
    except (RootSystemError, ValueError) as e:
        raise UsageError(str(e)) from e


def _suggest(rs, text: str) -> str:
    known = [str(m.label) for m in enumerate_generic_mrr(rs)]
    close = difflib.get_close_matches(text, known, n=3, cutoff=0.3)
    hint = f"; did you mean {', '.join(close)}?" if close else ""
    return f"{text!r} is not a generic MRR type of {rs.name}{hint} (known: {', '.join(known)})"


def _subgroup(rs, label: str | None, recipe: Sequence[str] | None) -> MRRSubgroup:
    if recipe:
        try:
            return apply_recipe(rs, recipe)
        except LabelError as e:
            raise UsageError(str(e)) from e
    if label is None:
        raise UsageError("give a type label or a --remove recipe")
    try:
        target = TypeLabel.parse(label)
    except LabelError as e:
        raise UsageError(f"{e}; {_suggest(rs, label)}") from e
    for m in enumerate_generic_mrr(rs):
        if m.label == target:
            return m
    raise UsageError(_suggest(rs, label))


def _levi(rs, label: str | None, nodes: str | None) -> tuple[tuple[int, ...], MRRSubgroup]:
    if nodes is not None:
        try:
            removed = tuple(sorted(int(x) for x in nodes.split(",") if x.strip()))
        except ValueError as e:
            raise UsageError(f"bad node list {nodes!r}") from e
        if any(not 1 <= k <= rs.rank for k in removed):
            raise UsageError(f"nodes must lie in 1..{rs.rank}")
        return removed, levi(rs, removed)
    if label is None:
        raise UsageError("give --levi LABEL or --levi-nodes LIST")
    try:
        target = TypeLabel.parse(label)
    except LabelError as e:
        raise UsageError(str(e)) from e
    for removed, L in levi_subsystems(rs).items():
        if L.label == target:
            return removed, L
    known = sorted({str(L.label) for L in levi_subsystems(rs).values()})
    raise UsageError(f"no standard Levi of type {label} in {rs.name} (Levi types: {', '.join(known)})")


def maximal_non_spherical(rs, report) -> list[str]:
    """Non-spherical types not contained in another non-spherical type,
    containment being descent in the Borel-de Siebenthal graph."""
    nodes = enumerate_generic_mrr(rs)
    children = {m.label: {c.label for c in bds_children(m)} for m in nodes}
    desc: dict[TypeLabel, set[TypeLabel]] = {}

    def descendants(lab):
        if lab not in desc:
            out = set()
            for c in children.get(lab, ()):
                out |= {c} | descendants(c)
            desc[lab] = out
        return desc[lab]

    non = report.non_spherical_labels()
    out = []
    for h in non:
        if not any(h in descendants(k) for k in non if k != h):
            out.append(str(h))
    return sorted(out)


# ----------------------------------------------------------------- commands


def cmd_classify(args) -> int:
    rs = _group(args.group)
    rep = classify(rs, args.rank_cap)
    if args.format == "json":
        data = rep.to_json()
        data["maximal_non_spherical"] = maximal_non_spherical(rs, rep) if not rep.partial else []
        data["schema_version"] = SCHEMA_VERSION
        sys.stdout.write(dump_json(data))
    elif args.format == "csv":
        sys.stdout.write("label,spherical,in_table,anti_open,lawther_node,complement\n")
        for r in rep.records:
            kind = r.witness.kind if r.witness else ""
            sys.stdout.write(f"{r.label},{r.spherical},{r.in_table},{r.anti_open},{r.lawther_node},{kind}\n")
    else:
        print(rep.to_text())
    if rep.partial:
        return EXIT_CAP
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_table(args) -> int:
    if args.group:
        rs = _group(args.group)
        entries = [e.to_json() for e in table_entries(rs.family, rs.rank)]
        if args.format == "json":
            sys.stdout.write(dump_json({"group": rs.name, "entries": entries, "schema_version": SCHEMA_VERSION}))
        else:
            for e in entries:
                flag = " (degenerate)" if e["degenerate"] else ""
                print(f"{e['label']:<16} <= {rs.name}   row {e['row']} {e['params']}{flag}")
        return EXIT_OK
    table = load_table()
    if args.format == "json":
        sys.stdout.write(dump_json(table))
    else:
        for row in table["rows"]:
            comps = "".join(f"{c['family']}_{c['rank']}" for c in row["components"])
            torus = f"T_{row['torus']}" if row["torus"] else ""
            print(f"{row['id']:<10} {comps}{torus} <= {row['ambient']['family']}_{row['ambient']['rank']}")
    return EXIT_OK


def cmd_complement(args) -> int:
    rs = _group(args.group)
    H = _subgroup(rs, args.h, args.remove)
    kinds = tuple(k.strip() for k in args.kinds.split(",")) if args.kinds else TABLE_KINDS
    bad = [k for k in kinds if k not in KINDS]
    if bad:
        raise UsageError(f"unknown kinds {bad}; choose from {', '.join(KINDS)}")
    w = find_complement(rs, H, kinds)
    data = {
        "group": rs.name,
        "subgroup": H.to_json(),
        "kinds": list(kinds),
        "anti_open": is_anti_open(rs, H),
        "lawther_node": lawther_node_condition(rs, H),
        "in_table": in_table(rs, H.label),
        "witness": w.to_json() if w else None,
        "absence_certified": w is None,
        "schema_version": SCHEMA_VERSION,
    }
    if args.format == "json":
        sys.stdout.write(dump_json(data))
    else:
        print(f"{H.label} <= {rs.name}: in table {data['in_table']}, anti-open {data['anti_open']}")
        if w:
            print(f"{w.kind} complement generated by {[list(rs.roots[i]) for i in w.generating_pair]}")
        else:
            print("no complement of the requested kinds (every generating pair examined)")
    return EXIT_OK


def cmd_dimcrit(args) -> int:
    rs = _group(args.group)
    X = _subgroup(rs, args.x, args.x_remove)
    removed, L = _levi(rs, args.levi, args.levi_nodes)
    res = search_infinite_witness(rs, X, L, args.budget)
    ok = validate_witness(rs, X, L, res)
    data = res.to_json()
    data.update({"group": rs.name, "x": str(X.label), "levi": str(L.label), "levi_removed": list(removed), "schema_version": SCHEMA_VERSION})
    if args.format == "json":
        sys.stdout.write(dump_json(data))
    else:
        line = f"X={X.label}, L={L.label} in {rs.name}: {res.status}"
        if res.triggered:
            line += f" with phi_s of type {res.report.phi_s_type}, value {res.report.value}"
        print(line)
    if not ok:
        return EXIT_FAIL
    return EXIT_CAP if res.status == "undecided" else EXIT_OK


def _q_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise UsageError(f"bad q list {text!r}") from e


def cmd_finite(args) -> int:
    qs = _q_list(args.q)
    rows = []
    try:
        for q in qs:
            rows.append(count_row(args.type, q, args.x, args.p, with_grouped=not args.no_grouped))
    except SizeCapError as e:
        print(f"size cap: {e}", file=sys.stderr)
        code = EXIT_CAP
    except ValueError as e:
        raise UsageError(str(e)) from e
    else:
        code = EXIT_OK
    if args.format == "json":
        sys.stdout.write(dump_json({"columns": list(COLUMNS), "rows": [r.to_json() for r in rows], "partial": code == EXIT_CAP, "schema_version": SCHEMA_VERSION}))
    elif args.format == "csv":
        from .finiteoracle.counts import rows_to_csv

        sys.stdout.write(rows_to_csv(rows))
    else:
        for r in rows:
            print(f"{r.type} q={r.q} X={r.X} P={r.P}: direct {r.direct}, charsum {r.charsum}, grouped {r.grouped}, bounds [{r.lower}, {r.upper}]")
    if code != EXIT_OK:
        return code
    return EXIT_OK if all(r.agree and r.bounds_hold for r in rows) else EXIT_FAIL


def cmd_verify_all(args) -> int:
    wanted = [int(x) for x in args.only.split(",")] if args.only else range(1, len(acceptance.CRITERIA) + 1)
    verdicts = []
    for k in wanted:
        v = acceptance.run(k)
        verdicts.append(v)
        if args.format != "json":
            print(v.line(), flush=True)
            for d in v.details[1:]:
                print(f"    {d}")
    if args.format == "json":
        sys.stdout.write(dump_json({"criteria": [{"number": v.number, "title": v.title, "passed": v.passed, "details": v.details} for v in verdicts]}))
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FAIL


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mrrsph", description="Spherical maximal-rank subgroups and double-coset counts.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json", "csv")):
        sp.add_argument("--format", choices=formats, default="text")

    c = sub.add_parser("classify", help="classify every generic MRR subgroup of a group")
    c.add_argument("--group", required=True, help="e.g. G2, F4, B5")
    c.add_argument("--rank-cap", type=int, default=_env_int("MRRSPH_RANK_CAP", 8))
    common(c)
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("table", help="show the table of spherical subgroups")
    t.add_argument("--group", help="instantiate the rows for this group")
    common(t, ("text", "json"))
    t.set_defaults(func=cmd_table)

    k = sub.add_parser("complement", help="search for an A2/B2/G2 complement")
    k.add_argument("--group", required=True)
    k.add_argument("--h", help="subgroup type label, e.g. A2+A2~")
    k.add_argument("--remove", nargs="+", metavar="STEP", help="node-removal recipe, e.g. ext:1 node:3")
    k.add_argument("--kinds", help=f"comma list from {','.join(KINDS)}")
    common(k, ("text", "json"))
    k.set_defaults(func=cmd_complement)

    d = sub.add_parser("dimcrit", help="search for a Dimension Criterion witness")
    d.add_argument("--group", required=True)
    d.add_argument("--x", help="type label of X")
    d.add_argument("--x-remove", nargs="+", metavar="STEP", help="node-removal recipe for X")
    d.add_argument("--levi", help="type label of a standard Levi")
    d.add_argument("--levi-nodes", help="removed simple nodes, e.g. 1,3")
    d.add_argument("--budget", type=int, default=_env_int("MRRSPH_BUDGET", 10**5))
    common(d, ("text", "json"))
    d.set_defaults(func=cmd_dimcrit)

    f = sub.add_parser("finite", help="brute-force orbit counts over small fields")
    f.add_argument("--type", required=True, choices=("A2", "B2"))
    f.add_argument("--q", default=os.environ.get("MRRSPH_QLIST", "2,3"))
    f.add_argument("--x", default="T", choices=("T", "B", "L1", "L2", "A1T1", "G"))
    f.add_argument("--p", default="B", choices=("B", "P1", "P2"))
    f.add_argument("--no-grouped", action="store_true", help="skip the regrouped sum")
    common(f)
    f.set_defaults(func=cmd_finite)

    v = sub.add_parser("verify-all", help="run the acceptance suite")
    v.add_argument("--only", help="comma list of criterion numbers")
    common(v, ("text", "json"))
    v.set_defaults(func=cmd_verify_all)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UndecidedError as e:
        print(f"undecided: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
