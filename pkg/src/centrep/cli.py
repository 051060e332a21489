"""Command-line interface: build groups from spec strings and run the analyses."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .chartab import character_table
from .cyclo import CycNum
from .cocycles import (
    cocycle_from_json,
    cocycle_order,
    extension_from_cocycle,
    has_c_faithful_irreducible,
    k_c,
    reduce_order,
    splits_over_subgroup,
    z_c,
)
from .dsl import build_group, parse_spec, subgroup_from_words
from .errors import CentrepError, MathInvariantError
from .reps import (
    cp_existence,
    cp_report,
    decompose,
    gaschutz,
    induce,
    is_center_preserving_on,
    omega_chi,
)
from .scan import ScanOptions, build_catalog, options_from_toml, scan


class UsageError(CentrepError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; 2 is reserved for counterexamples
    def error(self, message):
        raise UsageError(message)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _group_for(args):
    return build_group(parse_spec(args.spec))


def _subgroup_for(args, group):
    return subgroup_from_words(group, args.subgroup)


def _class_header(table) -> list[str]:
    group = table.group
    cc = table.classes
    reps = "  ".join(group.labels[r] for r in cc.reps)
    sizes = "  ".join(str(len(c)) for c in cc.classes)
    return [f"group {group.name}  order {group.order}  classes {len(cc)}",
            f"class reps:  {reps}",
            f"class sizes: {sizes}"]


def cmd_table(args) -> int:
    group = _group_for(args)
    table = character_table(group)
    lines = _class_header(table)
    for i, chi in enumerate(table.rows):
        vals = "  ".join(repr(v) for v in chi.values)
        lines.append(f"chi_{i} (deg {chi.degree}): {vals}")
    _emit(args, table.to_json(), lines)
    return 0


def cmd_socle(args) -> int:
    group = _group_for(args)
    minimals = group.minimal_normal_subgroups()
    soc, soca, soch = group.socle(), group.socle_abelian(), group.socle_nonabelian()
    payload = {
        "group": group.name,
        "order": group.order,
        "minimal_normal_subgroups": [list(n.elements) for n in minimals],
        "socle": list(soc.elements),
        "socle_abelian": list(soca.elements),
        "socle_nonabelian": list(soch.elements),
    }
    lines = [f"group {group.name}  order {group.order}",
             f"minimal normal subgroups: {len(minimals)}"]
    for n in minimals:
        kind = "abelian" if n.is_abelian() else "non-abelian"
        lines.append(f"  order {n.order} ({kind}): {list(n.elements)}")
    lines.append(f"socle order {soc.order}: {list(soc.elements)}")
    lines.append(f"abelian part order {soca.order}: {list(soca.elements)}")
    lines.append(f"non-abelian part order {soch.order}: {list(soch.elements)}")
    _emit(args, payload, lines)
    return 0


def cmd_gaschutz(args) -> int:
    group = _group_for(args)
    report = gaschutz(group)
    payload = {"group": group.name, "order": group.order, **report}
    lines = [f"group {group.name}  order {group.order}"]
    lines.extend(f"{key}: {value}" for key, value in report.items())
    _emit(args, payload, lines)
    return 0


def cmd_induce(args) -> int:
    group = _group_for(args)
    h = _subgroup_for(args, group)
    hgroup, _ = h.as_group()
    htable = character_table(hgroup)
    table = character_table(group)
    rows = []
    for j, rho in enumerate(htable.rows):
        dec = decompose(induce(rho, h), table)
        rows.append({"subgroup_row": j, "degree": rho.degree,
                     "constituents": [[i, m] for i, m in dec.components]})
    payload = {"group": group.name, "subgroup": list(h.elements),
               "subgroup_order": h.order, "inductions": rows}
    lines = [f"group {group.name}  order {group.order}",
             f"subgroup order {h.order}: {list(h.elements)}"]
    for row in rows:
        parts = " + ".join(f"{m}*chi_{i}" if m > 1 else f"chi_{i}"
                           for i, m in row["constituents"])
        lines.append(f"Ind rho_{row['subgroup_row']} (deg {row['degree']}) = {parts}")
    _emit(args, payload, lines)
    return 0


def cmd_cp_check(args) -> int:
    group = _group_for(args)
    h = _subgroup_for(args, group)
    report = cp_report(group, h)
    table = character_table(group)
    cp_rows = [i for i, chi in enumerate(table.rows)
               if is_center_preserving_on(chi, h)]
    payload = report.to_json()
    payload["center_preserving_rows_on_subgroup"] = cp_rows
    lines = [f"group {group.name}  order {group.order}",
             f"subgroup order {h.order}: {list(h.elements)}",
             f"irreducibles center-preserving on the subgroup: {cp_rows or 'none'}",
             f"faithful subgroup rows: {report.faithful_rows or 'none'}"]
    for entry in report.entries:
        flags = ["chi_%d%s" % (c["row"], "*" if c["center_preserving_on_subgroup"] else "")
                 for c in entry.constituents]
        lines.append(f"Ind rho_{entry.row}: {' '.join(flags)} "
                     f"(* = center-preserving on subgroup)")
    verdict = "pass" if report.verdict else "FAIL: an induced faithful row has no center-preserving constituent"
    lines.append(f"verdict: {verdict}")
    _emit(args, payload, lines)
    return 0 if report.verdict else 2


def cmd_omega(args) -> int:
    group = _group_for(args)
    zgroup, zemb = group.center().as_group()
    ztable = character_table(zgroup)
    chars = []
    for i, chi in enumerate(ztable.rows):
        _, injective = omega_chi(group, chi)
        kernel_elems = [zemb(j) for j in range(zgroup.order)
                        if chi.value_on(j) == CycNum.one()]
        chars.append({"central_row": i, "injective": injective,
                      "kernel_in_group": sorted(kernel_elems)})
    exists, row, _ = cp_existence(group)
    payload = {"group": group.name, "order": group.order,
               "center": list(group.center().elements),
               "characters": chars,
               "center_preserving_exists": exists, "witness_row": row}
    lines = [f"group {group.name}  order {group.order}",
             f"center: {list(group.center().elements)}"]
    for c in chars:
        lines.append(f"central char {c['central_row']}: pairing injective = "
                     f"{c['injective']} (kernel {c['kernel_in_group']})")
    lines.append(f"center-preserving irreducible exists: {exists}"
                 + (f" (row {row})" if exists else ""))
    _emit(args, payload, lines)
    return 0


def cmd_scan(args) -> int:
    options = options_from_toml(args.config) if args.config else ScanOptions()
    if args.jobs is not None:
        options = replace(options, jobs=args.jobs)
    if args.all_subgroups:
        options = replace(options, dedup_conjugates=False)
    catalog = build_catalog(options)
    report = scan(catalog, options)
    lines = [f"catalog groups: {report['groups_checked']}",
             f"subgroup pairs: {report['pairs_checked']}",
             f"failures: {len(report['failures'])}"]
    for f in report["failures"]:
        lines.append(f"  [{f['check']}] {f['group']} subgroup={f['subgroup']} "
                     f"row={f['row']}: {f['detail']}")
    lines.append(f"verdict: {report['verdict']}")
    _emit(args, report, lines)
    return 0 if report["verdict"] == "pass" else 2


def _load_cocycle(args):
    base = _group_for(args)
    with open(args.cocycle) as fh:
        obj = json.load(fh)
    return base, cocycle_from_json(base, obj)


def cmd_ext_build(args) -> int:
    _, z = _load_cocycle(args)
    ext = extension_from_cocycle(z, order=args.order)
    payload = ext.to_json()
    lines = [f"total group {ext.total.name}  order {ext.total.order}",
             f"kernel mu order {ext.mu.order}: {list(ext.mu.elements)}",
             f"base {ext.base.name}  order {ext.base.order}"]
    _emit(args, payload, lines)
    return 0


def cmd_ext_reduce(args) -> int:
    _, z = _load_cocycle(args)
    reduced = reduce_order(z)
    payload = reduced.to_json()
    lines = [f"input order {cocycle_order(z)}",
             f"reduced order {cocycle_order(reduced)}",
             json.dumps(payload)]
    _emit(args, payload, lines)
    return 0


def cmd_ext_zc(args) -> int:
    _, z = _load_cocycle(args)
    ext = extension_from_cocycle(z, order=args.order)
    zc, kc = z_c(ext), k_c(ext)
    payload = {"base": ext.base.name, "z_c": list(zc.elements),
               "k_c": list(kc.elements), "agree": zc.mask == kc.mask}
    lines = [f"z_c: {list(zc.elements)}", f"k_c: {list(kc.elements)}",
             f"agree: {zc.mask == kc.mask}"]
    _emit(args, payload, lines)
    return 0


def cmd_ext_cfaithful(args) -> int:
    _, z = _load_cocycle(args)
    ext = extension_from_cocycle(z, order=args.order)
    flag, row = has_c_faithful_irreducible(ext)
    payload = {"base": ext.base.name, "c_faithful_exists": flag, "witness_row": row}
    lines = [f"c-faithful irreducible exists: {flag}"
             + (f" (total-group row {row})" if flag else "")]
    _emit(args, payload, lines)
    return 0


def cmd_ext_split(args) -> int:
    base, z = _load_cocycle(args)
    ext = extension_from_cocycle(z, order=args.order)
    h = subgroup_from_words(base, args.subgroup)
    comp = splits_over_subgroup(ext, h)
    payload = {"base": ext.base.name, "subgroup": list(h.elements),
               "splits": comp is not None,
               "complement": list(comp.elements) if comp is not None else None}
    lines = [f"subgroup order {h.order}: {list(h.elements)}",
             f"splits: {comp is not None}"]
    if comp is not None:
        lines.append(f"complement in total group: {list(comp.elements)}")
    _emit(args, payload, lines)
    return 0


def _add_common(sub) -> None:
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--out", default=None, help="write output to a file")
    sub.add_argument("--seed", type=int, default=None,
                     help="reserved; every command is deterministic")


def _add_spec(sub) -> None:
    sub.add_argument("spec", help='group spec, e.g. "D(8) x C(4)"')


def build_parser() -> _Parser:
    parser = _Parser(prog="centrep",
                     description="center-preserving representation toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("table", help="character table of a group")
    _add_spec(p)
    _add_common(p)
    p.set_defaults(func=cmd_table)

    p = subs.add_parser("socle", help="minimal normal subgroups and socle parts")
    _add_spec(p)
    _add_common(p)
    p.set_defaults(func=cmd_socle)

    p = subs.add_parser("gaschutz", help="four equivalent faithful-irreducible tests")
    _add_spec(p)
    _add_common(p)
    p.set_defaults(func=cmd_gaschutz)

    p = subs.add_parser("induce", help="decompose inductions from a subgroup")
    _add_spec(p)
    p.add_argument("--subgroup", required=True,
                   help='generator words, e.g. "[a^2, c]"')
    _add_common(p)
    p.set_defaults(func=cmd_induce)

    p = subs.add_parser("cp-check",
                        help="center-preserving constituents over a subgroup")
    _add_spec(p)
    p.add_argument("--subgroup", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_cp_check)

    p = subs.add_parser("omega", help="central-character pairing criterion")
    _add_spec(p)
    _add_common(p)
    p.set_defaults(func=cmd_omega)

    p = subs.add_parser("scan", help="run the full catalog verification")
    p.add_argument("--config", default=None, help="TOML options file")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--all-subgroups", action="store_true",
                   help="do not dedup conjugate subgroups")
    _add_common(p)
    p.set_defaults(func=cmd_scan)

    ext = subs.add_parser("ext", help="central extensions from 2-cocycles")
    esubs = ext.add_subparsers(dest="ext_command", required=True)

    for name, func, wants_order in (
        ("build", cmd_ext_build, True),
        ("reduce", cmd_ext_reduce, False),
        ("zc", cmd_ext_zc, True),
        ("cfaithful", cmd_ext_cfaithful, True),
        ("split", cmd_ext_split, True),
    ):
        p = esubs.add_parser(name)
        _add_spec(p)
        p.add_argument("--cocycle", required=True, help="cocycle JSON file")
        if wants_order:
            p.add_argument("--order", type=int, default=None,
                           help="kernel order override (multiple of the cocycle order)")
        if name == "split":
            p.add_argument("--subgroup", required=True,
                           help="generator words in the base group")
        _add_common(p)
        p.set_defaults(func=func)

    return parser


def _report_error(args, err: Exception) -> None:
    fmt = getattr(args, "format", "text") if args is not None else "text"
    if fmt == "json":
        sys.stderr.write(json.dumps(
            {"error": type(err).__name__, "detail": str(err)}) + "\n")
    else:
        sys.stderr.write(f"error ({type(err).__name__}): {err}\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = None
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        _report_error(args, err)
        return 1
    except MathInvariantError as err:
        _report_error(args, err)
        return 2
    except (CentrepError, OSError, json.JSONDecodeError) as err:
        _report_error(args, err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
