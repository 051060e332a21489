"""Catalog construction and the exhaustive theorem-verification scan."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import tomli

from .chartab import character_table, inner_product
from .dsl import build_group, designated_subgroup, parse_spec
from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    CapExceeded,
    CenterNotPrimePower,
    HypothesisViolated,
    MathInvariantError,
)
from .groups import FiniteGroup, SubgroupRef
from .reps import (
    _prime_power,
    cp_existence,
    faithful_extension_check,
    find_cp_constituents,
    gaschutz,
    kernel,
    minimizing_constituent_check,
    quasikernel_avoidance_check,
    quasikernel_intersection,
    restrict,
    second_center_constituent_check,
)

DEFAULT_ATOMS = tuple(
    [f"C({n})" for n in range(1, 17)]
    + [f"D({n})" for n in (4, 6, 8, 10, 12, 14, 16, 20, 24, 32)]
    + ["Q(8)", "Q(16)", "Q(32)"]
    + ["S(3)", "S(4)", "A(4)", "A(5)"]
    + ["EA(2, 2)", "EA(2, 3)", "EA(2, 4)", "EA(2, 5)",
       "EA(3, 2)", "EA(3, 3)", "EA(5, 2)", "EA(7, 2)"]
    + ["Heis(2)", "Heis(3)", "Heis(4)"]
)

DEFAULT_EXTRA = (
    "sdp(C(3) x C(3), C(2), diagonal-inversion)",
    "sdp(C(4) x C(4), C(2), diagonal-inversion)",
    "sdp(C(5) x C(5), C(4), diagonal-inversion)",
)

EXAMPLE_SPECS = ("paper:ex-heis-pair", "paper:ex-d8cube", "paper:ex-d8xc4")

ALL_CHECKS = frozenset({
    "table", "gaschutz", "quasikernel_intersection", "omega",
    "main", "frobenius", "minimizer", "second_center", "section", "avoidance",
})


@dataclass(frozen=True)
class ScanOptions:
    atoms: tuple[str, ...] = DEFAULT_ATOMS
    extra: tuple[str, ...] = DEFAULT_EXTRA
    include_examples: bool = True
    max_product_order: int = 64
    dedup_conjugates: bool = True
    subgroup_enum_cap: int = 64
    checks: frozenset[str] = ALL_CHECKS
    jobs: int = 1


def options_from_toml(path: str) -> ScanOptions:
    with open(path, "rb") as fh:
        data = tomli.load(fh)
    cat = data.get("catalog", {})
    sub = data.get("subgroups", {})
    run = data.get("run", {})
    checks = data.get("checks", {})
    opts = ScanOptions(
        atoms=tuple(cat.get("atoms", DEFAULT_ATOMS)),
        extra=tuple(cat.get("extra", DEFAULT_EXTRA)),
        include_examples=bool(cat.get("include_examples", True)),
        max_product_order=int(cat.get("max_product_order", 64)),
        dedup_conjugates=bool(sub.get("dedup_conjugates", True)),
        subgroup_enum_cap=int(sub.get("enumeration_order_cap", 64)),
        jobs=int(run.get("jobs", 1)),
    )
    if checks:
        enabled = {name for name in ALL_CHECKS if checks.get(name, True)}
        opts = replace(opts, checks=frozenset(enabled))
    return opts


@dataclass(frozen=True)
class CatalogEntry:
    spec_text: str
    group: FiniteGroup = field(compare=False)
    designated: SubgroupRef | None = field(compare=False)


def _try_build(spec_text: str) -> FiniteGroup | None:
    try:
        return build_group(parse_spec(spec_text))
    except (ActionNotAutomorphism, ActionNotHomomorphism):
        return None


def build_catalog(options: ScanOptions) -> list[CatalogEntry]:
    """Named constructions, their binary products within the order cap, and examples."""
    specs: list[str] = list(options.atoms)
    built = {a: build_group(parse_spec(a)) for a in options.atoms}
    sized = [(a, built[a].order) for a in options.atoms]
    for i, (a, na) in enumerate(sized):
        if na == 1:
            continue
        for b, nb in sized[i:]:
            if nb > 1 and na * nb <= options.max_product_order:
                specs.append(f"{a} x {b}")
    for a, na in sized:
        for b, nb in sized:
            if na == 1 or nb == 1 or na * nb > options.max_product_order:
                continue
            text = f"sdp({a}, {b}, inversion)"
            if _try_build(text) is not None:
                specs.append(text)
    specs.extend(options.extra)
    if options.include_examples:
        specs.extend(EXAMPLE_SPECS)
    entries = []
    seen = set()
    for text in specs:
        if text in seen:
            continue
        seen.add(text)
        spec = parse_spec(text)
        entries.append(CatalogEntry(text, build_group(spec), designated_subgroup(spec)))
    return entries


def _failure(entry_index: int, group: FiniteGroup, check: str, detail: str,
             subgroup: SubgroupRef | None = None, row: int | None = None,
             spec_text: str = "") -> dict:
    return {
        "group": spec_text,
        "group_order": group.order,
        "entry": entry_index,
        "subgroup": list(subgroup.elements) if subgroup is not None else None,
        "row": row,
        "check": check,
        "detail": detail,
    }


def _table_deterministic(group: FiniteGroup) -> bool:
    fresh = FiniteGroup(group.mul, labels=group.labels, gens=group.gens,
                        name=group.name, validate=False)
    return character_table(fresh).to_json() == character_table(group).to_json()


def run_group_checks(entry_index: int, spec_text: str, group: FiniteGroup,
                     options: ScanOptions) -> list[dict]:
    failures = []
    if group.order == 1:
        return failures

    def fail(check, detail):
        failures.append(_failure(entry_index, group, check, detail,
                                 spec_text=spec_text))

    if "table" in options.checks:
        try:
            character_table(group).verify()
        except MathInvariantError as err:
            fail("table", str(err))
        if not _table_deterministic(group):
            fail("table", "serialized table differs between two builds")
    if "gaschutz" in options.checks:
        record = gaschutz(group)
        if not record["agree"]:
            fail("gaschutz", f"criteria disagree: {record}")
    if "quasikernel_intersection" in options.checks:
        try:
            quasikernel_intersection(group)
        except MathInvariantError as err:
            fail("quasikernel_intersection", str(err))
    if "omega" in options.checks:
        try:
            cp_existence(group)
        except MathInvariantError as err:
            fail("omega", str(err))
    return failures


def _is_cyclic_subgroup(group: FiniteGroup, h: SubgroupRef) -> bool:
    return any(group.element_order(x) == h.order for x in h.elements)


def _avoidance_lists(group: FiniteGroup, hgroup: FiniteGroup, emb) -> list[list[int]]:
    """Maximal lists of central prime-power elements of H not central in G.

    One element per eligible prime: the maximal-order choice and the
    generator of the smallest subgroup outside the center, when different.
    """
    zmask = group.center().mask
    zh = hgroup.center()
    per_prime: dict[int, list[int]] = {}
    for x in zh.elements:
        pk = _prime_power(hgroup.element_order(x))
        if pk is None or (zmask >> emb(x)) & 1:
            continue
        per_prime.setdefault(pk[0], []).append(x)
    choices = []
    for p in sorted(per_prime):
        xs = per_prime[p]
        hi = max(xs, key=lambda x: (hgroup.element_order(x), -x))
        lo = min(xs, key=lambda x: (hgroup.element_order(x), x))
        choices.append([hi] if hi == lo else [lo, hi])
    lists: list[list[int]] = [[]]
    for opts in choices:
        lists = [cur + [x] for cur in lists for x in opts]
    return [l for l in lists if l]


def run_pair_checks(entry_index: int, spec_text: str, group: FiniteGroup,
                    h: SubgroupRef, options: ScanOptions) -> list[dict]:
    failures = []

    def fail(check, detail, row=None):
        failures.append(_failure(entry_index, group, check, detail,
                                 subgroup=h, row=row, spec_text=spec_text))

    if h.is_abelian() and not _is_cyclic_subgroup(group, h):
        return failures  # no faithful irreducible exists on H
    hgroup, emb = h.as_group()
    htable = character_table(hgroup)
    faithful = [(j, rho) for j, rho in enumerate(htable.rows)
                if kernel(rho).order == 1]
    if not faithful:
        return failures
    table = character_table(group)

    for j, rho in faithful:
        if "main" in options.checks:
            try:
                entry = find_cp_constituents(group, h, rho)
            except MathInvariantError as err:
                fail("main", str(err), row=j)
                continue
            if "frobenius" in options.checks:
                mults = {c["row"]: c["multiplicity"] for c in entry.constituents}
                rows = range(len(table.rows))
                if group.is_abelian():
                    # constituents came from restriction matching; cross-check
                    # the pairing on them plus one non-constituent row
                    extra = next((i for i in rows if i not in mults), None)
                    rows = sorted(mults) + ([extra] if extra is not None else [])
                for i in rows:
                    sigma = table.rows[i]
                    lhs = mults.get(i, 0)
                    rhs = inner_product(rho, restrict(sigma, h))
                    if not rhs.is_integer() or rhs.rational_value() != lhs:
                        fail("frobenius",
                             f"reciprocity fails against table row {i}", row=j)
        if "minimizer" in options.checks:
            try:
                if not minimizing_constituent_check(group, h, rho):
                    fail("minimizer", "a smallest-center-meet constituent is "
                                      "not center-preserving", row=j)
            except CenterNotPrimePower:
                pass
        if "second_center" in options.checks:
            try:
                if not second_center_constituent_check(group, h, rho):
                    fail("second_center", "no constituent meets the subgroup "
                                          "centrally with the same kernel", row=j)
            except HypothesisViolated:
                pass
        if "section" in options.checks:
            try:
                faithful_extension_check(group, h, rho)
            except CapExceeded:
                pass
            except MathInvariantError as err:
                fail("section", str(err), row=j)

    if "avoidance" in options.checks:
        for h_list in _avoidance_lists(group, hgroup, emb):
            try:
                if not quasikernel_avoidance_check(group, emb, h_list):
                    fail("avoidance",
                         f"no quasikernel avoids the listed elements {h_list}")
            except HypothesisViolated:
                pass
    return failures


def _subgroups_for(entry: CatalogEntry, options: ScanOptions) -> list[SubgroupRef]:
    group = entry.group
    if group.order > options.subgroup_enum_cap:
        return [entry.designated] if entry.designated is not None else []
    if group.is_abelian():
        # only cyclic subgroups carry a faithful irreducible; the rest are no-ops
        seen = {}
        for x in range(group.order):
            h = group.subgroup_generated([x])
            seen.setdefault(h.mask, h)
        subs = list(seen.values())
    elif options.dedup_conjugates:
        subs = group.subgroups_up_to_conjugacy()
    else:
        subs = group.all_subgroups()
    return sorted(subs, key=lambda s: (s.order, s.elements))


def _scan_entry(args) -> tuple[int, int, list[dict]]:
    entry_index, spec_text, options = args
    spec = parse_spec(spec_text)
    group = build_group(spec)
    entry = CatalogEntry(spec_text, group, designated_subgroup(spec))
    failures = run_group_checks(entry_index, spec_text, group, options)
    pairs = 0
    if group.order > 1:
        for h in _subgroups_for(entry, options):
            pairs += 1
            failures.extend(run_pair_checks(entry_index, spec_text, group, h, options))
    return entry_index, pairs, failures


def scan(catalog: list[CatalogEntry], options: ScanOptions) -> dict:
    """Run every enabled check over the catalog; failures are data, not errors."""
    items = [(i, entry.spec_text, options) for i, entry in enumerate(catalog)]
    if options.jobs > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            results = list(pool.map(_scan_entry, items))
    else:
        results = [_scan_entry(item) for item in items]
    results.sort(key=lambda r: r[0])
    failures = []
    pairs = 0
    for _, n, fails in results:
        pairs += n
        failures.extend(fails)
    failures.sort(key=lambda f: (f["group_order"], f["entry"],
                                 0 if f["subgroup"] is None else len(f["subgroup"]),
                                 f["subgroup"] or [], -1 if f["row"] is None else f["row"],
                                 f["check"]))
    return {
        "groups_checked": len(catalog),
        "pairs_checked": pairs,
        "failures": failures,
        "verdict": "pass" if not failures else "fail",
    }
