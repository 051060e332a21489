"""Character-level analysis: kernels, quasicenters, induction, and the center-preserving checks."""
from __future__ import annotations

from fractions import Fraction

from .chartab import Character, CharacterTable, character_table, inner_product
from .cyclo import CycNum
from .errors import (
    CapExceeded,
    CenterNotPrimePower,
    GroupMismatch,
    HypothesisViolated,
    MathInvariantError,
    NotACharacter,
    NotCharacterOfCenter,
    NotFaithful,
    NotIrreducible,
    SubgroupNotContained,
    TrivialGroup,
)
from .gmodules import from_normal_subgroup, is_section_isomorphic
from .groups import FiniteGroup, GroupHom, SubgroupRef


def _require_subgroup(group: FiniteGroup, h) -> SubgroupRef:
    if not isinstance(h, SubgroupRef) or h.parent is not group:
        raise SubgroupNotContained("expected a subgroup of the given group")
    return h


def is_irreducible(chi: Character) -> bool:
    """Exact norm test: a character is irreducible iff its self-pairing is 1."""
    memo = chi._memo
    if "irr" not in memo:
        ip = inner_product(chi, chi)
        memo["irr"] = ip.is_rational() and ip.rational_value() == 1
    return memo["irr"]


def kernel(chi: Character) -> SubgroupRef:
    """Elements where the class function takes its identity value; a normal subgroup."""
    memo = chi._memo
    if "kernel" not in memo:
        cc = chi.group.conjugacy_classes()
        ident = chi.values[0]
        elems = []
        for k, v in enumerate(chi.values):
            if v == ident:
                elems.extend(cc.classes[k])
        memo["kernel"] = SubgroupRef(chi.group, elems)
    return memo["kernel"]


def char_center(chi: Character) -> SubgroupRef:
    """Elements where the character value has full modulus; the preimage of the scalars."""
    memo = chi._memo
    if "center" not in memo:
        if not is_irreducible(chi):
            raise NotIrreducible("the modulus test locates the center only for irreducible characters")
        if chi.degree == 1 and memo.get("table_row"):
            # linear characters take root-of-unity values, all of modulus one
            memo["center"] = SubgroupRef(chi.group, range(chi.group.order),
                                         validate=False)
            return memo["center"]
        cc = chi.group.conjugacy_classes()
        bound = CycNum.from_rational(chi.degree ** 2)
        elems = []
        for k, v in enumerate(chi.values):
            if v.abs_square() == bound:
                elems.extend(cc.classes[k])
        memo["center"] = SubgroupRef(chi.group, elems)
    return memo["center"]


def is_center_preserving(chi: Character) -> bool:
    return char_center(chi).mask == chi.group.center().mask


def _meets_center_only(chi: Character, h: SubgroupRef) -> bool:
    """Whether char_center(chi) meets H only inside the ambient center."""
    stray = char_center(chi).mask & h.mask & ~chi.group.center().mask
    return stray == 0


def is_center_preserving_on(chi: Character, h: SubgroupRef) -> bool:
    """Whether chi has central kernel and its center meets H only inside the ambient center."""
    _require_subgroup(chi.group, h)
    if kernel(chi).mask & ~chi.group.center().mask:
        return False
    return _meets_center_only(chi, h)


# -- restriction and induction ---------------------------------------------

def restrict(chi: Character, h: SubgroupRef) -> Character:
    """The class function on H obtained by reading values along the embedding."""
    _require_subgroup(chi.group, h)
    memo = chi._memo
    key = ("restrict", h.mask)
    if key not in memo:
        hgroup, emb = h.as_group()
        vals = [chi.value_on(emb(r)) for r in hgroup.conjugacy_classes().reps]
        memo[key] = Character(hgroup, vals)
    return memo[key]


def _induction_counts(h: SubgroupRef) -> list[list[int]]:
    """counts[k][c] = number of x in G conjugating the k-th class rep into H-class c."""
    group = h.parent
    key = ("induce_counts", h.mask)
    if key in group._cache:
        return group._cache[key]
    hgroup, emb = h.as_group()
    pos = {emb(i): i for i in range(hgroup.order)}
    hclass_of = hgroup.conjugacy_classes().class_of
    cc = group.conjugacy_classes()
    mul, inv = group.mul, group.inv
    counts = [[0] * len(hgroup.conjugacy_classes().classes) for _ in cc.reps]
    for k, r in enumerate(cc.reps):
        row = counts[k]
        for x in range(group.order):
            j = pos.get(mul[mul[inv[x]][r]][x])
            if j is not None:
                row[hclass_of[j]] += 1
    group._cache[key] = counts
    return counts


def induce(rho: Character, h: SubgroupRef) -> Character:
    """The induced class function on H's parent group; exact, degree scales by the index."""
    group = h.parent
    hgroup, _ = h.as_group()
    if rho.group is not hgroup:
        raise GroupMismatch("the class function does not live on the given subgroup")
    counts = _induction_counts(h)
    scale = Fraction(1, h.order)
    vals = []
    for row in counts:
        total = CycNum.zero()
        for c, n in enumerate(row):
            if n:
                total = total + rho.values[c].scale(n)
        vals.append(total.scale(scale))
    return Character(group, vals)


# -- decomposition -----------------------------------------------------------

class Decomposition:
    """Multiplicities of table rows inside a class function."""

    __slots__ = ("table", "components")

    def __init__(self, table: CharacterTable, components: list[tuple[int, int]]) -> None:
        self.table = table
        self.components = list(components)

    def reassemble(self) -> Character:
        total = None
        for i, m in self.components:
            part = self.table.rows[i].scale(m)
            total = part if total is None else total + part
        if total is None:
            cc = self.table.group.conjugacy_classes()
            total = Character(self.table.group, [0] * len(cc.classes))
        return total

    def rows(self) -> list[int]:
        return [i for i, _ in self.components]

    def to_json(self) -> dict:
        return {"components": [[i, m] for i, m in self.components]}

    def __repr__(self) -> str:
        return f"Decomposition({self.components})"


def decompose(f: Character, table: CharacterTable) -> Decomposition:
    """Split a class function into table rows; exact, multiplicities must be counts."""
    if f.group is not table.group:
        raise GroupMismatch("class function and table live on different groups")
    comps = []
    for i, chi in enumerate(table.rows):
        m = inner_product(f, chi)
        if not m.is_integer():
            raise NotACharacter(f"pairing with row {i} is not a rational integer")
        mv = int(m.rational_value())
        if mv < 0:
            raise NotACharacter(f"pairing with row {i} is negative")
        if mv:
            comps.append((i, mv))
    dec = Decomposition(table, comps)
    if dec.reassemble() != f:
        raise MathInvariantError("decomposition does not reassemble to the input")
    return dec


# -- faithful irreducibles and single-class socles ---------------------------

def _prime_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n = p**k and k >= 1, else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (p, k) if n == 1 else None
        p += 1
    return (n, 1)


def gaschutz(group: FiniteGroup) -> dict:
    """Four equivalent faithful-irreducible tests, computed independently."""
    if group.order == 1:
        raise TrivialGroup("the trivial group is outside this criterion")
    table = character_table(group)
    faithful = any(kernel(chi).order == 1 for chi in table.rows)
    soc_one = group.is_generated_by_single_class(group.socle())[0]
    soca = group.socle_abelian()
    soca_one = group.is_generated_by_single_class(soca)[0]
    sgroup, emb = soca.as_group()
    normals_one = True
    for sub in sgroup.iter_subgroups():
        n = group.subgroup([emb(i) for i in sub.elements], validate=False)
        if n.is_normal() and not group.is_generated_by_single_class(n)[0]:
            normals_one = False
            break
    flags = (faithful, soc_one, soca_one, normals_one)
    return {
        "faithful_irreducible": faithful,
        "socle_single_class": soc_one,
        "abelian_socle_single_class": soca_one,
        "normals_in_abelian_socle_single_class": normals_one,
        "agree": all(flags) or not any(flags),
    }


# -- constituent reports ------------------------------------------------------

class CpEntry:
    """Constituents of one induced character, with faithfulness and center flags."""

    __slots__ = ("row", "constituents")

    def __init__(self, row: int, constituents: list[dict]) -> None:
        self.row = row
        self.constituents = constituents

    @property
    def has_center_preserving(self) -> bool:
        return any(c["center_preserving_on_subgroup"] for c in self.constituents)

    def to_json(self) -> dict:
        return {"row": self.row, "constituents": self.constituents}


class CpReport:
    """Per-subgroup record: every faithful row of H and its induced constituents."""

    __slots__ = ("group", "subgroup", "faithful_rows", "entries", "verdict")

    def __init__(self, group, subgroup, faithful_rows, entries) -> None:
        self.group = group
        self.subgroup = subgroup
        self.faithful_rows = faithful_rows
        self.entries = entries
        self.verdict = all(e.has_center_preserving for e in entries)

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "subgroup": list(self.subgroup.elements),
            "faithful_rows": self.faithful_rows,
            "entries": [e.to_json() for e in self.entries],
            "verdict": self.verdict,
        }


def _induced_components(group: FiniteGroup, h: SubgroupRef, rho: Character,
                        table: CharacterTable) -> list[tuple[int, int]]:
    """Constituent rows of Ind(rho) with multiplicities."""
    if group.is_abelian():
        # Frobenius reciprocity for linear characters: the induction of rho
        # is the multiplicity-one sum of the [G:H] rows restricting to rho.
        components = [(i, 1) for i, sigma in enumerate(table.rows)
                      if restrict(sigma, h) == rho]
        if len(components) != group.order // h.order:
            raise MathInvariantError("extension count disagrees with the subgroup index")
        return components
    return decompose(induce(rho, h), table).components


def _row_index(table: CharacterTable, chi: Character) -> int:
    for i, row in enumerate(table.rows):
        if row == chi:
            return i
    raise NotIrreducible("the character is not a row of its group's table")


def _cp_entry(group: FiniteGroup, h: SubgroupRef, rho: Character, enforce: bool) -> CpEntry:
    _require_subgroup(group, h)
    hgroup, _ = h.as_group()
    if rho.group is not hgroup:
        raise GroupMismatch("the character does not live on the given subgroup")
    if not is_irreducible(rho):
        raise NotIrreducible("induction analysis starts from an irreducible character")
    if kernel(rho).order != 1:
        raise NotFaithful("the character is not faithful on the subgroup")
    table = character_table(group)
    constituents = []
    for i, m in _induced_components(group, h, rho, table):
        sigma = table.rows[i]
        res_faithful = kernel(restrict(sigma, h)).order == 1
        if not res_faithful:
            raise MathInvariantError("a constituent of a faithful induction restricts non-faithfully")
        constituents.append({
            "row": i,
            "multiplicity": m,
            "faithful_on_subgroup": res_faithful,
            "center_preserving_on_subgroup": _meets_center_only(sigma, h),
        })
    entry = CpEntry(_row_index(character_table(hgroup), rho), constituents)
    if enforce and not entry.has_center_preserving:
        raise MathInvariantError("no constituent is center-preserving on the subgroup")
    return entry


def find_cp_constituents(group: FiniteGroup, h: SubgroupRef, rho: Character) -> CpEntry:
    """Constituents of the induction of a faithful rho; at least one must preserve the center."""
    return _cp_entry(group, h, rho, enforce=True)


def cp_report(group: FiniteGroup, h: SubgroupRef) -> CpReport:
    """Run find_cp_constituents over every faithful row of H's table."""
    _require_subgroup(group, h)
    hgroup, _ = h.as_group()
    htable = character_table(hgroup)
    faithful_rows = [i for i, chi in enumerate(htable.rows) if kernel(chi).order == 1]
    entries = [_cp_entry(group, h, htable.rows[i], enforce=False) for i in faithful_rows]
    return CpReport(group, h, faithful_rows, entries)


def minimizing_constituent_check(group: FiniteGroup, h: SubgroupRef, rho: Character) -> bool:
    """Whether every constituent with smallest center-meet is center-preserving on H."""
    _require_subgroup(group, h)
    hgroup, _ = h.as_group()
    if _prime_power(hgroup.center().order) is None:
        raise CenterNotPrimePower("the subgroup's center must have prime-power order > 1")
    entry = _cp_entry(group, h, rho, enforce=False)
    table = character_table(group)
    sizes = []
    for c in entry.constituents:
        meet = char_center(table.rows[c["row"]]).mask & h.mask
        sizes.append(bin(meet).count("1"))
    least = min(sizes)
    return all(c["center_preserving_on_subgroup"]
               for c, s in zip(entry.constituents, sizes) if s == least)


def second_center_constituent_check(group: FiniteGroup, h: SubgroupRef, rho: Character) -> bool:
    """Whether some constituent meets H centrally and restricts with the same kernel as rho."""
    _require_subgroup(group, h)
    hgroup, emb = h.as_group()
    if rho.group is not hgroup:
        raise GroupMismatch("the character does not live on the given subgroup")
    if not is_irreducible(rho):
        raise NotIrreducible("the hypothesis concerns an irreducible character")
    zmask = group.center().mask
    ker = kernel(rho)
    ker_in_g = 0
    for i in ker.elements:
        ker_in_g |= 1 << emb(i)
    if ker_in_g & ~zmask:
        raise HypothesisViolated("the character's kernel is not contained in the group's center")
    if group.second_center().mask & h.mask != zmask & h.mask:
        raise HypothesisViolated("the second center meets the subgroup beyond the center")
    table = character_table(group)
    for i, _ in _induced_components(group, h, rho, table):
        sigma = table.rows[i]
        if char_center(sigma).mask & h.mask & ~zmask:
            continue
        if kernel(restrict(sigma, h)).mask == ker.mask:
            return True
    return False


def _pullback(sigma: Character, iota: GroupHom, src_cc) -> Character:
    return Character(iota.source, [sigma.value_on(iota(r)) for r in src_cc.reps])


def _pullback_multiplicities(group: FiniteGroup, iota: GroupHom) -> list[list[int]]:
    """mults[i][j] = pairing of the i-th row of G pulled back along iota with the j-th row of H."""
    key = ("pullback_mults", tuple(iota.images))
    if key in group._cache:
        return group._cache[key]
    src = iota.source
    src_cc = src.conjugacy_classes()
    htable = character_table(src)
    table = character_table(group)
    mults = []
    for sigma in table.rows:
        pulled = _pullback(sigma, iota, src_cc)
        row = []
        for rho in htable.rows:
            m = inner_product(pulled, rho)
            if not m.is_integer() or m.rational_value() < 0:
                raise MathInvariantError("pullback pairing is not a multiplicity")
            row.append(int(m.rational_value()))
        mults.append(row)
    group._cache[key] = mults
    return mults


def quasikernel_avoidance_check(group: FiniteGroup, iota: GroupHom,
                                h_list: list[int]) -> bool:
    """Whether every faithful row of the source extends to a row of G whose center avoids the listed elements."""
    if iota.target is not group:
        raise GroupMismatch("the embedding does not land in the given group")
    if not iota.is_injective():
        raise HypothesisViolated("the embedding is not injective")
    src = iota.source
    zsrc = src.center()
    zmask = group.center().mask
    primes = set()
    for x in h_list:
        if not zsrc.contains(x):
            raise HypothesisViolated("a listed element is not central in the source group")
        pk = _prime_power(src.element_order(x))
        if pk is None:
            raise HypothesisViolated("a listed element does not have prime-power order > 1")
        if pk[0] in primes:
            raise HypothesisViolated("two listed elements share the same prime")
        primes.add(pk[0])
        if (zmask >> iota(x)) & 1:
            raise HypothesisViolated("a listed element lands in the group's center")
    htable = character_table(src)
    faithful_rows = [j for j, chi in enumerate(htable.rows) if kernel(chi).order == 1]
    if not faithful_rows:
        raise HypothesisViolated("the source group has no faithful irreducible character")
    table = character_table(group)
    mults = _pullback_multiplicities(group, iota)
    images = [iota(x) for x in h_list]
    for j in faithful_rows:
        found = False
        for i, sigma in enumerate(table.rows):
            if mults[i][j] == 0:
                continue
            cmask = char_center(sigma).mask
            if all(not (cmask >> g) & 1 for g in images):
                found = True
                break
        if not found:
            return False
    return True


SECTION_FAMILY_CAP = 12


def faithful_extension_check(group: FiniteGroup, h: SubgroupRef,
                             rho: Character) -> tuple[bool, bool]:
    """(hypothesis, conclusion): section-avoidance among minimal normals vs a faithful extension of rho."""
    _require_subgroup(group, h)
    hgroup, _ = h.as_group()
    if rho.group is not hgroup:
        raise GroupMismatch("the character does not live on the given subgroup")
    if not is_irreducible(rho):
        raise NotIrreducible("the check starts from an irreducible character")
    if kernel(rho).order != 1:
        raise NotFaithful("the character is not faithful on the subgroup")
    ident_mask = 1 << group.identity
    family = [v for v in group.minimal_normal_subgroups()
              if v.is_abelian() and v.mask & h.mask == ident_mask]
    if len(family) > SECTION_FAMILY_CAP:
        raise CapExceeded("too many abelian minimal normal subgroups to scan subsets")
    modules = [from_normal_subgroup(group, v) for v in family]
    hypothesis = True
    for pick in range(1, 1 << len(family)):
        chosen = [i for i in range(len(family)) if (pick >> i) & 1]
        ok = False
        for i in chosen:
            rest = group.subgroup([group.identity], validate=False)
            for j in chosen:
                if j != i:
                    rest = rest.join(family[j])
            if not is_section_isomorphic(modules[i], from_normal_subgroup(group, rest)):
                ok = True
                break
        if not ok:
            hypothesis = False
            break
    table = character_table(group)
    conclusion = False
    for sigma in table.rows:
        if kernel(sigma).order != 1:
            continue
        m = inner_product(restrict(sigma, h), rho)
        if m.is_rational() and m.rational_value() >= 1:
            conclusion = True
            break
    if hypothesis and not conclusion:
        raise MathInvariantError("section-avoidance held but no faithful extension exists")
    return hypothesis, conclusion


# -- commutator pairing of the second center ---------------------------------

def _check_central_character(zgroup: FiniteGroup, chi: Character) -> None:
    if chi.group is not zgroup:
        raise NotCharacterOfCenter("the character does not live on the group's center")
    if chi.value_on(zgroup.identity) != CycNum.one():
        raise NotCharacterOfCenter("the character is not 1 at the identity")
    # multiplicativity on a generating set extends to all pairs by induction
    # on word length, given the value 1 at the identity
    for a in zgroup.generating_set():
        va = chi.value_on(a)
        for b in range(zgroup.order):
            if chi.value_on(zgroup.mul[a][b]) != va * chi.value_on(b):
                raise NotCharacterOfCenter("the values are not multiplicative")


def omega_chi(group: FiniteGroup, chi: Character) -> tuple[list[tuple[int, Character]], bool]:
    """Pair second-center cosets with abelianization characters via chi of commutators."""
    z = group.center()
    zgroup, zemb = z.as_group()
    _check_central_character(zgroup, chi)
    zpos = {zemb(i): i for i in range(zgroup.order)}
    z2 = group.second_center()
    gab, proj = group.quotient(group.derived_subgroup())
    gab_reps = gab.conjugacy_classes().reps

    seen = 0
    mapping = []
    for t in z2.elements:
        if (seen >> t) & 1:
            continue
        for i in z.elements:
            seen |= 1 << group.mul[t][i]
        vals: list = [None] * gab.order
        for g in range(group.order):
            c = group.commutator(t, g)
            if c not in zpos:
                raise MathInvariantError("a second-center commutator left the center")
            v = chi.value_on(zpos[c])
            q = proj(g)
            if vals[q] is None:
                vals[q] = v
            elif vals[q] != v:
                raise MathInvariantError("pairing is not constant on commutator-quotient cosets")
        mapping.append((t, Character(gab, [vals[r] for r in gab_reps])))

    injective = True
    for i in range(len(mapping)):
        for j in range(i + 1, len(mapping)):
            if mapping[i][1] == mapping[j][1]:
                injective = False
                break
        if not injective:
            break

    ker_elems = [zemb(i) for i in range(zgroup.order) if chi.value_on(i) == CycNum.one()]
    n = group.subgroup(ker_elems, validate=False)
    q, pr = group.quotient(n)
    zq = q.center()
    pulled = 0
    for g in range(group.order):
        if zq.contains(pr(g)):
            pulled |= 1 << g
    quotient_cp = pulled == z.mask
    if quotient_cp != injective:
        raise MathInvariantError("pairing injectivity disagrees with the quotient's center test")
    return mapping, injective


def cp_existence(group: FiniteGroup) -> tuple[bool, int | None, Character | None]:
    """Find a center-preserving irreducible two ways: table scan and central-character search."""
    if group.order == 1:
        raise TrivialGroup("existence is asked for nontrivial groups")
    table = character_table(group)
    zmask = group.center().mask
    via_table = None
    for i, chi in enumerate(table.rows):
        if char_center(chi).mask == zmask:
            via_table = i
            break

    zgroup, zemb = group.center().as_group()
    ztable = character_table(zgroup)
    inj_flags = []
    for chi in ztable.rows:
        inj_flags.append(omega_chi(group, chi)[1])
    via_criterion = None
    for chi, inj in zip(ztable.rows, inj_flags):
        if not inj:
            continue
        ker_elems = [zemb(i) for i in range(zgroup.order)
                     if chi.value_on(i) == CycNum.one()]
        q, _ = group.quotient(group.subgroup(ker_elems, validate=False))
        if q.is_generated_by_single_class(q.socle_abelian())[0]:
            via_criterion = chi
            break

    exists = via_table is not None
    if exists != (via_criterion is not None):
        raise MathInvariantError("table scan and central-character criterion disagree")
    if group.is_nilpotent() and any(inj_flags) != exists:
        raise MathInvariantError("injective pairing alone must settle existence for nilpotent groups")
    return exists, via_table, via_criterion


def quasikernel_intersection(group: FiniteGroup) -> SubgroupRef:
    """Intersection of all rows' centers; must come out to the center of the group."""
    if group.order == 1:
        raise TrivialGroup("the intersection is asked for nontrivial groups")
    table = character_table(group)
    mask = (1 << group.order) - 1
    for chi in table.rows:
        mask &= char_center(chi).mask
    if mask != group.center().mask:
        raise MathInvariantError("rows' centers do not intersect in the center")
    return group.subgroup([g for g in range(group.order) if (mask >> g) & 1],
                          validate=False)
