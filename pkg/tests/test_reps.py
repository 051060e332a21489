"""Tests for character-level analysis: kernels, centers, induction, and the checks."""
from __future__ import annotations

from fractions import Fraction

import pytest

from centrep.chartab import Character, character_table, inner_product, regular_character, trivial_character
from centrep.constructions import (
    cyclic_group,
    dihedral_cube_pair,
    dihedral_group,
    dihedral_on_cyclic_pair,
    direct_product,
    elementary_abelian_group,
    generalized_quaternion_group,
    heisenberg_pair,
    symmetric_group,
)
from centrep.errors import (
    CenterNotPrimePower,
    HypothesisViolated,
    MathInvariantError,
    NotACharacter,
    NotCharacterOfCenter,
    NotFaithful,
    NotIrreducible,
    SubgroupNotContained,
    TrivialGroup,
)
from centrep.reps import (
    char_center,
    cp_existence,
    cp_report,
    decompose,
    faithful_extension_check,
    find_cp_constituents,
    gaschutz,
    induce,
    is_center_preserving,
    is_center_preserving_on,
    is_irreducible,
    kernel,
    minimizing_constituent_check,
    omega_chi,
    quasikernel_avoidance_check,
    quasikernel_intersection,
    restrict,
    second_center_constituent_check,
)


def faithful_rows(table):
    return [chi for chi in table.rows if kernel(chi).order == 1]


def whole(group):
    return group.subgroup(range(group.order), validate=False)


# -- kernels and centers -------------------------------------------------------

def test_kernel_and_center_basics():
    d8 = dihedral_group(8)
    table = character_table(d8)
    triv = trivial_character(d8)
    assert kernel(triv).order == 8
    assert char_center(triv).order == 8
    deg2 = [chi for chi in table.rows if chi.degree == 2][0]
    assert kernel(deg2).order == 1
    assert char_center(deg2).mask == d8.center().mask
    c4 = cyclic_group(4)
    chi = [r for r in character_table(c4).rows if kernel(r).order == 1][0]
    assert char_center(chi).order == 4


def test_kernel_inside_center_and_both_normal():
    for group in (dihedral_group(8), generalized_quaternion_group(8),
                  symmetric_group(4)):
        for chi in character_table(group).rows:
            k, z = kernel(chi), char_center(chi)
            assert k.mask & ~z.mask == 0
            assert k.is_normal() and z.is_normal()


def test_center_requires_irreducible():
    d8 = dihedral_group(8)
    with pytest.raises(NotIrreducible):
        char_center(regular_character(d8))
    assert kernel(regular_character(d8)).order == 1  # kernel is fine for any class function


def test_center_preserving_predicates():
    c12 = cyclic_group(12)
    for chi in character_table(c12).rows:
        assert is_center_preserving(chi)
    d8 = dihedral_group(8)
    table = character_table(d8)
    deg2 = [chi for chi in table.rows if chi.degree == 2][0]
    for h in d8.all_subgroups():
        assert is_center_preserving_on(deg2, h)  # faithful rows preserve on every H
    with pytest.raises(SubgroupNotContained):
        is_center_preserving_on(deg2, cyclic_group(2).subgroup([0]))


# -- restriction, induction, decomposition ------------------------------------

def test_induce_from_trivial_subgroup_is_regular():
    d8 = dihedral_group(8)
    triv_sub = d8.subgroup([d8.identity])
    sub_grp, _ = triv_sub.as_group()
    ind = induce(trivial_character(sub_grp), triv_sub)
    assert ind == regular_character(d8)


def test_induced_trivial_contains_trivial_once():
    d8 = dihedral_group(8)
    h = d8.subgroup_generated([d8.gens["s"]])
    hgrp, _ = h.as_group()
    ind = induce(trivial_character(hgrp), h)
    assert ind.degree == 4
    ip = inner_product(ind, trivial_character(d8))
    assert ip.is_integer() and ip.rational_value() == 1


def test_frobenius_reciprocity_exact():
    s4 = symmetric_group(4)
    gtab = character_table(s4)
    subs = [s4.subgroup_generated([s4.gens["t"]]),
            s4.subgroup_generated([s4.gens["c"]])]
    for h in subs:
        hgrp, _ = h.as_group()
        htab = character_table(hgrp)
        for rho in htab.rows:
            ind = induce(rho, h)
            for sigma in gtab.rows:
                lhs = inner_product(ind, sigma)
                rhs = inner_product(rho, restrict(sigma, h))
                assert lhs == rhs


def test_decompose_rows_and_regular():
    q8 = generalized_quaternion_group(8)
    table = character_table(q8)
    for i, chi in enumerate(table.rows):
        assert decompose(chi, table).components == [(i, 1)]
    reg = decompose(regular_character(q8), table)
    assert reg.components == [(i, chi.degree) for i, chi in enumerate(table.rows)]
    assert reg.reassemble() == regular_character(q8)


def test_decompose_rejects_non_characters():
    d8 = dihedral_group(8)
    table = character_table(d8)
    with pytest.raises(NotACharacter):
        decompose(table.rows[0].scale(Fraction(1, 2)), table)
    with pytest.raises(NotACharacter):
        decompose(table.rows[0] - table.rows[1], table)


# -- the order-16 pair ---------------------------------------------------------

def test_pair16_induction_shape():
    grp, h = heisenberg_pair()
    hgrp, _ = h.as_group()
    htab = character_table(hgrp)
    faith = faithful_rows(htab)
    assert len(faith) == 2  # two faithful linear characters of C4
    gtab = character_table(grp)
    for rho in faith:
        dec = decompose(induce(rho, h), gtab)
        assert [m for _, m in dec.components] == [1, 1, 1]
        degs = sorted(gtab.rows[i].degree for i, _ in dec.components)
        assert degs == [1, 1, 2]


def test_pair16_exactly_one_good_constituent():
    grp, h = heisenberg_pair()
    hgrp, _ = h.as_group()
    htab = character_table(hgrp)
    gtab = character_table(grp)
    for rho in faithful_rows(htab):
        entry = find_cp_constituents(grp, h, rho)
        both = [c for c in entry.constituents
                if c["faithful_on_subgroup"] and c["center_preserving_on_subgroup"]]
        assert len(both) == 1
        assert gtab.rows[both[0]["row"]].degree == 2
    report = cp_report(grp, h)
    assert report.verdict
    assert len(report.entries) == 2


def test_whole_group_entry_is_the_row_itself():
    q8 = generalized_quaternion_group(8)
    table = character_table(q8)
    h = whole(q8)
    for rho_g in faithful_rows(table):
        rho = restrict(rho_g, h)  # same values, carrier group object for H
        entry = find_cp_constituents(q8, h, rho)
        assert len(entry.constituents) == 1
        assert entry.constituents[0]["center_preserving_on_subgroup"]


def test_normal_subgroup_every_constituent_preserves():
    d8 = dihedral_group(8)
    h = d8.subgroup_generated([d8.gens["r"]])  # normal C4
    hgrp, _ = h.as_group()
    for rho in faithful_rows(character_table(hgrp)):
        entry = find_cp_constituents(d8, h, rho)
        assert all(c["center_preserving_on_subgroup"] for c in entry.constituents)


def test_find_cp_rejects_unfaithful():
    d8 = dihedral_group(8)
    h = d8.subgroup_generated([d8.gens["r"]])
    hgrp, _ = h.as_group()
    unfaithful = [chi for chi in character_table(hgrp).rows
                  if kernel(chi).order > 1][0]
    with pytest.raises(NotFaithful):
        find_cp_constituents(d8, h, unfaithful)


# -- gaschutz -------------------------------------------------------------------

def test_gaschutz_records():
    for group, expect in ((generalized_quaternion_group(8), True),
                          (dihedral_group(8), True),
                          (elementary_abelian_group(2, 2), False)):
        rec = gaschutz(group)
        assert rec["agree"]
        assert rec["faithful_irreducible"] is expect
        assert rec["socle_single_class"] is expect
        assert rec["abelian_socle_single_class"] is expect
        assert rec["normals_in_abelian_socle_single_class"] is expect
    with pytest.raises(TrivialGroup):
        gaschutz(cyclic_group(1))


# -- scanners -------------------------------------------------------------------

def test_minimizing_constituent_check():
    grp, h = heisenberg_pair()
    hgrp, _ = h.as_group()
    for rho in faithful_rows(character_table(hgrp)):
        assert minimizing_constituent_check(grp, h, rho)
    d8 = dihedral_group(8)
    table = character_table(d8)
    h8 = whole(d8)
    rho = restrict(faithful_rows(table)[0], h8)
    assert minimizing_constituent_check(d8, h8, rho)
    c6 = cyclic_group(6)
    h6 = whole(c6)
    rho6 = restrict(faithful_rows(character_table(c6))[0], h6)
    with pytest.raises(CenterNotPrimePower):
        minimizing_constituent_check(c6, h6, rho6)


def test_second_center_check_true_cases():
    s4 = symmetric_group(4)
    h = s4.subgroup_generated([s4.gens["t"]])
    hgrp, _ = h.as_group()
    sign = [chi for chi in character_table(hgrp).rows if kernel(chi).order == 1][0]
    assert second_center_constituent_check(s4, h, sign)
    ab, _, _ = direct_product(cyclic_group(4), cyclic_group(2))
    hab = ab.subgroup_generated([ab.gens["g1"]])
    habg, _ = hab.as_group()
    for rho in character_table(habg).rows:
        assert second_center_constituent_check(ab, hab, rho)


def test_second_center_check_hypothesis_failures():
    grp, h = dihedral_on_cyclic_pair()
    hgrp, _ = h.as_group()
    zmask = grp.center().mask
    _, emb = h.as_group()
    ok_rows = []
    for chi in character_table(hgrp).rows:
        ker_in_g = 0
        for i in kernel(chi).elements:
            ker_in_g |= 1 << emb(i)
        if ker_in_g & ~zmask == 0:
            ok_rows.append(chi)
    assert ok_rows  # H has a character with kernel inside Z(G)
    with pytest.raises(HypothesisViolated):
        second_center_constituent_check(grp, h, ok_rows[0])
    grp16, h16 = heisenberg_pair()
    h16g, _ = h16.as_group()
    rho = faithful_rows(character_table(h16g))[0]
    with pytest.raises(HypothesisViolated):
        second_center_constituent_check(grp16, h16, rho)  # Z2 meets H beyond Z


def test_quasikernel_avoidance_check():
    grp, h = heisenberg_pair()
    hgrp, emb = h.as_group()
    x_in_h = list(emb.images).index(grp.gens["x"])
    assert quasikernel_avoidance_check(grp, emb, [x_in_h])
    assert quasikernel_avoidance_check(grp, emb, [])
    d8 = dihedral_group(8)
    whole_emb = whole(d8).as_group()[1]
    with pytest.raises(HypothesisViolated):
        quasikernel_avoidance_check(d8, whole_emb, [d8.gens["r"]])  # lands centrally? no: not central in H first
    klein = d8.subgroup_generated([d8.marks["z"], d8.gens["s"]])
    kgrp, kemb = klein.as_group()
    with pytest.raises(HypothesisViolated):
        quasikernel_avoidance_check(d8, kemb, [])  # no faithful irreducible


def test_quasikernel_avoidance_prime_rules():
    grp, h = heisenberg_pair()
    hgrp, emb = h.as_group()
    x_in_h = list(emb.images).index(grp.gens["x"])
    x2_in_h = hgrp.power(x_in_h, 2)
    with pytest.raises(HypothesisViolated):
        quasikernel_avoidance_check(grp, emb, [x_in_h, x2_in_h])  # same prime twice


def test_faithful_extension_check():
    d8 = dihedral_group(8)
    hs = d8.subgroup_generated([d8.gens["s"]])
    hsg, _ = hs.as_group()
    rho = faithful_rows(character_table(hsg))[0]
    assert faithful_extension_check(d8, hs, rho) == (True, True)

    ea = elementary_abelian_group(3, 2)
    hfac = ea.subgroup_generated([ea.gens["e1"]])
    hfg, _ = hfac.as_group()
    rho3 = faithful_rows(character_table(hfg))[0]
    assert faithful_extension_check(ea, hfac, rho3) == (False, False)

    grp, h = heisenberg_pair()
    hgrp, _ = h.as_group()
    rho16 = faithful_rows(character_table(hgrp))[0]
    assert faithful_extension_check(grp, h, rho16) == (False, False)

    q8 = generalized_quaternion_group(8)
    hz = q8.subgroup_generated([q8.marks["z"]])
    hzg, _ = hz.as_group()
    rhoz = faithful_rows(character_table(hzg))[0]
    assert faithful_extension_check(q8, hz, rhoz) == (True, True)


# -- the commutator pairing ----------------------------------------------------

def test_omega_chi_on_d8():
    d8 = dihedral_group(8)
    zgrp, _ = d8.center().as_group()
    ztab = character_table(zgrp)
    flags = {}
    for chi in ztab.rows:
        mapping, inj = omega_chi(d8, chi)
        assert len(mapping) == 4  # Z2 = D8, so four cosets of Z
        flags[kernel(chi).order] = inj
    assert flags[1] is True   # faithful central character
    assert flags[2] is False  # trivial central character


def test_omega_chi_abelian_injective():
    c6 = cyclic_group(6)
    zgrp, _ = c6.center().as_group()
    for chi in character_table(zgrp).rows:
        mapping, inj = omega_chi(c6, chi)
        assert len(mapping) == 1 and inj


def test_omega_chi_rejects_bad_input():
    d8 = dihedral_group(8)
    c2 = cyclic_group(2)
    with pytest.raises(NotCharacterOfCenter):
        omega_chi(d8, trivial_character(c2))
    zgrp, _ = d8.center().as_group()
    with pytest.raises(NotCharacterOfCenter):
        omega_chi(d8, Character(zgrp, [1, 2]))


def test_cp_existence():
    q8 = generalized_quaternion_group(8)
    exists, via_table, via_criterion = cp_existence(q8)
    assert exists and via_table is not None and via_criterion is not None
    for ab in (cyclic_group(4), elementary_abelian_group(2, 2)):
        assert cp_existence(ab)[0]
    with pytest.raises(TrivialGroup):
        cp_existence(cyclic_group(1))


def test_quasikernel_intersection_matches_center():
    for group in (dihedral_group(8), symmetric_group(4), cyclic_group(6)):
        assert quasikernel_intersection(group).mask == group.center().mask
    with pytest.raises(TrivialGroup):
        quasikernel_intersection(cyclic_group(1))


def test_irreducibility_flag():
    d8 = dihedral_group(8)
    table = character_table(d8)
    assert all(is_irreducible(chi) for chi in table.rows)
    assert not is_irreducible(regular_character(d8))
