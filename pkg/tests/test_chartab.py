"""Character table engine tests."""

from __future__ import annotations

from fractions import Fraction

import pytest

from centrep import modp
from centrep.chartab import (
    Character,
    CharacterTable,
    character_table,
    inner_product,
    regular_character,
    trivial_character,
)
from centrep.constructions import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
    generalized_quaternion_group,
    heisenberg_group,
    symmetric_group,
)
from centrep.cyclo import CycNum
from centrep.errors import GroupMismatch, MathInvariantError, OrderCapExceeded


def test_modp_basics():
    p = 13
    rows, piv = modp.rref([[2, 4, 1], [1, 2, 0], [0, 0, 5]], p)
    assert piv == [0, 2]
    assert len(rows) == 2
    ns = modp.nullspace([[1, 2, 3], [2, 4, 6]], p)
    assert len(ns) == 2
    for v in ns:
        assert modp.mat_vec([[1, 2, 3]], v, p) == [0]
    # companion matrix of x^3 - 1 has charpoly x^3 - 1
    comp = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    assert modp.charpoly(comp, p) == [(-1) % p, 0, 0, 1]
    assert sorted(modp.poly_roots([(-1) % p, 0, 0, 1], p)) == [1, 3, 9]
    assert modp.sqrt_mod(4, 13) == 2
    assert modp.sqrt_mod(5, 13) is None
    w = modp.primitive_root(13)
    assert w == 2
    assert sorted(pow(w, k, 13) for k in range(12)) == list(range(1, 13))


def test_charpoly_matches_eigen_structure():
    p = 7
    mat = [[3, 1, 0], [0, 3, 0], [0, 0, 5]]
    poly = modp.charpoly(mat, p)
    # (x-3)^2 (x-5)
    assert modp.poly_eval(poly, 3, p) == 0
    assert modp.poly_eval(poly, 5, p) == 0
    assert len(poly) == 4 and poly[3] == 1


def test_trivial_group_table():
    g = cyclic_group(1)
    t = character_table(g)
    assert len(t.rows) == 1
    assert t.rows[0].values == [CycNum.one()]
    t.verify()


def test_cyclic_3_table_is_dual_group():
    g = cyclic_group(3)
    t = character_table(g)
    assert t.degrees == [1, 1, 1]
    z = CycNum.root_of_unity(3, 1)
    want = [
        [CycNum.one(), CycNum.one(), CycNum.one()],
        [CycNum.one(), z, z * z],
        [CycNum.one(), z * z, z],
    ]
    got = [r.values for r in t.rows]
    assert sorted(
        (tuple(v.dense(3) for v in row) for row in got)
    ) == sorted(tuple(v.dense(3) for v in row) for row in want)
    t.verify()


def test_dihedral_8_table():
    g = dihedral_group(8)
    t = character_table(g)
    assert t.degrees == [1, 1, 1, 1, 2]
    assert sum(d * d for d in t.degrees) == 8
    t.verify()
    # the degree-2 row vanishes off {1, z} and is -2 on z
    two = t.rows[4]
    z = g.power(g.gens["r"], 2)
    assert two.value_on(z) == CycNum.from_rational(-2)


def test_quaternion_and_s4_and_a5_tables():
    q = generalized_quaternion_group(8)
    tq = character_table(q)
    assert tq.degrees == [1, 1, 1, 1, 2]
    tq.verify()

    s4 = symmetric_group(4)
    t4 = character_table(s4)
    assert t4.degrees == [1, 1, 2, 3, 3]
    t4.verify()

    a5 = alternating_group(5)
    t5 = character_table(a5)
    assert t5.degrees == [1, 3, 3, 4, 5]
    t5.verify()


def test_heisenberg_3_table():
    g = heisenberg_group(3)
    t = character_table(g)
    assert t.degrees == [1] * 9 + [3, 3]
    t.verify()


def test_abelian_tables_are_linear():
    for g in (elementary_abelian_group(2, 3), cyclic_group(12),
              direct_product(cyclic_group(2), cyclic_group(4))[0]):
        t = character_table(g)
        assert t.degrees == [1] * g.order
        t.verify()


def test_inner_product_and_regular():
    g = dihedral_group(8)
    t = character_table(g)
    triv = trivial_character(g)
    assert inner_product(triv, triv) == CycNum.one()
    reg = regular_character(g)
    assert inner_product(reg, triv) == CycNum.one()
    assert inner_product(reg, reg) == CycNum.from_rational(g.order)
    for r in t.rows:
        # regular character contains each irreducible with multiplicity = degree
        assert inner_product(reg, r) == CycNum.from_rational(r.degree)
    h = cyclic_group(3)
    with pytest.raises(GroupMismatch):
        inner_product(triv, trivial_character(h))


def test_character_arithmetic():
    g = cyclic_group(4)
    t = character_table(g)
    s = t.rows[1] + t.rows[2]
    assert s.degree == 2
    assert (s - t.rows[1]) == t.rows[2]
    assert t.rows[1].scale(3).degree == 3
    assert inner_product(s, s) == CycNum.from_rational(2)


def test_table_json_round_trip_and_determinism():
    g = symmetric_group(3)
    t = character_table(g)
    blob = t.to_json()
    back = CharacterTable.from_json(blob)
    assert back.to_json() == blob
    import centrep.groups as groups

    g2 = groups.FiniteGroup.from_json(g.to_json())
    t2 = character_table(g2)
    assert t2.to_json()["rows"] == blob["rows"]


def test_order_cap():
    g = cyclic_group(6)
    with pytest.raises(OrderCapExceeded):
        character_table(g, cap=5)


def test_character_values_are_conjugation_stable():
    g = symmetric_group(4)
    t = character_table(g)
    for r in t.rows:
        for x in range(g.order):
            tx = g.conj(x, g.gens["t"])
            assert r.value_on(x) == r.value_on(tx)


def test_integrality_of_scaled_inner_products():
    g = dihedral_group(12)
    t = character_table(g)
    reg = regular_character(g)
    for r in t.rows:
        v = inner_product(reg, r).scale(g.order)
        assert v.is_integer()
