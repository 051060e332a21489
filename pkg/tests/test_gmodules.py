"""Module-theory engine tests."""

from __future__ import annotations

import pytest

from centrep.constructions import (
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
    symmetric_group,
)
from centrep.errors import (
    GroupMismatch,
    NotAbelian,
    NotNormal,
    NotSemisimple,
    PreconditionViolated,
)
from centrep.gmodules import (
    GModule,
    complement_in_semisimple,
    dual_module,
    from_normal_subgroup,
    goursat_witness,
    is_cyclic_module,
    is_section_isomorphic,
    module_isomorphic,
    single_orbit_generates,
    sl2_natural_power_module,
    special_linear_group,
    submodule_generated,
)


def trivial_action_module(carrier, actor):
    ident = tuple(range(carrier.order))
    return GModule(carrier, actor, [ident] * actor.order)


def inversion_module(n, actor=None):
    """C_n acted on by C_2 with the nonidentity element inverting."""
    cn = cyclic_group(n)
    if actor is None:
        actor = cyclic_group(2)
    ident = tuple(range(n))
    invp = tuple(cn.inv[x] for x in range(n))
    return GModule(cn, actor, [ident, invp])


def test_from_normal_subgroup_center_and_rotation():
    d8 = dihedral_group(8)
    z = d8.center()
    m = from_normal_subgroup(d8, z)
    assert all(perm == tuple(range(2)) for perm in m.act)
    r = d8.subgroup_generated([d8.gens["r"]])
    mr = from_normal_subgroup(d8, r)
    s = d8.gens["s"]
    # s inverts the rotation subgroup
    pos = {g: i for i, g in enumerate(r.elements)}
    for i, g in enumerate(r.elements):
        assert mr.act[s][i] == pos[d8.inv[g]]
    s4 = symmetric_group(4)
    with pytest.raises(NotNormal):
        from_normal_subgroup(s4, s4.subgroup_generated([s4.gens["t"]]))
    with pytest.raises(NotAbelian):
        from_normal_subgroup(s4, s4.derived_subgroup())


def test_single_class_generation_matches_cyclic_module():
    for g in (dihedral_group(8), symmetric_group(4), dihedral_group(12)):
        for sub in g.all_subgroups():
            if sub.order == 1 or not sub.is_normal() or not sub.is_abelian():
                continue
            m = from_normal_subgroup(g, sub)
            assert g.is_generated_by_single_class(sub)[0] == is_cyclic_module(m)[0]


def test_sl2_module_cyclicity():
    v1 = sl2_natural_power_module(3, 1)
    v2 = sl2_natural_power_module(3, 2)
    v3 = sl2_natural_power_module(3, 3)
    ok1, gen1 = is_cyclic_module(v1)
    ok2, gen2 = is_cyclic_module(v2)
    ok3, gen3 = is_cyclic_module(v3)
    assert ok1 and gen1 is not None
    assert ok2 and gen2 is not None
    assert not ok3 and gen3 is None


def test_sl2_group_and_submodules():
    sl = special_linear_group(3)
    assert sl.order == 24
    v3 = sl2_natural_power_module(3, 3)
    # one-component vector generates a single plane
    e1 = next(i for i, lab in enumerate(v3.carrier.labels)
              if lab == "(1,0,0,0,0,0)")
    assert len(v3.submodule_elements([e1])) == 9
    diag = next(i for i, lab in enumerate(v3.carrier.labels)
                if lab == "(1,0,1,0,1,0)")
    assert len(v3.submodule_elements([diag])) == 9
    # submodules of V^3 match subspaces of the multiplicity space F3^3
    assert len(v3.all_submodules()) == 28


def test_submodule_generated_and_counts():
    c2 = cyclic_group(2)
    ea = elementary_abelian_group(2, 2)
    m = trivial_action_module(ea, c2)
    sub, emb = submodule_generated(m, [])
    assert sub.carrier.order == 1
    assert emb == [ea.identity]
    assert len(m.all_submodules()) == 5


def test_complement_in_semisimple():
    v2 = sl2_natural_power_module(3, 2)
    whole = tuple(range(v2.carrier.order))
    zero = (v2.carrier.identity,)
    assert complement_in_semisimple(v2, zero) == whole
    assert complement_in_semisimple(v2, whole) == zero
    first = next(s for s in v2.all_submodules()
                 if len(s) == 9 and all(v2.carrier.labels[x].endswith("0,0)") for x in s))
    t = complement_in_semisimple(v2, first)
    assert len(t) == 9
    assert set(t) & set(first) == {v2.carrier.identity}
    # C4 with inversion is not semisimple: C2 inside has no complement
    m = inversion_module(4)
    two = m.submodule_elements([2])
    assert len(two) == 2
    with pytest.raises(NotSemisimple):
        complement_in_semisimple(m, two)


def test_module_isomorphism_and_sections():
    c2 = cyclic_group(2)
    v = inversion_module(3, c2)
    u = trivial_action_module(cyclic_group(3), c2)
    # diag(inversion, identity) action on C3 x C3
    w_carrier, e1, e2 = direct_product(cyclic_group(3), cyclic_group(3))
    ident9 = tuple(range(9))
    mixed = [0] * 9
    for a in range(3):
        for b in range(3):
            src = w_carrier.mul[e1(a)][e2(b)]
            mixed[src] = w_carrier.mul[w_carrier.inv[e1(a)]][e2(b)]
    w = GModule(w_carrier, c2, [ident9, tuple(mixed)])
    assert not module_isomorphic(v, u)
    assert module_isomorphic(v, v)
    assert is_section_isomorphic(v, w)
    assert is_section_isomorphic(u, w)
    assert not is_section_isomorphic(v, trivial_action_module(cyclic_group(2), c2))
    with pytest.raises(GroupMismatch):
        module_isomorphic(v, trivial_action_module(cyclic_group(3), cyclic_group(3)))
    assert not module_isomorphic(v, trivial_action_module(cyclic_group(2), c2))


def test_dual_module():
    c2 = cyclic_group(2)
    m = trivial_action_module(cyclic_group(2), c2)
    d = dual_module(m)
    assert d.carrier.order == 2
    assert single_orbit_generates(d)
    ea = trivial_action_module(elementary_abelian_group(2, 2), c2)
    dea = dual_module(ea)
    assert dea.carrier.order == 4
    assert not single_orbit_generates(dea)
    assert not single_orbit_generates(ea)
    # duality law on a module with a genuine action
    rot = inversion_module(4)
    assert single_orbit_generates(rot) == single_orbit_generates(dual_module(rot))
    v = sl2_natural_power_module(3, 1)
    dv = dual_module(v)
    assert dv.carrier.order == 9
    assert single_orbit_generates(dv) == single_orbit_generates(v)


def test_goursat_witness():
    ea, e1, e2 = direct_product(cyclic_group(2), cyclic_group(2))
    h = ea.subgroup_generated([e1(1)])
    n = ea.subgroup_generated([e2(1)])
    diag = ea.subgroup_generated([ea.mul[e1(1)][e2(1)]])
    w = goursat_witness(ea, h, diag, n)
    assert w[ea.identity] == ea.identity
    assert w[ea.mul[e1(1)][e2(1)]] == e2(1)
    with pytest.raises(PreconditionViolated):
        goursat_witness(ea, h, n, n)  # M = N violates M meets N trivially
    with pytest.raises(PreconditionViolated):
        goursat_witness(ea, h, h, n)  # M = H violates M meets H trivially
    triv = ea.subgroup_generated([])
    w0 = goursat_witness(ea, h, triv, n)
    assert w0 == {ea.identity: ea.identity}
    # equal orders force an isomorphism
    vals = sorted(w.values())
    assert vals == sorted(set(vals))
