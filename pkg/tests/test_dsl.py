"""Tests for the group-spec language: parsing, printing, evaluation."""
from __future__ import annotations

import pytest

from centrep.dsl import (
    Atom,
    NamedExample,
    Product,
    Quot,
    Sdp,
    Subgroup,
    build_group,
    designated_subgroup,
    parse_spec,
    parse_word_list,
    print_spec,
    subgroup_from_words,
)
from centrep.errors import SpecSyntaxError, UnknownSpec


def test_parse_atoms():
    assert parse_spec("C(4)") == Atom("C", (4,))
    assert parse_spec("D(8)") == Atom("D", (8,))
    assert parse_spec("Q(16)") == Atom("Q", (16,))
    assert parse_spec("EA(3, 2)") == Atom("EA", (3, 2))
    assert parse_spec("Heis(3)") == Atom("Heis", (3,))


def test_parse_product():
    spec = parse_spec("C(4) x C(2)")
    assert spec == Product((Atom("C", (4,)), Atom("C", (2,))))


def test_parse_triple_product_is_flat():
    spec = parse_spec("D(8) x D(8) x D(8)")
    assert isinstance(spec, Product)
    assert len(spec.factors) == 3


def test_parse_nested_product_keeps_grouping():
    spec = parse_spec("(C(2) x C(2)) x C(4)")
    assert isinstance(spec, Product)
    assert len(spec.factors) == 2
    assert isinstance(spec.factors[0], Product)


def test_parse_quotient_word_list():
    spec = parse_spec("quot(D(8) x D(8) x D(8), [z1*z2*z3])")
    assert isinstance(spec, Quot)
    assert spec.words == ((("z1", 1), ("z2", 1), ("z3", 1)),)


def test_parse_sdp_and_subgroup():
    spec = parse_spec("sdp(C(4), C(2), inversion)")
    assert spec == Sdp(Atom("C", (4,)), Atom("C", (2,)), "inversion")
    spec = parse_spec("subgroup(D(8), [r^2, s])")
    assert spec == Subgroup(Atom("D", (8,)), ((("r", 2),), (("s", 1),)))


def test_parse_named_examples():
    assert parse_spec("paper:ex-heis-pair") == NamedExample("ex-heis-pair")
    assert parse_spec("paper:ex-d8cube") == NamedExample("ex-d8cube")
    assert parse_spec("paper:ex-d8xc4") == NamedExample("ex-d8xc4")


def test_syntax_error_positions():
    with pytest.raises(SpecSyntaxError) as err:
        parse_spec("C(")
    assert err.value.line == 1
    assert err.value.col == 3
    with pytest.raises(SpecSyntaxError) as err:
        parse_spec("C(4) x")
    assert err.value.col == 7
    with pytest.raises(SpecSyntaxError):
        parse_spec("F(4)")
    with pytest.raises(SpecSyntaxError):
        parse_spec("paper:ex-unknown")
    with pytest.raises(SpecSyntaxError):
        parse_spec("C(4) C(2)")
    with pytest.raises(SpecSyntaxError):
        parse_spec("")


GOLDEN = [
    "C(4)",
    "C(4) x C(2)",
    "D(8) x D(8) x D(8)",
    "(C(2) x C(2)) x C(4)",
    "quot(D(8) x D(8) x D(8), [z1*z2*z3])",
    "sdp(C(4), C(2), inversion)",
    "sdp(C(3) x C(3), C(2), diagonal-inversion)",
    "subgroup(D(8), [r^2, s])",
    "paper:ex-heis-pair",
    "paper:ex-d8cube",
    "paper:ex-d8xc4",
    "quot(Q(8), [z])",
    "subgroup(C(12), [g^4])",
    "quot(C(4), [1])",
    "EA(3, 2)",
    "sdp(Heis(2), C(2), trivial)",
]


def test_parse_print_round_trip():
    for text in GOLDEN:
        spec = parse_spec(text)
        printed = print_spec(spec)
        assert parse_spec(printed) == spec
        assert print_spec(parse_spec(printed)) == printed


def test_print_is_canonical_on_golden():
    for text in GOLDEN:
        assert print_spec(parse_spec(text)) == text


def test_build_atoms_and_products():
    assert build_group(parse_spec("C(6)")).order == 6
    assert build_group(parse_spec("C(4) x C(2)")).order == 8
    assert build_group(parse_spec("S(4)")).order == 24
    assert build_group(parse_spec("A(4)")).order == 12
    assert build_group(parse_spec("EA(3, 2)")).order == 9


def test_build_quotient_uses_normal_closure():
    grp = build_group(parse_spec("quot(D(8) x D(8) x D(8), [z1*z2*z3])"))
    assert grp.order == 256
    # s1 is not central, so the closure of [s1] is bigger than <s1>
    grp = build_group(parse_spec("quot(D(8), [s])"))
    assert grp.order == 2
    grp = build_group(parse_spec("quot(C(4), [1])"))
    assert grp.order == 4


def test_build_sdp_inversion_gives_dihedral_shape():
    grp = build_group(parse_spec("sdp(C(4), C(2), inversion)"))
    assert grp.order == 8
    assert grp.center().order == 2
    assert not grp.subgroup_generated(range(grp.order)).is_abelian()


def test_build_sdp_unknown_action():
    with pytest.raises(UnknownSpec):
        build_group(parse_spec("sdp(C(4), C(2), mystery)"))


def test_build_subgroup_expression():
    grp = build_group(parse_spec("subgroup(D(8), [r])"))
    assert grp.order == 4
    grp = build_group(parse_spec("subgroup(C(12), [g^4])"))
    assert grp.order == 3
    grp = build_group(parse_spec("subgroup(C(12), [g^-1])"))
    assert grp.order == 12


def test_build_unknown_word_name():
    with pytest.raises(UnknownSpec):
        build_group(parse_spec("quot(C(4), [bogus])"))


def test_build_named_examples_and_designated_subgroups():
    for name, g_order, h_order in [
        ("paper:ex-heis-pair", 16, 4),
        ("paper:ex-d8xc4", 32, 8),
    ]:
        spec = parse_spec(name)
        assert build_group(spec).order == g_order
        h = designated_subgroup(spec)
        assert h is not None and h.order == h_order
    assert designated_subgroup(parse_spec("C(4)")) is None


def test_build_is_cached():
    assert build_group(parse_spec("C(4)")) is build_group(parse_spec("C(4)"))


def test_word_list_for_subgroup_flag():
    words = parse_word_list("[a^2, c]")
    assert words == ((("a", 2),), (("c", 1),))
    grp = build_group(parse_spec("paper:ex-d8xc4"))
    h = subgroup_from_words(grp, "[a^2, c]")
    assert h.order == 8
    assert h.mask == designated_subgroup(parse_spec("paper:ex-d8xc4")).mask
    with pytest.raises(SpecSyntaxError):
        parse_word_list("[a^2, c] trailing")


def test_marks_usable_in_words():
    grp = build_group(parse_spec("quot(Q(8), [z])"))
    assert grp.order == 4
