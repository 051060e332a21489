from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centrep.cyclo import CONDUCTOR_CAP, CycNum, cyclotomic_polynomial, euler_phi
from centrep.errors import ConductorOverflow


def zeta(e, k=1):
    return CycNum.root_of_unity(e, k)


def test_cyclotomic_polynomials_small():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(2) == [1, 1]
    assert cyclotomic_polynomial(3) == [1, 1, 1]
    assert cyclotomic_polynomial(4) == [1, 0, 1]
    assert cyclotomic_polynomial(6) == [1, -1, 1]
    assert cyclotomic_polynomial(8) == [1, 0, 0, 0, 1]
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]
    # prime p: 1 + x + ... + x^(p-1)
    assert cyclotomic_polynomial(7) == [1] * 7


def test_rationals_collapse_to_conductor_one():
    v = zeta(5) + zeta(5, 2) + zeta(5, 3) + zeta(5, 4)
    assert v.is_rational()
    assert v.rational_value() == -1
    assert v == -1


def test_root_identities():
    assert zeta(2) == -1
    assert zeta(4) * zeta(4) == -1
    assert zeta(3) ** 3 == 1
    assert zeta(8, 2) == zeta(4)
    assert (zeta(6) - zeta(6, 5)) * (zeta(6) - zeta(6, 5)) == -3
    # golden-ratio flavored: (z5 + z5^4) satisfies x^2 + x - 1 = 0
    a = zeta(5) + zeta(5, 4)
    assert a * a + a - 1 == 0


def test_mixed_conductor_arithmetic():
    v = zeta(3) + zeta(4)
    assert v.e == 12
    assert v - zeta(4) == zeta(3)
    assert (zeta(3) * zeta(4)).root_of_unity_order(20) == 12


def test_conj_and_abs_square():
    v = zeta(8)
    assert v.conj() == zeta(8, 7)
    assert v.abs_square() == 1
    w = CycNum.from_rational(Fraction(3, 2)) + zeta(5)
    ww = w.abs_square()
    assert ww == w * w.conj()
    assert ww.conj() == ww  # |w|^2 is real
    s = zeta(4) - zeta(4, 3)  # 2i
    assert s.abs_square() == 4


def test_conductor_overflow():
    with pytest.raises(ConductorOverflow):
        CycNum(CONDUCTOR_CAP + 1, {1: Fraction(1)})
    with pytest.raises(ConductorOverflow):
        zeta(2520) * zeta(11)


def test_json_round_trip():
    for v in [CycNum.zero(), CycNum.from_rational(Fraction(-7, 3)),
              zeta(8) + 2 * zeta(8, 3), zeta(12) - Fraction(1, 2)]:
        blob = v.to_json()
        assert set(blob) == {"e", "coeffs"}
        assert len(blob["coeffs"]) == euler_phi(blob["e"])
        assert CycNum.from_json(blob) == v


def test_dense_embedding():
    v = zeta(3)
    assert v.dense(6) == (Fraction(-1), Fraction(1))  # z3 = z6 - 1
    with pytest.raises(ValueError):
        v.dense(4)


small_rational = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def cycnums(draw):
    e = draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12]))
    n = draw(st.integers(min_value=0, max_value=3))
    coeffs = {draw(st.integers(min_value=0, max_value=e - 1)): draw(small_rational)
              for _ in range(n)}
    return CycNum(e, {k: Fraction(v) for k, v in coeffs.items()})


@settings(max_examples=60, deadline=None)
@given(cycnums(), cycnums(), cycnums())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + CycNum.zero() == a
    assert a * CycNum.one() == a
    assert a - a == CycNum.zero()


@settings(max_examples=60, deadline=None)
@given(cycnums(), cycnums())
def test_conjugation_is_ring_automorphism(a, b):
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a


@settings(max_examples=40, deadline=None)
@given(cycnums())
def test_abs_square_real_and_conj_fixed(a):
    s = a.abs_square()
    assert s.conj() == s
    if a.is_rational():
        assert s.rational_value() == a.rational_value() ** 2
