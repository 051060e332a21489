"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Values are stored as rational coefficient vectors on the power basis
1, z, ..., z^(phi(e)-1) of Q(zeta_e), reduced modulo the e-th cyclotomic
polynomial.  Rationals always normalize to conductor 1, so `is_rational`
and zero tests are structural.  Mixed-conductor arithmetic embeds both
operands into the lcm conductor; lcm conductors above 2520 are refused.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ConductorOverflow

CONDUCTOR_CAP = 2520

_phi_cache: dict[int, int] = {}
_cyclo_poly_cache: dict[int, list[int]] = {}
_reduction_cache: dict[int, list[dict[int, int]]] = {}


def euler_phi(n: int) -> int:
    if n in _phi_cache:
        return _phi_cache[n]
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    _phi_cache[n] = result
    return result


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials, den monic; coeff index = degree
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, d in enumerate(den):
                num[i - dd + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def cyclotomic_polynomial(e: int) -> list[int]:
    """Integer coefficients of Phi_e, index = degree, monic."""
    if e in _cyclo_poly_cache:
        return _cyclo_poly_cache[e]
    # x^e - 1 divided by the product of Phi_d over proper divisors d of e
    poly = [0] * (e + 1)
    poly[0] = -1
    poly[e] = 1
    for d in range(1, e):
        if e % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_polynomial(d))
    _cyclo_poly_cache[e] = poly
    return poly


def _reduction_rows(e: int) -> list[dict[int, int]]:
    """Row k expresses zeta_e^k on the power basis of degree phi(e)."""
    if e in _reduction_cache:
        return _reduction_cache[e]
    deg = euler_phi(e)
    phi = cyclotomic_polynomial(e)
    top = {i: -phi[i] for i in range(deg) if phi[i]}  # z^deg = -(lower part)
    rows: list[dict[int, int]] = []
    for k in range(e):
        if k < deg:
            rows.append({k: 1})
            continue
        prev = rows[k - 1]
        nxt: dict[int, int] = {}
        for i, c in prev.items():
            if i + 1 == deg:
                for j, t in top.items():
                    nxt[j] = nxt.get(j, 0) + c * t
            else:
                nxt[i + 1] = nxt.get(i + 1, 0) + c
        rows.append({i: c for i, c in nxt.items() if c})
    _reduction_cache[e] = rows
    return rows


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class CycNum:
    """An element of Q(zeta_e), immutable."""

    __slots__ = ("e", "c")

    def __init__(self, e: int, coeffs: dict[int, Fraction], _raw: bool = False):
        if _raw:
            self.e = e
            self.c = coeffs
            return
        if e < 1:
            raise ValueError("conductor must be >= 1")
        if e > CONDUCTOR_CAP:
            raise ConductorOverflow(f"conductor {e} exceeds cap {CONDUCTOR_CAP}")
        deg = euler_phi(e)
        rows = _reduction_rows(e)
        acc: dict[int, Fraction] = {}
        for k, v in coeffs.items():
            v = Fraction(v)
            if not v:
                continue
            for i, m in rows[k % e].items():
                acc[i] = acc.get(i, Fraction(0)) + v * m
        acc = {i: v for i, v in acc.items() if v}
        if not acc:
            self.e = 1
            self.c = {}
        elif set(acc) <= {0}:
            self.e = 1
            self.c = acc
        else:
            assert max(acc) < deg
            self.e = e
            self.c = acc

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rational(r) -> CycNum:
        r = Fraction(r)
        if not r:
            return CycNum(1, {}, _raw=True)
        return CycNum(1, {0: r}, _raw=True)

    @staticmethod
    def zero() -> CycNum:
        return CycNum(1, {}, _raw=True)

    @staticmethod
    def one() -> CycNum:
        return CycNum.from_rational(1)

    @staticmethod
    def root_of_unity(e: int, k: int = 1) -> CycNum:
        """zeta_e^k."""
        if e < 1:
            raise ValueError("order must be >= 1")
        k %= e
        g = gcd(k, e) if k else e
        e2, k2 = e // g, k // g
        return CycNum(e2, {k2: Fraction(1)})

    # -- embedding -----------------------------------------------------------

    def _embed(self, e: int) -> dict[int, Fraction]:
        """Coefficients of self as a conductor-e dict (exponent basis, raw)."""
        if e == self.e:
            return self.c
        step = e // self.e
        return {k * step: v for k, v in self.c.items()}

    def _common(self, other: CycNum) -> tuple[int, dict[int, Fraction], dict[int, Fraction]]:
        e = _lcm(self.e, other.e)
        if e > CONDUCTOR_CAP:
            raise ConductorOverflow(f"conductor {e} exceeds cap {CONDUCTOR_CAP}")
        return e, self._embed(e), other._embed(e)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> CycNum:
        other = _coerce(other)
        e, a, b = self._common(other)
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, Fraction(0)) + v
        return CycNum(e, out)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(self.e, {k: -v for k, v in self.c.items()}, _raw=True)

    def __sub__(self, other) -> CycNum:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> CycNum:
        return _coerce(other) + (-self)

    def __mul__(self, other) -> CycNum:
        other = _coerce(other)
        if self.e == 1 or other.e == 1:
            # scalar fast path
            if self.e == 1:
                s = self.c.get(0, Fraction(0))
                big, scal = other, s
            else:
                s = other.c.get(0, Fraction(0))
                big, scal = self, s
            if not scal:
                return CycNum.zero()
            return CycNum(big.e, {k: v * scal for k, v in big.c.items()}, _raw=True)
        e, a, b = self._common(other)
        out: dict[int, Fraction] = {}
        for k1, v1 in a.items():
            for k2, v2 in b.items():
                k = (k1 + k2) % e
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return CycNum(e, out)

    __rmul__ = __mul__

    def scale(self, r) -> CycNum:
        r = Fraction(r)
        if not r:
            return CycNum.zero()
        return CycNum(self.e, {k: v * r for k, v in self.c.items()}, _raw=True)

    def __pow__(self, n: int) -> CycNum:
        if n < 0:
            raise ValueError("negative powers unsupported")
        out = CycNum.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def conj(self) -> CycNum:
        """Complex conjugation, zeta_e -> zeta_e^(e-1)."""
        if self.e == 1:
            return self
        rows = _reduction_rows(self.e)
        acc: dict[int, Fraction] = {}
        for k, v in self.c.items():
            for i, m in rows[(-k) % self.e].items():
                acc[i] = acc.get(i, Fraction(0)) + v * m
        return CycNum(self.e, acc)

    def abs_square(self) -> CycNum:
        return self * self.conj()

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.c

    def is_rational(self) -> bool:
        return self.e == 1

    def rational_value(self) -> Fraction:
        if self.e != 1:
            raise ValueError("not a rational value")
        return self.c.get(0, Fraction(0))

    def is_integer(self) -> bool:
        return self.e == 1 and self.c.get(0, Fraction(0)).denominator == 1

    def root_of_unity_order(self, max_order: int) -> int | None:
        """Multiplicative order if self is a root of unity of order <= max_order."""
        acc = self
        for k in range(1, max_order + 1):
            if acc == _ONE:
                return k
            acc = acc * self
        return None

    def as_root_of(self, e: int) -> int | None:
        """The exponent k with self = zeta_e^k, if self is such a root."""
        if e < 1 or e > CONDUCTOR_CAP or e % self.e:
            return None
        v = self if e == self.e else CycNum(e, self._embed(e))
        return _root_exponents(e).get((v.e, tuple(sorted(v.c.items()))))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        if self.e == other.e:
            return self.c == other.c
        e, a, b = self._common(other)
        if a == b:
            return True
        return (self - other).is_zero()

    __hash__ = None  # mixed-conductor equality makes a sound hash awkward

    # -- serialization -------------------------------------------------------

    def dense(self, e: int | None = None) -> tuple[Fraction, ...]:
        """Coefficient tuple of length phi(e) on the conductor-e basis."""
        if e is None:
            e = self.e
        if e % self.e:
            raise ValueError(f"conductor {self.e} does not divide {e}")
        deg = euler_phi(e)
        rows = _reduction_rows(e)
        out = [Fraction(0)] * deg
        for k, v in self._embed(e).items():
            for i, m in rows[k].items():
                out[i] += v * m
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "coeffs": [[str(v.numerator), str(v.denominator)] for v in self.dense()],
        }

    @staticmethod
    def from_json(obj: dict) -> CycNum:
        e = int(obj["e"])
        coeffs = {
            i: Fraction(int(num), int(den))
            for i, (num, den) in enumerate(obj["coeffs"])
        }
        return CycNum(e, coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in sorted(self.c):
            v = self.c[k]
            if k == 0:
                parts.append(str(v))
            else:
                mono = f"z{self.e}" if k == 1 else f"z{self.e}^{k}"
                if v == 1:
                    parts.append(mono)
                elif v == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{v}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" + {p}" if not p.startswith("-") else f" - {p[1:]}"
        return out


def _coerce(x) -> CycNum:
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")


_ONE = CycNum.from_rational(1)

_root_exponent_cache: dict[int, dict] = {}


def _root_exponents(e: int) -> dict:
    """Signature of the reduced form of zeta_e^k -> k, for every k."""
    if e not in _root_exponent_cache:
        table = {}
        for k in range(e):
            v = CycNum(e, {k: Fraction(1)})
            table[(v.e, tuple(sorted(v.c.items())))] = k
        _root_exponent_cache[e] = table
    return _root_exponent_cache[e]


def cyc_sum(values) -> CycNum:
    out = CycNum.zero()
    for v in values:
        out = out + v
    return out
