"""Exact character tables via class-matrix eigenvector splitting over a prime field."""

from __future__ import annotations

from fractions import Fraction

from . import modp
from .cyclo import CycNum, _coerce, cyc_sum
from .errors import (
    GroupMismatch,
    InternalSplitFailure,
    MathInvariantError,
    NotACharacter,
    OrderCapExceeded,
)
from .groups import FiniteGroup

ORDER_CAP = 512


class Character:
    """Class function with exact cyclotomic values, one per conjugacy class."""

    __slots__ = ("group", "values", "_memo")

    def __init__(self, group: FiniteGroup, values: list) -> None:
        cc = group.conjugacy_classes()
        if len(values) != len(cc.classes):
            raise MathInvariantError("need one value per conjugacy class")
        self.group = group
        self.values = [_coerce(v) for v in values]
        self._memo: dict = {}

    @property
    def degree(self) -> int:
        v = self.values[0]
        if not v.is_integer():
            raise NotACharacter("value on the identity class is not an integer")
        return int(v.rational_value())

    def value_on(self, g: int) -> CycNum:
        return self.values[self.group.conjugacy_classes().class_of[g]]

    def conj(self) -> "Character":
        return Character(self.group, [v.conj() for v in self.values])

    def __add__(self, other: "Character") -> "Character":
        if self.group is not other.group:
            raise GroupMismatch("class functions live on different groups")
        return Character(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "Character") -> "Character":
        if self.group is not other.group:
            raise GroupMismatch("class functions live on different groups")
        return Character(self.group, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, f) -> "Character":
        return Character(self.group, [v.scale(f) for v in self.values])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    __hash__ = None

    def __repr__(self) -> str:
        return "Character(%s)" % ", ".join(repr(v) for v in self.values)

    def to_json(self) -> dict:
        return {"degree": self.degree, "values": [v.to_json() for v in self.values]}

    @classmethod
    def from_json(cls, group: FiniteGroup, data: dict) -> "Character":
        vals = [CycNum.from_json(v) for v in data["values"]]
        ch = cls(group, vals)
        if ch.degree != data["degree"]:
            raise MathInvariantError("declared degree disagrees with identity value")
        return ch


def inner_product(chi: Character, psi: Character) -> CycNum:
    """Hermitian inner product (1/|G|) sum_g chi(g) conj(psi(g)), classwise."""
    if chi.group is not psi.group:
        raise GroupMismatch("inner product needs both class functions on one group")
    cc = chi.group.conjugacy_classes()
    parts = [
        (a * b.conj()).scale(len(cl))
        for a, b, cl in zip(chi.values, psi.values, cc.classes)
        if not (a.is_zero() or b.is_zero())
    ]
    return cyc_sum(parts).scale(Fraction(1, chi.group.order))


def regular_character(group: FiniteGroup) -> Character:
    """Character of the regular representation: |G| on 1, zero elsewhere."""
    n = len(group.conjugacy_classes().classes)
    vals = [CycNum.zero()] * n
    vals[0] = CycNum.from_rational(group.order)
    return Character(group, vals)


def trivial_character(group: FiniteGroup) -> Character:
    n = len(group.conjugacy_classes().classes)
    return Character(group, [CycNum.one()] * n)


class CharacterTable:
    """All irreducible characters of a group, rows in a deterministic order."""

    __slots__ = ("group", "classes", "rows")

    def __init__(self, group: FiniteGroup, rows: list[Character]) -> None:
        self.group = group
        self.classes = group.conjugacy_classes()
        if len(rows) != len(self.classes.classes):
            raise MathInvariantError("row count must equal class count")
        self.rows = rows

    @property
    def degrees(self) -> list[int]:
        return [r.degree for r in self.rows]

    def verify(self) -> None:
        """Check both orthogonality relations and the degree identity, exactly."""
        n = len(self.rows)
        order = self.group.order
        if sum(d * d for d in self.degrees) != order:
            raise MathInvariantError("degrees do not satisfy sum of squares = |G|")
        for i in range(n):
            for j in range(i, n):
                ip = inner_product(self.rows[i], self.rows[j])
                want = 1 if i == j else 0
                if ip != CycNum.from_rational(want):
                    raise MathInvariantError(
                        "row orthogonality fails at rows %d, %d" % (i, j)
                    )
        sizes = [len(c) for c in self.classes.classes]
        for k in range(n):
            for l in range(k, n):
                s = cyc_sum(
                    [r.values[k] * r.values[l].conj() for r in self.rows]
                )
                want = Fraction(order, sizes[k]) if k == l else 0
                if s != CycNum.from_rational(want):
                    raise MathInvariantError(
                        "column orthogonality fails at classes %d, %d" % (k, l)
                    )

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "classes": [list(c) for c in self.classes.classes],
            "rows": [r.to_json() for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CharacterTable":
        group = FiniteGroup.from_json(data["group"])
        cc = group.conjugacy_classes()
        if [list(c) for c in cc.classes] != [list(c) for c in data["classes"]]:
            raise MathInvariantError("serialized classes disagree with the group")
        rows = [Character.from_json(group, r) for r in data["rows"]]
        return cls(group, rows)


def _least_split_prime(order: int, exponent: int) -> int:
    """Least prime p = 1 mod exponent with p > 2*sqrt(order)."""
    p = exponent + 1
    while True:
        if p > 2 and p * p > 4 * order and _is_prime(p):
            return p
        p += exponent if exponent > 1 else 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _class_matrix(group: FiniteGroup, cc, i: int) -> list[list[int]]:
    """M[j][k] = #{x in C_i : x^-1 z_k in C_j} for class representatives z_k."""
    n = len(cc.classes)
    mul = group.mul
    inv = group.inv
    cls = cc.class_of
    reps = cc.reps
    mat = [[0] * n for _ in range(n)]
    for x in cc.classes[i]:
        row = mul[inv[x]]
        for k in range(n):
            mat[cls[row[reps[k]]]][k] += 1
    return mat


def _split_spaces(group: FiniteGroup, cc, p: int) -> list[list[int]]:
    """Common eigenvectors of all class matrices over F_p, one per class."""
    n = len(cc.classes)
    ident = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    spaces: list[tuple[list[list[int]], list[int]]] = [(ident, list(range(n)))]
    while any(len(b) > 1 for b, _ in spaces):
        progress = False
        for i in range(1, n):
            if all(len(b) == 1 for b, _ in spaces):
                break
            mat = _class_matrix(group, cc, i)
            nxt: list[tuple[list[list[int]], list[int]]] = []
            for basis, piv in spaces:
                d = len(basis)
                if d == 1:
                    nxt.append((basis, piv))
                    continue
                imgs = [modp.mat_vec(mat, v, p) for v in basis]
                restr = [[imgs[j][piv[t]] for j in range(d)] for t in range(d)]
                poly = modp.charpoly(restr, p)
                parts: list[tuple[list[list[int]], list[int]]] = []
                total = 0
                for lam in modp.poly_roots(poly, p):
                    shifted = [
                        [(restr[r][c] - (lam if r == c else 0)) % p for c in range(d)]
                        for r in range(d)
                    ]
                    coords = modp.nullspace(shifted, p)
                    if not coords:
                        continue
                    vecs = []
                    for y in coords:
                        w = [0] * n
                        for j, yj in enumerate(y):
                            if yj:
                                bj = basis[j]
                                for c in range(n):
                                    w[c] = (w[c] + yj * bj[c]) % p
                        vecs.append(w)
                    sub, subpiv = modp.rref(vecs, p)
                    total += len(sub)
                    parts.append((sub, subpiv))
                if total != d:
                    raise InternalSplitFailure(
                        "class matrix %d is not semisimple on a subspace" % i
                    )
                if len(parts) > 1:
                    progress = True
                nxt.extend(parts)
            spaces = nxt
        if any(len(b) > 1 for b, _ in spaces) and not progress:
            raise InternalSplitFailure("splitting stalled with a space of dim > 1")
    out = []
    for basis, _ in spaces:
        u = basis[0]
        if u[0] % p == 0:
            raise InternalSplitFailure("eigenvector vanishes on the identity class")
        f = modp.inv_mod(u[0] % p, p)
        out.append([(x * f) % p for x in u])
    return out


def character_table(group: FiniteGroup, cap: int = ORDER_CAP) -> CharacterTable:
    """All irreducible characters, exact values, deterministic row order."""
    cached = group._cache.get("character_table")
    if cached is not None:
        return cached
    if group.order > cap:
        raise OrderCapExceeded(
            "character table needs |G| <= %d, got %d" % (cap, group.order)
        )
    cc = group.conjugacy_classes()
    n = len(cc.classes)
    order = group.order
    exponent = group.exponent()
    p = _least_split_prime(order, exponent)
    eigvecs = _split_spaces(group, cc, p)

    sizes = [len(c) for c in cc.classes]
    size_inv = [modp.inv_mod(s % p, p) for s in sizes]
    inv_class = [cc.class_of[group.inv[cc.reps[k]]] for k in range(n)]
    w = modp.primitive_root(p)
    theta_inv: dict[int, int] = {}

    rows = []
    for u in eigvecs:
        s = 0
        for k in range(n):
            s = (s + u[k] * u[inv_class[k]] % p * size_inv[k]) % p
        d2 = order % p * modp.inv_mod(s, p) % p
        deg = modp.sqrt_mod(d2, p)
        if not deg or 2 * deg >= p:
            raise InternalSplitFailure("degree is not a small square root mod p")
        chibar = [deg * u[k] % p * size_inv[k] % p for k in range(n)]
        values = []
        for k in range(n):
            g = cc.reps[k]
            m = group.element_order(g)
            if m == 1:
                values.append(CycNum.from_rational(deg))
                continue
            ti = theta_inv.get(m)
            if ti is None:
                ti = modp.inv_mod(pow(w, (p - 1) // m, p), p)
                theta_inv[m] = ti
            samples = []
            e = group.identity
            for _ in range(m):
                samples.append(chibar[cc.class_of[e]])
                e = group.mul[e][g]
            m_inv = modp.inv_mod(m % p, p)
            parts = []
            total = 0
            for t in range(m):
                acc = 0
                for j in range(m):
                    acc += samples[j] * pow(ti, j * t, p)
                mu = acc * m_inv % p
                if mu > deg:
                    raise MathInvariantError("eigenvalue multiplicity exceeds degree")
                total += mu
                if mu:
                    parts.append(CycNum.root_of_unity(m, t).scale(mu))
            if total != deg:
                raise MathInvariantError("eigenvalue multiplicities do not sum to degree")
            values.append(cyc_sum(parts))
        rows.append(Character(group, values))

    key = lambda r: (r.degree, tuple(v.dense(exponent) for v in r.values))
    rows.sort(key=key)
    table = CharacterTable(group, rows)
    if sum(d * d for d in table.degrees) != order:
        raise MathInvariantError("degrees do not satisfy sum of squares = |G|")
    group._cache["character_table"] = table
    return table
