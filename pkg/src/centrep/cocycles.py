"""Rational 2-cocycles, explicit central extensions, and projective-kernel checks."""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm

from .chartab import character_table
from .errors import (
    CapExceeded,
    CocycleIdentityFails,
    GroupMismatch,
    HypothesisViolated,
    InvalidCocycle,
    MathInvariantError,
    MuNotCentral,
    MuNotCyclic,
    MuNotKernel,
    NoFaithfulCentralCharacter,
    NotNormalized,
    PreconditionViolated,
)
from .groups import FiniteGroup, GroupHom, SubgroupRef
from .reps import char_center, decompose, induce, kernel
from .smith import solve_mod

SPLIT_SEARCH_CAP = 100_000


class Cocycle:
    """A 2-cochain on a finite group, valued in Q/Z (rationals mod 1)."""

    __slots__ = ("base", "values")

    def __init__(self, base: FiniteGroup, values) -> None:
        n = base.order
        if len(values) != n or any(len(row) != n for row in values):
            raise InvalidCocycle("need a |G| x |G| table of values")
        self.base = base
        self.values = [[Fraction(v) % 1 for v in row] for row in values]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cocycle) and self.base is other.base
                and self.values == other.values)

    def __sub__(self, other: Cocycle) -> Cocycle:
        if self.base is not other.base:
            raise GroupMismatch("cocycles live on different groups")
        return Cocycle(self.base, [
            [a - b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.values, other.values)
        ])

    def to_json(self) -> dict:
        return {
            "order_base": self.base.order,
            "values": [[str(v.numerator), str(v.denominator)]
                       for row in self.values for v in row],
        }


def cocycle_from_json(base: FiniteGroup, obj: dict) -> Cocycle:
    n = base.order
    if obj.get("order_base") != n or len(obj["values"]) != n * n:
        raise InvalidCocycle("value table does not match the group order")
    flat = [Fraction(int(num), int(den)) for num, den in obj["values"]]
    return Cocycle(base, [flat[g * n:(g + 1) * n] for g in range(n)])


def zero_cocycle(base: FiniteGroup) -> Cocycle:
    return Cocycle(base, [[0] * base.order for _ in range(base.order)])


def validate(z: Cocycle) -> bool:
    """Check normalization and the cocycle identity over all triples."""
    base, vals = z.base, z.values
    e, mul = base.identity, base.mul
    for g in range(base.order):
        if vals[e][g] or vals[g][e]:
            raise NotNormalized(f"value at identity pair with element {g} is nonzero")
    for g in range(base.order):
        for h in range(base.order):
            gh = mul[g][h]
            for k in range(base.order):
                if (vals[g][h] + vals[gh][k] - vals[h][k] - vals[g][mul[h][k]]) % 1:
                    err = CocycleIdentityFails(f"identity fails at triple ({g}, {h}, {k})")
                    err.witness = (g, h, k)
                    raise err
    return True


def cocycle_order(z: Cocycle) -> int:
    """Least n with n*z = 0 in Q/Z: the lcm of the value denominators."""
    out = 1
    for row in z.values:
        for v in row:
            out = lcm(out, v.denominator)
    return out


def coboundary(base: FiniteGroup, f) -> Cocycle:
    """The 2-coboundary of a 1-cochain f with f(identity) = 0."""
    f = [Fraction(v) % 1 for v in f]
    if len(f) != base.order:
        raise PreconditionViolated("one value per group element required")
    if f[base.identity]:
        raise PreconditionViolated("a 1-cochain must vanish at the identity")
    mul = base.mul
    return Cocycle(base, [
        [f[h] - f[mul[g][h]] + f[g] for h in range(base.order)]
        for g in range(base.order)
    ])


def is_cohomologous(z1: Cocycle, z2: Cocycle,
                    modulus: int | None = None) -> list[Fraction] | None:
    """A 1-cochain f with z1 - z2 = coboundary(f), or None when there is none.

    By default f may take any rational values: any witness is killed by
    m = order(z1 - z2) * |G|, so solving the integer system mod m loses
    nothing.  Passing `modulus` restricts witnesses to values in (1/modulus)Z,
    which decides equivalence within a fixed cyclic coefficient group instead.
    """
    if z1.base is not z2.base:
        raise GroupMismatch("cocycles live on different groups")
    base = z1.base
    n = base.order
    diff = (z1 - z2).values
    m = modulus if modulus is not None else n * cocycle_order(z1 - z2)
    if any(int(m * v) != m * v for row in diff for v in row):
        return None
    mat, rhs = [], []
    mul = base.mul
    for g in range(n):
        for h in range(n):
            row = [0] * n
            row[g] += 1
            row[h] += 1
            row[mul[g][h]] -= 1
            mat.append(row)
            rhs.append(int(m * diff[g][h]))
    x = solve_mod(mat, rhs, m)
    if x is None:
        return None
    f = [Fraction(v, m) % 1 for v in x]
    if coboundary(base, f) != z1 - z2:
        raise MathInvariantError("cohomology witness fails to reproduce the difference")
    return f


def reduce_order(z: Cocycle) -> Cocycle:
    """A cohomologous cocycle of order dividing |G|.

    Shifts z by the coboundary of f(g) = (sum_h z(g,h)) / |G|, taking the
    least representative in [0,1) before dividing.
    """
    validate(z)
    base = z.base
    n = base.order
    mul = base.mul
    fdot = [sum(z.values[g][h] for h in range(n)) % 1 / n for g in range(n)]
    out = Cocycle(base, [
        [z.values[g][h] + fdot[mul[g][h]] - fdot[g] - fdot[h] for h in range(n)]
        for g in range(n)
    ])
    if n % cocycle_order(out):
        raise MathInvariantError("reduced cocycle order does not divide the group order")
    if is_cohomologous(z, out) is None:
        raise MathInvariantError("reduced cocycle is not cohomologous to the input")
    return out


class CentralExtension:
    """A finite group presented as a central extension of a base group.

    total is the extension group, mu its central subgroup with
    total/mu = base, projection the quotient map, and section a
    right inverse of projection fixing the identity.
    """

    __slots__ = ("total", "mu", "projection", "section")

    def __init__(self, total: FiniteGroup, mu: SubgroupRef,
                 projection: GroupHom, section: list[int]) -> None:
        if mu.parent is not total or projection.source is not total:
            raise GroupMismatch("mu and projection must belong to the total group")
        if not total.center().contains_set(mu):
            raise MuNotCentral("mu must lie in the center of the total group")
        if projection.kernel().mask != mu.mask:
            raise MuNotKernel("mu must be the kernel of the projection")
        base = projection.target
        if total.order != mu.order * base.order:
            raise MuNotKernel("projection is not onto the base group")
        if any(projection(section[b]) != b for b in range(base.order)):
            raise PreconditionViolated("section must be a right inverse of projection")
        if section[base.identity] != total.identity:
            raise PreconditionViolated("section must lift the identity to the identity")
        self.total = total
        self.mu = mu
        self.projection = projection
        self.section = list(section)

    @property
    def base(self) -> FiniteGroup:
        return self.projection.target

    def to_json(self) -> dict:
        out = self.total.to_json()
        out["mu"] = list(self.mu.elements)
        out["projection"] = list(self.projection.images)
        return out


def extension_from_cocycle(z: Cocycle, order: int | None = None) -> CentralExtension:
    """The extension on pairs (k mod n, g) with twist z, n = cocycle_order(z).

    Passing `order` (a multiple of the cocycle order) builds the extension
    with a larger cyclic mu of that order.
    """
    validate(z)
    base = z.base
    n = cocycle_order(z)
    if order is not None:
        if order % n:
            raise InvalidCocycle("requested mu order must be a multiple of the cocycle order")
        n = order
    nb = base.order
    shift = [[int(n * v) % n for v in row] for row in z.values]
    bmul = base.mul
    mul = [[0] * (n * nb) for _ in range(n * nb)]
    for k in range(n):
        for g in range(nb):
            row = mul[k * nb + g]
            for l in range(n):
                for h in range(nb):
                    row[l * nb + h] = ((k + l + shift[g][h]) % n) * nb + bmul[g][h]
    labels = [f"({k},{base.labels[g]})" for k in range(n) for g in range(nb)]
    total = FiniteGroup(mul, labels=labels, name=f"{base.name}.z", validate=False)
    mu = total.subgroup_generated([(1 % n) * nb + base.identity])
    projection = GroupHom(total, base,
                          [g for _ in range(n) for g in range(nb)], validate=False)
    return CentralExtension(total, mu, projection, list(range(nb)))


def _cyclic_generator(group: FiniteGroup, mu: SubgroupRef) -> int:
    for m in mu.elements:
        if group.element_order(m) == mu.order:
            return m
    raise MuNotCyclic("mu has no single generator")


def cocycle_from_extension(total: FiniteGroup, mu: SubgroupRef,
                           projection: GroupHom) -> Cocycle:
    """The cocycle of the least-index section, valued via a fixed generator of mu.

    The base identity lifts to the total identity so the result is normalized.
    """
    if mu.parent is not total or projection.source is not total:
        raise GroupMismatch("mu and projection must belong to the total group")
    if not total.center().contains_set(mu):
        raise MuNotCentral("mu must lie in the center of the total group")
    if projection.kernel().mask != mu.mask:
        raise MuNotKernel("mu must be the kernel of the projection")
    base = projection.target
    gen = _cyclic_generator(total, mu)
    log, pw = {}, total.identity
    for j in range(mu.order):
        log[pw] = j
        pw = total.mul[pw][gen]
    section = [-1] * base.order
    for x in range(total.order):
        b = projection(x)
        if section[b] < 0:
            section[b] = x
    section[base.identity] = total.identity
    mul, inv = total.mul, total.inv
    vals = []
    for g in range(base.order):
        sg = section[g]
        row = []
        for h in range(base.order):
            d = mul[mul[sg][section[h]]][inv[section[base.mul[g][h]]]]
            row.append(Fraction(log[d], mu.order))
        vals.append(row)
    z = Cocycle(base, vals)
    validate(z)
    return z


def extension_over_quotient(total: FiniteGroup, mu: SubgroupRef) -> CentralExtension:
    """Package total -> total/mu as a CentralExtension with least-index lifts."""
    base, proj = total.quotient(mu)
    section = [-1] * base.order
    for x in range(total.order):
        b = proj(x)
        if section[b] < 0:
            section[b] = x
    section[base.identity] = total.identity
    return CentralExtension(total, mu, proj, section)


def _mu_faithful_rows(ext: CentralExtension):
    table = character_table(ext.total)
    idbit = 1 << ext.total.identity
    rows = [i for i, chi in enumerate(table.rows)
            if kernel(chi).mask & ext.mu.mask == idbit]
    if not rows:
        raise NoFaithfulCentralCharacter(
            "no irreducible of the extension is faithful on mu")
    return table, rows


def _central_images(ext: CentralExtension) -> tuple[SubgroupRef, SubgroupRef]:
    total, base = ext.total, ext.base
    proj = ext.projection
    zc = base.subgroup_generated({proj(x) for x in total.center().elements})
    table, rows = _mu_faithful_rows(ext)
    mask = (1 << total.order) - 1
    for i in rows:
        mask &= char_center(table.rows[i]).mask
    kc = base.subgroup_generated(
        {proj(x) for x in range(total.order) if (mask >> x) & 1})
    if kc.mask != zc.mask:
        raise MathInvariantError("projected quasikernel differs from projected center")
    return zc, kc


def z_c(ext: CentralExtension) -> SubgroupRef:
    """Image in the base of the center of the extension group."""
    return _central_images(ext)[0]


def k_c(ext: CentralExtension) -> SubgroupRef:
    """Image in the base of the common quasikernel of the mu-faithful irreducibles."""
    return _central_images(ext)[1]


def has_c_faithful_irreducible(ext: CentralExtension) -> tuple[bool, int | None]:
    """Is some mu-faithful irreducible's quasikernel exactly the center of total?"""
    table, rows = _mu_faithful_rows(ext)
    zmask = ext.total.center().mask
    for i in rows:
        if char_center(table.rows[i]).mask == zmask:
            return True, i
    return False, None


def splits_over_subgroup(ext: CentralExtension, h: SubgroupRef) -> SubgroupRef | None:
    """A complement of mu inside the preimage of h, or None when the class obstructs."""
    base = ext.base
    if h.parent is not base:
        raise GroupMismatch("h must be a subgroup of the base group")
    total, proj = ext.total, ext.projection
    hset = set(h.elements)
    pre = [x for x in range(total.order) if proj(x) in hset]
    gens = []
    cur = base.subgroup_generated([])
    for e in h.elements:
        if not cur.contains(e):
            gens.append(e)
            cur = base.subgroup_generated(gens)
    if ext.mu.order ** len(gens) > SPLIT_SEARCH_CAP:
        raise CapExceeded("complement search space exceeds the cap")
    lift_sets = [[x for x in pre if proj(x) == g] for g in gens]
    for combo in itertools.product(*lift_sets):
        cand = total.subgroup_generated(combo)
        if cand.order == h.order and {proj(x) for x in cand.elements} == hset:
            return cand
    return None


def relative_fpr_check(ext: CentralExtension, h: SubgroupRef) -> bool:
    """Every mu-faithful irreducible of the preimage of h extends into one of total.

    Hypothesis: the preimage of h has at least one irreducible faithful on mu.
    For each such rho, some mu-faithful irreducible of total must appear in
    the induction of rho (equivalently, restrict onto rho); this is asserted.
    """
    base = ext.base
    if h.parent is not base:
        raise GroupMismatch("h must be a subgroup of the base group")
    total, proj = ext.total, ext.projection
    hset = set(h.elements)
    hd = total.subgroup_generated([x for x in range(total.order) if proj(x) in hset])
    hd_group, emb = hd.as_group()
    mu_set = set(ext.mu.elements)
    mu_hd = hd_group.subgroup_generated(
        [i for i in range(hd_group.order) if emb(i) in mu_set])
    idbit = 1 << hd_group.identity
    hd_table = character_table(hd_group)
    candidates = [rho for rho in hd_table.rows
                  if kernel(rho).mask & mu_hd.mask == idbit]
    if not candidates:
        raise HypothesisViolated("the preimage has no irreducible faithful on mu")
    table, rows = _mu_faithful_rows(ext)
    good = set(rows)
    for rho in candidates:
        dec = decompose(induce(rho, hd), table)
        if not any(i in good for i, _ in dec.components):
            raise MathInvariantError(
                "an induced mu-faithful irreducible has no mu-faithful constituent")
    return True
