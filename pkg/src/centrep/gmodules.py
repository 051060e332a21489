"""Finite abelian groups with a group action, treated as modules: cyclicity,
submodules, sections, duals, complements, and an explicit Goursat-style witness."""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    CapExceeded,
    GroupMismatch,
    MathInvariantError,
    NotAbelian,
    NotAModule,
    NotNormal,
    NotSemisimple,
    PreconditionViolated,
)
from .groups import FiniteGroup, SubgroupRef

MODULE_CAP = 4096


def generating_set(group: FiniteGroup) -> list[int]:
    """Small deterministic generating set: greedily add the least element
    outside the closure so far."""
    gens: list[int] = []
    closed = {group.identity}
    while len(closed) < group.order:
        nxt = next(g for g in range(group.order) if g not in closed)
        gens.append(nxt)
        closed = set(group._closure(list(closed) + [nxt])[0])
    return gens


class GModule:
    """An abelian carrier group acted on by `actor` through automorphisms."""

    __slots__ = ("carrier", "actor", "act", "_cache")

    def __init__(self, carrier: FiniteGroup, actor: FiniteGroup, act,
                 validate: bool = True) -> None:
        self.carrier = carrier
        self.actor = actor
        self.act = [tuple(p) for p in act]
        self._cache: dict = {}
        if validate:
            self._validate()

    def _validate(self) -> None:
        c, a = self.carrier, self.actor
        if len(self.act) != a.order:
            raise NotAModule("need one carrier permutation per actor element")
        if not c.is_abelian():
            raise NotAbelian("module carrier must be abelian")
        n = c.order
        for perm in self.act:
            if len(perm) != n or len(set(perm)) != n:
                raise ActionNotAutomorphism("action value is not a permutation")
        # additivity on (everything, generator) pairs implies full additivity
        mul = c.mul
        cgens = generating_set(c)
        for perm in self.act:
            if perm[c.identity] != c.identity:
                raise ActionNotAutomorphism("action does not fix zero")
            for y in cgens:
                py = perm[y]
                for x in range(n):
                    if perm[mul[x][y]] != mul[perm[x]][py]:
                        raise ActionNotAutomorphism("action value is not additive")
        # homomorphism property on (generator, everything) pairs suffices
        amul = a.mul
        for g in generating_set(a):
            pg = self.act[g]
            for h in range(a.order):
                ph = self.act[h]
                target = self.act[amul[g][h]]
                if any(pg[ph[x]] != target[x] for x in range(n)):
                    raise ActionNotHomomorphism("action is not a homomorphism")

    # -- index-level structure ------------------------------------------------

    def orbit(self, x: int) -> tuple[int, ...]:
        return tuple(sorted({perm[x] for perm in self.act}))

    def span(self, elems) -> tuple[int, ...]:
        """Additive closure of a set of carrier indices.

        Abelian-only shortcut: grow by whole cosets, O(result * len(elems))."""
        c = self.carrier
        mul = c.mul
        seen = {c.identity}
        for s in elems:
            if s in seen:
                continue
            base = list(seen)
            k = s
            while k not in seen:
                seen.update(mul[t][k] for t in base)
                k = mul[k][s]
        return tuple(sorted(seen))

    def submodule_elements(self, seeds) -> tuple[int, ...]:
        """Smallest action-stable subgroup of the carrier containing seeds."""
        pts: set[int] = set()
        for s in seeds:
            pts.update(self.orbit(s))
        return self.span(pts)

    def orbit_representatives(self) -> list[int]:
        return [x for x in range(self.carrier.order) if min(self.orbit(x)) == x]

    def is_cyclic_module(self) -> tuple[bool, int | None]:
        """True when one element's orbit generates the whole carrier;
        returns the least such generator."""
        whole = self.carrier.order
        for x in self.orbit_representatives():
            if len(self.submodule_elements([x])) == whole:
                return True, x
        return False, None

    def all_submodules(self, cap: int = MODULE_CAP) -> list[tuple[int, ...]]:
        if self.carrier.order > cap:
            raise CapExceeded(f"carrier order {self.carrier.order} exceeds cap {cap}")
        cached = self._cache.get("all_submodules")
        if cached is not None:
            return cached
        zero = (self.carrier.identity,)
        atoms: dict[tuple[int, ...], list[int]] = {}
        for x in self.orbit_representatives():
            if x == self.carrier.identity:
                continue
            sub = self.submodule_elements([x])
            if sub not in atoms:
                atoms[sub] = list(self.orbit(x))
        # join closure; carry small generating sets so joins stay cheap
        found: dict[tuple[int, ...], list[int]] = {zero: []}
        found.update(atoms)
        frontier = list(atoms)
        while frontier:
            cur = frontier.pop()
            curset = set(cur)
            for atom, agens in atoms.items():
                if set(atom) <= curset:
                    continue
                joined = self.span(found[cur] + agens)
                if joined not in found:
                    found[joined] = found[cur] + agens
                    frontier.append(joined)
        out = sorted(found, key=lambda s: (len(s), s))
        self._cache["all_submodules"] = out
        return out

    def minimal_submodules(self) -> list[tuple[int, ...]]:
        subs = [s for s in self.all_submodules() if len(s) > 1]
        return [s for s in subs
                if not any(set(t) < set(s) for t in subs if t is not s)]

    def __repr__(self) -> str:
        return f"<GModule carrier={self.carrier.order} actor={self.actor.name}>"


def from_normal_subgroup(group: FiniteGroup, sub: SubgroupRef) -> GModule:
    """The conjugation module of an abelian normal subgroup."""
    if sub.parent is not group:
        raise GroupMismatch("subgroup belongs to a different group")
    if not sub.is_normal():
        raise NotNormal("conjugation module needs a normal subgroup")
    if not sub.is_abelian():
        raise NotAbelian("conjugation module needs an abelian subgroup")
    carrier, emb = sub.as_group()
    pos = {g: i for i, g in enumerate(emb.images)}
    mul, inv = group.mul, group.inv
    act = [
        tuple(pos[mul[mul[g][emb.images[i]]][inv[g]]] for i in range(carrier.order))
        for g in range(group.order)
    ]
    return GModule(carrier, group, act, validate=False)


def is_cyclic_module(module: GModule) -> tuple[bool, int | None]:
    return module.is_cyclic_module()


def single_orbit_generates(module: GModule) -> bool:
    return module.is_cyclic_module()[0]


def submodule_generated(module: GModule, seeds) -> tuple[GModule, list[int]]:
    """Standalone module on the submodule generated by seeds, plus the list
    mapping its carrier indices to the ambient carrier indices."""
    elems = module.submodule_elements(seeds)
    return _restrict(module, elems)


def _restrict(module: GModule, elems: tuple[int, ...]) -> tuple[GModule, list[int]]:
    sub = SubgroupRef(module.carrier, elems, validate=False)
    carrier, emb = sub.as_group()
    pos = {g: i for i, g in enumerate(emb.images)}
    act = [
        tuple(pos[perm[emb.images[i]]] for i in range(carrier.order))
        for perm in module.act
    ]
    return GModule(carrier, module.actor, act, validate=False), list(emb.images)


def _quotient(module: GModule, elems: tuple[int, ...]) -> GModule:
    sub = SubgroupRef(module.carrier, elems, validate=False)
    q, proj = module.carrier.quotient(sub)
    reps = [next(g for g in range(module.carrier.order) if proj(g) == i)
            for i in range(q.order)]
    act = [
        tuple(proj(perm[reps[i]]) for i in range(q.order))
        for perm in module.act
    ]
    return GModule(q, module.actor, act, validate=False)


def complement_in_semisimple(module: GModule, sub) -> tuple[int, ...]:
    """A submodule T with S + T = everything and S intersect T = 0."""
    s = tuple(sorted(set(sub) | {module.carrier.identity}))
    if module.submodule_elements(s) != s:
        raise NotAModule("S is not a submodule")
    total = module.carrier.order
    sset = set(s)
    t: tuple[int, ...] = (module.carrier.identity,)
    for atom in module.minimal_submodules():
        cand = module.span(set(t) | set(atom))
        if len(sset & set(cand)) == 1:
            t = cand
            if len(s) * len(t) == total:
                return t
    if len(s) * len(t) == total:
        return t
    for cand in module.all_submodules():
        if len(sset & set(cand)) == 1 and len(s) * len(cand) == total:
            return cand
    raise NotSemisimple("no complementary submodule exists")


def _element_orders(group: FiniteGroup) -> list[int]:
    return [group.element_order(g) for g in range(group.order)]


def _invariants(module: GModule) -> tuple:
    orders = sorted(_element_orders(module.carrier))
    orb = sorted(len(module.orbit(x)) for x in range(module.carrier.order))
    fixed = [sum(1 for x in range(module.carrier.order) if perm[x] == x)
             for perm in module.act]
    return tuple(orders), tuple(orb), tuple(fixed)


def _expressions(carrier: FiniteGroup, gens: list[int]) -> list[tuple[int, ...]]:
    """One Z-expression vector over gens per carrier element, found by BFS."""
    k = len(gens)
    expr: list[tuple[int, ...] | None] = [None] * carrier.order
    expr[carrier.identity] = tuple([0] * k)
    frontier = [carrier.identity]
    while frontier:
        nxt = []
        for x in frontier:
            ex = expr[x]
            for i, g in enumerate(gens):
                y = carrier.mul[x][g]
                if expr[y] is None:
                    e = list(ex)
                    e[i] += 1
                    expr[y] = tuple(e)
                    nxt.append(y)
        frontier = nxt
    if any(e is None for e in expr):
        raise MathInvariantError("generators fail to span the carrier")
    return expr  # type: ignore[return-value]


def _relation_rows(carrier: FiniteGroup, gens: list[int],
                   expr: list[tuple[int, ...]]) -> list[list[int]]:
    """Echelon basis of the lattice of Z-relations among the generators."""
    from .smith import RowLattice

    k = len(gens)
    lat = RowLattice(k)
    for i, g in enumerate(gens):
        row = [0] * k
        row[i] = carrier.element_order(g)
        lat.insert(row)
    for x in range(carrier.order):
        for i, g in enumerate(gens):
            y = carrier.mul[x][g]
            row = list(expr[x])
            row[i] += 1
            lat.insert([a - b for a, b in zip(row, expr[y])])
    return lat.echelon_rows()


def module_isomorphic(va: GModule, vb: GModule) -> bool:
    """Equivariant group isomorphism by generator-image search with pre-filters."""
    if va.actor is not vb.actor:
        raise GroupMismatch("modules must share the actor")
    if va.carrier.order != vb.carrier.order:
        return False
    if _invariants(va) != _invariants(vb):
        return False
    ca, cb = va.carrier, vb.carrier
    gens = generating_set(ca)
    if not gens:
        return True
    expr = _expressions(ca, gens)
    rel = _relation_rows(ca, gens, expr)
    orders = [ca.element_order(g) for g in gens]
    cand = [[w for w in range(cb.order) if cb.element_order(w) == o] for o in orders]
    actor_gens = generating_set(va.actor)

    def build(images: list[int]) -> bool:
        # relations must map to zero for the map to be well-defined
        for row in rel:
            acc = cb.identity
            for coef, w in zip(row, images):
                acc = cb.mul[acc][_power(cb, w, coef)]
            if acc != cb.identity:
                return False
        phi = [None] * ca.order
        for x in range(ca.order):
            acc = cb.identity
            for coef, w in zip(expr[x], images):
                acc = cb.mul[acc][_power(cb, w, coef)]
            phi[x] = acc
        if len(set(phi)) != ca.order:
            return False
        for g in actor_gens:
            pa, pb = va.act[g], vb.act[g]
            if any(phi[pa[x]] != pb[phi[x]] for x in range(ca.order)):
                return False
        return True

    def rec(i: int, images: list[int]) -> bool:
        if i == len(gens):
            return build(images)
        for w in cand[i]:
            if rec(i + 1, images + [w]):
                return True
        return False

    return rec(0, [])


def _power(group: FiniteGroup, g: int, k: int) -> int:
    k %= group.element_order(g)
    return group.power(g, k)


def is_section_isomorphic(v: GModule, w: GModule,
                          cap: int = MODULE_CAP) -> bool:
    """True when some subquotient B/C of w is module-isomorphic to v."""
    if v.actor is not w.actor:
        raise GroupMismatch("modules must share the actor")
    if v.carrier.order > cap or w.carrier.order > cap:
        raise CapExceeded("carrier exceeds the section-search cap")
    target = v.carrier.order
    subs = w.all_submodules(cap)
    for b in subs:
        if len(b) % target:
            continue
        bmod = None
        for c in subs:
            if len(c) * target != len(b) or not set(c) <= set(b):
                continue
            if bmod is None:
                bmod, bemb = _restrict(w, b)
                memb = {g: i for i, g in enumerate(bemb)}
            c_in_b = tuple(sorted(memb[g] for g in c))
            sect = _quotient(bmod, c_in_b)
            if module_isomorphic(v, sect):
                return True
    return False


def dual_module(module: GModule, cap: int = MODULE_CAP) -> GModule:
    """All homomorphisms carrier -> Q/Z with the action (g.f)(n) = f(g^-1 . n).

    Dual elements are tuples of exact rationals in [0,1): the images of a fixed
    generator list of the carrier.
    """
    from .smith import smith_normal_form

    carrier = module.carrier
    if carrier.order > cap:
        raise CapExceeded("carrier exceeds the dual-construction cap")
    gens = generating_set(carrier)
    k = len(gens)
    if k == 0:
        dual_carrier = FiniteGroup([[0]], labels=["0"], name="dual", validate=False)
        return GModule(dual_carrier, module.actor,
                       [(0,) for _ in range(module.actor.order)], validate=False)
    expr = _expressions(carrier, gens)
    rel = _relation_rows(carrier, gens, expr)
    exp = carrier.exponent()
    diag, _u, vmat = smith_normal_form([list(r) for r in rel])
    if len(diag) != k or any(d == 0 for d in diag):
        raise MathInvariantError("relation lattice is not full rank")
    from math import gcd

    counts = [gcd(d, exp) for d in diag]
    tuples: list[tuple[Fraction, ...]] = []
    idx = [0] * k
    while True:
        y = [idx[i] * (exp // counts[i]) for i in range(k)]
        c = [sum(vmat[i][j] * y[j] for j in range(k)) % exp for i in range(k)]
        tuples.append(tuple(Fraction(ci, exp) for ci in c))
        j = k - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < counts[j]:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            break
    tuples = sorted(set(tuples))
    if len(tuples) != carrier.order:
        raise MathInvariantError("dual does not match the carrier order")
    pos = {t: i for i, t in enumerate(tuples)}

    def add(a: tuple[Fraction, ...], b: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        return tuple((x + y) % 1 for x, y in zip(a, b))

    mul = [[pos[add(a, b)] for b in tuples] for a in tuples]
    labels = ["(" + ",".join(str(x) for x in t) + ")" for t in tuples]
    dual_carrier = FiniteGroup(mul, labels=labels, name="dual", validate=False)

    def evaluate(t: tuple[Fraction, ...], x: int) -> Fraction:
        return sum((coef * val for coef, val in zip(expr[x], t)),
                   start=Fraction(0)) % 1

    inv = module.actor.inv
    act = []
    for g in range(module.actor.order):
        perm_inv = module.act[inv[g]]
        row = []
        for t in tuples:
            moved = tuple(evaluate(t, perm_inv[gen]) for gen in gens)
            row.append(pos[moved])
        act.append(tuple(row))
    return GModule(dual_carrier, module.actor, act, validate=False)


def goursat_witness(group: FiniteGroup, h: SubgroupRef, m: SubgroupRef,
                    n: SubgroupRef) -> dict[int, int]:
    """Injective H-equivariant homomorphism M -> N, built by projecting M
    through G -> G/N and back into N along the unique h*n decomposition."""
    for ref, label in ((h, "H"), (m, "M"), (n, "N")):
        if ref.parent is not group:
            raise GroupMismatch(f"{label} belongs to a different group")
    if not m.is_normal():
        raise PreconditionViolated("M is not normal in G")
    if not n.is_normal():
        raise PreconditionViolated("N is not normal in G")
    if m.intersection(h).order != 1:
        raise PreconditionViolated("M meets H nontrivially")
    if n.intersection(h).order != 1:
        raise PreconditionViolated("N meets H nontrivially")
    if m.intersection(n).order != 1:
        raise PreconditionViolated("M meets N nontrivially")
    if h.order * n.order != group.order:
        raise PreconditionViolated("G is not HN")
    mul, inv = group.mul, group.inv
    witness: dict[int, int] = {}
    for x in m.elements:
        hx = None
        for cand in h.elements:
            if n.contains(mul[inv[cand]][x]):
                hx = cand
                break
        if hx is None:
            raise PreconditionViolated("G is not HN")
        witness[x] = mul[inv[hx]][x]
    # verify: homomorphism, injective, H-equivariant
    vals = set(witness.values())
    if len(vals) != len(witness):
        raise MathInvariantError("witness is not injective")
    for a in m.elements:
        for b in m.elements:
            if witness[mul[a][b]] != mul[witness[a]][witness[b]]:
                raise MathInvariantError("witness is not a homomorphism")
    for t in h.elements:
        for a in m.elements:
            if witness[mul[mul[t][a]][inv[t]]] != mul[mul[t][witness[a]]][inv[t]]:
                raise MathInvariantError("witness is not H-equivariant")
    return witness


def _sl2(p: int) -> tuple[FiniteGroup, list[tuple[int, int, int, int]]]:
    mats = [
        (a, b, c, d)
        for a in range(p) for b in range(p) for c in range(p) for d in range(p)
        if (a * d - b * c) % p == 1
    ]
    pos = {m: i for i, m in enumerate(mats)}
    mul = []
    for (a, b, c, d) in mats:
        row = []
        for (e, f, g, h) in mats:
            row.append(pos[((a * e + b * g) % p, (a * f + b * h) % p,
                            (c * e + d * g) % p, (c * f + d * h) % p)])
        mul.append(row)
    labels = [f"[[{a},{b}],[{c},{d}]]" for (a, b, c, d) in mats]
    return FiniteGroup(mul, labels=labels, name=f"SL(2,{p})", validate=False), mats


def special_linear_group(p: int) -> FiniteGroup:
    """SL(2, p) as an explicit table group; elements are matrices mod p."""
    return _sl2(p)[0]


def sl2_natural_power_module(p: int, copies: int) -> GModule:
    """F_p^2 tensor-free: the direct sum of `copies` natural SL(2,p) planes
    with the diagonal action."""
    if copies < 1 or p < 2:
        raise CapExceeded("need p >= 2 and copies >= 1")
    dim = 2 * copies
    size = p ** dim
    if size > MODULE_CAP:
        raise CapExceeded("carrier exceeds the module cap")
    digits = []
    for v in range(size):
        t = []
        x = v
        for _ in range(dim):
            t.append(x % p)
            x //= p
        digits.append(tuple(t))
    pos = {t: i for i, t in enumerate(digits)}
    mul = [
        [pos[tuple((x + y) % p for x, y in zip(dx, dy))] for dy in digits]
        for dx in digits
    ]
    labels = ["(" + ",".join(map(str, t)) + ")" for t in digits]
    carrier = FiniteGroup(mul, labels=labels, name=f"F{p}^{dim}", validate=False)
    actor, mats = _sl2(p)
    act = []
    for a, b, c, d in mats:
        row = []
        for t in digits:
            out = []
            for j in range(copies):
                x, y = t[2 * j], t[2 * j + 1]
                out.append((a * x + b * y) % p)
                out.append((c * x + d * y) % p)
            row.append(pos[tuple(out)])
        act.append(tuple(row))
    return GModule(carrier, actor, act, validate=False)
