"""Finite groups as explicit multiplication tables, plus subgroup machinery.

Element = index into the table.  Groups are immutable once built and memoize
derived data (classes, center, subgroup lattice) on the instance.  Subgroups
are index sets tied to a parent group; bitmask ints back the set operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .errors import (
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotASubgroup,
    NotAHomomorphism,
    NotNormal,
    OrderCapExceeded,
    TrivialGroup,
)

SUBGROUP_ENUM_CAP = 256


@dataclass(frozen=True)
class ConjugacyClasses:
    classes: tuple[tuple[int, ...], ...]  # identity's class first, then by least member
    class_of: tuple[int, ...]
    reps: tuple[int, ...]  # least member of each class

    def __len__(self) -> int:
        return len(self.classes)


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    __slots__ = ("order", "mul", "identity", "inv", "labels", "gens", "marks",
                 "name", "_cache")

    def __init__(self, mul, labels=None, gens=None, name=None, validate=True,
                 marks=None):
        n = len(mul)
        if n == 0:
            raise NoIdentity("empty table")
        if validate:
            for row in mul:
                if len(row) != n or any(not (0 <= x < n) for x in row):
                    raise NotAssociative("malformed table row")
        self.order = n
        self.mul = [list(row) for row in mul]
        if validate:
            self._check_associativity()
        self.identity = self._find_identity()
        self.inv = self._find_inverses()
        if labels is None:
            labels = [f"g{i}" for i in range(n)]
        labels = [str(x) for x in labels]
        if len(labels) != n or len(set(labels)) != n:
            raise ValueError("labels must be pairwise distinct, one per element")
        self.labels = labels
        self.gens = dict(gens) if gens else {}
        self.marks = dict(marks) if marks else {}  # named elements that are not generators
        self.name = name or f"group-of-order-{n}"
        self._cache = {}

    # -- construction checks ---------------------------------------------

    def _check_associativity(self):
        mul = self.mul
        for a, ra in enumerate(mul):
            for b, x in enumerate(ra):
                rab = mul[x]
                rb = mul[b]
                if rab != [ra[y] for y in rb]:
                    c = next(i for i in range(len(rb)) if rab[i] != ra[rb[i]])
                    raise NotAssociative(f"(a*b)*c != a*(b*c) at a={a}, b={b}, c={c}")

    def _find_identity(self) -> int:
        n = self.order
        idx = list(range(n))
        for e in range(n):
            if self.mul[e] == idx and all(self.mul[x][e] == x for x in range(n)):
                return e
        raise NoIdentity("no two-sided identity element")

    def _find_inverses(self) -> list[int]:
        n, e = self.order, self.identity
        inv = [-1] * n
        for x in range(n):
            for y in range(n):
                if self.mul[x][y] == e and self.mul[y][x] == e:
                    inv[x] = y
                    break
            else:
                raise NoInverse(f"element {x} has no two-sided inverse")
        return inv

    @staticmethod
    def from_multiplication_table(mul, labels=None, gens=None, name=None) -> FiniteGroup:
        return FiniteGroup(mul, labels=labels, gens=gens, name=name, validate=True)

    # -- basics -------------------------------------------------------------

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        out, mul = self.identity, self.mul
        while k:
            if k & 1:
                out = mul[out][g]
            g = mul[g][g]
            k >>= 1
        return out

    def element_order(self, g: int) -> int:
        orders = self._cache.get("elt_orders")
        if orders is None:
            orders = [0] * self.order
            self._cache["elt_orders"] = orders
        if orders[g]:
            return orders[g]
        k, x, mul = 1, g, self.mul
        while x != self.identity:
            x = mul[x][g]
            k += 1
        orders[g] = k
        return k

    def exponent(self) -> int:
        if "exponent" not in self._cache:
            m = 1
            for g in range(self.order):
                o = self.element_order(g)
                m = m // gcd(m, o) * o
            self._cache["exponent"] = m
        return self._cache["exponent"]

    def commutator(self, a: int, b: int) -> int:
        mul, inv = self.mul, self.inv
        return mul[mul[inv[a]][inv[b]]][mul[a][b]]

    def conj(self, g: int, t: int) -> int:
        """t^-1 g t."""
        mul = self.mul
        return mul[mul[self.inv[t]][g]][t]

    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            mul = self.mul
            self._cache["abelian"] = all(
                mul[a][b] == mul[b][a]
                for a in range(self.order) for b in range(a + 1, self.order)
            )
        return self._cache["abelian"]

    # -- conjugacy ------------------------------------------------------------

    def conjugacy_classes(self) -> ConjugacyClasses:
        if "classes" in self._cache:
            return self._cache["classes"]
        n, mul, inv = self.order, self.mul, self.inv
        class_of = [-1] * n
        raw: list[tuple[int, ...]] = []
        for g in range(n):
            if class_of[g] >= 0:
                continue
            idx = len(raw)
            orbit = [g]
            class_of[g] = idx
            for x in orbit:
                for t in range(n):
                    y = mul[mul[inv[t]][x]][t]
                    if class_of[y] < 0:
                        class_of[y] = idx
                        orbit.append(y)
            raw.append(tuple(sorted(orbit)))
        # identity's class first; the rest already ascend by least member
        e_cls = class_of[self.identity]
        order = [e_cls] + [i for i in range(len(raw)) if i != e_cls]
        remap = {old: new for new, old in enumerate(order)}
        classes = tuple(raw[old] for old in order)
        cc = ConjugacyClasses(
            classes=classes,
            class_of=tuple(remap[c] for c in class_of),
            reps=tuple(cls[0] for cls in classes),
        )
        self._cache["classes"] = cc
        return cc

    # -- subgroups --------------------------------------------------------

    def _closure(self, seed) -> tuple[tuple[int, ...], int]:
        """Subgroup generated by seed: (sorted elements, bitmask)."""
        mul = self.mul
        elems = [self.identity]
        mask = 1 << self.identity
        work = []
        for g in seed:
            if not (mask >> g) & 1:
                mask |= 1 << g
                elems.append(g)
                work.append(g)
        while work:
            x = work.pop()
            rx = mul[x]
            for y in list(elems):
                for z in (rx[y], mul[y][x]):
                    if not (mask >> z) & 1:
                        mask |= 1 << z
                        elems.append(z)
                        work.append(z)
        return tuple(sorted(elems)), mask

    def generating_set(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in element order."""
        if "generating_set" not in self._cache:
            chosen: list[int] = []
            mask = 1 << self.identity
            for g in range(self.order):
                if not (mask >> g) & 1:
                    chosen.append(g)
                    _, mask = self._closure(chosen)
            self._cache["generating_set"] = tuple(chosen)
        return self._cache["generating_set"]

    def subgroup(self, elements, validate=True) -> SubgroupRef:
        return SubgroupRef(self, elements, validate=validate)

    def subgroup_generated(self, seed) -> SubgroupRef:
        elems, _ = self._closure(seed)
        return SubgroupRef(self, elems, validate=False)

    def normal_closure(self, seed) -> SubgroupRef:
        conjs = set()
        for g in seed:
            for t in range(self.order):
                conjs.add(self.conj(g, t))
        elems, _ = self._closure(conjs)
        return SubgroupRef(self, elems, validate=False)

    def commutator_closure(self, seed) -> SubgroupRef:
        """Normal closure of all commutators [h, g], h in seed, g in G."""
        comms = {self.commutator(h, g) for h in seed for g in range(self.order)}
        return self.normal_closure(comms)

    def derived_subgroup(self) -> SubgroupRef:
        if "derived" not in self._cache:
            self._cache["derived"] = self.commutator_closure(range(self.order))
        return self._cache["derived"]

    def center(self) -> SubgroupRef:
        if "center" not in self._cache:
            n, mul = self.order, self.mul
            elems = [g for g in range(n)
                     if all(mul[g][t] == mul[t][g] for t in range(n))]
            self._cache["center"] = SubgroupRef(self, elems, validate=False)
        return self._cache["center"]

    def second_center(self) -> SubgroupRef:
        """Preimage in G of the center of G/Z(G)."""
        if "second_center" not in self._cache:
            z = self.center()
            q, proj = self.quotient(z)
            zq = q.center()
            elems = [g for g in range(self.order) if zq.contains(proj.images[g])]
            self._cache["second_center"] = SubgroupRef(self, elems, validate=False)
        return self._cache["second_center"]

    def upper_central_series(self) -> list[SubgroupRef]:
        series = [self.subgroup([self.identity], validate=False)]
        while True:
            z = series[-1]
            if z.order == self.order:
                return series
            q, proj = self.quotient(z)
            zq = q.center()
            elems = [g for g in range(self.order) if zq.contains(proj.images[g])]
            nxt = SubgroupRef(self, elems, validate=False)
            if nxt.mask == z.mask:
                return series
            series.append(nxt)

    def is_nilpotent(self) -> bool:
        if "nilpotent" not in self._cache:
            self._cache["nilpotent"] = self.upper_central_series()[-1].order == self.order
        return self._cache["nilpotent"]

    def all_subgroups(self, cap: int = SUBGROUP_ENUM_CAP) -> list[SubgroupRef]:
        """Every subgroup, via join closure over the cyclic subgroups."""
        if self.order > cap:
            raise OrderCapExceeded(
                f"subgroup enumeration needs order <= {cap}, got {self.order}")
        if "all_subgroups" in self._cache:
            return self._cache["all_subgroups"]
        cyclic: dict[int, tuple[int, ...]] = {}
        for g in range(self.order):
            elems, mask = self._closure([g])
            cyclic.setdefault(mask, elems)
        seen: dict[int, tuple[int, ...]] = dict(cyclic)
        trivial_mask = 1 << self.identity
        seen.setdefault(trivial_mask, (self.identity,))
        frontier = list(seen)
        while frontier:
            fresh = []
            for amask in frontier:
                aelems = seen[amask]
                for cmask, celems in cyclic.items():
                    if cmask | amask == amask:
                        continue
                    jelems, jmask = self._closure(aelems + celems)
                    if jmask not in seen:
                        seen[jmask] = jelems
                        fresh.append(jmask)
            frontier = fresh
        subs = [SubgroupRef(self, elems, validate=False) for elems in seen.values()]
        subs.sort(key=lambda s: (s.order, s.elements))
        self._cache["all_subgroups"] = subs
        return subs

    def iter_subgroups(self):
        """Yield every subgroup lazily, small joins first; order is not sorted."""
        if "all_subgroups" in self._cache:
            yield from self._cache["all_subgroups"]
            return
        cyclic: dict[int, tuple[int, ...]] = {}
        for g in range(self.order):
            elems, mask = self._closure([g])
            cyclic.setdefault(mask, elems)
        seen: dict[int, tuple[int, ...]] = dict(cyclic)
        trivial_mask = 1 << self.identity
        seen.setdefault(trivial_mask, (self.identity,))
        for elems in list(seen.values()):
            yield SubgroupRef(self, elems, validate=False)
        frontier = list(seen)
        while frontier:
            fresh = []
            for amask in frontier:
                aelems = seen[amask]
                for cmask, celems in cyclic.items():
                    if cmask | amask == amask:
                        continue
                    jelems, jmask = self._closure(aelems + celems)
                    if jmask not in seen:
                        seen[jmask] = jelems
                        fresh.append(jmask)
                        yield SubgroupRef(self, jelems, validate=False)
            frontier = fresh

    def subgroups_up_to_conjugacy(self, cap: int = SUBGROUP_ENUM_CAP) -> list[SubgroupRef]:
        """One representative per conjugacy class of subgroups; the rep is the
        (order, elements)-least member of its class."""
        if "subs_conj" in self._cache:
            return self._cache["subs_conj"]
        subs = self.all_subgroups(cap)
        by_mask = {s.mask: s for s in subs}
        unseen = set(by_mask)
        reps = []
        for s in subs:  # already sorted, so first hit of each orbit is the rep
            if s.mask not in unseen:
                continue
            orbit = {s.mask}
            for t in range(self.order):
                cm = s.conjugate_mask(t)
                if cm in unseen:
                    orbit.add(cm)
            unseen -= orbit
            reps.append(s)
        self._cache["subs_conj"] = reps
        return reps

    def minimal_normal_subgroups(self) -> list[SubgroupRef]:
        if self.order == 1:
            raise TrivialGroup("minimal normal subgroups undefined for the trivial group")
        if "min_normals" in self._cache:
            return self._cache["min_normals"]
        cands: dict[int, SubgroupRef] = {}
        for g in range(self.order):
            if g == self.identity:
                continue
            n = self.normal_closure([g])
            cands.setdefault(n.mask, n)
        minimal = []
        for m, s in cands.items():
            if not any(m2 != m and m2 | m == m for m2 in cands):
                minimal.append(s)
        minimal.sort(key=lambda s: (s.order, s.elements))
        self._cache["min_normals"] = minimal
        return minimal

    def socle(self) -> SubgroupRef:
        return self._socle_part("socle", lambda s: True)

    def socle_abelian(self) -> SubgroupRef:
        return self._socle_part("socle_abelian", lambda s: s.is_abelian())

    def socle_nonabelian(self) -> SubgroupRef:
        return self._socle_part("socle_nonabelian", lambda s: not s.is_abelian())

    def _socle_part(self, key, keep) -> SubgroupRef:
        if key not in self._cache:
            gens: list[int] = []
            for m in self.minimal_normal_subgroups():
                if keep(m):
                    gens.extend(m.elements)
            self._cache[key] = self.subgroup_generated(gens)
        return self._cache[key]

    def is_generated_by_single_class(self, n: SubgroupRef) -> tuple[bool, int | None]:
        """Whether N is the normal closure of one of its elements; witness too."""
        if n.parent is not self:
            raise NotASubgroup("subgroup belongs to a different group")
        if not n.is_normal():
            raise NotNormal("argument must be a normal subgroup")
        if n.order == 1:
            return True, self.identity
        for g in n.elements:
            if g == self.identity:
                continue
            if self.normal_closure([g]).mask == n.mask:
                return True, g
        return False, None

    # -- quotients and products --------------------------------------------

    def quotient(self, n: SubgroupRef) -> tuple[FiniteGroup, GroupHom]:
        if n.parent is not self:
            raise NotASubgroup("subgroup belongs to a different group")
        if not n.is_normal():
            raise NotNormal("cannot quotient by a non-normal subgroup")
        key = ("quotient", n.mask)
        if key in self._cache:
            return self._cache[key]
        mul = self.mul
        coset_of = [-1] * self.order
        reps = []
        for g in range(self.order):  # ascending, so each coset's rep is least
            if coset_of[g] >= 0:
                continue
            idx = len(reps)
            reps.append(g)
            for x in n.elements:
                coset_of[mul[x][g]] = idx
        qmul = [[coset_of[mul[a][b]] for b in reps] for a in reps]
        labels = [f"[{self.labels[r]}]" for r in reps]
        gens = {}
        for name, g in self.gens.items():
            gens.setdefault(name, coset_of[g])
        marks = {}
        for name, g in self.marks.items():
            marks.setdefault(name, coset_of[g])
        q = FiniteGroup(qmul, labels=labels, gens=gens, marks=marks,
                        name=f"{self.name}/N{n.order}", validate=False)
        proj = GroupHom(self, q, coset_of, validate=False)
        self._cache[key] = (q, proj)
        return q, proj

    def to_json(self) -> dict:
        return {"order": self.order, "mul": [list(r) for r in self.mul],
                "labels": list(self.labels)}

    @staticmethod
    def from_json(obj: dict) -> FiniteGroup:
        return FiniteGroup.from_multiplication_table(obj["mul"], labels=obj.get("labels"))

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order={self.order}>"


class SubgroupRef:
    """A subgroup as a sorted index set inside a fixed parent group."""

    __slots__ = ("parent", "elements", "mask")

    def __init__(self, parent: FiniteGroup, elements, validate=True):
        self.parent = parent
        elems = sorted(set(elements))
        if not elems:
            elems = [parent.identity]
        self.elements = tuple(elems)
        mask = 0
        for g in elems:
            mask |= 1 << g
        self.mask = mask
        if validate:
            mul = parent.mul
            for a in elems:
                ra = mul[a]
                for b in elems:
                    if not (mask >> ra[b]) & 1:
                        raise NotASubgroup(f"not closed: {a}*{b} escapes the set")

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: int) -> bool:
        return bool((self.mask >> g) & 1)

    def contains_set(self, other: SubgroupRef) -> bool:
        return other.mask | self.mask == self.mask

    def conjugate_mask(self, t: int) -> int:
        p = self.parent
        m = 0
        for g in self.elements:
            m |= 1 << p.conj(g, t)
        return m

    def conjugate_by(self, t: int) -> SubgroupRef:
        p = self.parent
        return SubgroupRef(p, [p.conj(g, t) for g in self.elements], validate=False)

    def is_normal(self) -> bool:
        return all(self.conjugate_mask(t) == self.mask for t in range(self.parent.order))

    def is_abelian(self) -> bool:
        mul = self.parent.mul
        return all(mul[a][b] == mul[b][a]
                   for i, a in enumerate(self.elements) for b in self.elements[i + 1:])

    def intersection(self, other: SubgroupRef) -> SubgroupRef:
        m = self.mask & other.mask
        return SubgroupRef(self.parent,
                           [g for g in self.elements if (m >> g) & 1], validate=False)

    def join(self, other: SubgroupRef) -> SubgroupRef:
        return self.parent.subgroup_generated(self.elements + other.elements)

    def core(self) -> SubgroupRef:
        """Largest normal subgroup of the parent inside self."""
        p = self.parent
        m = self.mask
        for t in range(p.order):
            m &= self.conjugate_mask(t)
        return SubgroupRef(p, [g for g in self.elements if (m >> g) & 1], validate=False)

    def as_group(self) -> tuple[FiniteGroup, GroupHom]:
        """Standalone group on this subgroup plus the embedding hom into the parent."""
        key = ("as_group", self.mask)
        cache = self.parent._cache
        if key not in cache:
            p = self.parent
            elems = self.elements
            pos = {g: i for i, g in enumerate(elems)}
            mul = [[pos[p.mul[a][b]] for b in elems] for a in elems]
            labels = [p.labels[g] for g in elems]
            gens = {name: pos[g] for name, g in p.gens.items() if g in pos}
            marks = {name: pos[g] for name, g in p.marks.items() if g in pos}
            h = FiniteGroup(mul, labels=labels, gens=gens, marks=marks,
                            name=f"{p.name}-sub{self.order}", validate=False)
            emb = GroupHom(h, p, list(elems), validate=False)
            cache[key] = (h, emb)
        return cache[key]

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubgroupRef) and self.parent is other.parent
                and self.mask == other.mask)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent.name}>"


class GroupHom:
    """A homomorphism given by its value on every source element."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images, validate=True):
        self.source = source
        self.target = target
        self.images = list(images)
        if len(self.images) != source.order:
            raise NotAHomomorphism("one image per source element required")
        if validate:
            ms, mt = source.mul, target.mul
            im = self.images
            for a in range(source.order):
                for b in range(source.order):
                    if im[ms[a][b]] != mt[im[a]][im[b]]:
                        raise NotAHomomorphism(f"f(a*b) != f(a)*f(b) at a={a}, b={b}")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def kernel(self) -> SubgroupRef:
        e = self.target.identity
        return SubgroupRef(self.source,
                           [g for g, x in enumerate(self.images) if x == e],
                           validate=False)

    def image(self) -> SubgroupRef:
        return SubgroupRef(self.target, set(self.images), validate=False)

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def compose(self, inner: GroupHom) -> GroupHom:
        """self after inner."""
        return GroupHom(inner.source, self.target,
                        [self.images[x] for x in inner.images], validate=False)


def are_isomorphic(g1: FiniteGroup, g2: FiniteGroup) -> bool:
    """Brute-force isomorphism test by generator-image search (small groups)."""
    if g1.order != g2.order:
        return False
    if g1.order > 512:
        raise OrderCapExceeded("isomorphism search capped at order 512")
    orders1 = [g1.element_order(g) for g in range(g1.order)]
    orders2 = [g2.element_order(g) for g in range(g2.order)]
    if sorted(orders1) != sorted(orders2):
        return False
    cc1, cc2 = g1.conjugacy_classes(), g2.conjugacy_classes()
    size1 = [len(cc1.classes[cc1.class_of[g]]) for g in range(g1.order)]
    size2 = [len(cc2.classes[cc2.class_of[g]]) for g in range(g2.order)]
    if sorted(zip(orders1, size1)) != sorted(zip(orders2, size2)):
        return False
    gens = []
    cur = g1.subgroup_generated([])
    for g in range(g1.order):
        if not cur.contains(g):
            gens.append(g)
            cur = g1.subgroup_generated(gens)
    candidates = [
        [h for h in range(g2.order)
         if orders2[h] == orders1[g] and size2[h] == size1[g]]
        for g in gens
    ]
    mul1, mul2 = g1.mul, g2.mul

    def extend(images: list[int]) -> bool:
        phi = {g1.identity: g2.identity}
        for g, h in zip(gens, images):
            if phi.setdefault(g, h) != h:
                return False
        frontier = [g1.identity] + list(gens)
        while frontier:
            x = frontier.pop()
            for g, h in zip(gens, images):
                y, w = mul1[x][g], mul2[phi[x]][h]
                if y in phi:
                    if phi[y] != w:
                        return False
                else:
                    phi[y] = w
                    frontier.append(y)
        if len(phi) != g1.order or len(set(phi.values())) != g1.order:
            return False
        for a in phi:
            fa = phi[a]
            for g, h in zip(gens, images):
                if phi[mul1[a][g]] != mul2[fa][h]:
                    return False
        return True

    return any(extend(list(images)) for images in itertools.product(*candidates))
