"""Constructors for named groups, permutation closures, and products."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    NotAPermutation,
    OrderCapExceeded,
    ParameterOutOfRange,
    UnknownSpec,
)
from .groups import FiniteGroup, GroupHom, SubgroupRef

PERM_CLOSURE_CAP = 10000


def from_permutation_generators(perms, cap: int = PERM_CLOSURE_CAP,
                                labels=None, gen_names=None, name=None) -> FiniteGroup:
    """Close a list of permutation tuples under composition.

    Element order is BFS discovery order from the identity, generators applied
    in the given order; composition is (p*q)(i) = p(q(i)).
    """
    perms = [tuple(p) for p in perms]
    if not perms:
        raise ParameterOutOfRange("at least one generator required")
    deg = len(perms[0])
    for p in perms:
        if len(p) != deg or sorted(p) != list(range(deg)):
            raise NotAPermutation(f"not a permutation of 0..{deg - 1}: {p}")
    ident = tuple(range(deg))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        v = elems[i]
        for g in perms:
            w = tuple(v[g[j]] for j in range(deg))  # v*g
            if w not in index:
                if len(elems) >= cap:
                    raise OrderCapExceeded(f"closure exceeds cap {cap}")
                index[w] = len(elems)
                elems.append(w)
        i += 1
    n = len(elems)
    mul = [[0] * n for _ in range(n)]
    for a, pa in enumerate(elems):
        row = mul[a]
        for b, pb in enumerate(elems):
            row[b] = index[tuple(pa[pb[j]] for j in range(deg))]
    if labels is None:
        labels = [_cycle_label(p) for p in elems]
    gens = {}
    if gen_names:
        for nm, p in zip(gen_names, perms):
            gens[nm] = index[p]
    return FiniteGroup(mul, labels=labels, gens=gens,
                       name=name or f"perm-group-{n}", validate=False)


def _cycle_label(p) -> str:
    seen = [False] * len(p)
    parts = []
    for s in range(len(p)):
        if seen[s] or p[s] == s:
            seen[s] = True
            continue
        cyc = [s]
        seen[s] = True
        t = p[s]
        while t != s:
            cyc.append(t)
            seen[t] = True
            t = p[t]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) if parts else "()"


# -- named families ----------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ParameterOutOfRange("cyclic order must be >= 1")
    mul = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["1"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    gens = {"g": 1 % n}
    return FiniteGroup(mul, labels=labels, gens=gens, name=f"C{n}", validate=False)


def dihedral_group(order: int) -> FiniteGroup:
    if order < 4 or order % 2:
        raise ParameterOutOfRange("dihedral order must be even and >= 4")
    n = order // 2
    # element (i, j) = r^i s^j, index i + n*j
    def idx(i, j):
        return i % n + n * (j % 2)
    mul = [[0] * order for _ in range(order)]
    for i1 in range(n):
        for j1 in range(2):
            a = idx(i1, j1)
            for i2 in range(n):
                for j2 in range(2):
                    # s r = r^-1 s
                    i = i1 + i2 if j1 == 0 else i1 - i2
                    mul[a][idx(i2, j2)] = idx(i, j1 ^ j2)
    labels = []
    for j in range(2):
        for i in range(n):
            rot = "1" if i == 0 else ("r" if i == 1 else f"r^{i}")
            labels.append(rot if j == 0 else ("s" if i == 0 else f"{rot}*s"))
    gens = {"r": idx(1, 0), "s": idx(0, 1)}
    marks = {"z": idx(n // 2, 0)} if n % 2 == 0 else {}  # the central involution
    return FiniteGroup(mul, labels=labels, gens=gens, marks=marks,
                       name=f"D{order}", validate=False)


def generalized_quaternion_group(order: int) -> FiniteGroup:
    if order < 8 or order % 4:
        raise ParameterOutOfRange("generalized quaternion order must be 4n, n >= 2")
    m = order // 2  # a has order 2n = m
    def idx(i, j):
        return i % m + m * (j % 2)
    mul = [[0] * order for _ in range(order)]
    for i1 in range(m):
        for j1 in range(2):
            a = idx(i1, j1)
            for i2 in range(m):
                for j2 in range(2):
                    i = i1 + i2 if j1 == 0 else i1 - i2
                    if j1 and j2:
                        i += m // 2  # b^2 = a^n
                    mul[a][idx(i2, j2)] = idx(i, j1 ^ j2)
    labels = []
    for j in range(2):
        for i in range(m):
            rot = "1" if i == 0 else ("a" if i == 1 else f"a^{i}")
            labels.append(rot if j == 0 else ("b" if i == 0 else f"{rot}*b"))
    gens = {"a": idx(1, 0), "b": idx(0, 1)}
    marks = {"z": idx(m // 2, 0)}
    return FiniteGroup(mul, labels=labels, gens=gens, marks=marks,
                       name=f"Q{order}", validate=False)


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise ParameterOutOfRange("symmetric degree must be between 1 and 6")
    return _perm_family(list(permutations(range(n))), f"S{n}", n)


def alternating_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise ParameterOutOfRange("alternating degree must be between 1 and 6")
    evens = [p for p in permutations(range(n)) if _parity(p) == 0]
    return _perm_family(evens, f"A{n}", n)


def _parity(p) -> int:
    seen = [False] * len(p)
    par = 0
    for s in range(len(p)):
        if seen[s]:
            continue
        t, ln = s, 0
        while not seen[t]:
            seen[t] = True
            t = p[t]
            ln += 1
        par ^= (ln - 1) & 1
    return par


def _perm_family(elems, name, deg) -> FiniteGroup:
    elems = sorted(elems)  # identity first
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    mul = [[0] * n for _ in range(n)]
    for a, pa in enumerate(elems):
        row = mul[a]
        for b, pb in enumerate(elems):
            row[b] = index[tuple(pa[pb[j]] for j in range(deg))]
    labels = [_cycle_label(p) for p in elems]
    gens = {}
    if deg >= 2:
        tr = tuple([1, 0] + list(range(2, deg)))
        if tr in index:
            gens["t"] = index[tr]
    if deg >= 3:
        three = tuple([1, 2, 0] + list(range(3, deg)))
        if three in index:
            gens["c3"] = index[three]
    cyc = tuple(list(range(1, deg)) + [0])
    if cyc in index:
        gens["c"] = index[cyc]
    return FiniteGroup(mul, labels=labels, gens=gens, name=name, validate=False)


def elementary_abelian_group(p: int, k: int) -> FiniteGroup:
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise ParameterOutOfRange("p must be prime")
    if k < 1 or p ** k > 4096:
        raise ParameterOutOfRange("need k >= 1 and p^k <= 4096")
    n = p ** k
    def digits(x):
        out = []
        for _ in range(k):
            out.append(x % p)
            x //= p
        return out[::-1]
    def undigits(d):
        x = 0
        for t in d:
            x = x * p + t
        return x
    mul = [[0] * n for _ in range(n)]
    for a in range(n):
        da = digits(a)
        for b in range(n):
            db = digits(b)
            mul[a][b] = undigits([(x + y) % p for x, y in zip(da, db)])
    labels = ["v" + "".join(map(str, digits(a))) for a in range(n)]
    gens = {f"e{i + 1}": p ** (k - 1 - i) for i in range(k)}
    return FiniteGroup(mul, labels=labels, gens=gens, name=f"EA({p},{k})", validate=False)


def heisenberg_group(m: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/m, generators x, y, z = [x, y]."""
    if m < 2 or m ** 3 > 4096:
        raise ParameterOutOfRange("need m >= 2 and m^3 <= 4096")
    n = m ** 3
    def idx(a, b, c):
        return (a % m) * m * m + (b % m) * m + (c % m)
    mul = [[0] * n for _ in range(n)]
    for a1 in range(m):
        for b1 in range(m):
            for c1 in range(m):
                row = mul[idx(a1, b1, c1)]
                for a2 in range(m):
                    for b2 in range(m):
                        for c2 in range(m):
                            row[idx(a2, b2, c2)] = idx(a1 + a2, b1 + b2,
                                                       c1 + c2 + a1 * b2)
    labels = []
    for a in range(m):
        for b in range(m):
            for c in range(m):
                parts = []
                if a:
                    parts.append("x" if a == 1 else f"x^{a}")
                if b:
                    parts.append("y" if b == 1 else f"y^{b}")
                if c:
                    parts.append("z" if c == 1 else f"z^{c}")
                labels.append("*".join(parts) if parts else "1")
    gens = {"x": idx(1, 0, 0), "y": idx(0, 1, 0), "z": idx(0, 0, 1)}
    return FiniteGroup(mul, labels=labels, gens=gens, name=f"Heis({m})", validate=False)


_NAMED = {
    "cyclic": (1, cyclic_group),
    "dihedral": (1, dihedral_group),
    "generalized_quaternion": (1, generalized_quaternion_group),
    "symmetric": (1, symmetric_group),
    "alternating": (1, alternating_group),
    "elementary_abelian": (2, elementary_abelian_group),
    "heisenberg": (1, heisenberg_group),
}


def construct_named(kind: str, *params: int) -> FiniteGroup:
    if kind not in _NAMED:
        raise UnknownSpec(f"unknown named group kind: {kind!r}")
    arity, fn = _NAMED[kind]
    if len(params) != arity:
        raise ParameterOutOfRange(f"{kind} takes {arity} parameter(s)")
    return fn(*params)


# -- products -----------------------------------------------------------------


def direct_product_many(factors) -> tuple[FiniteGroup, list[GroupHom]]:
    """Direct product with flat element tuples; factor i's generator names get
    suffix i+1.  Returns the product and one embedding per factor."""
    factors = list(factors)
    if not factors:
        raise ParameterOutOfRange("at least one factor required")
    sizes = [g.order for g in factors]
    n = 1
    for s in sizes:
        n *= s
    strides = []
    acc = 1
    for s in reversed(sizes):
        strides.append(acc)
        acc *= s
    strides = strides[::-1]

    def pack(tup):
        return sum(t * s for t, s in zip(tup, strides))

    def unpack(x):
        out = []
        for s in strides:
            out.append(x // s)
            x %= s
        return out

    mul = [[0] * n for _ in range(n)]
    for a in range(n):
        da = unpack(a)
        row = mul[a]
        for b in range(n):
            db = unpack(b)
            row[b] = pack([g.mul[x][y] for g, x, y in zip(factors, da, db)])
    labels = []
    for a in range(n):
        da = unpack(a)
        labels.append("(" + ",".join(g.labels[x] for g, x in zip(factors, da)) + ")")
    gens = {}
    marks = {}
    idents = [g.identity for g in factors]
    for i, g in enumerate(factors):
        for nm, x in g.gens.items():
            tup = list(idents)
            tup[i] = x
            gens[f"{nm}{i + 1}"] = pack(tup)
        for nm, x in g.marks.items():
            tup = list(idents)
            tup[i] = x
            marks[f"{nm}{i + 1}"] = pack(tup)
    name = " x ".join(g.name for g in factors)
    prod = FiniteGroup(mul, labels=labels, gens=gens, marks=marks, name=name,
                       validate=False)
    prod._cache["direct_factors"] = (factors, strides)
    embeddings = []
    for i, g in enumerate(factors):
        ims = []
        for x in range(g.order):
            tup = list(idents)
            tup[i] = x
            ims.append(pack(tup))
        embeddings.append(GroupHom(g, prod, ims, validate=False))
    return prod, embeddings


def direct_product(g1: FiniteGroup, g2: FiniteGroup):
    prod, embs = direct_product_many([g1, g2])
    return prod, embs[0], embs[1]


def semidirect_product(n_grp: FiniteGroup, h_grp: FiniteGroup, action) -> FiniteGroup:
    """N x| H with multiplication (n1,h1)(n2,h2) = (n1 * h1.n2, h1*h2).

    `action` maps each H element to a permutation (list) of N's elements and
    must be a homomorphism H -> Aut(N); both facts are checked.
    """
    acts = [list(action(h)) if callable(action) else list(action[h])
            for h in range(h_grp.order)]
    nn, nh = n_grp.order, h_grp.order
    for h, perm in enumerate(acts):
        if sorted(perm) != list(range(nn)):
            raise ActionNotAutomorphism(f"action of h={h} is not a permutation of N")
        if perm[n_grp.identity] != n_grp.identity:
            raise ActionNotAutomorphism(f"action of h={h} does not fix the identity")
        for a in range(nn):
            for b in range(nn):
                if perm[n_grp.mul[a][b]] != n_grp.mul[perm[a]][perm[b]]:
                    raise ActionNotAutomorphism(
                        f"action of h={h} breaks multiplicativity at ({a},{b})")
    for h1 in range(nh):
        for h2 in range(nh):
            composed = [acts[h1][acts[h2][x]] for x in range(nn)]
            if composed != acts[h_grp.mul[h1][h2]]:
                raise ActionNotHomomorphism(
                    f"action(h1*h2) != action(h1) o action(h2) at ({h1},{h2})")
    order = nn * nh
    def idx(a, h):
        return a * nh + h
    mul = [[0] * order for _ in range(order)]
    for a1 in range(nn):
        for h1 in range(nh):
            row = mul[idx(a1, h1)]
            act1 = acts[h1]
            for a2 in range(nn):
                for h2 in range(nh):
                    row[idx(a2, h2)] = idx(n_grp.mul[a1][act1[a2]], h_grp.mul[h1][h2])
    labels = [f"({n_grp.labels[a]},{h_grp.labels[h]})"
              for a in range(nn) for h in range(nh)]
    gens = {}
    for nm, a in n_grp.gens.items():
        gens[f"{nm}1"] = idx(a, h_grp.identity)
    for nm, h in h_grp.gens.items():
        gens[f"{nm}2"] = idx(n_grp.identity, h)
    marks = {}
    for nm, a in n_grp.marks.items():
        marks[f"{nm}1"] = idx(a, h_grp.identity)
    for nm, h in h_grp.marks.items():
        marks[f"{nm}2"] = idx(n_grp.identity, h)
    return FiniteGroup(mul, labels=labels, gens=gens, marks=marks,
                       name=f"{n_grp.name} x| {h_grp.name}", validate=False)


def _extend_generator_action(n_grp: FiniteGroup, h_grp: FiniteGroup, perm0):
    """Extend 'every declared generator of H acts by perm0' to all of H by BFS.

    Extension can fail to be well-defined, which is reported here; whether
    perm0 is an automorphism is semidirect_product's check.
    """
    ident = list(range(n_grp.order))
    acts: dict[int, list[int]] = {h_grp.identity: ident}
    frontier = [h_grp.identity]
    gen_items = sorted(h_grp.gens.items())
    if not gen_items:
        raise ActionNotHomomorphism("H declares no generators to act through")
    while frontier:
        nxt = []
        for h in frontier:
            for _, g in gen_items:
                hg = h_grp.mul[h][g]
                perm = [acts[h][perm0[x]] for x in range(n_grp.order)]
                if hg in acts:
                    if acts[hg] != perm:
                        raise ActionNotHomomorphism(
                            "generator action does not extend to H")
                else:
                    acts[hg] = perm
                    nxt.append(hg)
        frontier = nxt
    if len(acts) != h_grp.order:
        raise ActionNotHomomorphism("declared generators do not generate H")
    return [acts[h] for h in range(h_grp.order)]


def inversion_action(n_grp: FiniteGroup, h_grp: FiniteGroup):
    """Every declared generator of H inverts N (N must be abelian)."""
    return _extend_generator_action(n_grp, h_grp, list(n_grp.inv))


def diagonal_inversion_action(n_grp: FiniteGroup, h_grp: FiniteGroup):
    """Generators of H swap the two coordinates of N = A x A and invert them."""
    info = n_grp._cache.get("direct_factors")
    if info is None or len(info[0]) != 2 or info[0][0] is not info[0][1]:
        raise ActionNotAutomorphism(
            "diagonal inversion needs a doubled direct product A x A")
    fac = info[0][0]
    s = fac.order
    inv = fac.inv
    perm0 = [inv[x % s] * s + inv[x // s] for x in range(n_grp.order)]
    return _extend_generator_action(n_grp, h_grp, perm0)


def trivial_action(n_grp: FiniteGroup, h_grp: FiniteGroup):
    ident = list(range(n_grp.order))
    return [list(ident) for _ in range(h_grp.order)]


ACTION_REGISTRY = {
    "trivial": trivial_action,
    "inversion": inversion_action,
    "diagonal-inversion": diagonal_inversion_action,
}


# -- distinguished example pairs ------------------------------------------------

@lru_cache(maxsize=None)
def heisenberg_pair() -> tuple[FiniteGroup, SubgroupRef]:
    """Order-16 subgroup <x, y^2> of Heis(4) with its designated H = <x>."""
    amb = heisenberg_group(4)
    ref = amb.subgroup_generated([amb.gens["x"], amb.power(amb.gens["y"], 2)])
    grp, _ = ref.as_group()
    grp.name = "ex-heis-pair"
    grp.marks["u"] = ref.elements.index(amb.power(amb.gens["y"], 2))
    h = grp.subgroup_generated([grp.gens["x"]])
    return grp, h


@lru_cache(maxsize=None)
def dihedral_cube_pair() -> tuple[FiniteGroup, SubgroupRef]:
    """(D8 x D8 x D8) / <z1*z2*z3> with its designated H = <s1, s2, s3>."""
    d8 = dihedral_group(8)
    prod, _ = direct_product_many([d8, d8, d8])
    zzz = prod.mul[prod.mul[prod.marks["z1"]][prod.marks["z2"]]][prod.marks["z3"]]
    grp, proj = prod.quotient(prod.subgroup_generated([zzz]))
    grp.name = "ex-d8cube"
    h = grp.subgroup_generated([grp.gens["s1"], grp.gens["s2"], grp.gens["s3"]])
    return grp, h


@lru_cache(maxsize=None)
def dihedral_on_cyclic_pair() -> tuple[FiniteGroup, SubgroupRef]:
    """The order-32 group <a, b, c> with a^4 = b^2 = c^4 = 1, b^-1ab = a^-1,
    [c, a] = [c, b] = a^2c^2, and a^2, c^2 central; designated H = <a^2, c>.

    Every element has the normal form a^p b^q c^r.  The commutator design
    makes G/<a^2c^2> the central product of D8 and C4 while the other two
    central order-2 quotients have Klein centers, so no irreducible with
    central kernel is center-preserving on H even though H carries a linear
    character with kernel <a^2c^2> inside Z(G) = <a^2, c^2>."""
    def idx(p: int, q: int, r: int) -> int:
        return (p % 4) + 4 * (q % 2) + 8 * (r % 4)

    mul = [[0] * 32 for _ in range(32)]
    for x in range(32):
        p, q, r = x % 4, (x // 4) % 2, x // 8
        for y in range(32):
            p2, q2, r2 = y % 4, (y // 4) % 2, y // 8
            sign_q = -1 if q else 1
            sign = -1 if (p2 + q2) % 2 else 1
            mul[x][y] = idx(p + sign_q * p2 * (1 + 2 * r) + 2 * r * q2,
                            q + q2, sign * r + r2)
    labels = []
    for x in range(32):
        p, q, r = x % 4, (x // 4) % 2, x // 8
        word = [part for part, e in (("a", p), ("b", q), ("c", r)) if e
                for part in [part if e == 1 else f"{part}^{e}"]]
        labels.append("*".join(word) if word else "e")
    grp = FiniteGroup(mul, labels=labels, name="ex-d8xc4")
    a, b, c = idx(1, 0, 0), idx(0, 1, 0), idx(0, 0, 1)
    grp.gens = {"a": a, "b": b, "c": c}
    grp.marks = {"z": mul[grp.power(a, 2)][grp.power(c, 2)]}
    h = grp.subgroup_generated([grp.power(a, 2), c])
    return grp, h
