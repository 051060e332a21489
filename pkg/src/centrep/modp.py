"""Dense linear algebra over prime fields F_p, sized for class-matrix work."""

from __future__ import annotations


def inv_mod(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, m) if rows[i][c] % p), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        f = inv_mod(rows[r][c] % p, p)
        rows[r] = [(x * f) % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] % p:
                g = rows[i][c] % p
                ri, rr = rows[i], rows[r]
                rows[i] = [(x - g * y) % p for x, y in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows[:r], pivots


def nullspace(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {v : mat . v = 0}, each vector reduced mod p."""
    if not mat:
        return []
    n = len(mat[0])
    red, pivots = rref(mat, p)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][free]) % p
        basis.append(v)
    return basis


def mat_vec(mat: list[list[int]], v: list[int], p: int) -> list[int]:
    out = []
    for row in mat:
        s = 0
        for a, b in zip(row, v):
            if b:
                s += a * b
        out.append(s % p)
    return out


def charpoly(mat: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial over F_p, ascending coefficients, monic.

    Hessenberg reduction by similarity, then the standard minor recurrence;
    avoids divisions by anything but pivots, so any p works.
    """
    n = len(mat)
    h = [[x % p for x in row] for row in mat]
    for j in range(n - 2):
        piv = next((r for r in range(j + 1, n) if h[r][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[j + 1], h[piv] = h[piv], h[j + 1]
            for r in range(n):
                h[r][j + 1], h[r][piv] = h[r][piv], h[r][j + 1]
        f = inv_mod(h[j + 1][j], p)
        for r in range(j + 2, n):
            if h[r][j]:
                t = (h[r][j] * f) % p
                hr, hj1 = h[r], h[j + 1]
                h[r] = [(a - t * b) % p for a, b in zip(hr, hj1)]
                for rr in range(n):
                    h[rr][j + 1] = (h[rr][j + 1] + t * h[rr][r]) % p
    # p_k = charpoly of leading k x k block
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        # (x - h[k-1][k-1]) * p_{k-1}
        prev = polys[k - 1]
        cur = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            cur[i + 1] = (cur[i + 1] + c) % p
            cur[i] = (cur[i] - h[k - 1][k - 1] * c) % p
        run = 1
        for m in range(1, k):
            run = (run * h[k - m][k - m - 1]) % p
            if not run:
                break
            coef = (h[k - 1 - m][k - 1] * run) % p
            if coef:
                pm = polys[k - 1 - m]
                for i, c in enumerate(pm):
                    cur[i] = (cur[i] - coef * c) % p
        polys.append(cur)
    return polys[n]


def poly_eval(coeffs: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def poly_roots(coeffs: list[int], p: int) -> list[int]:
    return [x for x in range(p) if poly_eval(coeffs, x, p) == 0]


def sqrt_mod(a: int, p: int) -> int | None:
    a %= p
    for x in range(p):
        if (x * x) % p == a:
            return x
    return None


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fac = []
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            fac.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        fac.append(m)
    for w in range(2, p):
        if all(pow(w, (p - 1) // q, p) != 1 for q in fac):
            return w
    raise ArithmeticError("no primitive root found")
