"""Integer matrix tools: row-lattice accumulation, Smith normal form, modular solve."""

from __future__ import annotations

from math import gcd

from .errors import MathInvariantError


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


class RowLattice:
    """Echelon basis of the row lattice spanned by inserted integer rows.

    Keeps at most `width` rows, keyed by leading column; insertion reduces the
    incoming row against the basis with gcd steps.  Used to shrink huge linear
    systems (row operations are unimodular, so solution sets are preserved).
    """

    def __init__(self, width: int) -> None:
        self.width = width
        self.rows: dict[int, list[int]] = {}

    def insert(self, row: list[int]) -> bool:
        """Add a row; returns False if it was already in the lattice span."""
        r = list(row)
        for lead in range(self.width):
            if not r[lead]:
                continue
            cur = self.rows.get(lead)
            if cur is None:
                if r[lead] < 0:
                    r = [-x for x in r]
                self.rows[lead] = r
                return True
            a, b = cur[lead], r[lead]
            if b % a == 0:
                q = b // a
                r = [x - q * y for x, y in zip(r, cur)]
            else:
                g, u, v = xgcd(a, b)
                merged = [u * x + v * y for x, y in zip(cur, r)]
                r = [(b // g) * x - (a // g) * y for x, y in zip(cur, r)]
                self.rows[lead] = merged
        return False

    def echelon_rows(self) -> list[list[int]]:
        return [self.rows[lead] for lead in sorted(self.rows)]


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(
    mat: list[list[int]],
) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """(diag, U, V) with U*mat*V diagonal = diag padded with zeros,
    diag[i] >= 0 and diag[i] | diag[i+1]; U, V unimodular."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [list(row) for row in mat]
    big_u = _identity(m)
    big_v = _identity(n)

    def row_sub(i: int, j: int, q: int) -> None:
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        big_u[i] = [x - q * y for x, y in zip(big_u[i], big_u[j])]

    def col_sub(j: int, i: int, q: int) -> None:
        for row in a:
            row[j] -= q * row[i]
        for row in big_v:
            row[j] -= q * row[i]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        big_u[i], big_u[j] = big_u[j], big_u[i]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in big_v:
            row[i], row[j] = row[j], row[i]

    def diagonalize_from(start: int) -> None:
        for t in range(start, min(m, n)):
            piv = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = a[i][j]
                    if v and (best is None or abs(v) < best):
                        best = abs(v)
                        piv = (i, j)
            if piv is None:
                return
            row_swap(t, piv[0])
            col_swap(t, piv[1])
            while True:
                if a[t][t] < 0:
                    a[t] = [-x for x in a[t]]
                    big_u[t] = [-x for x in big_u[t]]
                dirty = False
                for i in range(t + 1, m):
                    if a[i][t]:
                        q = a[i][t] // a[t][t]
                        row_sub(i, t, q)
                        if a[i][t]:
                            row_swap(i, t)
                            dirty = True
                for j in range(t + 1, n):
                    if a[t][j]:
                        q = a[t][j] // a[t][t]
                        col_sub(j, t, q)
                        if a[t][j]:
                            col_swap(j, t)
                            dirty = True
                if not dirty:
                    break

    diagonalize_from(0)
    r = min(m, n)
    while True:
        bad = None
        for t in range(r - 1):
            if a[t][t] and a[t + 1][t + 1] % a[t][t] != 0:
                bad = t
                break
            if a[t][t] == 0 and a[t + 1][t + 1] != 0:
                bad = t
                break
        if bad is None:
            break
        # fold the offending pair back into a 2x2 block and re-split
        col_sub(bad, bad + 1, -1)
        diagonalize_from(bad)
    diag = [a[t][t] for t in range(r)]
    return diag, big_u, big_v


def _inv_mod(a: int, m: int) -> int:
    if m == 1:
        return 0
    g, u, _ = xgcd(a % m, m)
    if g != 1:
        raise MathInvariantError("modular inverse of a non-unit")
    return u % m


def solve_mod(mat: list[list[int]], rhs: list[int], mod: int) -> list[int] | None:
    """One x with mat*x = rhs (mod `mod`), or None when infeasible."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if m == 0:
        return [0] * n
    if n == 0:
        return [] if all(v % mod == 0 for v in rhs) else None
    diag, big_u, big_v = smith_normal_form(mat)
    c = [sum(big_u[i][k] * rhs[k] for k in range(m)) % mod for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        g = gcd(d, mod)
        if c[i] % g:
            return None
        if i < n:
            sub = mod // g
            y[i] = (c[i] // g) * _inv_mod(d // g, sub) % sub
    x = [sum(big_v[i][j] * y[j] for j in range(n)) % mod for i in range(n)]
    for i in range(m):
        if (sum(mat[i][j] * x[j] for j in range(n)) - rhs[i]) % mod:
            raise MathInvariantError("modular solver produced a non-solution")
    return x
