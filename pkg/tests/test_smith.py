"""Integer matrix tool tests."""

from __future__ import annotations

import random

from centrep.smith import RowLattice, smith_normal_form, solve_mod, xgcd


def mat_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0), (35, 64)]:
        g, u, v = xgcd(a, b)
        assert u * a + v * b == g
        assert g >= 0


def test_smith_small():
    mat = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    diag, u, v = smith_normal_form(mat)
    # d1 = gcd of entries = 2, d1*d2 = gcd of 2x2 minors = 4, product = det = 624
    assert diag == [2, 2, 156]
    prod = mat_mul(mat_mul(u, mat), v)
    for i in range(3):
        for j in range(3):
            assert prod[i][j] == (diag[i] if i == j else 0)


def test_smith_random_shapes():
    rng = random.Random(7)
    for _ in range(30):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        mat = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)]
        diag, u, v = smith_normal_form(mat)
        prod = mat_mul(mat_mul(u, mat), v)
        for i in range(m):
            for j in range(n):
                want = diag[i] if i == j and i < len(diag) else 0
                assert prod[i][j] == want
        for i in range(len(diag) - 1):
            assert diag[i] >= 0
            if diag[i]:
                assert diag[i + 1] % diag[i] == 0
            else:
                assert diag[i + 1] == 0


def test_solve_mod():
    mat = [[2, 0], [0, 4]]
    assert solve_mod(mat, [2, 4], 8) is not None
    assert solve_mod(mat, [1, 0], 8) is None
    x = solve_mod([[3]], [1], 7)
    assert x is not None and (3 * x[0]) % 7 == 1
    # systems built from a known solution must come back solvable
    rng = random.Random(11)
    for _ in range(40):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        mod = rng.choice([2, 4, 6, 9, 12])
        mat = [[rng.randrange(-6, 7) for _ in range(n)] for _ in range(m)]
        sol = [rng.randrange(mod) for _ in range(n)]
        rhs = [sum(mat[i][j] * sol[j] for j in range(n)) % mod for i in range(m)]
        got = solve_mod(mat, rhs, mod)
        assert got is not None
        for i in range(m):
            assert sum(mat[i][j] * got[j] for j in range(n)) % mod == rhs[i] % mod


def test_row_lattice_reduces_dependent_rows():
    lat = RowLattice(3)
    assert lat.insert([2, 0, 2])
    assert lat.insert([0, 3, 0])
    assert not lat.insert([2, 3, 2])
    assert not lat.insert([4, 6, 4])
    assert lat.insert([0, 0, 1])
    rows = lat.echelon_rows()
    assert len(rows) == 3
    leads = [next(i for i, x in enumerate(r) if x) for r in rows]
    assert leads == [0, 1, 2]
