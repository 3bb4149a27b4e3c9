"""Reference computations used as test oracles.

Everything here is deliberately naive and shares no code with the package's
elimination, composition or graded-piece routines: plain Python lists,
Leibniz determinants, all words instead of compositions, polynomial products
expanded term by term.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from esheaves.exact.poly import Poly


def gauss_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in row] for row in rows]
    if not a:
        return 0
    nc = len(a[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


def perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(mat: Sequence[Sequence], one):
    n = len(mat)
    total = one * 0
    for perm in itertools.permutations(range(n)):
        term = one
        for i in range(n):
            term = term * mat[i][perm[i]]
        total = total + term if perm_sign(perm) > 0 else total - term
    return total


def minor_rank(entries: Sequence[Sequence[Poly]], p: int, nvars: int) -> int:
    """Largest k with a nonzero k x k minor (Leibniz expansion over k[T])."""
    nr = len(entries)
    nc = len(entries[0]) if nr else 0
    one = Poly.const(p, nvars, 1)
    best = 0
    for k in range(1, min(nr, nc) + 1):
        found = False
        for rows in itertools.combinations(range(nr), k):
            for cols in itertools.combinations(range(nc), k):
                sub = [[entries[i][j] for j in cols] for i in rows]
                if not leibniz_det(sub, one).is_zero():
                    found = True
                    break
            if found:
                break
        if not found:
            break
        best = k
    return best


def ext_mul(a: int, b: int, p: int, modulus: Sequence[int]) -> int:
    """Multiply packed base-p digit vectors modulo a monic polynomial
    (``modulus`` lists coefficients from the constant term up, monic top)."""
    k = len(modulus) - 1
    da = [(a // p**i) % p for i in range(k)]
    db = [(b // p**i) % p for i in range(k)]
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(2 * k - 2, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modulus[i]) % p
    return sum(prod[i] * p**i for i in range(k))


def matmul(a, b, p):
    n, m, q = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(m)) % p for j in range(q)] for i in range(n)]


def words(ops, j: int, p: int):
    """All ordered products of j operators (with repetition)."""
    m = len(ops[0])
    ident = [[int(i == k) for k in range(m)] for i in range(m)]
    for w in itertools.product(range(len(ops)), repeat=j):
        acc = ident
        for s in w:
            acc = matmul(ops[s], acc, p)
        yield acc


def rad_soc_bruteforce(action_mats, eps_cols, j: int, p: int) -> tuple[int, int]:
    """dim Rad^j and dim Soc^j from all words of length j in the operators
    rho(eps_s) = sum_i eps[i, s] rho(x_i)."""
    m = len(action_mats[0])
    ops = []
    for col in eps_cols:
        op = [[0] * m for _ in range(m)]
        for i, c in enumerate(col):
            if c:
                for a in range(m):
                    for b in range(m):
                        op[a][b] = (op[a][b] + c * int(action_mats[i][a][b])) % p
        ops.append(op)
    all_words = list(words(ops, j, p))
    # Rad: column span of all words side by side
    cols = [[w[a][b] for w in all_words for b in range(m)] for a in range(m)]
    rad = gauss_rank(cols, p)
    stacked = [row for w in all_words for row in w]
    soc = m - gauss_rank(stacked, p)
    return rad, soc


def graded_kernel_dim(blocks, m: int, d: int, p: int) -> int:
    """dim of {v in k[s,t]_d^m : B v = 0 for every block B}.

    Each block is a list of rows of homogeneous Polys in (s, t).  The map is
    written out by multiplying every basis vector e_c * s^a t^(d-a) through
    the polynomial entries.
    """
    basis = [(c, a) for c in range(m) for a in range(d + 1)]
    keys: dict = {}
    columns = []
    for c, a in basis:
        mono = Poly.monomial(p, (a, d - a), 1)
        col: dict = {}
        for bi, block in enumerate(blocks):
            for i, row in enumerate(block):
                q = row[c] * mono
                for e, v in q.terms.items():
                    key = (bi, i, e)
                    col[key] = (col.get(key, 0) + v) % p
        for key in col:
            keys.setdefault(key, len(keys))
        columns.append(col)
    rows = [[0] * len(basis) for _ in range(len(keys))]
    for jj, col in enumerate(columns):
        for key, v in col.items():
            rows[keys[key]][jj] = v
    return len(basis) - gauss_rank(rows, p)


def hilbert_from_twists(twists: Sequence[int], d: int) -> int:
    return sum(max(0, d + a + 1) for a in twists)
