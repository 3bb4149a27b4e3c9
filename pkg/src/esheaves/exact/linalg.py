"""Gaussian elimination over finite fields.

All routines take a :class:`Field` and int64 arrays of encoded elements.
The pivot rule is fixed: scan columns left to right and use the first row
(at or below the current pivot row) with a nonzero entry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import Field, PrimeField


def _as2d(field: Field, a) -> np.ndarray:
    a = np.array(a, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if isinstance(field, PrimeField):
        a %= field.p
    return a


def rref(field: Field, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = _as2d(field, a)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    prime = isinstance(field, PrimeField)
    p = field.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = field.inv(int(a[r, c]))
        if prime:
            a[r] = (a[r] * inv) % p
            col = a[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        else:
            a[r] = field.mul(a[r], inv)
            col = a[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit] = field.sub(a[hit], field.mul(col[hit][:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(field: Field, a) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(field, a)[1])


def nullspace(field: Field, a) -> np.ndarray:
    """Columns spanning {x : a x = 0}, one per free column of the RREF."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    red, piv = rref(field, a)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, pc in enumerate(piv):
            out[pc, k] = field.neg(int(red[i, f]))
    return out


def left_nullspace(field: Field, a) -> np.ndarray:
    """Rows spanning {y : y a = 0}."""
    a = np.asarray(a, dtype=np.int64)
    return nullspace(field, a.T).T


def image(field: Field, a) -> np.ndarray:
    """Columns of ``a`` at pivot positions; a basis of the column space."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    _, piv = rref(field, a)
    return a[:, piv] % field.p if field.k == 1 else a[:, piv]


def row_basis(field: Field, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64)
    return rref(field, a)[0]


def solve(field: Field, a, b) -> np.ndarray | None:
    """One solution x of a x = b (b a matrix), or None if inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if b.ndim == 1:
        b = b[:, None]
    aug = np.concatenate([a, b], axis=1)
    red, piv = rref(field, aug)
    n = a.shape[1]
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = red[i, n:]
    return x


def inverse(field: Field, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(field, a, np.eye(n, dtype=np.int64))
    if x is None or rank(field, a) < n:
        raise ZeroDivisionError("singular matrix")
    return x


def matpow(field: Field, a, e: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    out = np.eye(a.shape[0], dtype=np.int64)
    base = a
    while e:
        if e & 1:
            out = field.matmul(out, base)
        base = field.matmul(base, base)
        e >>= 1
    return out


def restrict_action(field: Field, op, basis) -> np.ndarray:
    """Matrix C with op @ basis = basis @ C; raises if the span is not stable."""
    img = field.matmul(op, basis)
    c = solve(field, basis, img)
    if c is None:
        raise ValueError("subspace is not invariant")
    return c


def subspace_eq(field: Field, a, b) -> bool:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    ra, rb = rank(field, a), rank(field, b)
    if ra != rb:
        return False
    return rank(field, np.concatenate([a, b], axis=1)) == ra


def intersect(field: Field, a, b) -> np.ndarray:
    """Basis columns of colspace(a) ∩ colspace(b)."""
    a = image(field, a)
    b = image(field, b)
    if a.shape[1] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    ker = nullspace(field, np.concatenate([a, field.neg(b)], axis=1))
    return image(field, field.matmul(a, ker[: a.shape[1]]))


@dataclass(frozen=True)
class RKI:
    rank: int
    kernel: np.ndarray
    image: np.ndarray


def rank_kernel_image(field: Field, a) -> RKI:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return RKI(0, np.eye(a.shape[1], dtype=np.int64), np.zeros((a.shape[0], 0), dtype=np.int64))
    red, piv = rref(field, a)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in set(piv)]
    ker = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        ker[f, k] = 1
        for i, pc in enumerate(piv):
            ker[pc, k] = field.neg(int(red[i, f]))
    img = a[:, piv] % field.p if field.k == 1 else a[:, piv]
    return RKI(len(piv), ker, img)
