"""Matrices over F_p[T_1..T_d], stored as monomial -> coefficient matrix.

Generic ranks are ranks over the fraction field F_p(T).  They are computed
by fraction-free (Bareiss) elimination after an exact F_p compression of
rows and columns; a random specialization supplies a lower bound that
short-circuits the elimination when it already attains the maximum.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg
from .fields import Field, PrimeField, gf
from .poly import Mono, Poly
from .ratfunc import RatFunc


class PolyMatrix:
    __slots__ = ("p", "nvars", "shape", "coeffs")

    def __init__(self, p: int, nvars: int, shape: tuple[int, int], coeffs: dict | None = None):
        self.p = p
        self.nvars = nvars
        self.shape = (int(shape[0]), int(shape[1]))
        clean: dict[Mono, np.ndarray] = {}
        for mono, c in (coeffs or {}).items():
            c = np.asarray(c, dtype=np.int64) % p
            if c.shape != self.shape:
                raise ValueError("coefficient block has the wrong shape")
            if c.any():
                clean[tuple(mono)] = c
        self.coeffs = clean

    @classmethod
    def constant(cls, p: int, nvars: int, a) -> "PolyMatrix":
        a = np.asarray(a, dtype=np.int64)
        return cls(p, nvars, a.shape, {(0,) * nvars: a})

    @classmethod
    def zeros(cls, p: int, nvars: int, shape) -> "PolyMatrix":
        return cls(p, nvars, shape)

    @classmethod
    def from_entries(cls, p: int, nvars: int, entries: Sequence[Sequence[Poly]], shape=None) -> "PolyMatrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else (shape[1] if shape else 0)
        coeffs: dict[Mono, np.ndarray] = {}
        for i, row in enumerate(entries):
            for j, q in enumerate(row):
                if isinstance(q, int):
                    q = Poly.const(p, nvars, q)
                for mono, c in q.terms.items():
                    blk = coeffs.setdefault(mono, np.zeros((rows, cols), dtype=np.int64))
                    blk[i, j] = (blk[i, j] + c) % p
        return cls(p, nvars, (rows, cols), coeffs)

    def entries(self) -> list[list[Poly]]:
        rows, cols = self.shape
        out = [[{} for _ in range(cols)] for _ in range(rows)]
        for mono, c in self.coeffs.items():
            for i, j in zip(*np.nonzero(c)):
                out[i][j][mono] = int(c[i, j])
        return [[Poly(self.p, self.nvars, t) for t in row] for row in out]

    def entry(self, i: int, j: int) -> Poly:
        return Poly(self.p, self.nvars, {m: int(c[i, j]) for m, c in self.coeffs.items() if c[i, j]})

    # arithmetic
    def _check(self, other: "PolyMatrix") -> None:
        if other.p != self.p or other.nvars != self.nvars:
            raise ValueError("incompatible polynomial matrices")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if other.shape != self.shape:
            raise ValueError("shape mismatch")
        coeffs = {m: c.copy() for m, c in self.coeffs.items()}
        for m, c in other.coeffs.items():
            coeffs[m] = (coeffs[m] + c) % self.p if m in coeffs else c
        return PolyMatrix(self.p, self.nvars, self.shape, coeffs)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.p, self.nvars, self.shape, {m: (-c) % self.p for m, c in self.coeffs.items()})

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch in product")
        shape = (self.shape[0], other.shape[1])
        f = gf(self.p)
        coeffs: dict[Mono, np.ndarray] = {}
        for m1, a in self.coeffs.items():
            for m2, b in other.coeffs.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                prod = f.matmul(a, b)
                coeffs[m] = (coeffs[m] + prod) % self.p if m in coeffs else prod
        return PolyMatrix(self.p, self.nvars, shape, coeffs)

    def scale(self, q: Poly) -> "PolyMatrix":
        coeffs: dict[Mono, np.ndarray] = {}
        for m1, c in q.terms.items():
            for m2, a in self.coeffs.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                blk = (a * c) % self.p
                coeffs[m] = (coeffs[m] + blk) % self.p if m in coeffs else blk
        return PolyMatrix(self.p, self.nvars, self.shape, coeffs)

    def __pow__(self, e: int) -> "PolyMatrix":
        n = self.shape[0]
        out = PolyMatrix.constant(self.p, self.nvars, np.eye(n, dtype=np.int64))
        for _ in range(e):
            out = out @ self
        return out

    @property
    def T(self) -> "PolyMatrix":
        return PolyMatrix(self.p, self.nvars, self.shape[::-1], {m: c.T.copy() for m, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if (self.p, self.nvars, self.shape) != (other.p, other.nvars, other.shape):
            return False
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(np.array_equal(c, other.coeffs[m]) for m, c in self.coeffs.items())

    def take_rows(self, idx) -> "PolyMatrix":
        idx = list(idx)
        return PolyMatrix(self.p, self.nvars, (len(idx), self.shape[1]), {m: c[idx] for m, c in self.coeffs.items()})

    def take_cols(self, idx) -> "PolyMatrix":
        idx = list(idx)
        return PolyMatrix(self.p, self.nvars, (self.shape[0], len(idx)), {m: c[:, idx] for m, c in self.coeffs.items()})

    def degree(self) -> int:
        return max((sum(m) for m in self.coeffs), default=-1)

    def homogeneous_degree(self) -> int | None:
        """Common total degree of all nonzero entries, or None if mixed."""
        degs = {sum(m) for m in self.coeffs}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    # evaluation
    def specialize(self, field: Field, point: Sequence[int]) -> np.ndarray:
        point = [int(x) for x in point]
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, matrix ring has {self.nvars}")
        out = np.zeros(self.shape, dtype=np.int64)
        prime = isinstance(field, PrimeField)
        for mono, c in self.coeffs.items():
            val = 1
            for x, e in zip(point, mono):
                if e:
                    val = field.mul(val, field.power(x, e))
            val = int(val)
            if val == 0:
                continue
            if prime:
                out = (out + c * val) % field.p
            else:
                out = field.add(out, field.mul(c, val))
        return out

    def coefficient_layout(self) -> tuple[np.ndarray, list[Mono]]:
        """Rows of the matrix as F_p vectors indexed by (monomial, column)."""
        monos = sorted(self.coeffs)
        if not monos:
            return np.zeros((self.shape[0], 0), dtype=np.int64), []
        return np.concatenate([self.coeffs[m] for m in monos], axis=1), monos


def vstack(mats: Sequence[PolyMatrix]) -> PolyMatrix:
    p, nv = mats[0].p, mats[0].nvars
    cols = mats[0].shape[1]
    rows = sum(m.shape[0] for m in mats)
    coeffs: dict[Mono, np.ndarray] = {}
    off = 0
    for m in mats:
        if m.shape[1] != cols:
            raise ValueError("column mismatch in vstack")
        for mono, c in m.coeffs.items():
            blk = coeffs.setdefault(mono, np.zeros((rows, cols), dtype=np.int64))
            blk[off : off + m.shape[0]] = c
        off += m.shape[0]
    return PolyMatrix(p, nv, (rows, cols), coeffs)


def hstack(mats: Sequence[PolyMatrix]) -> PolyMatrix:
    return vstack([m.T for m in mats]).T


def independent_rows(pm: PolyMatrix) -> list[int]:
    """Indices of rows that are F_p-independent as polynomial vectors."""
    layout, _ = pm.coefficient_layout()
    if layout.shape[1] == 0:
        return []
    _, piv = linalg.rref(gf(pm.p), layout.T)
    return piv


def compress(pm: PolyMatrix) -> PolyMatrix:
    """Drop rows and columns that are F_p-combinations of others (rank-preserving)."""
    pm = pm.take_rows(independent_rows(pm))
    return pm.take_cols(independent_rows(pm.T))


# ---------------------------------------------------------------- Bareiss

def bareiss_rank(entries: list[list[Poly]]) -> int:
    """Rank over the fraction field by fraction-free elimination."""
    a = [list(row) for row in entries]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    p, nv = a[0][0].p, a[0][0].nvars
    prev = Poly.const(p, nv, 1)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        cand = [i for i in range(r, rows) if not a[i][c].is_zero()]
        if not cand:
            continue
        # sparsest pivot keeps intermediate swell down
        i = min(cand, key=lambda k: (len(a[k][c].terms), k))
        a[r], a[i] = a[i], a[r]
        piv = a[r][c]
        for i in range(r + 1, rows):
            aic = a[i][c]
            row_i = a[i]
            if aic.is_zero():
                if piv != prev:
                    for j in range(c + 1, cols):
                        if not row_i[j].is_zero():
                            row_i[j] = (row_i[j] * piv).exact_div(prev)
                continue
            for j in range(c + 1, cols):
                v = row_i[j] * piv - aic * a[r][j]
                row_i[j] = v.exact_div(prev) if not v.is_zero() else v
            row_i[c] = Poly(p, nv)
        prev = piv
        r += 1
    return r


def _random_point(field: Field, nvars: int, rng: random.Random) -> list[int]:
    return [rng.randrange(field.q) for _ in range(nvars)]


def specialization_lower_bound(pm: PolyMatrix, trials: int = 3, seed: int = 0) -> int:
    if pm.nvars == 0:
        return linalg.rank(gf(pm.p), pm.specialize(gf(pm.p), []))
    k = 1
    while pm.p ** (k + 1) <= 4096 and k < 4:
        k += 1
    field = gf(pm.p, k)
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        best = max(best, linalg.rank(field, pm.specialize(field, _random_point(field, pm.nvars, rng))))
    return best


def generic_rank(pm: PolyMatrix, seed: int = 0) -> int:
    """Exact rank of a polynomial matrix over F_p(T_1..T_d)."""
    if pm.is_zero():
        return 0
    if pm.nvars == 0:
        return linalg.rank(gf(pm.p), pm.specialize(gf(pm.p), []))
    pm = compress(pm)
    lb = specialization_lower_bound(pm, seed=seed)
    if lb == min(pm.shape):
        return lb
    if pm.shape[0] > pm.shape[1]:
        pm = pm.T
    r = bareiss_rank(pm.entries())
    if r < lb:
        raise AssertionError("fraction-free rank below a specialization rank")
    return r


# ---------------------------------------------------------------- fraction field

def rref_objects(a: list[list], is_zero: Callable = lambda x: x.is_zero()) -> tuple[list[list], list[int]]:
    """Gauss-Jordan over any exact field-like scalar type (RatFunc, FieldElem)."""
    a = [list(row) for row in a]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = next((k for k in range(r, rows) if not is_zero(a[k][c])), None)
        if i is None:
            continue
        a[r], a[i] = a[i], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for k in range(rows):
            if k != r and not is_zero(a[k][c]):
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def ratfunc_rank_kernel_image(pm: PolyMatrix):
    """(rank, kernel basis columns, image basis columns) over F_p(T).

    Kernel vectors are returned with denominators cleared, as PolyMatrix
    columns; the image basis is the set of pivot columns of the input.
    """
    ent = pm.entries()
    rat = [[RatFunc(q) for q in row] for row in ent]
    red, piv = rref_objects(rat)
    cols = pm.shape[1]
    free = [c for c in range(cols) if c not in set(piv)]
    kcols: list[list[Poly]] = []
    one = Poly.const(pm.p, pm.nvars, 1)
    for f in free:
        vec = [RatFunc(Poly(pm.p, pm.nvars))] * cols
        vec[f] = RatFunc(one)
        for i, c in enumerate(piv):
            vec[c] = -red[i][f]
        den = one
        for x in vec:
            if x.den != den:
                den = den * x.den.exact_div(_poly_gcd_like(den, x.den))
        kcols.append([(x.num * den.exact_div(x.den)) for x in vec])
    kernel = PolyMatrix.from_entries(pm.p, pm.nvars, [list(r) for r in zip(*kcols)], shape=(cols, 0)) if kcols else PolyMatrix.zeros(pm.p, pm.nvars, (cols, 0))
    return len(piv), kernel, pm.take_cols(piv)


def _poly_gcd_like(a: Poly, b: Poly) -> Poly:
    if a.nvars == 1:
        return a.ugcd(b)
    if a == b:
        return a
    return Poly.const(a.p, a.nvars, 1)


# ---------------------------------------------------------------- univariate

def saturated_kernel_univariate(pm: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix, int]:
    """Unimodular column reduction over F_p[T].

    Returns (W, H, k) with pm @ W = [H | 0], W unimodular, H of full column
    rank k.  The columns of W beyond k are a basis of the saturated kernel
    module; the columns of H are a basis of the image module.
    """
    if pm.nvars != 1:
        raise ValueError("saturated kernels are implemented for one parameter only")
    p = pm.p
    rows, cols = pm.shape
    a = pm.entries()
    # work column-major
    acol = [[a[i][j] for i in range(rows)] for j in range(cols)]
    zero = Poly(p, 1)
    one = Poly.const(p, 1, 1)
    w = [[one if i == j else zero for i in range(cols)] for j in range(cols)]

    def axpy(dst: int, src: int, q: Poly) -> None:
        acol[dst] = [x - q * y for x, y in zip(acol[dst], acol[src])]
        w[dst] = [x - q * y for x, y in zip(w[dst], w[src])]

    k = 0
    for i in range(rows):
        if k == cols:
            break
        while True:
            nz = [c for c in range(k, cols) if not acol[c][i].is_zero()]
            if len(nz) <= 1:
                break
            c0 = min(nz, key=lambda c: (acol[c][i].degree(), c))
            for c in nz:
                if c != c0:
                    q, _ = acol[c][i].udivmod(acol[c0][i])
                    axpy(c, c0, q)
        if nz:
            c0 = nz[0]
            acol[k], acol[c0] = acol[c0], acol[k]
            w[k], w[c0] = w[c0], w[k]
            k += 1
    wm = PolyMatrix.from_entries(p, 1, [list(r) for r in zip(*w)])
    h_entries = [list(r) for r in zip(*acol[:k])] if k else []
    hm = PolyMatrix.from_entries(p, 1, h_entries, shape=(rows, 0)) if k else PolyMatrix.zeros(p, 1, (rows, 0))
    return wm, hm, k


def poly_det(entries: list[list[Poly]]) -> Poly:
    """Determinant by fraction-free elimination (square input)."""
    a = [list(r) for r in entries]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    p, nv = a[0][0].p, a[0][0].nvars
    prev = Poly.const(p, nv, 1)
    sign = 1
    for c in range(n):
        i = next((k for k in range(c, n) if not a[k][c].is_zero()), None)
        if i is None:
            return Poly(p, nv)
        if i != c:
            a[c], a[i] = a[i], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]).exact_div(prev)
            a[i][c] = Poly(p, nv)
        prev = a[c][c]
    return a[n - 1][n - 1] * sign


def specialize_all(pm: PolyMatrix, field: Field, points: Iterable[Sequence[int]]) -> list[np.ndarray]:
    return [pm.specialize(field, pt) for pt in points]
