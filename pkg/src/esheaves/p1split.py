"""Splitting types of kernel and image sheaves on P^1-parametrized loci,
read off from Hilbert functions of graded modules over F_p[s, t]."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .evariety import ChartParam
from .exact import linalg
from .exact.fields import Field, gf
from .exact.graded import graded_piece_map
from .exact.poly import Poly
from .exact.polymat import PolyMatrix, generic_rank, hstack, independent_rows, vstack
from .liealg import EPoint, RestrictedLieAlgebra
from .modrep import UModule, compositions, validate_module
from .theta import _theta_from_frame, check_theta


class StabilizationError(RuntimeError):
    def __init__(self, msg: str, partial: list[int]):
        super().__init__(msg)
        self.partial = partial


@dataclass(frozen=True)
class SplittingType:
    twists: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)

    def hilbert(self, d: int) -> int:
        return sum(max(0, d + a + 1) for a in self.twists)

    def to_json(self) -> list[int]:
        return list(self.twists)


class P1System:
    """Theta operators over F_p[s, t] from a homogeneous frame (s:t) -> eps(s, t)."""

    def __init__(self, M: UModule, frame: Sequence[Sequence[Poly]], label: str = "", L: RestrictedLieAlgebra | None = None, check: bool = True):
        self.M = M
        self.frame = [list(row) for row in frame]
        self.n = len(self.frame)
        self.r = len(self.frame[0])
        self.p = M.p
        self.label = label
        degs = []
        for s in range(self.r):
            col = [row[s] for row in self.frame if not row[s].is_zero()]
            ds = {q.degree() for q in col}
            if not col or len(ds) != 1 or not all(q.is_homogeneous() for q in col):
                raise ValueError(f"frame column {s} is not homogeneous")
            degs.append(ds.pop())
        self.col_degrees = degs
        if L is not None and check:
            rep = validate_module(L, M)
            if not rep.ok:
                raise ValueError(f"module fails validation: {rep.failures()[0].witness}")
        self.theta = _theta_from_frame(M, self.frame, self.p, 2)
        if check:
            check_theta(self.theta, self.p)
        self._pow: dict = {}

    @property
    def m(self) -> int:
        return self.M.dim

    @property
    def entry_degree(self):
        live = sorted({e for e, t in zip(self.col_degrees, self.theta) if not t.is_zero()})
        if len(live) <= 1:
            return live[0] if live else 0
        return live

    def power(self, s: int, e: int) -> PolyMatrix:
        key = (s, e)
        if key not in self._pow:
            if e == 0:
                self._pow[key] = PolyMatrix.constant(self.p, 2, np.eye(self.m, dtype=np.int64))
            else:
                self._pow[key] = self.power(s, e - 1) @ self.theta[s]
        return self._pow[key]

    def blocks(self, j: int) -> list[tuple[int, PolyMatrix]]:
        """(degree, product) for each composition of j, in lexicographic order."""
        if j < 1 or j > (self.p - 1) * self.r:
            raise ValueError(f"j={j} outside 1..{(self.p - 1) * self.r}")
        out = []
        for comp in compositions(j, self.r):
            prod = None
            for s, e in enumerate(comp):
                if e:
                    prod = self.power(s, e) if prod is None else prod @ self.power(s, e)
            deg = sum(e * d for e, d in zip(comp, self.col_degrees))
            out.append((deg, prod))
        return out

    def dehomogenize(self, at: str = "t") -> ChartParam:
        """Affine chart t = 1 (variable s) or s = 1 (variable t)."""
        one = Poly.const(self.p, 1, 1)
        x = Poly.var(self.p, 1, 0)
        subs = [x, one] if at == "t" else [one, x]
        frame = [[q.substitute(subs) for q in row] for row in self.frame]
        return ChartParam(self.p, self.n, self.r, 1, frame, None, f"{self.label} [{at}=1]")

    def points(self, k: int = 1) -> tuple[Field, list[tuple[int, int]]]:
        """Representatives (1 : a) and (0 : 1) of P^1(F_{p^k})."""
        f = gf(self.p, k)
        return f, [(1, a) for a in range(f.q)] + [(0, 1)]

    def point_at(self, field: Field, st: Sequence[int]) -> EPoint:
        eps = np.array([[q.evaluate(field, st) for q in row] for row in self.frame], dtype=np.int64)
        if linalg.rank(field, eps) < self.r:
            raise ValueError("frame is rank deficient at this point")
        return EPoint(field, eps)

    def to_json(self) -> dict:
        coords = []
        for i, row in enumerate(self.frame):
            for j, q in enumerate(row):
                if not q.is_zero():
                    coords.append({"i": i, "j": j, "poly": q.to_json()})
        return {"sigma": None, "params": 2, "homogeneous": True, "r": self.r, "coords": coords, "label": self.label}

    @staticmethod
    def frame_from_json(data: dict, p: int, n: int) -> list[list[Poly]]:
        r = int(data["r"])
        frame = [[Poly(p, 2) for _ in range(r)] for _ in range(n)]
        for c in data["coords"]:
            frame[int(c["i"])][int(c["j"])] = Poly.from_json(p, 2, c["poly"])
        return frame


def _compressed(blocks: list[tuple[int, PolyMatrix]], axis: int) -> tuple[PolyMatrix | None, list[int]]:
    """Stack blocks (rows if axis 0, columns if 1), dropping F_p-dependent
    rows/columns within each degree group.  Returns matrix and per-row/column degrees."""
    groups: dict[int, list[PolyMatrix]] = {}
    for deg, b in blocks:
        if not b.is_zero():
            groups.setdefault(deg, []).append(b)
    parts, degs = [], []
    for deg in sorted(groups):
        if axis == 0:
            g = vstack(groups[deg])
            g = g.take_rows(independent_rows(g))
            parts.append(g)
            degs += [deg] * g.shape[0]
        else:
            g = hstack(groups[deg])
            g = g.take_cols(independent_rows(g.T))
            parts.append(g)
            degs += [deg] * g.shape[1]
    if not parts:
        return None, []
    return (vstack(parts) if axis == 0 else hstack(parts)), degs


def default_dmax(sys: P1System, j: int) -> int:
    e = sys.entry_degree
    e = max(e) if isinstance(e, list) else e
    return sys.m * j * max(e, 1) + 2 * sys.m + 4


def _window(m: int) -> int:
    return max(4, m)


@dataclass
class HilbertResult:
    h: list[int]
    rank: int
    stable_from: int


def graded_kernel_hilbert(sys: P1System, j: int, d_max: int | None = None) -> HilbertResult:
    """h(d) = dim of the degree-d part of the kernel of K_j on R^m."""
    m = sys.m
    d_max = default_dmax(sys, j) if d_max is None else d_max
    K, degs = _compressed(sys.blocks(j), axis=0)
    if K is None:
        h = [m * (d + 1) for d in range(min(d_max, _window(m)) + 1)]
        return HilbertResult(h, m, 0)
    rank = m - generic_rank(K)
    src = [0] * m
    tgt = [-d for d in degs]
    h: list[int] = []
    run = 0
    f = gf(sys.p)
    for d in range(d_max + 1):
        piece = graded_piece_map(K, src, tgt, d)
        h.append(m * (d + 1) - linalg.rank(f, piece))
        delta = h[-1] - (h[-2] if d else 0)
        run = run + 1 if delta == rank else 0
        if run >= _window(m):
            return HilbertResult(h, rank, d - run + 1)
    raise StabilizationError(f"kernel Hilbert function not stable by d_max={d_max}", h)


def image_piece(sys_I: PolyMatrix, degs: list[int], m: int, D: int, p: int) -> np.ndarray:
    return graded_piece_map(sys_I, degs, [0] * m, D)


def _mult_map(m: int, d: int, n_shift: int, by_t: bool) -> np.ndarray:
    """R_d^m -> R_{d+N}^m, multiplication by s^N or t^N."""
    shift = np.eye(d + n_shift + 1, d + 1, k=-n_shift if by_t else 0, dtype=np.int64)
    return np.kron(np.eye(m, dtype=np.int64), shift)


def graded_image_hilbert(sys: P1System, j: int, d_max: int | None = None, return_raw: bool = False):
    """h(d) = dim of global sections of the image sheaf twisted by d.

    Sections in degree d are the v in R_d^m with s^N v and t^N v in the image
    module for N large; N is increased until the answer is unchanged over a
    window of max(4, m) consecutive values.
    """
    m = sys.m
    p = sys.p
    f = gf(p)
    d_max = default_dmax(sys, j) if d_max is None else d_max
    I, degs = _compressed(sys.blocks(j), axis=1)
    if I is None:
        out = HilbertResult([0] * (_window(m) + 1), 0, 0)
        return (out, [0] * len(out.h)) if return_raw else out
    rank = generic_rank(I)
    w = _window(m)
    qcache: dict[int, np.ndarray] = {}

    def qmat(D: int) -> np.ndarray:
        if D not in qcache:
            img = graded_piece_map(I, degs, [0] * m, D)
            qcache[D] = linalg.left_nullspace(f, img) if img.size else np.eye(m * (D + 1), dtype=np.int64)
        return qcache[D]

    def sat_dim(d: int) -> int:
        last, run = None, 0
        for N in range(0, d_max + 1):
            Q = qmat(d + N)
            if Q.shape[0] == 0:
                val = m * (d + 1)
            else:
                stacked = np.concatenate([f.matmul(Q, _mult_map(m, d, N, False)), f.matmul(Q, _mult_map(m, d, N, True))], axis=0)
                val = m * (d + 1) - linalg.rank(f, stacked)
            run = run + 1 if val == last else 1
            last = val
            if run >= w:
                return val
        raise StabilizationError(f"saturation in degree {d} not stable by N={d_max}", [])

    h: list[int] = []
    raw: list[int] = []
    run = 0
    for d in range(d_max + 1):
        try:
            h.append(sat_dim(d))
        except StabilizationError as exc:
            raise StabilizationError(str(exc), h) from None
        raw.append(m * (d + 1) - qmat(d).shape[0])
        delta = h[-1] - (h[-2] if d else 0)
        run = run + 1 if delta == rank else 0
        if run >= w:
            out = HilbertResult(h, rank, d - run + 1)
            return (out, raw) if return_raw else out
    raise StabilizationError(f"image Hilbert function not stable by d_max={d_max}", h)


def splitting_from_hilbert(h: Sequence[int], rank: int) -> SplittingType:
    """Twists a_i <= 0 with h(d) = sum max(0, d + a_i + 1) on the given window."""
    twists: list[int] = []
    prev_delta = 0
    for d, hd in enumerate(h):
        delta = hd - (h[d - 1] if d else 0)
        new = delta - prev_delta
        if new < 0:
            raise ValueError(f"h is not the Hilbert function of a sum of line bundles (degree {d})")
        twists += [-d] * new
        prev_delta = delta
        if len(twists) > rank:
            raise ValueError("more twists than the rank")
    if len(twists) != rank:
        raise ValueError("no stable window: the difference of h never reaches the rank")
    st = SplittingType(tuple(sorted(twists, reverse=True)))
    for d, hd in enumerate(h):
        if st.hilbert(d) != hd:
            raise ValueError(f"reconstruction fails at degree {d}")
    return st


def splitting(sys: P1System, j: int, kind: str = "ker", d_max: int | None = None) -> dict:
    if kind == "ker":
        res = graded_kernel_hilbert(sys, j, d_max)
    elif kind == "im":
        res = graded_image_hilbert(sys, j, d_max)
    else:
        raise ValueError("kind must be 'ker' or 'im'")
    st = splitting_from_hilbert(res.h, res.rank)
    return {"rank": st.rank, "twists": st.to_json(), "hilbert": res.h, "entry_degree": sys.entry_degree}


def affine_fiber_ranks(sys: P1System, j: int, k: int = 1) -> list[tuple[tuple[int, int], int, int]]:
    """(point, rank K_j, rank I_j) at every F_{p^k} point of P^1."""
    f, pts = sys.points(k)
    out = []
    for st in pts:
        mats = [b.specialize(f, st) for _, b in sys.blocks(j)]
        out.append((st, linalg.rank(f, np.concatenate(mats, axis=0)), linalg.rank(f, np.concatenate(mats, axis=1))))
    return out
