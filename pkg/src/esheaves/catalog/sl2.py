"""u(sl_2) at p = 3: the regular module, its projective indecomposable
summands, and pullbacks along the projections of sl_2^{+r}."""

from __future__ import annotations

import random

import numpy as np

from ..evariety import ChartParam
from ..exact import linalg
from ..exact.fields import gf
from ..exact.poly import Poly
from ..liealg import RestrictedLieAlgebra, algebra_from_matrices
from ..modrep import JordanType, UModule, jordan_type_of_matrix, validate_module
from ..p1split import P1System

E = np.array([[0, 1], [0, 0]])
H = np.array([[1, 0], [0, -1]])
F = np.array([[0, 0], [1, 0]])


def sl2(p: int) -> RestrictedLieAlgebra:
    return algebra_from_matrices(p, [E, H, F], ["e", "h", "f"], "sl_2")


def _hpoly_mul_linear(poly: list[int], c: int, p: int) -> list[int]:
    """poly(h) * (h + c), reduced by h^p = h."""
    out = [0] * p
    for k, a in enumerate(poly):
        if not a:
            continue
        out[k] = (out[k] + a * c) % p
        if k + 1 < p:
            out[k + 1] = (out[k + 1] + a) % p
        else:
            out[1] = (out[1] + a) % p
    return out


def regular_module(p: int) -> tuple[UModule, list[np.ndarray]]:
    """Left regular representation on the PBW basis f^a h^b e^c (0 <= a, b, c < p).

    Returns the module (actions for e, h, f) and the p^3 left multiplication
    matrices of the basis elements.
    """
    dim = p**3
    idx = lambda a, b, c: (a * p + b) * p + c  # noqa: E731
    Le = np.zeros((dim, dim), dtype=np.int64)
    Lh = np.zeros((dim, dim), dtype=np.int64)
    Lf = np.zeros((dim, dim), dtype=np.int64)
    for a in range(p):
        for b in range(p):
            for c in range(p):
                col = idx(a, b, c)
                hb = [0] * p
                hb[b] = 1
                if a + 1 < p:
                    Lf[idx(a + 1, b, c), col] = 1
                # h f^a = f^a (h - 2a)
                g = _hpoly_mul_linear(hb, -2 * a, p)
                for k, v in enumerate(g):
                    Lh[idx(a, k, c), col] += v
                # e f^a h^b e^c = f^a (h-2)^b e^{c+1} + a f^{a-1} (h-a+1) h^b e^c
                if c + 1 < p:
                    g = [1] + [0] * (p - 1)
                    for _ in range(b):
                        g = _hpoly_mul_linear(g, -2, p)
                    for k, v in enumerate(g):
                        Le[idx(a, k, c + 1), col] += v
                if a > 0:
                    g = _hpoly_mul_linear(hb, -a + 1, p)
                    for k, v in enumerate(g):
                        Le[idx(a - 1, k, c), col] += a * v
    Le, Lh, Lf = Le % p, Lh % p, Lf % p
    fld = gf(p)
    basis_ops = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                op = linalg.matpow(fld, Lf, a)
                op = fld.matmul(op, linalg.matpow(fld, Lh, b))
                op = fld.matmul(op, linalg.matpow(fld, Le, c))
                basis_ops.append(op)
    return UModule(p, [Le, Lh, Lf], f"u(sl_2) regular, p={p}"), basis_ops


class _Algebra:
    def __init__(self, p: int):
        self.p = p
        self.field = gf(p)
        self.module, self.ops = regular_module(p)
        self.dim = p**3
        self.one = np.zeros(self.dim, dtype=np.int64)
        self.one[0] = 1
        self._stack = np.stack(self.ops, axis=0)

    def left(self, x: np.ndarray) -> np.ndarray:
        return np.tensordot(x, self._stack, axes=(0, 0)) % self.p

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.field.matmul(self.left(x), y[:, None])[:, 0]

    def right(self, b: np.ndarray) -> np.ndarray:
        return np.stack([self.field.matmul(op, b[:, None])[:, 0] for op in self.ops], axis=1)


def _split_idempotent(A: _Algebra, e: np.ndarray, rng: random.Random, budget: int):
    """Try to write e = e1 + e2 with orthogonal nonzero idempotents."""
    f = A.field
    W = linalg.image(f, A.right(e))
    d = W.shape[1]
    y = linalg.solve(f, W, e)
    for _ in range(budget):
        x = np.array([rng.randrange(A.p) for _ in range(A.dim)], dtype=np.int64)
        b = A.mul(A.mul(e, x), e)
        C = linalg.restrict_action(f, A.right(b), W)
        for c in range(A.p):
            D = (C - c * np.eye(d, dtype=np.int64)) % A.p
            Dn = linalg.matpow(f, D, d)
            im = linalg.image(f, Dn)
            if 0 < im.shape[1] < d:
                ker = linalg.nullspace(f, Dn)
                B = np.concatenate([im, ker], axis=1)
                proj = np.zeros((d, d), dtype=np.int64)
                proj[: im.shape[1], : im.shape[1]] = np.eye(im.shape[1], dtype=np.int64)
                pi = f.matmul(f.matmul(B, proj), linalg.inverse(f, B))
                e1 = f.matmul(W, f.matmul(pi, y))[:, 0]
                e2 = (e - e1) % A.p
                return e1, e2
    return None


def primitive_idempotents(p: int = 3, seed: int = 0, budget: int = 40) -> tuple[_Algebra, list[np.ndarray]]:
    A = _Algebra(p)
    rng = random.Random(seed)
    todo = [A.one]
    done = []
    while todo:
        e = todo.pop()
        res = _split_idempotent(A, e, rng, budget)
        if res is None:
            done.append(e)
        else:
            todo.extend(res)
        if len(done) + len(todo) > A.dim:
            raise RuntimeError("idempotent splitting did not converge")
    for e in done:
        if not np.array_equal(A.mul(e, e), e):
            raise RuntimeError("splitting produced a non-idempotent")
    return A, done


def make_sl2_pims(p: int = 3, seed: int = 0) -> dict:
    """PIMs P_lambda of u(sl_2), keyed by highest weight, from the regular module."""
    if p != 3:
        raise ValueError("PIM extraction is supported at p = 3 only")
    L = sl2(p)
    A, idems = primitive_idempotents(p, seed)
    f = A.field
    found: dict[int, list[UModule]] = {}
    for e in idems:
        W = linalg.image(f, A.right(e))
        acts = [linalg.restrict_action(f, op, W) for op in A.module.actions]
        M = UModule(p, acts)
        lam = _highest_weight(M, p)
        M.label = f"P_{lam}"
        found.setdefault(lam, []).append(M)
    for lam, mods in found.items():
        if len(mods) != lam + 1:
            raise RuntimeError(f"P_{lam} appears {len(mods)} times, expected dim L_{lam} = {lam + 1}")
    pims = {lam: mods[0] for lam, mods in sorted(found.items())}
    for M in pims.values():
        rep = validate_module(L, M)
        if not rep.ok:
            raise RuntimeError(f"extracted module fails validation: {rep.failures()[0].witness}")
    s, t = Poly.var(p, 2, 0), Poly.var(p, 2, 1)
    nilcone = [[s * s], [s * t], [-(t * t)]]
    systems = {lam: P1System(M, nilcone, f"nilcone P^1, {M.label}", L) for lam, M in pims.items()}
    return {"algebra": L, "pims": pims, "p1": systems, "regular": A.module, "multiplicities": {k: len(v) for k, v in found.items()}}


def _highest_weight(M: UModule, p: int) -> int:
    """p = 3: the Steinberg module has dim p; P_0 is the summand with a trivial submodule."""
    if M.dim == p:
        return p - 1
    f = gf(p)
    common = linalg.nullspace(f, np.concatenate(M.actions, axis=0))
    return 0 if common.shape[1] else 1


def nilcone_points(p: int, k: int = 1) -> list[np.ndarray]:
    """(e, h, f)-coordinates s^2 e + st h - t^2 f over P^1(F_{p^k})."""
    f = gf(p, k)
    pts = [(1, a) for a in range(f.q)] + [(0, 1)]
    out = []
    for s, t in pts:
        out.append(np.array([f.mul(s, s), f.mul(s, t), f.neg(f.mul(t, t))], dtype=np.int64))
    return out


def pim_jordan_types(M: UModule, k: int = 1) -> list[JordanType]:
    f = gf(M.p, k)
    return [jordan_type_of_matrix(f, M.act(v, f), M.p) for v in nilcone_points(M.p, k)]


def sl2_sum(p: int, r: int) -> RestrictedLieAlgebra:
    mats, labels = [], []
    for s in range(r):
        for name, m in (("e", E), ("h", H), ("f", F)):
            big = np.zeros((2 * r, 2 * r), dtype=np.int64)
            big[2 * s : 2 * s + 2, 2 * s : 2 * s + 2] = m
            mats.append(big)
            labels.append(f"{name}{s + 1}")
    return algebra_from_matrices(p, mats, labels, f"sl_2^{r}")


def pullback(P: UModule, r: int, s: int) -> UModule:
    """pi_s^*(P): factor s (1-based) acts through P, the others by zero."""
    zero = np.zeros((P.dim, P.dim), dtype=np.int64)
    acts = []
    for k in range(1, r + 1):
        acts += list(P.actions) if k == s else [zero] * 3
    return UModule(P.p, acts, f"pi_{s}^*({P.label})")


def line_frame(p: int, r: int, moving: int) -> list[list[Poly]]:
    """Coordinate line of (P^1)^r: factor ``moving`` runs over the nilcone,
    the other factors are fixed at e."""
    s, t = Poly.var(p, 2, 0), Poly.var(p, 2, 1)
    zero, one = Poly(p, 2), Poly.const(p, 2, 1)
    frame = [[zero] * r for _ in range(3 * r)]
    frame = [list(row) for row in frame]
    for k in range(r):
        if k + 1 == moving:
            frame[3 * k][k] = s * s
            frame[3 * k + 1][k] = s * t
            frame[3 * k + 2][k] = -(t * t)
        else:
            frame[3 * k][k] = one
    return frame


def product_chart(p: int, r: int) -> ChartParam:
    """Affine chart of (P^1)^r: column k is e_k + T_k h_k - T_k^2 f_k."""
    coords = {}
    for k in range(r):
        T = Poly.var(p, r, k)
        coords[(3 * k + 1, k)] = T
        coords[(3 * k + 2, k)] = -(T * T)
    return ChartParam.from_coords(p, 3 * r, tuple(3 * k for k in range(r)), r, coords, f"(P^1)^{r} chart")


def make_sl2_r(p: int, r: int, s: int, lam: int, pims: dict | None = None) -> dict:
    if p != 3:
        raise ValueError("supported at p = 3 only")
    if not 1 <= s <= r <= 3:
        raise ValueError("need 1 <= s <= r <= 3")
    pims = pims or make_sl2_pims(p)["pims"]
    if lam not in pims:
        raise ValueError(f"no PIM with highest weight {lam}")
    L = sl2_sum(p, r)
    M = pullback(pims[lam], r, s)
    lines = {k: P1System(M, line_frame(p, r, k), f"line in factor {k}", L) for k in range(1, r + 1)}
    return {"algebra": L, "module": M, "lines": lines, "chart": product_chart(p, r)}
