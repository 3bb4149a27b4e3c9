"""Matrix Lie algebras gl_n, sl_n, sp_2n, so_2n+1 and their cominuscule nilradicals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..exact import linalg
from ..exact.fields import check_prime, gf
from ..liealg import EPoint, RestrictedLieAlgebra, algebra_from_matrices
from ..modrep import UModule, defining_module


def _unit(N: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((N, N), dtype=np.int64)
    m[i, j] = 1
    return m


def gl_basis(n: int) -> tuple[list[np.ndarray], list[str]]:
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            mats.append(_unit(n, i, j))
            labels.append(f"E{i + 1}{j + 1}")
    return mats, labels


def sl_basis(n: int) -> tuple[list[np.ndarray], list[str]]:
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(_unit(n, i, j))
                labels.append(f"E{i + 1}{j + 1}")
    for i in range(n - 1):
        mats.append(_unit(n, i, i) - _unit(n, i + 1, i + 1))
        labels.append(f"H{i + 1}")
    return mats, labels


def symplectic_form(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    J[:n, n:] = np.eye(n, dtype=np.int64)
    J[n:, :n] = -np.eye(n, dtype=np.int64)
    return J


def sp_basis(n: int) -> tuple[list[np.ndarray], list[str], list[int]]:
    """Basis of sp_2n preserving [[0, I], [-I, 0]].

    The generators t_{i,j} (1 <= i <= n, n+i <= j <= 2n) of the abelian
    nilradical are E_{ij} when j = n+i and E_{ij} + E_{j-n,i+n} otherwise.
    Returns (matrices, labels, indices of the t_{i,j}).
    """
    N = 2 * n
    mats, labels, tidx = [], [], []
    for i in range(n):
        for j in range(n):
            mats.append(_unit(N, i, j) - _unit(N, n + j, n + i))
            labels.append(f"a{i + 1}{j + 1}")
    for i in range(1, n + 1):
        for j in range(n + i, N + 1):
            m = _unit(N, i - 1, j - 1)
            if j != n + i:
                m = m + _unit(N, j - n - 1, i + n - 1)
            tidx.append(len(mats))
            mats.append(m)
            labels.append(f"t{i},{j}")
    for i in range(1, n + 1):
        for j in range(n + i, N + 1):
            mats.append(_sp_lower(n, i, j))
            labels.append(f"c{i},{j}")
    return mats, labels, tidx


def _sp_lower(n: int, i: int, j: int) -> np.ndarray:
    N = 2 * n
    m = _unit(N, j - 1, i - 1)
    if j != n + i:
        m = m + _unit(N, i + n - 1, j - n - 1)
    return m


def so_odd_basis(n: int) -> tuple[list[np.ndarray], list[str]]:
    """so_{2n+1} for the antidiagonal form: E_ij - E_{N-1-j, N-1-i}, i + j < N - 1."""
    N = 2 * n + 1
    mats, labels = [], []
    for i in range(N):
        for j in range(N):
            if i + j < N - 1:
                mats.append(_unit(N, i, j) - _unit(N, N - 1 - j, N - 1 - i))
                labels.append(f"F{i + 1}{j + 1}")
    return mats, labels


def make_classical(family: str, n: int, p: int) -> tuple[RestrictedLieAlgebra, UModule]:
    """Algebra with matrix realization and its defining module."""
    check_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    if family == "gl":
        mats, labels = gl_basis(n)
        name = f"gl_{n}"
    elif family == "sl":
        if n < 2:
            raise ValueError("sl_n needs n >= 2")
        mats, labels = sl_basis(n)
        name = f"sl_{n}"
    elif family == "sp":
        mats, labels, _ = sp_basis(n)
        name = f"sp_{2 * n}"
    elif family == "so":
        mats, labels = so_odd_basis(n)
        name = f"so_{2 * n + 1}"
    else:
        raise ValueError(f"unknown family {family!r}")
    L = algebra_from_matrices(p, mats, labels, name)
    return L, defining_module(L)


def nilradical_indices(family: str, n: int, r: int) -> list[int]:
    if family in ("gl", "sl"):
        if not 1 <= r < n:
            raise ValueError("need 1 <= r < n")
        mats, _ = gl_basis(n) if family == "gl" else sl_basis(n)
        return [k for k, m in enumerate(mats) if np.count_nonzero(m) == 1 and _pos(m)[0] < r <= _pos(m)[1]]
    if family == "sp":
        if r != n:
            raise ValueError("the cominuscule root of C_n is alpha_n (pass r = n)")
        return sp_basis(n)[2]
    if family == "so":
        if r != 1:
            raise ValueError("only P_{alpha_1} is implemented for B_n")
        mats, _ = so_odd_basis(n)
        N = 2 * n + 1
        return [k for k, m in enumerate(mats) if m[0].any() and not m[0, 0] and not m[0, N - 1]]
    raise ValueError(f"unknown family {family!r}")


def _pos(m: np.ndarray) -> tuple[int, int]:
    i, j = np.argwhere(m)[0]
    return int(i), int(j)


def nilradical_point(family: str, n: int, r: int, p: int) -> EPoint:
    idx = nilradical_indices(family, n, r)
    dim = {"gl": n * n, "sl": n * n - 1, "sp": 2 * n * n + n, "so": n * (2 * n + 1)}[family]
    eps = np.zeros((dim, len(idx)), dtype=np.int64)
    for c, k in enumerate(idx):
        eps[k, c] = 1
    return EPoint(gf(p), eps)


# ---------------------------------------------------------------- bracket spans

def bracket_span(L: RestrictedLieAlgebra, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Basis of span{[a, b]} for columns a of A and b of B."""
    f = L.field
    vecs = [L.bracket_vec(A[:, a], B[:, b]) for a in range(A.shape[1]) for b in range(B.shape[1])]
    if not vecs:
        return np.zeros((L.n, 0), dtype=np.int64)
    return linalg.image(f, np.stack(vecs, axis=1))


def centralizer(L: RestrictedLieAlgebra, U: np.ndarray) -> np.ndarray:
    f = L.field
    rows = np.concatenate([L.ad(U[:, k]) for k in range(U.shape[1])], axis=0)
    return linalg.nullspace(f, rows)


def normalizer(L: RestrictedLieAlgebra, U: np.ndarray) -> np.ndarray:
    f = L.field
    perp = linalg.left_nullspace(f, U)
    if perp.shape[0] == 0:
        return np.eye(L.n, dtype=np.int64)
    rows = np.concatenate([f.matmul(perp, L.ad(U[:, k])) for k in range(U.shape[1])], axis=0)
    return linalg.nullspace(f, rows)


def cominuscule_identities(L: RestrictedLieAlgebra, U: np.ndarray) -> dict:
    """Dimensions and identities for the nilradical u of a parabolic p = N_g(u)."""
    f = L.field
    g = np.eye(L.n, dtype=np.int64)
    P = normalizer(L, U)
    ug = bracket_span(L, U, g)
    up = bracket_span(L, U, P)
    uug = bracket_span(L, U, ug)
    cu = centralizer(L, U)
    uu = bracket_span(L, U, U)
    return {
        "dim_u": int(U.shape[1]),
        "dim_p": int(P.shape[1]),
        "dim_[u,u]": int(uu.shape[1]),
        "dim_[u,g]": int(ug.shape[1]),
        "dim_[u,p]": int(up.shape[1]),
        "dim_[u,[u,g]]": int(uug.shape[1]),
        "dim_C_g(u)": int(cu.shape[1]),
        "u_abelian": uu.shape[1] == 0,
        "[u,p]=u": linalg.subspace_eq(f, up, U),
        "p=[u,g]": linalg.subspace_eq(f, P, ug),
        "[u,[u,g]]=u": linalg.subspace_eq(f, uug, U),
        "C_g(u)=u": linalg.subspace_eq(f, cu, U),
    }


@dataclass(frozen=True)
class CominusculeEntry:
    type: str
    root: str
    dim_u: str
    constructor: Callable[[int, int], tuple[RestrictedLieAlgebra, np.ndarray]] | None = None


def _ctor(family: str, r_of: Callable[[int], int]):
    def build(n: int, p: int):
        fam_n = n + 1 if family == "sl" else n
        L, _ = make_classical(family, fam_n, p)
        return L, nilradical_point(family, fam_n, r_of(n), p).eps

    return build


def cominuscule_table() -> list[CominusculeEntry]:
    """Cominuscule parabolics of simple groups, with nilradical dimensions.

    Entries with a constructor take (rank n, p) and return the algebra and
    the nilradical basis; A_n uses alpha_1 (other alpha_k via make_classical
    and nilradical_point with r = k).
    """
    return [
        CominusculeEntry("A_n", "alpha_k (any k)", "k(n+1-k)", _ctor("sl", lambda n: 1)),
        CominusculeEntry("B_n", "alpha_1", "2n-1", _ctor("so", lambda n: 1)),
        CominusculeEntry("C_n", "alpha_n", "n(n+1)/2", _ctor("sp", lambda n: n)),
        CominusculeEntry("D_n", "alpha_1", "2n-2"),
        CominusculeEntry("D_n", "alpha_{n-1}, alpha_n", "n(n-1)/2"),
        CominusculeEntry("E_6", "alpha_1, alpha_6", "16"),
        CominusculeEntry("E_7", "alpha_7", "27"),
    ]
