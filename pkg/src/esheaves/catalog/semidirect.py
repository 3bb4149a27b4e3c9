"""g_{1,n} = V x| gl_n and its modules on truncated symmetric / exterior algebras.

V acts by multiplication, E_ab in gl_n by the derivation x_a d/dx_b.
"""

from __future__ import annotations

import itertools
from math import comb

import numpy as np

from ..exact.fields import check_prime
from ..exact.poly import Poly
from ..liealg import RestrictedLieAlgebra, algebra_from_matrices
from ..modrep import UModule
from ..p1split import P1System


def semidirect_algebra(n: int, p: int) -> RestrictedLieAlgebra:
    """Realized in gl_{n+1} as [[A, v], [0, 0]]; basis v_1..v_n then E_ab."""
    check_prime(p)
    N = n + 1
    mats, labels = [], []
    for a in range(n):
        m = np.zeros((N, N), dtype=np.int64)
        m[a, n] = 1
        mats.append(m)
        labels.append(f"v{a + 1}")
    for a in range(n):
        for b in range(n):
            m = np.zeros((N, N), dtype=np.int64)
            m[a, b] = 1
            mats.append(m)
            labels.append(f"E{a + 1}{b + 1}")
    return algebra_from_matrices(p, mats, labels, f"g_1,{n}")


def _monomial_module(n: int, p: int, basis: list[tuple[int, ...]], exterior: bool, label: str) -> UModule:
    """Actions on a list of monomials (exponent vectors, or 0/1 vectors for
    wedge monomials); products leaving the list are truncated to zero."""
    index = {m: k for k, m in enumerate(basis)}
    dim = len(basis)
    acts = []
    for a in range(n):
        op = np.zeros((dim, dim), dtype=np.int64)
        for col, mono in enumerate(basis):
            new = list(mono)
            new[a] += 1
            key = tuple(new)
            if key in index:
                sign = (-1) ** sum(mono[:a]) if exterior else 1
                op[index[key], col] = sign
        acts.append(op % p)
    for a in range(n):
        for b in range(n):
            op = np.zeros((dim, dim), dtype=np.int64)
            for col, mono in enumerate(basis):
                if mono[b] == 0:
                    continue
                coef = mono[b]
                new = list(mono)
                new[b] -= 1
                new[a] += 1
                key = tuple(new)
                if key not in index:
                    continue
                if exterior:
                    # x_a d/dx_b on a wedge monomial: replace x_b by x_a in place
                    if a != b and mono[a]:
                        continue
                    lo, hi = min(a, b), max(a, b)
                    coef = (-1) ** sum(mono[lo + 1 : hi]) if a != b else 1
                op[index[key], col] = (op[index[key], col] + coef) % p
            acts.append(op % p)
    return UModule(p, acts, label)


def module_N(n: int, p: int, j: int) -> UModule:
    """S^*(V)/S^{>= j+1}(V) on monomials of degree <= j (graded, lex within degree)."""
    if not 0 <= j < p:
        raise ValueError("need 0 <= j < p so that v^p acts by zero")
    basis = []
    for deg in range(j + 1):
        basis += sorted((m for m in itertools.product(range(deg + 1), repeat=n) if sum(m) == deg), reverse=True)
    return _monomial_module(n, p, basis, False, f"N(n={n}, j={j})")


def module_M(n: int, p: int, r: int) -> UModule:
    """Lambda^r(V) + Lambda^{r+1}(V) as a quotient of the exterior algebra."""
    if not 0 <= r < n:
        raise ValueError("need 0 <= r < n")
    basis = []
    for deg in (r, r + 1):
        basis += sorted((m for m in itertools.product((0, 1), repeat=n) if sum(m) == deg), reverse=True)
    return _monomial_module(n, p, basis, True, f"M(n={n}, r={r})")


def module_R(n: int, p: int, r: int) -> UModule:
    """Degrees r(p-1) and r(p-1)+1 of S(V)/(x_1^p, ..., x_n^p)."""
    top = r * (p - 1)
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    basis = []
    for deg in (top, top + 1):
        basis += sorted((m for m in itertools.product(range(p), repeat=n) if sum(m) == deg), reverse=True)
    return _monomial_module(n, p, basis, False, f"R(n={n}, r={r})")


def line_frame(n: int, p: int) -> list[list[Poly]]:
    """(s:t) -> span(s v_1 + t v_2) in Grass(1, V) inside E(1, g_{1,n})."""
    s, t = Poly.var(p, 2, 0), Poly.var(p, 2, 1)
    zero = Poly(p, 2)
    frame = [[zero] for _ in range(n + n * n)]
    frame[0] = [s]
    frame[1] = [t]
    return frame


def make_semidirect(n: int, p: int, kind: str, param: int) -> dict:
    """kind 'N' (param j), 'M' (param r) or 'R' (param r), with the P^1 line in Grass(1, V)."""
    if n < 2:
        raise ValueError("need n >= 2 for a P^1 of lines in V")
    L = semidirect_algebra(n, p)
    if kind == "N":
        M = module_N(n, p, param)
    elif kind == "M":
        M = module_M(n, p, param)
    elif kind == "R":
        M = module_R(n, p, param)
    else:
        raise ValueError(f"unknown module kind {kind!r}")
    sys = P1System(M, line_frame(n, p), f"Grass(1,V) line, {M.label}", L)
    return {"algebra": L, "module": M, "p1": sys}


def expected_M_kernel_rank(n: int, r: int) -> int:
    return 1 + comb(n, r + 1)
