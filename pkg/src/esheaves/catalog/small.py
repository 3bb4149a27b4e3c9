"""Heisenberg algebra u_3 and the two-dimensional abelian algebra with the
rank-jump module."""

from __future__ import annotations

import numpy as np

from ..evariety import ChartParam
from ..exact.fields import check_prime
from ..exact.poly import Poly
from ..liealg import RestrictedLieAlgebra
from ..modrep import UModule, adjoint_module
from ..p1split import P1System


def heisenberg(p: int) -> RestrictedLieAlgebra:
    """Basis (x, y, z) with [x, y] = z and zero p-map."""
    check_prime(p)
    br = np.zeros((3, 3, 3), dtype=np.int64)
    br[0, 1, 2] = 1
    br[1, 0, 2] = p - 1
    real = [
        np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]]),
        np.array([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
        np.array([[0, 0, 1], [0, 0, 0], [0, 0, 0]]),
    ]
    return RestrictedLieAlgebra(p, ["x", "y", "z"], br, np.zeros((3, 3)), real, name="u_3")


def make_heisenberg(p: int) -> dict:
    """Algebra, adjoint module, the two affine charts of E(2, u_3) = P^1 and
    the homogeneous frame (s:t) -> span(z, s x + t y)."""
    L = heisenberg(p)
    M = adjoint_module(L)
    T = Poly.var(p, 1, 0)
    # sigma = {x, z}: columns x + T y and z
    chart_s = ChartParam.from_coords(p, 3, (0, 2), 1, {(1, 0): T}, "span(z, x + T y)")
    # sigma = {y, z}: columns T x + y and z
    chart_t = ChartParam.from_coords(p, 3, (1, 2), 1, {(0, 0): T}, "span(z, T x + y)")
    s, t = Poly.var(p, 2, 0), Poly.var(p, 2, 1)
    zero, one = Poly(p, 2), Poly.const(p, 2, 1)
    frame = [[zero, s], [zero, t], [one, zero]]
    sys = P1System(M, frame, "E(2,u_3): (s:t) -> span(z, s x + t y)", L)
    return {"algebra": L, "module": M, "charts": [chart_s, chart_t], "p1": sys}


def abelian2(p: int) -> RestrictedLieAlgebra:
    check_prime(p)
    return RestrictedLieAlgebra(p, ["x1", "x2"], np.zeros((2, 2, 2)), np.zeros((2, 2)), name="g_a+g_a")


def socle_jump_module(p: int) -> UModule:
    """Basis m1..m4: x1 m1 = m4, x2 m1 = m3, x2 m2 = m4, everything else zero."""
    x1 = np.zeros((4, 4), dtype=np.int64)
    x2 = np.zeros((4, 4), dtype=np.int64)
    x1[3, 0] = 1
    x2[2, 0] = 1
    x2[3, 1] = 1
    return UModule(p, [x1, x2], "rank-jump module")


def make_socle_jump(p: int) -> dict:
    L = abelian2(p)
    M = socle_jump_module(p)
    T = Poly.var(p, 1, 0)
    chart = ChartParam.from_coords(p, 2, (0,), 1, {(1, 0): T}, "span(x1 + T x2)")
    chart_inf = ChartParam.from_coords(p, 2, (1,), 1, {(0, 0): T}, "span(T x1 + x2)")
    s, t = Poly.var(p, 2, 0), Poly.var(p, 2, 1)
    sys = P1System(M, [[s], [t]], "E(1, g_a+g_a) = P^1: (s:t) -> span(s x1 + t x2)", L)
    return {"algebra": L, "module": M, "charts": [chart, chart_inf], "p1": sys}
