"""Built-in algebras, modules and loci for the worked examples."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from ..evariety import ChartParam
from ..exact.poly import Poly
from ..liealg import EPoint, RestrictedLieAlgebra
from ..modrep import UModule, adjoint_module, ext_power, sym_power, tensor, trivial_module
from ..p1split import P1System
from .classical import cominuscule_identities, cominuscule_table, make_classical, nilradical_point
from .semidirect import make_semidirect
from .sl2 import make_sl2_pims, make_sl2_r
from .small import make_heisenberg, make_socle_jump


@dataclass
class Bundle:
    id: str
    provenance: str
    algebra: RestrictedLieAlgebra
    module: UModule
    loci: list[ChartParam] = field(default_factory=list)
    p1: P1System | None = None
    points: list[EPoint] = field(default_factory=list)
    j_values: list[int] = field(default_factory=lambda: [1])


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    provenance: str
    p: int
    p_constraint: str
    build: Callable[[int], Bundle]


def orbit_line(L: RestrictedLieAlgebra, eps: np.ndarray, x, label: str) -> ChartParam:
    """T -> exp(T ad x) eps as a polynomial frame; lands in the orbit when
    (ad x)^((p+1)/2) = 0, so that the truncated exponential is an automorphism."""
    p = L.p
    f = L.field
    adx = L.ad(x)
    powers = [np.eye(L.n, dtype=np.int64)]
    for i in range(1, p):
        powers.append(f.mul(f.matmul(powers[-1], adx), f.inv(i)))
    T = Poly.var(p, 1, 0)
    frame = [[Poly(p, 1) for _ in range(eps.shape[1])] for _ in range(L.n)]
    for i, P in enumerate(powers):
        col = f.matmul(P, eps)
        for a in range(L.n):
            for b in range(eps.shape[1]):
                if col[a, b]:
                    frame[a][b] = frame[a][b] + (T**i) * int(col[a, b])
    return ChartParam(p, L.n, eps.shape[1], 1, frame, None, label)


def _root_generators(L: RestrictedLieAlgebra, lower: bool = True) -> list[np.ndarray]:
    """Basis vectors E_ab (a > b when lower) of a gl/sl realization."""
    out = []
    for k, m in enumerate(L.realization):
        nz = np.argwhere(m)
        if len(nz) == 1 and nz[0][0] != nz[0][1] and (nz[0][0] > nz[0][1]) == lower:
            v = np.zeros(L.n, dtype=np.int64)
            v[k] = 1
            out.append(v)
    return out


def _heisenberg(p: int) -> Bundle:
    d = make_heisenberg(p)
    return Bundle("heisenberg", "Heisenberg algebra u_3, adjoint module on E(2,u_3) = P^1", d["algebra"], d["module"], d["charts"], d["p1"])


def _socle_jump(p: int) -> Bundle:
    d = make_socle_jump(p)
    return Bundle("socle-jump", "abelian g_a+g_a, rank-jump module (kernel free of rank 2, socle jumps at T=0)", d["algebra"], d["module"], d["charts"], d["p1"])


def _gl_defining(n: int, r: int, construct=None, tag: str = "defining"):
    def build(p: int) -> Bundle:
        L, V = make_classical("gl", n, p)
        M = construct(V) if construct else V
        eps = nilradical_point("gl", n, r, p)
        gens = _root_generators(L)
        lines = [orbit_line(L, eps.eps, g, f"exp(T ad {L.labels[int(np.flatnonzero(g)[0])]}) u_{{{r},{n - r}}}") for g in gens[:2]]
        return Bundle(f"gl{n}-{tag}", f"gl_{n}, {tag} module, eps = u_{{{r},{n - r}}} and orbit lines", L, M, lines, None, [eps], [1, 2])

    return build


def _sp(n: int):
    def build(p: int) -> Bundle:
        L, V = make_classical("sp", n, p)
        eps = nilradical_point("sp", n, n, p)
        return Bundle(f"sp{2 * n}-defining", f"sp_{2 * n} defining module, eps = abelian nilradical of P_alpha_n", L, V, [ChartParam.constant(p, eps.eps, "nilradical")], None, [eps], [1, 2])

    return build


def _sl3_adjoint(p: int) -> Bundle:
    L, _ = make_classical("sl", 3, p)
    eps = nilradical_point("sl", 3, 1, p)
    gens = _root_generators(L)
    lines = [orbit_line(L, eps.eps, gens[0], "orbit line of u(P_alpha_1)")]
    return Bundle("sl3-adjoint", "sl_3 adjoint module, eps = nilradical of the cominuscule P_alpha_1", L, adjoint_module(L), lines, None, [eps], [1, 2])


@lru_cache(maxsize=None)
def _pims(p: int):
    return make_sl2_pims(p)


def _sl2_pim(lam: int):
    def build(p: int) -> Bundle:
        d = _pims(p)
        M = d["pims"][lam]
        sys = d["p1"][lam]
        return Bundle(f"sl2-pim{lam}", f"u(sl_2) projective indecomposable P_{lam} on the nilpotent cone P^1", d["algebra"], M, [sys.dehomogenize("t")], sys, [], [1, 2])

    return build


def _sl2_r(s: int, lam: int, r: int = 2):
    def build(p: int) -> Bundle:
        d = make_sl2_r(p, r, s, lam, _pims(p)["pims"])
        return Bundle(f"sl2x{r}-s{s}-P{lam}", f"pullback of P_{lam} along projection {s} of sl_2^{r}", d["algebra"], d["module"], [d["chart"]], d["lines"][s], [], [1, 2, 3, 4])

    return build


def _semidirect(n: int, kind: str, param: int):
    def build(p: int) -> Bundle:
        d = make_semidirect(n, p, kind, param)
        js = list(range(1, param + 1)) if kind == "N" else [1]
        return Bundle(f"g1{n}-{kind}{param}", f"g_(1,{n}) = V x| gl_{n}, module {kind} ({param})", d["algebra"], d["module"], [d["p1"].dehomogenize("t")], d["p1"], [], js)

    return build


def _trivial(p: int) -> Bundle:
    d = make_heisenberg(p)
    L = d["algebra"]
    return Bundle("u3-trivial", "zero action on a 3-dimensional module", L, trivial_module(L, 3), d["charts"], P1System(trivial_module(L, 3), d["p1"].frame, "trivial", L), [], [1])


ENTRIES: list[CatalogEntry] = [
    CatalogEntry("heisenberg", "u_3 adjoint", 5, "p >= 3", _heisenberg),
    CatalogEntry("socle-jump", "rank-jump module", 5, "p >= 3", _socle_jump),
    CatalogEntry("gl3-defining", "gl_3 defining", 5, "p >= 3", _gl_defining(3, 1)),
    CatalogEntry("gl4-defining", "gl_4 defining", 7, "p >= 3", _gl_defining(4, 2)),
    CatalogEntry("gl4-tensor2", "gl_4 V (x) V", 7, "p >= 3", _gl_defining(4, 2, lambda V: tensor(V, V), "tensor2")),
    CatalogEntry("gl4-sym2", "gl_4 S^2 V", 7, "p >= 3", _gl_defining(4, 2, lambda V: sym_power(V, 2), "sym2")),
    CatalogEntry("gl4-ext2", "gl_4 Lambda^2 V", 7, "p >= 3", _gl_defining(4, 2, lambda V: ext_power(V, 2), "ext2")),
    CatalogEntry("sp4-defining", "sp_4 defining", 7, "p >= 3", _sp(2)),
    CatalogEntry("sl3-adjoint", "sl_3 adjoint, cominuscule", 7, "p >= 3", _sl3_adjoint),
    CatalogEntry("sl2-pim0", "u(sl_2) P_0", 3, "p = 3", _sl2_pim(0)),
    CatalogEntry("sl2-pim1", "u(sl_2) P_1", 3, "p = 3", _sl2_pim(1)),
    CatalogEntry("sl2-pim2", "u(sl_2) P_2 (Steinberg)", 3, "p = 3", _sl2_pim(2)),
]
ENTRIES += [
    CatalogEntry(f"sl2x2-s{s}-P{lam}", f"pi_{s}^* P_{lam}", 3, "p = 3", _sl2_r(s, lam))
    for s in (1, 2)
    for lam in (0, 1, 2)
]
ENTRIES += [
    CatalogEntry("g12-N1", "g_(1,2), N truncated at degree 1", 5, "p > j", _semidirect(2, "N", 1)),
    CatalogEntry("g12-N2", "g_(1,2), N truncated at degree 2", 5, "p > j", _semidirect(2, "N", 2)),
    CatalogEntry("g12-N3", "g_(1,2), N truncated at degree 3", 5, "p > j", _semidirect(2, "N", 3)),
    CatalogEntry("g13-M1", "g_(1,3), M = Lambda^1 + Lambda^2", 5, "p >= 3", _semidirect(3, "M", 1)),
    CatalogEntry("g12-R1", "g_(1,2), R = top two degrees of S(V)/(v^p)", 5, "p >= 3", _semidirect(2, "R", 1)),
    CatalogEntry("u3-trivial", "zero module", 5, "p >= 3", _trivial),
]

_BY_ID = {e.id: e for e in ENTRIES}


def list_entries() -> list[CatalogEntry]:
    return list(ENTRIES)


def get(entry_id: str, p: int | None = None) -> Bundle:
    if entry_id not in _BY_ID:
        raise KeyError(f"unknown catalog id {entry_id!r}")
    e = _BY_ID[entry_id]
    return e.build(e.p if p is None else p)


__all__ = [
    "Bundle", "CatalogEntry", "ENTRIES", "get", "list_entries", "orbit_line",
    "make_classical", "nilradical_point", "cominuscule_table", "cominuscule_identities",
    "make_heisenberg", "make_socle_jump", "make_sl2_pims", "make_sl2_r", "make_semidirect",
]
