"""Universal operators Theta_s on a parametrized locus and the kernel/image
modules they define."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .evariety import ChartParam
from .exact import linalg
from .exact.fields import Field, gf
from .exact.polymat import PolyMatrix, generic_rank, hstack, saturated_kernel_univariate, vstack
from .liealg import RestrictedLieAlgebra
from .modrep import UModule, compositions, rad_soc_dims, validate_module


class ThetaError(ValueError):
    """The parametrization does not land in E(r, g)."""


@dataclass
class ThetaSystem:
    M: UModule
    param: ChartParam
    theta: list[PolyMatrix]

    @property
    def m(self) -> int:
        return self.M.dim

    @property
    def r(self) -> int:
        return len(self.theta)

    @property
    def p(self) -> int:
        return self.M.p

    def __post_init__(self):
        self._powers: dict[tuple[int, int], PolyMatrix] = {}
        self._products: dict[tuple[int, ...], PolyMatrix] = {}
        self._generic: dict[int, tuple[int, int]] = {}

    def power(self, s: int, e: int) -> PolyMatrix:
        key = (s, e)
        if key not in self._powers:
            if e == 0:
                self._powers[key] = PolyMatrix.constant(self.p, self.param.nvars, np.eye(self.m, dtype=np.int64))
            else:
                self._powers[key] = self.power(s, e - 1) @ self.theta[s]
        return self._powers[key]

    def product(self, comp: Sequence[int]) -> PolyMatrix:
        comp = tuple(comp)
        if comp not in self._products:
            prod = None
            for s, e in enumerate(comp):
                if e:
                    prod = self.power(s, e) if prod is None else prod @ self.power(s, e)
            if prod is None:
                prod = self.power(0, 0)
            self._products[comp] = prod
        return self._products[comp]


def _theta_from_frame(M: UModule, frame, p: int, nvars: int) -> list[PolyMatrix]:
    n = len(frame)
    r = len(frame[0]) if n else 0
    out = []
    for s in range(r):
        coeffs: dict = {}
        for i in range(n):
            q = frame[i][s]
            for mono, c in q.terms.items():
                blk = coeffs.get(mono)
                term = (M.actions[i] * c) % p
                coeffs[mono] = term if blk is None else (blk + term) % p
        out.append(PolyMatrix(p, nvars, (M.dim, M.dim), coeffs))
    return out


def check_theta(theta: Sequence[PolyMatrix], p: int) -> None:
    for (a, ta), (b, tb) in itertools.combinations(enumerate(theta), 2):
        diff = ta @ tb - tb @ ta
        if not diff.is_zero():
            mono = min(diff.coeffs)
            raise ThetaError(f"Theta_{a} and Theta_{b} do not commute (witness monomial {list(mono)})")
    for s, t in enumerate(theta):
        pw = t ** p
        if not pw.is_zero():
            mono = min(pw.coeffs)
            raise ThetaError(f"Theta_{s}^p != 0 (witness monomial {list(mono)})")


def build_theta(M: UModule, param: ChartParam, L: RestrictedLieAlgebra | None = None, check: bool = True) -> ThetaSystem:
    """Theta_s = sum_i rho(x_i) Y_{i,s}."""
    if len(M.actions) != param.n:
        raise ValueError("module and parametrization belong to algebras of different dimension")
    if L is not None and check:
        rep = validate_module(L, M)
        if not rep.ok:
            raise ValueError(f"module fails validation: {rep.failures()[0].witness}")
    theta = _theta_from_frame(M, param.frame, M.p, param.nvars)
    if check:
        check_theta(theta, M.p)
    return ThetaSystem(M, param, theta)


def kernel_image_matrices(ts: ThetaSystem, j: int) -> tuple[PolyMatrix, PolyMatrix]:
    """(K_j, I_j): the r(j) products stacked vertically / concatenated horizontally."""
    if j < 1 or j > (ts.p - 1) * ts.r:
        raise ValueError(f"j={j} outside 1..{(ts.p - 1) * ts.r}")
    blocks = [ts.product(c) for c in compositions(j, ts.r)]
    return vstack(blocks), hstack(blocks)


def generic_ranks(ts: ThetaSystem, j: int) -> tuple[int, int]:
    """(ker_rank, im_rank) over the function field of the parameter space."""
    if j not in ts._generic:
        K, I = kernel_image_matrices(ts, j)
        ts._generic[j] = (ts.m - generic_rank(K), generic_rank(I))
    return ts._generic[j]


def specialized_ranks(ts: ThetaSystem, j: int, field: Field, params: Sequence[int]) -> tuple[int, int]:
    """(rank K_j(q), rank I_j(q))."""
    blocks = [ts.product(c).specialize(field, params) for c in compositions(j, ts.r)]
    return linalg.rank(field, np.concatenate(blocks, axis=0)), linalg.rank(field, np.concatenate(blocks, axis=1))


@dataclass
class FiberRow:
    coords: list[int]
    k_rank: int
    i_rank: int
    ker: int | None
    im: int | None
    soc: int
    rad: int

    @property
    def agree(self) -> bool | None:
        if self.ker is None or self.im is None:
            return None
        return self.ker == self.soc and self.im == self.rad

    def to_json(self) -> dict:
        return {
            "coords": self.coords,
            "ker": self.ker,
            "im": self.im,
            "soc": self.soc,
            "rad": self.rad,
            "agree": self.agree,
            "matrix_rank": {"K": self.k_rank, "I": self.i_rank},
        }


@dataclass
class SheafReport:
    j: int
    generic_ker: int
    generic_im: int
    points: list[FiberRow]
    field: tuple[int, int]
    m_total: int = 0

    @property
    def certified(self) -> bool:
        """Specialized matrix ranks equal generic ranks at every tested point."""
        return all(
            row.k_rank == self.m_total - self.generic_ker and row.i_rank == self.generic_im for row in self.points
        )

    @property
    def sheaf_rank_constant(self) -> bool | None:
        vals = [row.ker for row in self.points]
        if any(v is None for v in vals):
            return None
        return all(v == self.generic_ker for v in vals)

    def mismatches(self) -> list[FiberRow]:
        return [row for row in self.points if row.agree is False]

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "field": list(self.field),
            "generic": {"ker": self.generic_ker, "im": self.generic_im},
            "points": [row.to_json() for row in self.points],
            "certified": self.certified,
            "sheaf_rank_constant": self.sheaf_rank_constant,
            "mismatches": [row.coords for row in self.mismatches()],
        }


def _kernel_module_basis(ts: ThetaSystem, j: int):
    """Saturated kernel basis over F_p[T] (one-parameter loci only)."""
    cache = ts.__dict__.setdefault("_satker", {})
    if j not in cache:
        K, _ = kernel_image_matrices(ts, j)
        W, _, k = saturated_kernel_univariate(K)
        cache[j] = W.take_cols(range(k, ts.m))
    return cache[j]


def fiber_compare(ts: ThetaSystem, j: int, points: Sequence[Sequence[int]], field: Field | None = None) -> SheafReport:
    """Matrix ranks, sheaf fiber ranks and Rad/Soc dimensions at each point.

    ``ker`` is the dimension of the image of the kernel sheaf's fiber in M
    and ``im`` the dimension of the image sheaf's fiber.  On one-parameter
    loci both are exact at every point (saturated kernel basis; image modules
    over a PID are free).  With more parameters they are known only where
    the matrix rank is generic and are reported as null elsewhere.
    """
    f = field or gf(ts.p)
    gk, gi = generic_ranks(ts, j)
    m = ts.m
    rows = []
    nv = ts.param.nvars
    kb = _kernel_module_basis(ts, j) if nv == 1 else None
    for q in points:
        q = [int(x) for x in q]
        if len(q) != nv:
            raise ValueError("point has the wrong number of parameters")
        kr, ir = specialized_ranks(ts, j, f, q)
        pt = ts.param.point_at(f, q)
        rad, soc = rad_soc_dims(ts.M, pt, j)
        if nv == 0:
            ker, im = m - kr, ir
        elif nv == 1:
            ker = linalg.rank(f, kb.specialize(f, q)) if kb.shape[1] else 0
            im = gi
        else:
            ker = m - kr if kr == m - gk else None
            im = ir if ir == gi else None
        if kr > m - gk or ir > gi:
            raise AssertionError("semicontinuity violated: specialized rank exceeds generic rank")
        rows.append(FiberRow(q, kr, ir, ker, im, soc, rad))
    return SheafReport(j, gk, gi, rows, (f.p, f.k), m_total=m)


def bundle_certificate(ts: ThetaSystem, j: int, points: Sequence[Sequence[int]], field: Field | None = None) -> dict:
    rep = fiber_compare(ts, j, points, field)
    m = ts.m
    bad_k = [row.coords for row in rep.points if row.k_rank != m - rep.generic_ker]
    bad_i = [row.coords for row in rep.points if row.i_rank != rep.generic_im]
    certified = not bad_k and not bad_i
    lines = []
    if certified:
        lines.append(
            f"constant (r,{j})-socle and radical rank on the {len(rep.points)} tested points: "
            "kernel and image sheaves satisfy the vector bundle criterion on the tested locus"
        )
    else:
        if bad_k:
            lines.append(f"K_{j} rank drops below generic at {bad_k}")
        if bad_i:
            lines.append(f"I_{j} rank drops below generic at {bad_i}")
        if rep.sheaf_rank_constant:
            lines.append(
                "the kernel sheaf fiber rank is nevertheless constant: the sheaf is locally free "
                "while Soc jumps at the listed points"
            )
    mism = rep.mismatches()
    if mism:
        lines.append(f"fiber vs Rad/Soc mismatch at {[row.coords for row in mism]}")
    return {
        "j": j,
        "certified": certified,
        "sheaf_rank_constant": rep.sheaf_rank_constant,
        "generic": {"ker": rep.generic_ker, "im": rep.generic_im},
        "deviating_points": {"K": bad_k, "I": bad_i},
        "mismatches": [row.coords for row in mism],
        "statement": "; ".join(lines),
        "report": rep,
    }


def find_generic_point(ts: ThetaSystem, j: int, max_k: int = 4, trials: int = 20, seed: int = 0):
    """A parameter value where both matrix ranks are generic, escalating the
    extension degree; None if every attempt up to GF(p^max_k) fails."""
    gk, gi = generic_ranks(ts, j)
    rng = random.Random(seed)
    for k in range(1, max_k + 1):
        f = gf(ts.p, k)
        for _ in range(trials):
            q = [rng.randrange(f.q) for _ in range(ts.param.nvars)]
            kr, ir = specialized_ranks(ts, j, f, q)
            if kr == ts.m - gk and ir == gi:
                return k, q
    return None
