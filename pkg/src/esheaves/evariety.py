"""Grassmannian charts, parametrized loci in E(r, g), point enumeration and
rank scans."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .exact import linalg
from .exact.fields import Field, gf
from .exact.poly import Poly
from .liealg import EPoint, RestrictedLieAlgebra, is_elementary
from .modrep import UModule, rad_soc_dims


@dataclass(frozen=True)
class Chart:
    """U_Sigma: subspaces whose Sigma-minor is invertible (0-based rows)."""

    n: int
    sigma: tuple[int, ...]

    def __post_init__(self):
        if list(self.sigma) != sorted(set(self.sigma)) or any(not 0 <= i < self.n for i in self.sigma):
            raise ValueError("sigma must be a sorted subset of range(n)")

    @property
    def r(self) -> int:
        return len(self.sigma)

    def free_coords(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) if i not in self.sigma for j in range(self.r)]

    def contains(self, field: Field, eps) -> bool:
        return linalg.rank(field, np.asarray(eps)[list(self.sigma)]) == self.r


class ChartParam:
    """A polynomial map A^d -> Grass(r, n) given by an n x r frame of Polys.

    When ``sigma`` is set the frame has the identity pattern in the Sigma rows
    (so the map lands in the chart U_Sigma); ``coords`` then lists the free
    entries.  Frames without a chart are allowed for loci that are most
    naturally written in another basis (basis changes, orbit lines).
    """

    def __init__(self, p: int, n: int, r: int, nvars: int, frame: Sequence[Sequence[Poly]], sigma=None, label: str = ""):
        self.p, self.n, self.r, self.nvars = p, n, r, nvars
        self.frame = [list(row) for row in frame]
        if len(self.frame) != n or any(len(row) != r for row in self.frame):
            raise ValueError("frame must be n x r")
        self.sigma = tuple(sigma) if sigma is not None else None
        self.label = label
        if self.sigma is not None:
            Chart(n, self.sigma)
            for jj, i in enumerate(self.sigma):
                for j in range(r):
                    want = 1 if j == jj else 0
                    q = self.frame[i][j]
                    if not (q.is_const() and q.const_value() == want):
                        raise ValueError("frame does not have the identity pattern in the Sigma rows")

    @classmethod
    def from_coords(cls, p: int, n: int, sigma: Sequence[int], nvars: int, coords: dict, label: str = "") -> "ChartParam":
        sigma = tuple(sigma)
        r = len(sigma)
        zero = Poly(p, nvars)
        frame = [[zero for _ in range(r)] for _ in range(n)]
        for jj, i in enumerate(sigma):
            frame[i][jj] = Poly.const(p, nvars, 1)
        for (i, j), q in coords.items():
            if i in sigma:
                raise ValueError(f"coordinate ({i}, {j}) lies in a Sigma row")
            frame[i][j] = q if isinstance(q, Poly) else Poly.const(p, nvars, int(q))
        return cls(p, n, r, nvars, frame, sigma, label)

    @classmethod
    def full_chart(cls, p: int, n: int, sigma: Sequence[int], label: str = "") -> "ChartParam":
        ch = Chart(n, tuple(sigma))
        free = ch.free_coords()
        coords = {ij: Poly.var(p, len(free), k) for k, ij in enumerate(free)}
        return cls.from_coords(p, n, sigma, len(free), coords, label or f"U_{list(sigma)}")

    @classmethod
    def constant(cls, p: int, eps, label: str = "") -> "ChartParam":
        eps = np.asarray(eps, dtype=np.int64)
        frame = [[Poly.const(p, 0, int(x)) for x in row] for row in eps]
        return cls(p, eps.shape[0], eps.shape[1], 0, frame, None, label or "point")

    def coords(self) -> dict:
        if self.sigma is None:
            return {(i, j): self.frame[i][j] for i in range(self.n) for j in range(self.r) if not self.frame[i][j].is_zero()}
        return {(i, j): self.frame[i][j] for (i, j) in Chart(self.n, self.sigma).free_coords() if not self.frame[i][j].is_zero()}

    def frame_at(self, field: Field, params: Sequence[int]) -> np.ndarray:
        return np.array([[q.evaluate(field, params) for q in row] for row in self.frame], dtype=np.int64)

    def point_at(self, field: Field, params: Sequence[int]) -> EPoint:
        eps = self.frame_at(field, params)
        if linalg.rank(field, eps) < self.r:
            raise ValueError("parametrization is rank deficient at this parameter value")
        return EPoint(field, eps)

    def coords_of(self, pt: EPoint) -> list[int]:
        """Parameter values of a point, for a full-chart parametrization."""
        if self.sigma is None:
            raise ValueError("parametrization has no chart")
        f = pt.field
        if not Chart(self.n, self.sigma).contains(f, pt.eps):
            raise ValueError("point lies outside the chart")
        norm = f.matmul(pt.eps, linalg.inverse(f, pt.eps[list(self.sigma)]))
        vals = [None] * self.nvars
        for (i, j), q in self.coords().items():
            if q.degree() != 1 or len(q.terms) != 1 or next(iter(q.terms.values())) != 1:
                raise ValueError("coords_of requires coordinates that are distinct variables")
            (mono,) = q.terms
            vals[mono.index(1)] = int(norm[i, j])
        for (i, j) in Chart(self.n, self.sigma).free_coords():
            if self.frame[i][j].is_zero() and norm[i, j] != 0:
                raise ValueError("point is not on the parametrized locus")
        return [0 if v is None else v for v in vals]

    def to_json(self) -> dict:
        out = {
            "sigma": list(self.sigma) if self.sigma is not None else None,
            "params": self.nvars,
            "coords": [{"i": i, "j": j, "poly": q.to_json()} for (i, j), q in sorted(self.coords().items())],
            "label": self.label,
        }
        if self.sigma is None:
            out["r"] = self.r
        return out

    @classmethod
    def from_json(cls, data: dict, p: int, n: int) -> "ChartParam":
        nv = int(data["params"])
        coords = {(int(c["i"]), int(c["j"])): Poly.from_json(p, nv, c["poly"]) for c in data["coords"]}
        if data.get("sigma") is None:
            r = int(data["r"])
            zero = Poly(p, nv)
            frame = [[zero] * r for _ in range(n)]
            frame = [list(row) for row in frame]
            for (i, j), q in coords.items():
                frame[i][j] = q
            return cls(p, n, r, nv, frame, None, data.get("label", ""))
        return cls.from_coords(p, n, data["sigma"], nv, coords, data.get("label", ""))


def chart_of_point(pt: EPoint) -> tuple[Chart, EPoint]:
    """Lexicographically first Sigma with invertible minor and eps (Sigma-minor)^-1."""
    f = pt.field
    _, piv = linalg.rref(f, pt.eps.T)
    if len(piv) < pt.r:
        raise ValueError("eps is rank deficient")
    sigma = tuple(piv)
    norm = f.matmul(pt.eps, linalg.inverse(f, pt.eps[list(sigma)]))
    return Chart(pt.n, sigma), EPoint(f, np.asarray(norm, dtype=np.int64))


def grassmannian_size(q: int, n: int, r: int) -> int:
    total = 0
    for sigma in itertools.combinations(range(n), r):
        free = sum(1 for j, sj in enumerate(sigma) for i in range(sj + 1, n) if i not in sigma)
        total += q**free
    return total


def enumerate_elementary(L: RestrictedLieAlgebra, r: int, k: int = 1, budget: int = 200_000) -> list[EPoint]:
    """All F_{p^k}-points of E(r, g) via Schubert cells, one normalized
    representative per subspace."""
    f = gf(L.p, k)
    n = L.n
    if r > n or r < 1:
        return []
    size = grassmannian_size(f.q, n, r)
    if size > budget:
        raise ValueError(f"Grass({r},{n}) has {size} points over GF({L.p}^{k}); budget is {budget}")
    out = []
    for sigma in itertools.combinations(range(n), r):
        free = [(i, j) for j, sj in enumerate(sigma) for i in range(sj + 1, n) if i not in sigma]
        base = np.zeros((n, r), dtype=np.int64)
        for j, sj in enumerate(sigma):
            base[sj, j] = 1
        for vals in itertools.product(range(f.q), repeat=len(free)):
            eps = base.copy()
            for (i, j), v in zip(free, vals):
                eps[i, j] = v
            pt = EPoint(f, eps)
            if is_elementary(L, pt):
                out.append(pt)
    return out


# ---------------------------------------------------------------- scans

@dataclass
class PointDims:
    point: EPoint
    rad: dict[int, int]
    soc: dict[int, int]


@dataclass
class ScanReport:
    """Per-point dimensions plus observed (not true) extremes."""

    j_range: list[int]
    points: list[PointDims]
    observed_max_rad: dict[int, int] = dc_field(default_factory=dict)
    observed_min_soc: dict[int, int] = dc_field(default_factory=dict)
    rad_locus: dict[int, list[int]] = dc_field(default_factory=dict)
    soc_locus: dict[int, list[int]] = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "extremes": "observed over the tested points only",
            "j_range": self.j_range,
            "observed_max_rad": {str(j): v for j, v in self.observed_max_rad.items()},
            "observed_min_soc": {str(j): v for j, v in self.observed_min_soc.items()},
            "rad_locus": {str(j): v for j, v in self.rad_locus.items()},
            "soc_locus": {str(j): v for j, v in self.soc_locus.items()},
            "points": [
                {
                    "eps": pd.point.to_json(),
                    "rad": {str(j): pd.rad[j] for j in self.j_range},
                    "soc": {str(j): pd.soc[j] for j in self.j_range},
                }
                for pd in self.points
            ],
        }


def scan_ranks(L: RestrictedLieAlgebra, M: UModule, points: Sequence[EPoint], j_range: Iterable[int], check: bool = True) -> ScanReport:
    j_range = list(j_range)
    if not points:
        raise ValueError("empty point set")
    dims = []
    for pt in points:
        if check and not is_elementary(L, pt):
            raise ValueError("scan point is not elementary")
        rad, soc = {}, {}
        for j in j_range:
            rad[j], soc[j] = rad_soc_dims(M, pt, j)
        dims.append(PointDims(pt, rad, soc))
    rep = ScanReport(j_range, dims)
    for j in j_range:
        rep.observed_max_rad[j] = max(d.rad[j] for d in dims)
        rep.observed_min_soc[j] = min(d.soc[j] for d in dims)
        rep.rad_locus[j] = [k for k, d in enumerate(dims) if d.rad[j] < rep.observed_max_rad[j]]
        rep.soc_locus[j] = [k for k, d in enumerate(dims) if d.soc[j] > rep.observed_min_soc[j]]
    return rep


def param_points(param: ChartParam, k: int = 1, limit: int | None = None) -> tuple[Field, list[tuple[int, ...]]]:
    """All F_{p^k} parameter values (or the first ``limit`` of them)."""
    f = gf(param.p, k)
    it = itertools.product(range(f.q), repeat=param.nvars)
    pts = list(itertools.islice(it, limit)) if limit is not None else list(it)
    return f, pts


def constancy_certificate(L: RestrictedLieAlgebra, M: UModule, param: ChartParam, points: Sequence[Sequence[int]], j: int, field: Field | None = None, exhaustive_k: int | None = None) -> dict:
    """Generic ranks from the theta module against every sampled fiber."""
    from .theta import build_theta, bundle_certificate

    ts = build_theta(M, param, L)
    f = field or gf(param.p)
    cert = bundle_certificate(ts, j, points, f)
    cert["exhaustive"] = exhaustive_k is not None
    if cert["certified"] and exhaustive_k is not None:
        cert["statement"] = (
            f"constant rank over tested points (all GF({param.p}^{exhaustive_k}) points of the locus) "
            "- bundle criterion satisfied on tested locus"
        )
    return cert
