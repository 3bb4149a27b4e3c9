"""Restricted Lie algebras given by structure constants and a p-map on the basis."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .exact import linalg
from .exact.fields import Field, PrimeField, check_prime, gf


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: str | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "witness": self.witness}


@dataclass
class ValidationReport:
    checks: list[Check] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, witness: str | None) -> None:
        self.checks.append(Check(name, witness is None, witness))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


class RestrictedLieAlgebra:
    """Basis x_0..x_{n-1}; ``bracket[i, j]`` holds the coordinates of [x_i, x_j]
    and ``p_powers[:, i]`` those of x_i^[p]."""

    def __init__(self, p: int, labels: Sequence[str], bracket, p_powers, realization=None, name: str = ""):
        check_prime(p)
        self.p = int(p)
        self.labels = list(labels)
        self.n = len(self.labels)
        self.bracket = np.asarray(bracket, dtype=np.int64) % self.p
        self.p_powers = np.asarray(p_powers, dtype=np.int64) % self.p
        if self.bracket.shape != (self.n, self.n, self.n):
            raise ValueError("bracket tensor must be n x n x n")
        if self.p_powers.shape != (self.n, self.n):
            raise ValueError("p-power table must be n x n")
        self.realization = None if realization is None else [np.asarray(m, dtype=np.int64) % self.p for m in realization]
        self.name = name
        self._coord_solver = None
        # ad(x_i)[k, j] = coefficient of x_k in [x_i, x_j]
        self.ad_basis = np.transpose(self.bracket, (0, 2, 1)).copy()

    @property
    def field(self) -> PrimeField:
        return gf(self.p)

    def ad(self, v, field: Field | None = None) -> np.ndarray:
        f = field or self.field
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros((self.n, self.n), dtype=np.int64)
        for i in np.flatnonzero(v):
            out = f.add(out, f.mul(self.ad_basis[i], int(v[i])))
        return out

    def bracket_vec(self, u, v, field: Field | None = None) -> np.ndarray:
        f = field or self.field
        return f.matmul(self.ad(u, f), np.asarray(v, dtype=np.int64)[:, None])[:, 0]

    # p-map
    def p_power(self, v, field: Field | None = None) -> np.ndarray:
        """x^[p] for an arbitrary element, by Jacobson's formula over the basis."""
        f = field or self.field
        v = np.asarray(v, dtype=np.int64)
        acc = np.zeros(self.n, dtype=np.int64)
        acc_pp = np.zeros(self.n, dtype=np.int64)
        started = False
        for i in np.flatnonzero(v):
            lam = int(v[i])
            term = np.zeros(self.n, dtype=np.int64)
            term[i] = lam
            term_pp = f.mul(self.p_powers[:, i], f.power(lam, self.p))
            if started:
                corr = self._jacobson_correction(acc, term, f)
                acc_pp = f.add(f.add(acc_pp, term_pp), corr)
                acc = f.add(acc, term)
            else:
                acc, acc_pp, started = term, np.asarray(term_pp, dtype=np.int64), True
        return np.asarray(acc_pp, dtype=np.int64)

    def _jacobson_correction(self, a, b, f: Field) -> np.ndarray:
        """Sum of s_i(a, b): i s_i is the t^(i-1) coefficient of ad(ta+b)^(p-1)(a)."""
        ada, adb = self.ad(a, f), self.ad(b, f)
        coeffs = [np.asarray(a, dtype=np.int64)[:, None]]
        for _ in range(self.p - 1):
            nxt = [f.matmul(adb, c) for c in coeffs] + [np.zeros((self.n, 1), dtype=np.int64)]
            for k, c in enumerate(coeffs):
                nxt[k + 1] = f.add(nxt[k + 1], f.matmul(ada, c))
            coeffs = nxt
        out = np.zeros((self.n, 1), dtype=np.int64)
        for i in range(1, self.p):
            out = f.add(out, f.mul(coeffs[i - 1], f.inv(i)))
        return out[:, 0]

    def p_power_matrix(self, v, field: Field | None = None) -> np.ndarray:
        """x^[p] through the matrix realization (p-th matrix power)."""
        if self.realization is None:
            raise ValueError("algebra has no matrix realization")
        f = field or self.field
        mat = self.element_matrix(v, f)
        return self.coords_of_matrix(linalg.matpow(f, mat, self.p), f)

    def element_matrix(self, v, field: Field | None = None) -> np.ndarray:
        f = field or self.field
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros_like(self.realization[0])
        for i in np.flatnonzero(v):
            out = f.add(out, f.mul(self.realization[i], int(v[i])))
        return out

    def coords_of_matrix(self, mat, field: Field | None = None) -> np.ndarray:
        f = field or self.field
        if self._coord_solver is None:
            flat = np.stack([m.reshape(-1) for m in self.realization], axis=1)
            _, piv = linalg.rref(self.field, flat.T)
            if len(piv) < self.n:
                raise ValueError("matrix realization is not faithful")
            rows = piv
            inv = linalg.inverse(self.field, flat[rows])
            self._coord_solver = (flat, rows, inv)
        flat, rows, inv = self._coord_solver
        vec = np.asarray(mat, dtype=np.int64).reshape(-1)
        coords = f.matmul(inv, vec[rows][:, None])[:, 0]
        back = f.matmul(flat, coords[:, None])[:, 0]
        if not np.array_equal(np.asarray(back) % (f.q if f.k > 1 else f.p), vec % (f.q if f.k > 1 else f.p)):
            raise ValueError("matrix is not in the span of the realization")
        return np.asarray(coords, dtype=np.int64)

    def to_json(self) -> dict:
        br = []
        for i in range(self.n):
            for j in range(self.n):
                ks = np.flatnonzero(self.bracket[i, j])
                if ks.size:
                    br.append([i, j, [[int(k), int(self.bracket[i, j, k])] for k in ks]])
        pp = []
        for i in range(self.n):
            ks = np.flatnonzero(self.p_powers[:, i])
            if ks.size:
                pp.append([i, [[int(k), int(self.p_powers[k, i])] for k in ks]])
        out = {"p": self.p, "dim": self.n, "labels": self.labels, "brackets": br, "p_powers": pp}
        if self.realization is not None:
            out["matrix_realization"] = {
                "N": int(self.realization[0].shape[0]),
                "mats": [m.tolist() for m in self.realization],
            }
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RestrictedLieAlgebra":
        p, n = int(data["p"]), int(data["dim"])
        labels = data.get("labels") or [f"x{i}" for i in range(n)]
        if len(labels) != n:
            raise ValueError("labels length differs from dim")
        br = np.zeros((n, n, n), dtype=np.int64)
        for entry in data.get("brackets", []):
            i, j, terms = entry
            for k, c in terms:
                br[int(i), int(j), int(k)] = int(c) % p
        pp = np.zeros((n, n), dtype=np.int64)
        for i, terms in data.get("p_powers", []):
            for k, c in terms:
                pp[int(k), int(i)] = int(c) % p
        real = None
        if data.get("matrix_realization"):
            mr = data["matrix_realization"]
            real = [np.asarray(m, dtype=np.int64) for m in mr["mats"]]
            if len(real) != n or any(m.shape != (mr["N"], mr["N"]) for m in real):
                raise ValueError("matrix realization has the wrong shape")
        return cls(p, labels, br, pp, real, name=data.get("name", ""))


def algebra_from_matrices(p: int, mats: Sequence, labels: Sequence[str], name: str = "") -> RestrictedLieAlgebra:
    """Structure constants and p-map read off a faithful matrix realization."""
    f = gf(p)
    mats = [np.asarray(m, dtype=np.int64) % p for m in mats]
    n = len(mats)
    shell = RestrictedLieAlgebra(p, labels, np.zeros((n, n, n)), np.zeros((n, n)), mats, name)
    br = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            comm = f.sub(f.matmul(mats[i], mats[j]), f.matmul(mats[j], mats[i]))
            c = shell.coords_of_matrix(comm)
            br[i, j] = c
            br[j, i] = (-c) % p
    pp = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        pp[:, i] = shell.coords_of_matrix(linalg.matpow(f, mats[i], p))
    return RestrictedLieAlgebra(p, labels, br, pp, mats, name)


def change_basis(L: RestrictedLieAlgebra, q) -> RestrictedLieAlgebra:
    """New basis x'_a = sum_i q[i, a] x_i."""
    f = L.field
    q = np.asarray(q, dtype=np.int64) % L.p
    qinv = linalg.inverse(f, q)
    n = L.n
    br = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            v = L.bracket_vec(q[:, a], q[:, b])
            br[a, b] = f.matmul(qinv, v[:, None])[:, 0]
    pp = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        pp[:, a] = f.matmul(qinv, L.p_power(q[:, a])[:, None])[:, 0]
    real = None
    if L.realization is not None:
        real = [L.element_matrix(q[:, a]) for a in range(n)]
    labels = [f"{lab}'" for lab in L.labels]
    return RestrictedLieAlgebra(L.p, labels, br, pp, real, name=L.name + "'")


def _fmt(L: RestrictedLieAlgebra, *idx: int) -> str:
    return "(" + ", ".join(L.labels[i] for i in idx) + ")"


def validate_algebra(L: RestrictedLieAlgebra) -> ValidationReport:
    rep = ValidationReport()
    f = L.field
    n, p = L.n, L.p
    wit = None
    for i in range(n):
        for j in range(i, n):
            if not np.array_equal((L.bracket[i, j] + L.bracket[j, i]) % p, np.zeros(n, dtype=np.int64)):
                wit = f"antisymmetry fails at {_fmt(L, i, j)}"
                break
        if wit:
            break
    rep.add("antisymmetry", wit)

    wit = None
    for i, j, k in itertools.combinations_with_replacement(range(n), 3):
        s = (
            L.ad_basis[i] @ L.bracket[j, k]
            + L.ad_basis[j] @ L.bracket[k, i]
            + L.ad_basis[k] @ L.bracket[i, j]
        ) % p
        if s.any():
            wit = f"Jacobi identity fails at {_fmt(L, i, j, k)}"
            break
    rep.add("jacobi", wit)

    wit = None
    for i in range(n):
        lhs = L.ad(L.p_powers[:, i])
        rhs = linalg.matpow(f, L.ad_basis[i], p)
        if not np.array_equal(lhs, rhs):
            wit = f"ad(x^[p]) != (ad x)^p at {_fmt(L, i)}"
            break
    rep.add("restrictedness", wit)

    if L.realization is not None:
        wit = None
        for i in range(n):
            for j in range(n):
                comm = f.sub(f.matmul(L.realization[i], L.realization[j]), f.matmul(L.realization[j], L.realization[i]))
                if not np.array_equal(comm, L.element_matrix(L.bracket[i, j])):
                    wit = f"commutator disagrees with structure constants at {_fmt(L, i, j)}"
                    break
            if wit:
                break
        rep.add("realization_bracket", wit)
        wit = None
        for i in range(n):
            if not np.array_equal(linalg.matpow(f, L.realization[i], p), L.element_matrix(L.p_powers[:, i])):
                wit = f"matrix p-th power disagrees with p-map at {_fmt(L, i)}"
                break
        rep.add("realization_p_power", wit)
    return rep


@dataclass(frozen=True, eq=False)
class EPoint:
    """An r-dimensional subspace of g, given by a full-rank n x r matrix."""

    field: Field
    eps: np.ndarray

    @property
    def r(self) -> int:
        return int(self.eps.shape[1])

    @property
    def n(self) -> int:
        return int(self.eps.shape[0])

    def column(self, s: int) -> np.ndarray:
        return self.eps[:, s]

    def span_key(self) -> tuple:
        red, _ = linalg.rref(self.field, self.eps.T)
        return (self.field.p, self.field.k, tuple(map(tuple, red.tolist())))

    def to_json(self) -> dict:
        return {"field": [self.field.p, self.field.k], "eps": self.eps.tolist()}


def make_point(field: Field, eps) -> EPoint:
    eps = np.asarray(eps, dtype=np.int64)
    if eps.ndim == 1:
        eps = eps[:, None]
    if linalg.rank(field, eps) < eps.shape[1]:
        raise ValueError("eps is rank deficient")
    return EPoint(field, eps)


def is_elementary(L: RestrictedLieAlgebra, pt: EPoint) -> bool:
    """Pairwise commuting columns, each with vanishing p-th power."""
    f = pt.field
    if pt.n != L.n:
        raise ValueError("point lives in a different algebra")
    if linalg.rank(f, pt.eps) < pt.r:
        raise ValueError("eps is rank deficient")
    cols = [pt.eps[:, s] for s in range(pt.r)]
    for a, b in itertools.combinations(cols, 2):
        if np.any(L.bracket_vec(a, b, f)):
            return False
    # on a commuting span the p-map is p-semilinear, so columns suffice
    return all(not np.any(L.p_power(v, f)) for v in cols)


def truncated_exp(L: RestrictedLieAlgebra, x, field: Field | None = None) -> np.ndarray:
    """sum_{i<p} (ad x)^i / i!; requires (ad x)^p = 0."""
    f = field or L.field
    adx = L.ad(x, f)
    if np.any(linalg.matpow(f, adx, L.p)):
        raise ValueError("generator is not ad-nilpotent of order p")
    out = np.eye(L.n, dtype=np.int64)
    term = np.eye(L.n, dtype=np.int64)
    for i in range(1, L.p):
        term = f.mul(f.matmul(term, adx), f.inv(i))
        out = f.add(out, term)
    return out


def adjoint_orbit_points(
    L: RestrictedLieAlgebra,
    pt: EPoint,
    generators: Sequence,
    count: int,
    seed: int = 0,
    max_attempts: int | None = None,
) -> list[EPoint]:
    """Distinct elementary points exp(ad c_m x_m)...exp(ad c_1 x_1) eps."""
    f = pt.field
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    for g in gens:
        if np.any(linalg.matpow(f, L.ad(g, f), L.p)):
            raise ValueError("generator x has (ad x)^p != 0")
    if not gens:
        return [pt]
    rng = random.Random(seed)
    seen: dict[tuple, EPoint] = {}
    attempts = max_attempts if max_attempts is not None else 50 * count
    for _ in range(attempts):
        if len(seen) >= count:
            break
        eps = pt.eps
        for g in gens:
            c = rng.randrange(f.q)
            if c == 0:
                continue
            eps = f.matmul(truncated_exp(L, f.mul(g, c), f), eps)
        if linalg.rank(f, eps) < pt.r:
            continue
        cand = EPoint(f, np.asarray(eps, dtype=np.int64))
        key = cand.span_key()
        if key in seen or not is_elementary(L, cand):
            continue
        seen[key] = cand
    return list(seen.values())


def nilradical_of_parabolic(family: str, n: int, r_or_root: int, p: int) -> EPoint:
    """u_{r,n-r} in gl_n / sl_n, or the abelian nilradical of p_{alpha_n} in sp_2n,
    in the basis of the catalog constructor ``make_classical``."""
    from .catalog.classical import nilradical_point

    return nilradical_point(family, n, r_or_root, p)
