"""Finite-dimensional u(g)-modules and their radical/socle series along
elementary subalgebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .exact import linalg
from .exact.fields import Field, gf
from .liealg import EPoint, RestrictedLieAlgebra, ValidationReport, is_elementary


class UModule:
    def __init__(self, p: int, actions: Sequence, label: str = ""):
        self.p = int(p)
        self.actions = [np.asarray(a, dtype=np.int64) % self.p for a in actions]
        self.label = label
        if self.actions:
            m = self.actions[0].shape[0]
            for a in self.actions:
                if a.shape != (m, m):
                    raise ValueError("action matrices must all be square of the same size")
            self.dim = m
        else:
            self.dim = 0

    def act(self, v, field: Field | None = None) -> np.ndarray:
        f = field or gf(self.p)
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in np.flatnonzero(v):
            out = f.add(out, f.mul(self.actions[i], int(v[i])))
        return out

    def to_json(self) -> dict:
        return {"label": self.label, "dim": self.dim, "actions": [a.tolist() for a in self.actions]}

    @classmethod
    def from_json(cls, data: dict, p: int) -> "UModule":
        acts = [np.asarray(a, dtype=np.int64) for a in data["actions"]]
        dim = int(data["dim"])
        if any(a.shape != (dim, dim) for a in acts):
            raise ValueError("module action has the wrong shape")
        return cls(p, acts, data.get("label", ""))

    def __repr__(self):
        return f"UModule({self.label!r}, dim={self.dim})"


def adjoint_module(L: RestrictedLieAlgebra) -> UModule:
    return UModule(L.p, [L.ad_basis[i] for i in range(L.n)], f"adjoint({L.name})")


def defining_module(L: RestrictedLieAlgebra) -> UModule:
    if L.realization is None:
        raise ValueError("algebra has no matrix realization")
    return UModule(L.p, L.realization, f"defining({L.name})")


def trivial_module(L: RestrictedLieAlgebra, m: int) -> UModule:
    return UModule(L.p, [np.zeros((m, m), dtype=np.int64)] * L.n, f"trivial^{m}")


def validate_module(L: RestrictedLieAlgebra, M: UModule) -> ValidationReport:
    rep = ValidationReport()
    f = gf(L.p)
    if len(M.actions) != L.n:
        rep.add("shape", f"module has {len(M.actions)} actions, algebra has dimension {L.n}")
        return rep
    rep.add("shape", None)
    wit = None
    for i in range(L.n):
        for j in range(i + 1, L.n):
            a, b = M.actions[i], M.actions[j]
            comm = f.sub(f.matmul(a, b), f.matmul(b, a))
            if not np.array_equal(comm, M.act(L.bracket[i, j])):
                wit = f"rho([{L.labels[i]}, {L.labels[j]}]) != [rho({L.labels[i]}), rho({L.labels[j]})]"
                break
        if wit:
            break
    rep.add("bracket", wit)
    wit = None
    for i in range(L.n):
        if not np.array_equal(linalg.matpow(f, M.actions[i], L.p), M.act(L.p_powers[:, i])):
            wit = f"rho({L.labels[i]}^[p]) != rho({L.labels[i]})^p"
            break
    rep.add("p_power", wit)
    return rep


# ---------------------------------------------------------------- Rad / Soc

@lru_cache(maxsize=None)
def compositions(j: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors (j_1..j_r) summing to j, lexicographically descending."""
    if r == 1:
        return ((j,),)
    out = []
    for first in range(j, -1, -1):
        for rest in compositions(j - first, r - 1):
            out.append((first,) + rest)
    return tuple(out)


def r_of_j(j: int, r: int) -> int:
    return comb(j + r - 1, r - 1)


def point_operators(M: UModule, pt: EPoint) -> list[np.ndarray]:
    return [M.act(pt.eps[:, s], pt.field) for s in range(pt.r)]


def monomial_products(ops: Sequence[np.ndarray], j: int, field: Field) -> list[np.ndarray]:
    """All ordered products op_1^{j_1}...op_r^{j_r} with sum j_s = j."""
    powers: list[list[np.ndarray]] = []
    for op in ops:
        seq = [np.eye(op.shape[0], dtype=np.int64)]
        for _ in range(j):
            seq.append(field.matmul(seq[-1], op))
        powers.append(seq)
    out = []
    for comp in compositions(j, len(ops)):
        prod = powers[0][comp[0]]
        for s in range(1, len(ops)):
            if comp[s]:
                prod = field.matmul(prod, powers[s][comp[s]])
        out.append(prod)
    return out


def _check_point(L: RestrictedLieAlgebra | None, M: UModule, pt: EPoint, j: int, ops) -> None:
    if j < 1 or j > (M.p - 1) * pt.r:
        raise ValueError(f"j={j} outside 1..{(M.p - 1) * pt.r}")
    if L is not None and not is_elementary(L, pt):
        raise ValueError("point is not an elementary subalgebra")
    f = pt.field
    for a, b in itertools.combinations(ops, 2):
        if not np.array_equal(f.matmul(a, b), f.matmul(b, a)):
            raise ValueError("operators of the point do not commute on the module")


def _rad_chain(ops, j: int, f: Field, m: int) -> np.ndarray:
    """Rad^j = sum_s op_s Rad^{j-1}: every degree-j monomial is op_s times one
    of degree j-1, so this equals the span of all degree-j products."""
    basis = np.eye(m, dtype=np.int64)
    for _ in range(j):
        if basis.shape[1] == 0:
            break
        basis = linalg.image(f, np.concatenate([f.matmul(op, basis) for op in ops], axis=1))
    return basis


def _soc_chain(ops, j: int, f: Field, m: int) -> np.ndarray:
    """Soc^j = {v : op_s v in Soc^{j-1} for all s}, starting from Soc^0 = 0."""
    basis = np.zeros((m, 0), dtype=np.int64)
    for _ in range(j):
        ann = linalg.left_nullspace(f, basis) if basis.shape[1] else np.eye(m, dtype=np.int64)
        if ann.shape[0] == 0:
            return np.eye(m, dtype=np.int64)
        basis = linalg.nullspace(f, np.concatenate([f.matmul(ann, op) for op in ops], axis=0))
        if basis.shape[1] == m:
            break
    return basis


def rad_j(M: UModule, pt: EPoint, j: int, L: RestrictedLieAlgebra | None = None) -> np.ndarray:
    """Basis (columns) of Rad^j(eps*M): the images of all degree-j products."""
    ops = point_operators(M, pt)
    _check_point(L, M, pt, j, ops)
    return _rad_chain(ops, j, pt.field, M.dim)


def soc_j(M: UModule, pt: EPoint, j: int, L: RestrictedLieAlgebra | None = None) -> np.ndarray:
    """Basis (columns) of Soc^j(eps*M): the common kernel of degree-j products."""
    ops = point_operators(M, pt)
    _check_point(L, M, pt, j, ops)
    return _soc_chain(ops, j, pt.field, M.dim)


def rad_soc_dims(M: UModule, pt: EPoint, j: int) -> tuple[int, int]:
    ops = point_operators(M, pt)
    _check_point(None, M, pt, j, ops)
    f = pt.field
    return _rad_chain(ops, j, f, M.dim).shape[1], _soc_chain(ops, j, f, M.dim).shape[1]


def rad_soc_dims_products(M: UModule, pt: EPoint, j: int) -> tuple[int, int]:
    """Same dimensions straight from the r(j) monomial products."""
    ops = point_operators(M, pt)
    _check_point(None, M, pt, j, ops)
    prods = monomial_products(ops, j, pt.field)
    f = pt.field
    rad = linalg.rank(f, np.concatenate(prods, axis=1))
    soc = M.dim - linalg.rank(f, np.concatenate(prods, axis=0))
    return rad, soc


# ---------------------------------------------------------------- Jordan type

@dataclass(frozen=True)
class JordanType:
    partition: tuple[int, ...]

    @property
    def dim(self) -> int:
        return sum(self.partition)

    def ranks(self, upto: int) -> list[int]:
        """rank of A^k for k = 0..upto reconstructed from the partition."""
        return [sum(max(0, b - k) for b in self.partition) for k in range(upto + 1)]

    def is_projective(self, p: int) -> bool:
        return all(b == p for b in self.partition)

    def __str__(self):
        return "[" + ",".join(map(str, self.partition)) + "]"


def jordan_type_of_matrix(field: Field, a: np.ndarray, p: int) -> JordanType:
    ranks = [a.shape[0]]
    power = np.eye(a.shape[0], dtype=np.int64)
    for _ in range(p):
        power = field.matmul(power, a)
        ranks.append(linalg.rank(field, power))
    if ranks[p] != 0:
        raise ValueError("operator is not p-nilpotent on the module")
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, p + 1)]
    parts: list[int] = []
    for size in range(p, 0, -1):
        exact = at_least[size - 1] - (at_least[size] if size < p else 0)
        parts += [size] * exact
    return JordanType(tuple(parts))


def jordan_type(M: UModule, v, field: Field | None = None) -> JordanType:
    f = field or gf(M.p)
    return jordan_type_of_matrix(f, M.act(v, f), M.p)


# ---------------------------------------------------------------- constructions

def dual(M: UModule) -> UModule:
    return UModule(M.p, [(-a.T) % M.p for a in M.actions], f"dual({M.label})")


def tensor(M: UModule, N: UModule) -> UModule:
    if len(M.actions) != len(N.actions):
        raise ValueError("modules for different algebras")
    im, in_ = np.eye(M.dim, dtype=np.int64), np.eye(N.dim, dtype=np.int64)
    acts = [(np.kron(a, in_) + np.kron(im, b)) % M.p for a, b in zip(M.actions, N.actions)]
    return UModule(M.p, acts, f"({M.label})⊗({N.label})")


def tensor_power(M: UModule, m: int) -> UModule:
    if m < 0:
        raise ValueError("negative power")
    if m == 0:
        return UModule(M.p, [np.zeros((1, 1), dtype=np.int64)] * len(M.actions), "trivial")
    out = M
    for _ in range(m - 1):
        out = tensor(out, M)
    out.label = f"({M.label})^⊗{m}"
    return out


def _power_module(M: UModule, m: int, exterior: bool) -> UModule:
    if m < 0:
        raise ValueError("negative power")
    gen = itertools.combinations if exterior else itertools.combinations_with_replacement
    basis = list(gen(range(M.dim), m))
    index = {b: k for k, b in enumerate(basis)}
    acts = []
    for a in M.actions:
        out = np.zeros((len(basis), len(basis)), dtype=np.int64)
        for col, mono in enumerate(basis):
            for pos, src in enumerate(mono):
                for tgt in np.flatnonzero(a[:, src]):
                    new = list(mono)
                    new[pos] = int(tgt)
                    if exterior:
                        if len(set(new)) < m:
                            continue
                        order = sorted(range(m), key=lambda t: new[t])
                        sign = _perm_sign(order)
                        key = tuple(sorted(new))
                        out[index[key], col] += sign * a[tgt, src]
                    else:
                        out[index[tuple(sorted(new))], col] += a[tgt, src]
        acts.append(out % M.p)
    kind = "Λ" if exterior else "S"
    return UModule(M.p, acts, f"{kind}^{m}({M.label})")


def _perm_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for k in range(i + 1, len(seen)):
            if seen[i] > seen[k]:
                sign = -sign
    return sign


def sym_power(M: UModule, m: int) -> UModule:
    """S^m(M) on sorted monomials e_{a_1}...e_{a_m}, lexicographic order."""
    return _power_module(M, m, exterior=False)


def ext_power(M: UModule, m: int) -> UModule:
    """Λ^m(M) on strictly increasing wedge monomials, lexicographic order."""
    return _power_module(M, m, exterior=True)


def direct_sum(M: UModule, N: UModule) -> UModule:
    acts = []
    for a, b in zip(M.actions, N.actions):
        out = np.zeros((M.dim + N.dim,) * 2, dtype=np.int64)
        out[: M.dim, : M.dim] = a
        out[M.dim :, M.dim :] = b
        acts.append(out)
    return UModule(M.p, acts, f"{M.label}⊕{N.label}")


def module_change_basis(M: UModule, q) -> UModule:
    """Actions for the algebra basis x'_a = sum_i q[i, a] x_i."""
    q = np.asarray(q, dtype=np.int64)
    return UModule(M.p, [M.act(q[:, a]) for a in range(q.shape[1])], M.label)


def duality_check(M: UModule, pt: EPoint, j: int) -> bool:
    soc_dual = soc_j(dual(M), pt, j).shape[1]
    rad = rad_j(M, pt, j).shape[1]
    return soc_dual + rad == M.dim
