"""Degree pieces of maps between graded free modules over F_p[s, t].

The degree-d piece of R(-a) has basis s^(d-a-u) t^u, u = 0..d-a.  A degree
zero map F -> G with generator degrees a_j (source) and b_i (target) has
entry (i, j) homogeneous of degree a_j - b_i.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .polymat import PolyMatrix


def piece_dim(degrees: Sequence[int], d: int) -> int:
    return sum(max(0, d - a + 1) for a in degrees)


def _offsets(degrees: Sequence[int], d: int) -> list[int]:
    out, acc = [], 0
    for a in degrees:
        out.append(acc)
        acc += max(0, d - a + 1)
    return out


def graded_piece_map(pm: PolyMatrix, source_degrees: Sequence[int], target_degrees: Sequence[int], d: int) -> np.ndarray:
    """Matrix of the degree-d piece of the map given by ``pm``."""
    if pm.nvars != 2:
        raise ValueError("graded pieces need a matrix over k[s, t]")
    rows, cols = pm.shape
    if len(source_degrees) != cols or len(target_degrees) != rows:
        raise ValueError("generator degree lists do not match the matrix shape")
    if d < 0:
        raise ValueError("negative degree")
    src = list(source_degrees)
    tgt = list(target_degrees)
    nr, nc = piece_dim(tgt, d), piece_dim(src, d)
    # check homogeneity entrywise
    for (a, b), c in pm.coeffs.items():
        ii, jj = np.nonzero(c)
        bad = np.flatnonzero(np.array([src[j] - tgt[i] for i, j in zip(ii, jj)], dtype=np.int64) != a + b)
        if bad.size:
            i, j = int(ii[bad[0]]), int(jj[bad[0]])
            raise ValueError(f"entry ({i}, {j}) is not homogeneous of degree {src[j] - tgt[i]}")
    if len(set(src)) <= 1 and len(set(tgt)) <= 1:
        a0 = src[0] if src else 0
        b0 = tgt[0] if tgt else 0
        ns, nt = max(0, d - a0 + 1), max(0, d - b0 + 1)
        out = np.zeros((nr, nc), dtype=np.int64)
        if ns == 0 or nt == 0:
            return out
        for (a, b), c in pm.coeffs.items():
            shift = np.eye(nt, ns, k=-b, dtype=np.int64)
            out += np.kron(c, shift)
        return out % pm.p
    out = np.zeros((nr, nc), dtype=np.int64)
    roff, coff = _offsets(tgt, d), _offsets(src, d)
    for (a, b), c in pm.coeffs.items():
        for i, j in zip(*np.nonzero(c)):
            ns = d - src[j] + 1
            if ns <= 0:
                continue
            u = np.arange(ns)
            out[roff[i] + u + b, coff[j] + u] += c[i, j]
    return out % pm.p
