"""JSON files for algebras, modules and loci.

Structural errors name the file and a JSON path such as ``$.brackets[3]``;
syntax errors carry the decoder's line and column.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .evariety import ChartParam
from .liealg import RestrictedLieAlgebra
from .modrep import UModule
from .p1split import P1System


class InputError(ValueError):
    def __init__(self, source: str, location: str, msg: str):
        super().__init__(f"{source}:{location}: {msg}")
        self.source, self.location, self.msg = source, location, msg


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def read_json(path: str | Path) -> Any:
    src = str(path)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(src, "$", f"cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(src, f"line {exc.lineno} column {exc.colno}", exc.msg) from exc


def _require(data: Any, key: str, kind, src: str, where: str = "$"):
    if not isinstance(data, dict):
        raise InputError(src, where, "expected an object")
    if key not in data:
        raise InputError(src, where, f"missing key {key!r}")
    val = data[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise InputError(src, f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


def _int_matrix(val: Any, rows: int, cols: int, src: str, where: str) -> None:
    if not isinstance(val, list) or len(val) != rows:
        raise InputError(src, where, f"expected {rows} rows")
    for i, row in enumerate(val):
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(src, f"{where}[{i}]", f"expected {cols} entries")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(src, f"{where}[{i}][{j}]", "expected an integer")


def algebra_from_data(data: Any, src: str = "<algebra>") -> RestrictedLieAlgebra:
    _require(data, "p", int, src)
    n = _require(data, "dim", int, src)
    for key in ("brackets", "p_powers"):
        for k, entry in enumerate(data.get(key, [])):
            ok = isinstance(entry, list) and len(entry) == (3 if key == "brackets" else 2)
            if ok:
                idx, terms = entry[:-1], entry[-1]
                ok = all(isinstance(i, int) and 0 <= i < n for i in idx) and isinstance(terms, list)
                ok = ok and all(isinstance(t, list) and len(t) == 2 and isinstance(t[0], int) and 0 <= t[0] < n and isinstance(t[1], int) for t in terms)
            if not ok:
                raise InputError(src, f"$.{key}[{k}]", "malformed entry (indices must be 0-based and < dim)")
    real = data.get("matrix_realization")
    if real is not None:
        N = _require(real, "N", int, src, "$.matrix_realization")
        mats = _require(real, "mats", list, src, "$.matrix_realization")
        if len(mats) != n:
            raise InputError(src, "$.matrix_realization.mats", f"expected {n} matrices")
        for k, m in enumerate(mats):
            _int_matrix(m, N, N, src, f"$.matrix_realization.mats[{k}]")
    try:
        return RestrictedLieAlgebra.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(src, "$", str(exc)) from exc


def module_from_data(data: Any, p: int, n_actions: int | None = None, src: str = "<module>") -> UModule:
    dim = _require(data, "dim", int, src)
    acts = _require(data, "actions", list, src)
    if n_actions is not None and len(acts) != n_actions:
        raise InputError(src, "$.actions", f"expected {n_actions} action matrices (one per basis element), got {len(acts)}")
    for k, a in enumerate(acts):
        _int_matrix(a, dim, dim, src, f"$.actions[{k}]")
    return UModule.from_json(data, p)


def locus_from_data(data: Any, p: int, n: int, src: str = "<locus>") -> ChartParam | P1System:
    """A ChartParam, or the homogeneous frame of a P^1 locus (returned as a
    list of rows; wrap it in P1System with the module)."""
    nv = _require(data, "params", int, src)
    coords = _require(data, "coords", list, src)
    for k, c in enumerate(coords):
        where = f"$.coords[{k}]"
        i = _require(c, "i", int, src, where)
        _require(c, "j", int, src, where)
        _require(c, "poly", list, src, where)
        if not 0 <= i < n:
            raise InputError(src, f"{where}.i", f"row index outside 0..{n - 1}")
        for t, term in enumerate(c["poly"]):
            ok = isinstance(term, list) and len(term) == 2 and isinstance(term[0], list) and len(term[0]) == nv
            ok = ok and all(isinstance(e, int) and e >= 0 for e in term[0]) and isinstance(term[1], int)
            if not ok:
                raise InputError(src, f"{where}.poly[{t}]", f"expected [[{nv} exponents], coefficient]")
    try:
        if data.get("homogeneous"):
            if nv != 2:
                raise ValueError("a homogeneous P^1 locus has exactly 2 parameters")
            return P1System.frame_from_json(data, p, n)
        return ChartParam.from_json(data, p, n)
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        raise InputError(src, "$", str(exc)) from exc


def load_algebra(path: str | Path) -> RestrictedLieAlgebra:
    return algebra_from_data(read_json(path), str(path))


def load_module(path: str | Path, L: RestrictedLieAlgebra) -> UModule:
    return module_from_data(read_json(path), L.p, L.n, str(path))


def load_locus(path: str | Path, L: RestrictedLieAlgebra):
    return locus_from_data(read_json(path), L.p, L.n, str(path))


def write_bundle(bundle, out_dir: str | Path) -> list[str]:
    """algebra.json, module.json, locus.json (first locus), further loci as
    locus-<k>.json and the P^1 locus as p1-locus.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {"algebra.json": bundle.algebra.to_json(), "module.json": bundle.module.to_json()}
    for k, loc in enumerate(bundle.loci):
        files["locus.json" if k == 0 else f"locus-{k}.json"] = loc.to_json()
    if bundle.p1 is not None:
        files["p1-locus.json"] = bundle.p1.to_json()
    files["bundle.json"] = {"id": bundle.id, "provenance": bundle.provenance, "p": bundle.algebra.p, "j_values": bundle.j_values, "files": sorted(files)}
    for name, obj in files.items():
        (out / name).write_text(dumps(obj))
    return sorted(files)
