"""Command-line interface.

Every command prints one canonical JSON document (sorted keys) to stdout or
to ``--out``.  Exit codes: 0 success, 1 validation failure, 2 certification
not achieved, 3 input or runtime error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__, catalog
from .evariety import ChartParam, enumerate_elementary, param_points, scan_ranks
from .exact.fields import check_prime, gf
from .io import InputError, dumps, load_algebra, load_locus, load_module, write_bundle
from .liealg import validate_algebra
from .modrep import validate_module
from .p1split import P1System, StabilizationError, splitting
from .theta import ThetaError, build_theta, bundle_certificate, fiber_compare, generic_ranks

EXIT_OK, EXIT_INVALID, EXIT_UNCERTIFIED, EXIT_ERROR = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    algebra: str | None = None
    module: str | None = None
    locus: str | None = None
    catalog_id: str | None = None
    p: int | None = None
    r: int | None = None
    j: list[int] = field(default_factory=list)
    k: int = 1
    samples: int = 200
    seed: int = 0
    d_max: int | None = None
    kind: str = "ker"
    enumerate: bool = False
    points: list[list[int]] = field(default_factory=list)
    out: str | None = None
    threads: int = 1

    def check(self) -> None:
        if self.p is not None:
            check_prime(self.p)
        if not 1 <= self.k <= 4:
            raise ValueError("k must be between 1 and 4")
        if any(j < 1 for j in self.j):
            raise ValueError("j must be positive")
        if self.samples < 1:
            raise ValueError("--samples must be positive")
        if self.threads < 1:
            raise ValueError("ESHEAVES_THREADS must be a positive integer")


def _parse_j(text: str) -> list[int]:
    if ":" in text:
        a, b = text.split(":", 1)
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",")]


def _parse_point(text: str) -> list[int]:
    return [int(x) for x in text.split(",")] if text else []


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="esheaves", description="Kernel and image sheaves on varieties of elementary subalgebras.")
    ap.add_argument("--version", action="version", version=f"esheaves {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def inputs(sp, locus: bool = True):
        sp.add_argument("--algebra", help="algebra.json")
        sp.add_argument("--module", help="module.json")
        if locus:
            sp.add_argument("--locus", help="locus.json (affine chart or homogeneous P^1 locus)")
        sp.add_argument("--catalog", dest="catalog_id", help="use a built-in bundle instead of files")
        sp.add_argument("--p", type=int, help="prime for --catalog entries that allow several")
        sp.add_argument("--out", help="write JSON here instead of stdout")

    sp = sub.add_parser("validate", help="check algebra axioms and module relations")
    inputs(sp, locus=False)

    sp = sub.add_parser("scan", help="Rad/Soc dimensions over a locus or all of E(r, g), with certificates")
    inputs(sp)
    sp.add_argument("--enumerate", action="store_true", help="scan every F_{p^k}-point of E(r, g)")
    sp.add_argument("--r", type=int, help="subalgebra dimension for --enumerate")
    sp.add_argument("--j", type=_parse_j, default=[1], help="j, list a,b or range a:b")
    sp.add_argument("--k", type=int, default=1, help="field GF(p^k), k <= 4")
    sp.add_argument("--samples", type=int, default=200, help="sample budget per chart; all points if fewer")
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("splitting", help="splitting type of Ker^j or Im^j on a P^1 locus")
    inputs(sp)
    sp.add_argument("--j", type=int, default=1)
    sp.add_argument("--kind", choices=["ker", "im"], default="ker")
    sp.add_argument("--dmax", dest="d_max", type=int)

    sp = sub.add_parser("generic-rank", help="generic ranks of K_j and I_j over the locus")
    inputs(sp)
    sp.add_argument("--j", type=_parse_j, default=[1])

    sp = sub.add_parser("fiber", help="sheaf fibers against Rad/Soc at given parameter values")
    inputs(sp)
    sp.add_argument("--j", type=_parse_j, default=[1])
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--point", dest="points", action="append", type=_parse_point, default=[], help="comma separated parameters, e.g. 0 or 1,2 (repeatable)")

    sp = sub.add_parser("catalog", help="list or emit built-in bundles")
    csub = sp.add_subparsers(dest="catalog_cmd", required=True)
    csub.add_parser("list")
    em = csub.add_parser("emit")
    em.add_argument("catalog_id")
    em.add_argument("--p", type=int)
    em.add_argument("--out", required=True, help="output directory")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    for name in ("algebra", "module", "locus", "catalog_id", "p", "r", "k", "samples", "seed", "d_max", "kind", "enumerate", "points", "out"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "j"):
        cfg.j = ns.j if isinstance(ns.j, list) else [ns.j]
    if getattr(ns, "catalog_cmd", None):
        cfg.command = f"catalog-{ns.catalog_cmd}"
    cfg.threads = int(os.environ.get("ESHEAVES_THREADS", "1"))
    cfg.check()
    return cfg


# ---------------------------------------------------------------- inputs

@dataclass
class Inputs:
    algebra: object
    module: object
    loci: list[ChartParam]
    p1: P1System | None
    provenance: str


def _load(cfg: RunConfig, need_module: bool = True, need_locus: bool = False) -> Inputs:
    if cfg.catalog_id:
        b = catalog.get(cfg.catalog_id, cfg.p)
        return Inputs(b.algebra, b.module, list(b.loci), b.p1, f"catalog:{b.id} ({b.provenance})")
    if not cfg.algebra:
        raise InputError("<args>", "--algebra", "an algebra file or --catalog is required")
    L = load_algebra(cfg.algebra)
    M = load_module(cfg.module, L) if cfg.module else None
    if need_module and M is None:
        raise InputError("<args>", "--module", "a module file is required")
    loci, p1 = [], None
    if cfg.locus:
        loc = load_locus(cfg.locus, L)
        if isinstance(loc, ChartParam):
            loci = [loc]
        else:
            p1 = P1System(M, loc, Path(cfg.locus).stem, L)
            loci = [p1.dehomogenize("t"), p1.dehomogenize("s")]
    elif need_locus:
        raise InputError("<args>", "--locus", "a locus file is required")
    names = [Path(x).name for x in (cfg.algebra, cfg.module, cfg.locus) if x]
    return Inputs(L, M, loci, p1, "files:" + ",".join(names))


def _sample_params(param: ChartParam, k: int, samples: int, rng: random.Random) -> tuple[object, list[list[int]], bool]:
    f = gf(param.p, k)
    total = f.q**param.nvars
    if total <= samples:
        _, pts = param_points(param, k)
        return f, [list(q) for q in pts], True
    pts = sorted({tuple(rng.randrange(f.q) for _ in range(param.nvars)) for _ in range(samples)})
    return f, [list(q) for q in pts], False


# ---------------------------------------------------------------- commands

def cmd_validate(cfg: RunConfig) -> tuple[dict, int]:
    inp = _load(cfg, need_module=False)
    arep = validate_algebra(inp.algebra)
    out = {"provenance": inp.provenance, "algebra": arep.to_json()}
    ok = arep.ok
    if inp.module is not None:
        mrep = validate_module(inp.algebra, inp.module)
        out["module"] = mrep.to_json()
        ok = ok and mrep.ok
    out["ok"] = ok
    return out, EXIT_OK if ok else EXIT_INVALID


def cmd_scan(cfg: RunConfig) -> tuple[dict, int]:
    inp = _load(cfg)
    L, M = inp.algebra, inp.module
    rng = random.Random(cfg.seed)
    out: dict = {"provenance": inp.provenance, "j": cfg.j, "field": [L.p, cfg.k]}
    certified = True
    if cfg.enumerate:
        r = cfg.r or (inp.loci[0].r if inp.loci else None)
        if r is None:
            raise InputError("<args>", "--r", "--enumerate needs --r")
        points = enumerate_elementary(L, r, cfg.k)
        if not points:
            raise ValueError(f"E({r}, g) has no points over GF({L.p}^{cfg.k})")
        rep = scan_ranks(L, M, points, cfg.j)
        const = {str(j): not rep.rad_locus[j] and not rep.soc_locus[j] for j in cfg.j}
        certified = all(const.values())
        out["enumerated"] = {"r": r, "count": len(points), "constant": const}
        out["scan"] = rep.to_json()
    if inp.loci:
        certs = []
        for li, loc in enumerate(inp.loci):
            ts = build_theta(M, loc, L)
            f, pts, exhaustive = _sample_params(loc, cfg.k, cfg.samples, rng)
            if not pts:
                raise ValueError("empty point set")
            if not cfg.enumerate and li == 0:
                out["scan"] = scan_ranks(L, M, [loc.point_at(f, q) for q in pts], cfg.j).to_json()
            for j in cfg.j:
                c = bundle_certificate(ts, j, pts, f)
                c["report"] = c["report"].to_json()
                c["locus"] = loc.label
                c["exhaustive"] = exhaustive
                c["points_tested"] = len(pts)
                certs.append(c)
                certified = certified and c["certified"]
        out["certificates"] = certs
    elif not cfg.enumerate:
        raise InputError("<args>", "--locus", "scan needs --locus, --enumerate or a catalog bundle with loci")
    out["certified"] = certified
    return out, EXIT_OK if certified else EXIT_UNCERTIFIED


def cmd_splitting(cfg: RunConfig) -> tuple[dict, int]:
    inp = _load(cfg)
    if inp.p1 is None:
        raise InputError("<args>", "--locus", "splitting needs a homogeneous P^1 locus")
    j = cfg.j[0]
    res = splitting(inp.p1, j, cfg.kind, cfg.d_max)
    res.update({"provenance": inp.provenance, "j": j, "kind": cfg.kind, "locus": inp.p1.label})
    return res, EXIT_OK


def cmd_generic_rank(cfg: RunConfig) -> tuple[dict, int]:
    inp = _load(cfg, need_locus=True)
    loc = inp.loci[0]
    ts = build_theta(inp.module, loc, inp.algebra)
    ranks = []
    for j in cfg.j:
        gk, gi = generic_ranks(ts, j)
        ranks.append({"j": j, "ker": gk, "im": gi, "rank_K": ts.m - gk, "rank_I": gi})
    return {"provenance": inp.provenance, "locus": loc.label, "params": loc.nvars, "dim": ts.m, "ranks": ranks}, EXIT_OK


def cmd_fiber(cfg: RunConfig) -> tuple[dict, int]:
    inp = _load(cfg, need_locus=True)
    loc = inp.loci[0]
    ts = build_theta(inp.module, loc, inp.algebra)
    f = gf(loc.p, cfg.k)
    points = cfg.points or [[0] * loc.nvars]
    reports = [fiber_compare(ts, j, points, f).to_json() for j in cfg.j]
    return {"provenance": inp.provenance, "locus": loc.label, "reports": reports}, EXIT_OK


def cmd_catalog_list(cfg: RunConfig) -> tuple[dict, int]:
    rows = [{"id": e.id, "provenance": e.provenance, "p": e.p, "p_constraint": e.p_constraint} for e in catalog.list_entries()]
    return {"entries": rows}, EXIT_OK


def cmd_catalog_emit(cfg: RunConfig) -> tuple[dict, int]:
    b = catalog.get(cfg.catalog_id, cfg.p)
    files = write_bundle(b, cfg.out)
    return {"id": b.id, "dir": str(cfg.out), "files": files}, EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "scan": cmd_scan,
    "splitting": cmd_splitting,
    "generic-rank": cmd_generic_rank,
    "fiber": cmd_fiber,
    "catalog-list": cmd_catalog_list,
    "catalog-emit": cmd_catalog_emit,
}


def run(cfg: RunConfig) -> tuple[str, int]:
    result, code = COMMANDS[cfg.command](cfg)
    return dumps(result), code


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        text, code = run(cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except StabilizationError as exc:
        print(dumps({"error": str(exc), "partial_hilbert": exc.partial}), end="")
        return EXIT_ERROR
    except (ValueError, KeyError, ThetaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if cfg.out and cfg.command != "catalog-emit":
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
