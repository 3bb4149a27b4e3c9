"""Catalog bundles with pools of elementary points, shared by the suites."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from esheaves import catalog
from esheaves.exact.fields import gf
from esheaves.liealg import is_elementary
from esheaves.modrep import r_of_j


@lru_cache(maxsize=None)
def bundles() -> tuple:
    return tuple(catalog.get(e.id) for e in catalog.list_entries())


def _locus_points(loc, k: int, limit: int, rng: random.Random):
    f = gf(loc.p, k)
    total = f.q**loc.nvars
    if total <= limit:
        params = itertools.product(range(f.q), repeat=loc.nvars)
    else:
        params = [tuple(rng.randrange(f.q) for _ in range(loc.nvars)) for _ in range(limit)]
    out = []
    for q in params:
        try:
            out.append(loc.point_at(f, q))
        except ValueError:
            continue
    return out


@lru_cache(maxsize=None)
def point_pool(seed: int = 0) -> tuple:
    """(bundle, points) with points from every locus over GF(p) and GF(p^2)."""
    rng = random.Random(seed)
    pool = []
    for b in bundles():
        pts = list(b.points)
        for loc in b.loci:
            for k in (1, 2):
                pts += _locus_points(loc, k, 12, rng)
        if b.p1 is not None:
            f, st = b.p1.points(1)
            pts += [b.p1.point_at(f, x) for x in st]
        pts = [pt for pt in pts if is_elementary(b.algebra, pt)]
        pool.append((b, tuple(pts)))
    return tuple(pool)


def random_triples(count: int, seed: int):
    """(bundle, point, j) with j in 1..(p-1) r, drawn uniformly over bundles."""
    rng = random.Random(seed)
    pool = [(b, pts) for b, pts in point_pool() if pts]
    for _ in range(count):
        b, pts = rng.choice(pool)
        pt = rng.choice(pts)
        j = rng.randint(1, (b.algebra.p - 1) * pt.r)
        yield b, pt, j


__all__ = ["bundles", "point_pool", "random_triples", "r_of_j"]
