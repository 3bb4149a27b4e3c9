import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esheaves import catalog
from esheaves.catalog.sl2 import sl2
from esheaves.catalog.small import abelian2
from esheaves.evariety import ChartParam, param_points
from esheaves.exact.fields import gf
from esheaves.exact.poly import Poly
from esheaves.modrep import UModule, compositions, defining_module, rad_soc_dims
from esheaves.p1split import P1System
from esheaves.theta import (
    ThetaError,
    build_theta,
    bundle_certificate,
    check_theta,
    fiber_compare,
    find_generic_point,
    generic_ranks,
    kernel_image_matrices,
    specialized_ranks,
)
from fixtures import bundles
from instances import random_instance
from oracles import gauss_rank, minor_rank


def test_constant_param_gives_constant_operators():
    b = catalog.get("gl3-defining")
    pt = b.points[0]
    ts = build_theta(b.module, ChartParam.constant(5, pt.eps), b.algebra)
    for s in range(pt.r):
        assert set(ts.theta[s].coeffs) <= {()}
        assert np.array_equal(ts.theta[s].specialize(gf(5), []), b.module.act(pt.eps[:, s]))


def test_theta_specializes_to_point_action():
    b = catalog.get("heisenberg")
    ts = build_theta(b.module, b.loci[0], b.algebra)
    f = gf(5, 2)
    for q in ([0], [3], [17]):
        pt = b.loci[0].point_at(f, q)
        for s in range(2):
            assert np.array_equal(ts.theta[s].specialize(f, q), b.module.act(pt.eps[:, s], f))


def test_non_elementary_locus_rejected():
    # span(e + T h) in sl_2 is not p-nilpotent for T != 0
    L = sl2(5)
    T = Poly.var(5, 1, 0)
    param = ChartParam.from_coords(5, 3, (0,), 1, {(1, 0): T})
    with pytest.raises(ThetaError, match="Theta_0\\^p"):
        build_theta(defining_module(L), param, L)


def test_non_commuting_locus_rejected():
    L = sl2(5)
    T = Poly.var(5, 1, 0)
    one, zero = Poly.const(5, 1, 1), Poly(5, 1)
    param = ChartParam(5, 3, 2, 1, [[one, zero], [zero, zero], [zero, T]], None, "span(e, T f)")
    with pytest.raises(ThetaError, match="commute"):
        build_theta(defining_module(L), param, L)


def test_dimension_mismatch_rejected():
    b = catalog.get("heisenberg")
    with pytest.raises(ValueError):
        build_theta(UModule(5, [np.zeros((2, 2))] * 2), b.loci[0])


@pytest.mark.parametrize("r,j,count", [(2, 2, 3), (1, 3, 1), (3, 2, 6)])
def test_block_counts(r, j, count):
    assert len(compositions(j, r)) == count


def test_kernel_image_shapes():
    b = catalog.get("sl2x2-s1-P2")
    ts = build_theta(b.module, b.loci[0], b.algebra)
    K, I = kernel_image_matrices(ts, 2)
    assert K.shape == (3 * ts.m, ts.m) and I.shape == (ts.m, 3 * ts.m)
    with pytest.raises(ValueError):
        kernel_image_matrices(ts, 5)


def test_socle_jump_generic_kernel_rank():
    b = catalog.get("socle-jump")
    ts = build_theta(b.module, b.loci[0], b.algebra)
    assert generic_ranks(ts, 1) == (2, 2)


def test_heisenberg_generic_ranks():
    b = catalog.get("heisenberg")
    for loc in b.loci:
        assert generic_ranks(build_theta(b.module, loc, b.algebra), 1) == (2, 1)


def test_constant_param_ranks_equal_point_dims():
    for b in bundles():
        for pt in b.points:
            ts = build_theta(b.module, ChartParam.constant(b.algebra.p, pt.eps), b.algebra)
            for j in b.j_values:
                if j > (b.algebra.p - 1) * pt.r:
                    continue
                rad, soc = rad_soc_dims(b.module, pt, j)
                assert generic_ranks(ts, j) == (soc, rad)


def test_generic_rank_matches_minor_oracle_on_socle_jump():
    b = catalog.get("socle-jump")
    ts = build_theta(b.module, b.loci[0], b.algebra)
    K, _ = kernel_image_matrices(ts, 1)
    assert ts.m - minor_rank(K.entries(), 5, 1) == generic_ranks(ts, 1)[0]


def test_socle_jump_fibers():
    b = catalog.get("socle-jump")
    ts = build_theta(b.module, b.loci[0], b.algebra)
    rep = fiber_compare(ts, 1, [[0], [1]])
    at0, at1 = rep.points
    assert (at0.ker, at0.soc, at0.agree) == (2, 3, False)
    assert (at1.ker, at1.soc, at1.agree) == (2, 2, True)
    # the matrix itself loses rank at T = 0
    assert at0.k_rank == 1 and at1.k_rank == 2
    js = rep.to_json()
    assert js["mismatches"] == [[0]] and js["sheaf_rank_constant"] is True and js["certified"] is False


def test_gl3_orbit_lines_image_rank():
    b = catalog.get("gl3-defining")
    for loc in b.loci:
        ts = build_theta(b.module, loc, b.algebra)
        _, pts = param_points(loc, 1)
        rep = fiber_compare(ts, 1, pts)
        assert rep.generic_im == 1
        assert all(row.im == 1 == row.rad for row in rep.points)


def test_heisenberg_full_p1_certified():
    b = catalog.get("heisenberg")
    for loc in b.loci:
        ts = build_theta(b.module, loc, b.algebra)
        _, pts = param_points(loc, 1)
        cert = bundle_certificate(ts, 1, pts)
        assert cert["certified"] and not cert["mismatches"]
        assert "vector bundle" in cert["statement"]


def test_non_constant_jordan_type_not_certified():
    # x1 acts by a rank-one nilpotent, x2 by zero; on span(T x1 + x2) the rank drops at T = 0
    L = abelian2(5)
    n = np.zeros((2, 2), dtype=np.int64)
    n[1, 0] = 1
    M = UModule(5, [n, np.zeros((2, 2), dtype=np.int64)])
    T = Poly.var(5, 1, 0)
    param = ChartParam.from_coords(5, 2, (1,), 1, {(0, 0): T})
    ts = build_theta(M, param, L)
    cert = bundle_certificate(ts, 1, [[a] for a in range(5)])
    assert not cert["certified"]
    assert cert["deviating_points"]["K"] == [[0]]
    assert "drops" in cert["statement"]


def test_fiber_compare_wrong_arity():
    b = catalog.get("heisenberg")
    ts = build_theta(b.module, b.loci[0], b.algebra)
    with pytest.raises(ValueError):
        fiber_compare(ts, 1, [[0, 1]])


def test_find_generic_point():
    b = catalog.get("sl2x2-s1-P0")
    ts = build_theta(b.module, b.loci[0], b.algebra)
    k, q = find_generic_point(ts, 2)
    f = gf(3, k)
    gk, gi = generic_ranks(ts, 2)
    assert specialized_ranks(ts, 2, f, q) == (ts.m - gk, gi)


# ---------------------------------------------------------------- invariants

def _catalog_systems():
    out = []
    for b in bundles():
        for loc in b.loci:
            out.append((b, build_theta(b.module, loc, b.algebra, check=False)))
    return out


def test_catalog_theta_commute_and_nilpotent():
    for b, ts in _catalog_systems():
        check_theta(ts.theta, ts.p)


def test_semicontinuity_on_catalog_loci():
    rng = random.Random(0)
    for b, ts in _catalog_systems():
        loc = ts.param
        for k in (1, 2):
            f = gf(loc.p, k)
            pts = [[rng.randrange(f.q) for _ in range(loc.nvars)] for _ in range(4)]
            for j in b.j_values:
                if j > (ts.p - 1) * ts.r:
                    continue
                gk, gi = generic_ranks(ts, j)
                for q in pts:
                    kr, ir = specialized_ranks(ts, j, f, q)
                    assert kr <= ts.m - gk and ir <= gi


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_instance_theta_and_semicontinuity(seed):
    inst = random_instance(seed)
    sys = P1System(inst.M, inst.frame, check=False)
    check_theta(sys.theta, inst.M.p)
    param = sys.dehomogenize("t")
    ts = build_theta(inst.M, param, inst.L)
    p = inst.M.p
    for j in range(1, min(3, (p - 1) * ts.r) + 1):
        gk, gi = generic_ranks(ts, j)
        K, _ = kernel_image_matrices(ts, j)
        rank_k = ts.m - gk
        for a in range(p):
            kr, ir = specialized_ranks(ts, j, gf(p), [a])
            assert kr <= rank_k and ir <= gi
            # the specialized K_j computed independently
            assert kr == gauss_rank(K.specialize(gf(p), [a]).tolist(), p)
