import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esheaves.catalog import make_classical, make_socle_jump, make_sl2_pims, nilradical_point
from esheaves.catalog.small import heisenberg
from esheaves.exact import linalg
from esheaves.exact.fields import gf
from esheaves.liealg import EPoint, make_point
from esheaves.modrep import (
    JordanType,
    UModule,
    adjoint_module,
    compositions,
    defining_module,
    direct_sum,
    dual,
    duality_check,
    ext_power,
    jordan_type,
    jordan_type_of_matrix,
    module_change_basis,
    r_of_j,
    rad_j,
    rad_soc_dims,
    rad_soc_dims_products,
    soc_j,
    sym_power,
    tensor,
    tensor_power,
    trivial_module,
    validate_module,
)
from fixtures import point_pool, random_triples
from instances import random_invertible
from oracles import rad_soc_bruteforce


def test_compositions_order_and_count():
    assert compositions(2, 2) == ((2, 0), (1, 1), (0, 2))
    for j in range(1, 6):
        for r in range(1, 4):
            assert len(compositions(j, r)) == r_of_j(j, r)


def test_validate_module_examples():
    L, V = make_classical("gl", 3, 5)
    assert validate_module(L, V).ok
    H = heisenberg(5)
    assert validate_module(H, adjoint_module(H)).ok
    acts = list(V.actions)
    acts[1] = acts[1].T.copy()  # E_12 acting as E_21
    assert not validate_module(L, UModule(5, acts)).ok


def test_p_power_relation_detected():
    # abelian algebra with x^[p] = x forces rho(x) semisimple: a nilpotent action fails
    from esheaves.liealg import RestrictedLieAlgebra

    L = RestrictedLieAlgebra(5, ["x"], np.zeros((1, 1, 1)), np.eye(1), name="torus")
    rep = validate_module(L, UModule(5, [np.array([[0, 1], [0, 0]])]))
    assert [c.name for c in rep.failures()] == ["p_power"]


def test_rad_examples():
    L, V = make_classical("gl", 3, 5)
    eps = nilradical_point("gl", 3, 1, 5)
    assert rad_j(V, eps, 1).shape[1] == 1
    assert rad_j(V, eps, 2).shape[1] == 0
    Ls, W = make_classical("sp", 2, 7)
    eps = nilradical_point("sp", 2, 2, 7)
    assert rad_soc_dims(W, eps, 1) == (2, 2)
    assert rad_j(W, eps, 2).shape[1] == 0


def test_soc_examples():
    H = heisenberg(5)
    f = gf(5)
    eps = make_point(f, np.array([[0, 1], [0, 0], [1, 0]]))
    soc = soc_j(adjoint_module(H), eps, 1)
    assert soc.shape[1] == 2 and linalg.subspace_eq(f, soc, eps.eps)
    rm = make_socle_jump(5)
    assert soc_j(rm["module"], make_point(f, np.array([1, 0])), 1).shape[1] == 3
    # top degree: every product of degree (p-1) r + 1 vanishes, and degree (p-1) r
    # products vanish on these small modules
    assert soc_j(adjoint_module(H), eps, 8).shape[1] == 3


def test_j_out_of_range():
    L, V = make_classical("gl", 3, 5)
    eps = nilradical_point("gl", 3, 1, 5)
    with pytest.raises(ValueError):
        rad_j(V, eps, 0)
    with pytest.raises(ValueError):
        rad_j(V, eps, 9)


def test_noncommuting_point_rejected():
    L, V = make_classical("gl", 2, 5)
    pt = EPoint(gf(5), np.array([[0, 0], [1, 0], [0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        rad_j(V, pt, 1)


def test_jordan_examples():
    L, _ = make_classical("gl", 2, 5)
    assert jordan_type(trivial_module(L, 4), np.array([0, 1, 0, 0])).partition == (1, 1, 1, 1)
    assert jordan_type(defining_module(L), np.array([0, 1, 0, 0])).partition == (2,)
    st_mod = make_sl2_pims(3)["pims"][2]
    assert jordan_type(st_mod, np.array([1, 0, 0])).partition == (3,)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_jordan_type_reconstructs_ranks(seed):
    rng = random.Random(seed)
    p = rng.choice([3, 5])
    f = gf(p)
    blocks = [rng.randint(1, p) for _ in range(rng.randint(1, 4))]
    m = sum(blocks)
    a = np.zeros((m, m), dtype=np.int64)
    o = 0
    for b in blocks:
        for i in range(b - 1):
            a[o + i + 1, o + i] = 1
        o += b
    P = random_invertible(f, m, rng)
    a = f.matmul(f.matmul(linalg.inverse(f, P), a), P)
    jt = jordan_type_of_matrix(f, a, p)
    assert sorted(jt.partition, reverse=True) == sorted(blocks, reverse=True)
    ranks = jt.ranks(p)
    for k in range(p + 1):
        assert ranks[k] == linalg.rank(f, linalg.matpow(f, a, k))


def test_constructions_examples():
    L, V = make_classical("gl", 2, 5)
    M = dual(dual(V))
    assert all(np.array_equal(a, b) for a, b in zip(M.actions, V.actions))
    S2 = sym_power(V, 2)
    assert S2.dim == 3
    assert sorted(np.diag(S2.actions[0]).tolist()) == [0, 1, 2]
    L4, V4 = make_classical("gl", 4, 7)
    eps = nilradical_point("gl", 4, 2, 7)
    assert rad_j(ext_power(V4, 2), eps, 2).shape[1] == 1


@pytest.mark.parametrize("build", [
    lambda V: tensor(V, V), lambda V: sym_power(V, 2), lambda V: sym_power(V, 3),
    lambda V: ext_power(V, 2), lambda V: ext_power(V, 3), lambda V: dual(V),
    lambda V: tensor_power(V, 3), lambda V: direct_sum(V, dual(V)),
])
def test_constructions_validate(build):
    for fam, n, p in [("gl", 3, 5), ("sp", 2, 7), ("sl", 3, 5)]:
        L, V = make_classical(fam, n, p)
        assert validate_module(L, build(V)).ok


def test_duality_examples():
    L, V = make_classical("gl", 3, 5)
    eps = nilradical_point("gl", 3, 1, 5)
    assert soc_j(dual(V), eps, 1).shape[1] == 2 and rad_j(V, eps, 1).shape[1] == 1
    assert duality_check(trivial_module(L, 3), eps, 1)
    H = heisenberg(5)
    pt = make_point(gf(5), np.array([[0, 1], [0, 0], [1, 0]]))
    assert duality_check(adjoint_module(H), pt, 1)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_rad_soc_match_word_oracle(seed):
    (b, pt, j), = random_triples(1, seed)
    if pt.field.k != 1 or b.module.dim > 9 or pt.r**j > 500:
        return
    want = rad_soc_bruteforce(b.module.actions, [pt.eps[:, s].tolist() for s in range(pt.r)], j, b.module.p)
    assert rad_soc_dims(b.module, pt, j) == want


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_rad_soc_chain_matches_products(seed):
    (b, pt, j), = random_triples(1, seed)
    if r_of_j(j, pt.r) > 400:
        return
    assert rad_soc_dims(b.module, pt, j) == rad_soc_dims_products(b.module, pt, j)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_chain_conditions_and_duality(seed):
    (b, pt, j), = random_triples(1, seed)
    M = b.module
    rad, soc = rad_soc_dims(M, pt, j)
    if j < (M.p - 1) * pt.r:
        rad1, soc1 = rad_soc_dims(M, pt, j + 1)
        assert rad1 <= rad and soc <= soc1
        f = pt.field
        assert linalg.rank(f, np.concatenate([rad_j(M, pt, j), rad_j(M, pt, j + 1)], axis=1)) == rad
    assert duality_check(M, pt, j)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_rad_soc_invariant_under_point_basis_change(seed):
    (b, pt, j), = random_triples(1, seed)
    rng = random.Random(seed)
    f = pt.field
    Q = np.array([[rng.randrange(f.q) for _ in range(pt.r)] for _ in range(pt.r)], dtype=np.int64)
    if linalg.rank(f, Q) < pt.r:
        return
    pt2 = EPoint(f, f.matmul(pt.eps, Q))
    M = b.module
    assert linalg.subspace_eq(f, rad_j(M, pt, j), rad_j(M, pt2, j))
    assert linalg.subspace_eq(f, soc_j(M, pt, j), soc_j(M, pt2, j))


def test_rank_one_rad_is_power_rank():
    for b, pts in point_pool():
        for pt in pts:
            if pt.r != 1 or pt.field.k != 1:
                continue
            a = b.module.act(pt.eps[:, 0])
            jt = jordan_type_of_matrix(pt.field, a, b.module.p)
            ranks = jt.ranks(b.module.p - 1)
            for j in range(1, b.module.p):
                assert rad_j(b.module, pt, j).shape[1] == ranks[j]


def test_module_change_basis_and_json():
    L, V = make_classical("gl", 2, 5)
    q = np.array([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    M2 = module_change_basis(V, q)
    assert np.array_equal(M2.actions[1], (V.actions[0] + V.actions[1]) % 5)
    again = UModule.from_json(V.to_json(), 5)
    assert all(np.array_equal(a, b) for a, b in zip(again.actions, V.actions))
    with pytest.raises(ValueError):
        UModule.from_json({"dim": 3, "actions": [[[0, 0], [0, 0]]]}, 5)


def test_jordan_type_str():
    assert str(JordanType((3, 3))) == "[3,3]" and JordanType((3, 3)).is_projective(3)
