import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esheaves.exact.fields import ExtensionField, FieldElem, PrimeField, check_prime, gf, primitive_modulus
from oracles import ext_mul

FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (3, 4), (7, 2)]


def elems(f):
    return st.integers(min_value=0, max_value=f.q - 1)


@pytest.mark.parametrize("p", [2, 4, 9, 1 << 31])
def test_rejects_bad_characteristic(p):
    with pytest.raises(ValueError):
        check_prime(p)


def test_extension_degree_bounds():
    with pytest.raises(ValueError):
        ExtensionField(3, 5)
    assert isinstance(gf(5), PrimeField)
    assert gf(5, 2) is gf(5, 2)


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms_exhaustive_small(p, k):
    f = gf(p, k)
    if f.q > 81:
        pytest.skip("covered by property test")
    a = np.arange(f.q)
    A, B = np.meshgrid(a, a)
    assert np.array_equal(f.mul(A, B), f.mul(B, A))
    assert np.array_equal(f.add(A, B), f.add(B, A))
    for x in range(1, f.q):
        assert f.mul(x, f.inv(x)) == 1


@pytest.mark.parametrize("p,k", [pk for pk in FIELDS if pk[1] > 1])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_extension_mul_matches_schoolbook(p, k, data):
    f = gf(p, k)
    a, b = data.draw(elems(f)), data.draw(elems(f))
    assert f.mul(a, b) == ext_mul(a, b, p, primitive_modulus(p, k))


@pytest.mark.parametrize("p,k", FIELDS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_distributive_and_frobenius(p, k, data):
    f = gf(p, k)
    a, b, c = (data.draw(elems(f)) for _ in range(3))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    # Frobenius is additive and fixes exactly the prime field
    assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))
    assert f.power(a, f.q) == a


def test_primitive_modulus_generates():
    f = gf(3, 2)
    powers = {f.power(3, e) for e in range(f.q - 1)}  # code 3 is the class of x
    assert len(powers) == f.q - 1


@pytest.mark.parametrize("p,k", [(5, 1), (3, 2), (7, 2)])
def test_matmul_matches_loops(p, k):
    f = gf(p, k)
    rng = np.random.default_rng(0)
    a = rng.integers(0, f.q, (4, 5))
    b = rng.integers(0, f.q, (5, 3))
    got = f.matmul(a, b)
    for i in range(4):
        for j in range(3):
            acc = 0
            for t in range(5):
                acc = f.add(acc, f.mul(int(a[i, t]), int(b[t, j])))
            assert got[i, j] == acc


def test_matmul_large_prime_object_path():
    f = gf(2_147_483_629)
    a = np.array([[f.p - 1] * 3], dtype=object)
    b = np.array([[f.p - 1]] * 3, dtype=object)
    assert int(f.matmul(a, b)[0, 0]) == 3 % f.p


def test_field_elem_operators():
    f = gf(3, 2)
    x = FieldElem(f, 3)
    assert (x * x.inverse()).value == 1
    assert (x + 0).value == x.value
    assert (x - x).value == 0
    with pytest.raises(ZeroDivisionError):
        FieldElem(f, 0).inverse()
