"""Finite fields F_p and F_{p^k} with vectorized arithmetic on int64 arrays.

Elements of F_{p^k} are encoded as integers ``sum c_i p^i`` where ``c_i`` is
the coefficient of ``x^i`` in the residue modulo a fixed primitive modulus.
Prime-field elements keep their value under this encoding, so F_p embeds
into every extension as the integers ``0..p-1``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

MAX_EXT_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> None:
    """Reject anything but an odd prime below 2^31."""
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"p={p!r} is not a prime")
    if p == 2:
        raise ValueError("p = 2 is not supported; use an odd prime")
    if p >= 1 << 31:
        raise ValueError("p must be below 2^31")


class Field:
    """Common interface; concrete fields override the arithmetic."""

    p: int
    k: int
    q: int

    def asarray(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64)

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def frobenius(self, a):
        return self.power(a, self.p)

    def power(self, a: int, e: int) -> int:
        a = int(a)
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = int(self.mul(result, a))
            a = int(self.mul(a, a))
            e >>= 1
        return result

    def sum(self, arr, axis=None):
        arr = self.asarray(arr)
        if axis is None:
            arr = arr.reshape(-1)
            axis = 0
        out = np.take(arr, 0, axis=axis) * 0
        for idx in range(arr.shape[axis]):
            out = self.add(out, np.take(arr, idx, axis=axis))
        return out

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


class PrimeField(Field):
    def __init__(self, p: int):
        check_prime(p)
        self.p = int(p)
        self.k = 1
        self.q = self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def power(self, a: int, e: int) -> int:
        a = int(a) % self.p
        if e < 0:
            a, e = self.inv(a), -e
        return pow(a, e, self.p)

    def frobenius(self, a):
        return a

    def matmul(self, a, b) -> np.ndarray:
        a = self.asarray(a)
        b = self.asarray(b)
        inner = a.shape[-1] if a.ndim else 1
        if inner * (self.p - 1) ** 2 < (1 << 62):
            return (a @ b) % self.p
        out = a.astype(object) @ b.astype(object)
        return (out % self.p).astype(np.int64)

    def sum(self, arr, axis=None):
        return np.sum(self.asarray(arr), axis=axis) % self.p


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """Multiply coefficient lists (low degree first) modulo monic f."""
    k = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for t in range(k + 1):
                prod[deg - k + t] = (prod[deg - k + t] - c * f[t]) % p
    out = prod[:k] + [0] * max(0, k - len(prod))
    return out


@lru_cache(maxsize=None)
def primitive_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic degree-k polynomial with x primitive.

    Returned low-degree-first, leading 1 included.
    """
    q = p**k
    if q > MAX_EXT_ORDER:
        raise ValueError(f"GF({p}^{k}) too large for table arithmetic")
    for code in range(p**k):
        lower = [(code // p**i) % p for i in range(k)]
        if lower[0] == 0:
            continue
        f = lower + [1]
        one = [1] + [0] * (k - 1)
        x = [0, 1] + [0] * (k - 2) if k > 1 else [(-f[0]) % p]
        cur = list(one)
        order = 0
        for step in range(1, q):
            cur = _poly_mulmod(cur, x, f, p)
            if cur == one:
                order = step
                break
        if order == q - 1:
            return tuple(f)
    raise RuntimeError(f"no primitive modulus found for GF({p}^{k})")


class ExtensionField(Field):
    """F_{p^k}, 2 <= k <= 4, with log/antilog tables."""

    def __init__(self, p: int, k: int):
        check_prime(p)
        if not 2 <= k <= 4:
            raise ValueError("extension degree must be between 2 and 4")
        self.p = int(p)
        self.k = int(k)
        self.q = self.p**self.k
        self.modulus = primitive_modulus(self.p, self.k)
        q, p_ = self.q, self.p
        self.weights = np.array([p_**i for i in range(k)], dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self.digits = np.stack([(codes // w) % p_ for w in self.weights], axis=1)
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        cur = [1] + [0] * (k - 1)
        x = [0, 1] + [0] * (k - 2)
        f = list(self.modulus)
        for i in range(q - 1):
            code = sum(c * p_**t for t, c in enumerate(cur))
            exp[i] = code
            log[code] = i
            cur = _poly_mulmod(cur, x, f, p_)
        self._exp = exp
        self._log = log

    def _pack(self, digits):
        return digits @ self.weights

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._pack((self.digits[a] + self.digits[b]) % self.p)
        return out if out.ndim else int(out)

    def sub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._pack((self.digits[a] - self.digits[b]) % self.p)
        return out if out.ndim else int(out)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        out = self._pack((-self.digits[a]) % self.p)
        return out if out.ndim else int(out)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        nz = (a != 0) & (b != 0)
        out = np.where(nz, self._exp[(self._log[a] + self._log[b]) % (self.q - 1)], 0)
        return out if out.ndim else int(out)

    def inv(self, a: int) -> int:
        a = int(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def power(self, a: int, e: int) -> int:
        a = int(a)
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def matmul(self, a, b) -> np.ndarray:
        a = self.asarray(a)
        b = self.asarray(b)
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for t in range(a.shape[1]):
            out = self.add(out, self.mul(a[:, t : t + 1], b[t : t + 1, :]))
        return out


@lru_cache(maxsize=None)
def gf(p: int, k: int = 1) -> Field:
    """Cached field constructor."""
    return PrimeField(p) if k == 1 else ExtensionField(p, k)


class FieldElem:
    """A scalar of a finite field with operator overloads."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = int(value) % field.q if field.k == 1 else int(value)
        if not 0 <= self.value < field.q:
            raise ValueError("encoded value out of range")

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other
        return FieldElem(self.field, int(other) % self.field.p)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.sub(self.value, o.value))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.power(self.value, e))

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@{self.field!r}"
