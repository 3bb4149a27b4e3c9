"""Sparse multivariate polynomials over F_p.

A :class:`Poly` maps exponent tuples to nonzero residues.  Monomial order for
leading terms is lexicographic on exponent tuples (first variable largest).
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .fields import Field

Mono = tuple[int, ...]


class Poly:
    __slots__ = ("p", "nvars", "terms", "_hash")

    def __init__(self, p: int, nvars: int, terms: Mapping[Mono, int] | None = None):
        self.p = p
        self.nvars = nvars
        clean: dict[Mono, int] = {}
        if terms:
            for mono, c in terms.items():
                c %= p
                if c:
                    if len(mono) != nvars:
                        raise ValueError("exponent vector has the wrong length")
                    clean[tuple(mono)] = c
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def const(cls, p: int, nvars: int, c: int) -> "Poly":
        return cls(p, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, p: int, nvars: int, i: int) -> "Poly":
        mono = [0] * nvars
        mono[i] = 1
        return cls(p, nvars, {tuple(mono): 1})

    @classmethod
    def monomial(cls, p: int, mono: Mono, c: int = 1) -> "Poly":
        return cls(p, len(mono), {tuple(mono): c})

    def _wrap(self, terms: dict) -> "Poly":
        out = Poly.__new__(Poly)
        out.p, out.nvars, out.terms, out._hash = self.p, self.nvars, terms, None
        return out

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.p != self.p or other.nvars != self.nvars:
                raise ValueError("incompatible polynomial rings")
            return other
        return Poly.const(self.p, self.nvars, int(other))

    # ring operations
    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        p = self.p
        for m, c in other.terms.items():
            v = (terms.get(m, 0) + c) % p
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return self._wrap(terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return self._wrap({m: (-c) % p for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = int(other) % self.p
            if c == 0:
                return self._wrap({})
            return self._wrap({m: (v * c) % self.p for m, v in self.terms.items()})
        other = self._lift(other)
        p = self.p
        terms: dict[Mono, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = (terms.get(m, 0) + c1 * c2) % p
        return self._wrap({m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = Poly.const(self.p, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(not any(m) for m in self.terms)

    def const_value(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    # degrees
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading(self) -> tuple[Mono, int]:
        m = max(self.terms)
        return m, self.terms[m]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading()
        return self * pow(c, self.p - 2, self.p)

    # evaluation
    def evaluate(self, field: Field, point: Iterable[int]) -> int:
        point = [int(x) for x in point]
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.nvars}")
        acc = 0
        for m, c in self.terms.items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term = field.mul(term, field.power(x, e))
            acc = field.add(acc, term)
        return int(acc)

    def substitute(self, values: list["Poly"]) -> "Poly":
        """Compose with polynomials in another ring (one per variable)."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of substitutions")
        tgt = values[0] if values else None
        out = Poly(self.p, tgt.nvars if tgt is not None else 0)
        cache: dict[tuple[int, int], Poly] = {}
        for m, c in self.terms.items():
            term = Poly.const(self.p, out.nvars, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = values[i] ** e
                    term = term * cache[key]
            out = out + term
        return out

    # division
    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        q, r = self.divmod_lex(other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def divmod_lex(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._lift(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        lm, lc = other.leading()
        inv = pow(lc, p - 2, p)
        rem = dict(self.terms)
        quo: dict[Mono, int] = {}
        out_rem: dict[Mono, int] = {}
        while rem:
            m = max(rem)
            c = rem[m]
            if all(a >= b for a, b in zip(m, lm)):
                qm = tuple(a - b for a, b in zip(m, lm))
                qc = (c * inv) % p
                quo[qm] = (quo.get(qm, 0) + qc) % p
                for om, oc in other.terms.items():
                    mm = tuple(a + b for a, b in zip(qm, om))
                    v = (rem.get(mm, 0) - qc * oc) % p
                    if v:
                        rem[mm] = v
                    else:
                        rem.pop(mm, None)
            else:
                out_rem[m] = c
                del rem[m]
        return self._wrap({m: c for m, c in quo.items() if c}), self._wrap(out_rem)

    # univariate helpers
    def _univariate(self) -> None:
        if self.nvars != 1:
            raise ValueError("univariate operation on a multivariate polynomial")

    def udivmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._univariate()
        return self.divmod_lex(other)

    def ugcd(self, other: "Poly") -> "Poly":
        self._univariate()
        a, b = self, self._lift(other)
        while b:
            a, b = b, a.udivmod(b)[1]
        return a.monic()

    def content_monomial(self) -> Mono:
        """Largest monomial dividing every term."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(m[i] for m in self.terms) for i in range(self.nvars))

    # serialization
    def to_json(self) -> list:
        return [[list(m), c] for m, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, p: int, nvars: int, data) -> "Poly":
        terms: dict[Mono, int] = {}
        for mono, c in data:
            mono = tuple(int(e) for e in mono)
            if any(e < 0 for e in mono):
                raise ValueError("negative exponent in polynomial")
            terms[mono] = (terms.get(mono, 0) + int(c)) % p
        return cls(p, nvars, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"T{i}" for i in range(self.nvars)]
        parts = []
        for m, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(f"{n}^{e}" if e > 1 else n for n, e in zip(names, m) if e)
            parts.append(f"{c}*{mon}" if mon and c != 1 else (mon or str(c)))
        return " + ".join(parts)


def poly_vector_eval(polys: list[Poly], field: Field, point) -> np.ndarray:
    return np.array([q.evaluate(field, point) for q in polys], dtype=np.int64)
