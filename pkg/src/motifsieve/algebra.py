"""Ring contexts and sparse polynomials over GF(2).

A ring context is any object exposing ``zero``, ``one``, ``add`` and
``mul``; :class:`~motifsieve.gf2.FieldParams` is one, :data:`INTEGERS` and
:class:`PolyRing` are the others used here.

Monomials of a :class:`PolyRing` are packed into a single Python int, one
fixed-width exponent field per variable, so multiplying monomials is
integer addition.  Coefficients live in GF(2), so a polynomial is just the
set of monomials with odd coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator


class IntegerRing:
    zero = 0
    one = 1

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b


INTEGERS = IntegerRing()


class PolyRing:
    """GF(2)[vars] over a growing set of named variables.

    ``width`` bits are reserved per exponent.  Products are not checked for
    overflow, so callers keep every exponent below ``2**width``.
    """

    def __init__(self, width: int = 5):
        self.width = width
        self._index: dict[Hashable, int] = {}
        self._names: list[Hashable] = []
        self.zero = Poly(self, frozenset())
        self.one = Poly(self, frozenset([0]))

    def var(self, name: Hashable) -> Poly:
        i = self._index.get(name)
        if i is None:
            i = len(self._names)
            self._index[name] = i
            self._names.append(name)
        return Poly(self, frozenset([1 << (i * self.width)]))

    def add(self, a: Poly, b: Poly) -> Poly:
        return a + b

    def mul(self, a: Poly, b: Poly) -> Poly:
        return a * b

    def exponents(self, mono: int) -> dict[Hashable, int]:
        out = {}
        mask = (1 << self.width) - 1
        i = 0
        while mono:
            e = mono & mask
            if e:
                out[self._names[i]] = e
            mono >>= self.width
            i += 1
        return out

    def degree_in(self, mono: int, names: Iterable[Hashable]) -> int:
        mask = (1 << self.width) - 1
        total = 0
        for name in names:
            i = self._index.get(name)
            if i is not None:
                total += (mono >> (i * self.width)) & mask
        return total


@dataclass(frozen=True)
class Poly:
    ring: PolyRing
    terms: frozenset

    def __add__(self, other: Poly) -> Poly:
        return Poly(self.ring, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: Poly) -> Poly:
        if not self.terms or not other.terms:
            return self.ring.zero
        acc: set[int] = set()
        for a in self.terms:
            for b in other.terms:
                m = a + b
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return Poly(self.ring, frozenset(acc))

    def __pow__(self, e: int) -> Poly:
        result = self.ring.one
        for _ in range(e):
            result = result * self
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[int]:
        return iter(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def max_exponent(self) -> int:
        mask = (1 << self.ring.width) - 1
        best = 0
        for m in self.terms:
            while m:
                best = max(best, m & mask)
                m >>= self.ring.width
        return best

    def monomials(self) -> list[dict[Hashable, int]]:
        return [self.ring.exponents(m) for m in self.terms]

    def total_degree(self, mono: int) -> int:
        return sum(self.ring.exponents(mono).values())
