"""Arithmetic in GF(2^b), 1 <= b <= 64.

Elements are plain Python ints in ``[0, 2^b)`` whose bits are polynomial
coefficients over GF(2); arrays of elements are ``numpy.uint64``.  The
reduction polynomial ``x^b + poly`` is stored as the bitmask ``poly`` of its
low-order coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import _kernels
from .errors import ParameterError

MAX_BITS = 64
DEFAULT_BITS = 64

# Lexicographically smallest irreducible x^b + poly for each b (low bits only).
IRREDUCIBLE: dict[int, int] = {
    1: 0x0,
    2: 0x3,
    3: 0x3,
    4: 0x3,
    5: 0x5,
    6: 0x3,
    7: 0x3,
    8: 0x1B,
    9: 0x3,
    10: 0x9,
    11: 0x5,
    12: 0x9,
    13: 0x1B,
    14: 0x21,
    15: 0x3,
    16: 0x2B,
    32: 0x8D,
    64: 0x1B,
}


def clmul(a: int, b: int) -> int:
    """Carry-less product of two nonnegative ints."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def is_irreducible(f: int) -> bool:
    """Ben-Or test: ``f`` (full bitmask incl. leading term) is irreducible over GF(2).

    ``f`` has no factor of degree i <= deg/2 iff gcd(f, x^(2^i) - x) = 1 for
    every such i.
    """
    d = f.bit_length() - 1
    if d < 1:
        return False
    if d == 1:
        return True
    t = 2
    for _ in range(d // 2):
        t = _mulmod(t, t, f)
        if poly_gcd(f, t ^ 2) != 1:
            return False
    return True


def is_irreducible_bruteforce(f: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(f)//2."""
    d = f.bit_length() - 1
    if d < 1:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if poly_mod(f, g) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(b: int) -> int:
    """Low-order mask of the lexicographically smallest irreducible of degree ``b``."""
    if not 1 <= b <= MAX_BITS:
        raise ParameterError(f"field bit-width must be in 1..{MAX_BITS}, got {b}")
    if b in IRREDUCIBLE:
        return IRREDUCIBLE[b]
    for mask in range(1 << b):
        if is_irreducible((1 << b) | mask):
            return mask
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FieldParams:
    """The field GF(2^b) with reduction polynomial ``x^b + reduction_poly``."""

    b: int
    reduction_poly: int

    def __post_init__(self):
        if not 1 <= self.b <= MAX_BITS:
            raise ParameterError(f"field bit-width must be in 1..{MAX_BITS}, got {self.b}")
        if not 0 <= self.reduction_poly < (1 << self.b):
            raise ParameterError("reduction_poly must hold exactly the low b coefficients")

    @classmethod
    def of_bits(cls, b: int) -> FieldParams:
        return cls(b, smallest_irreducible(b))

    @property
    def order(self) -> int:
        return 1 << self.b

    @property
    def modulus(self) -> int:
        return (1 << self.b) | self.reduction_poly

    zero = 0
    one = 1

    # -- scalar arithmetic (reference implementation, pure Python) --

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        """Shift-and-add product reduced bit by bit."""
        top = 1 << self.b
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return r

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ParameterError("exponent must be nonnegative")
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in GF(2^b)")
        # a^(2^b - 2) = a^-1 in the multiplicative group of order 2^b - 1
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def random_elem(self, rng: np.random.Generator) -> int:
        return int(self.random_array(rng, 1)[0])

    def random_array(self, rng: np.random.Generator, size) -> np.ndarray:
        if self.b == 64:
            return rng.integers(0, 2**64, size=size, dtype=np.uint64, endpoint=False)
        return rng.integers(0, 1 << self.b, size=size, dtype=np.uint64)

    # -- vectorised arithmetic backed by the compiled kernels --

    @cached_property
    def kernel_args(self) -> tuple:
        """``(bits, poly, logt, expt)`` as consumed by :mod:`motifsieve._kernels`."""
        if self.b <= _kernels.TABLE_BITS:
            logt, expt = self._tables()
        else:
            logt = np.zeros(1, dtype=np.int64)
            expt = np.zeros(1, dtype=np.uint64)
        return (np.int64(self.b), np.uint64(self.reduction_poly), logt, expt)

    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        q1 = self.order - 1
        g = self._generator()
        expt = np.zeros(2 * q1 + 1, dtype=np.uint64)
        logt = np.zeros(self.order, dtype=np.int64)
        x = 1
        for i in range(q1):
            expt[i] = x
            logt[x] = i
            x = self.mul(x, g)
        expt[q1 : 2 * q1] = expt[:q1]
        return logt, expt

    def _generator(self) -> int:
        q1 = self.order - 1
        if q1 == 1:
            return 1
        primes = [p for p in range(2, q1 + 1) if q1 % p == 0 and all(p % r for r in range(2, math.isqrt(p) + 1))]
        for g in range(2, self.order):
            if all(self.pow(g, q1 // p) != 1 for p in primes):
                return g
        raise AssertionError("multiplicative group of a finite field is cyclic")

    def mul_array(self, a, b) -> np.ndarray:
        """Elementwise product of broadcast-compatible uint64 arrays."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.uint64), np.asarray(b, dtype=np.uint64))
        flat = _kernels.mul_arrays(np.ascontiguousarray(a).ravel(), np.ascontiguousarray(b).ravel(), *self.kernel_args)
        return flat.reshape(a.shape)

    def sum_array(self, a, axis=None) -> np.ndarray:
        return np.bitwise_xor.reduce(np.asarray(a, dtype=np.uint64), axis=axis)


def params_for_k(k: int, requested_b: int | None = None) -> FieldParams:
    """Field for a size-``k`` search; 64 bits unless ``requested_b`` is given."""
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    if requested_b is None:
        return FieldParams.of_bits(DEFAULT_BITS)
    if not 1 <= requested_b <= MAX_BITS:
        raise ParameterError(f"field bit-width must be in 1..{MAX_BITS}, got {requested_b}")
    if (1 << requested_b) < 6 * k:
        raise ParameterError(f"2^{requested_b} < 6k = {6 * k}: field too small for k={k}")
    return FieldParams.of_bits(requested_b)


def minimal_bits(k: int) -> int:
    """Smallest b with 2^b >= 6k."""
    return max(1, math.ceil(math.log2(6 * k)))
