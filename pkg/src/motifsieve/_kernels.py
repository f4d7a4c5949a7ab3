"""Compiled inner loops: GF(2^b) multiplication and the subset sweep.

Field elements travel through these kernels as ``uint64``.  A field is
described by ``(bits, poly, logt, expt)``; for ``bits <= TABLE_BITS`` the
log/exp tables are populated and used, otherwise multiplication is a
carry-less product followed by folding with the reduction polynomial.
"""
from __future__ import annotations

import numpy as np
from llvmlite import binding as llvm
from llvmlite import ir
from numba import njit, types
from numba.core import cgutils
from numba.extending import intrinsic

TABLE_BITS = 16

_U0 = np.uint64(0)
_U1 = np.uint64(1)


def _detect_pclmul() -> bool:
    try:
        return bool(llvm.get_host_cpu_features().get("pclmul", False))
    except Exception:  # pragma: no cover - exotic llvmlite builds
        return False


HAVE_PCLMUL = _detect_pclmul()


@intrinsic
def _clmul_hw(typingctx, a, b):
    sig = types.UniTuple(types.uint64, 2)(types.uint64, types.uint64)

    def codegen(context, builder, signature, args):
        i64 = ir.IntType(64)
        vec = ir.VectorType(i64, 2)
        fnty = ir.FunctionType(vec, [vec, vec, ir.IntType(8)])
        fn = cgutils.get_or_insert_function(builder.module, fnty, "llvm.x86.pclmulqdq")
        zero = ir.Constant(vec, [0, 0])
        i0 = ir.Constant(ir.IntType(32), 0)
        i1 = ir.Constant(ir.IntType(32), 1)
        va = builder.insert_element(zero, args[0], i0)
        vb = builder.insert_element(zero, args[1], i0)
        r = builder.call(fn, [va, vb, ir.Constant(ir.IntType(8), 0)])
        lo = builder.extract_element(r, i0)
        hi = builder.extract_element(r, i1)
        return context.make_tuple(builder, signature.return_type, [lo, hi])

    return sig, codegen


@njit(cache=True, nogil=True)
def clmul_soft(a, b):
    """Portable 64x64 -> 128 bit carry-less product, returned as (lo, hi)."""
    lo = _U0
    hi = _U0
    for i in range(64):
        if (b >> np.uint64(i)) & _U1:
            lo ^= a << np.uint64(i)
            if i > 0:
                hi ^= a >> np.uint64(64 - i)
    return lo, hi


if HAVE_PCLMUL:
    _clmul = _clmul_hw
else:  # pragma: no cover - depends on host CPU
    _clmul = clmul_soft


@njit(cache=True, nogil=True)
def clmul(a, b):
    return _clmul(a, b)


@njit(cache=True, nogil=True)
def gf_mul(a, b, bits, poly, logt, expt):
    if a == _U0 or b == _U0:
        return _U0
    if bits <= TABLE_BITS:
        return expt[logt[a] + logt[b]]
    lo, hi = _clmul(a, b)
    if bits == 64:
        l2, h2 = _clmul(hi, poly)
        lo ^= l2
        l3, h3 = _clmul(h2, poly)
        return lo ^ l3
    sb = np.uint64(bits)
    mask = (_U1 << sb) - _U1
    while True:
        top = (lo >> sb) | (hi << np.uint64(64 - bits))
        if top == _U0:
            return lo
        l2, h2 = _clmul(top, poly)
        lo = (lo & mask) ^ l2
        hi = h2


@njit(cache=True, nogil=True)
def gf_mul_soft(a, b, bits, poly):
    """Same contract as ``gf_mul`` without tables or CPU intrinsics."""
    if a == _U0 or b == _U0:
        return _U0
    lo, hi = clmul_soft(a, b)
    if bits == 64:
        l2, h2 = clmul_soft(hi, poly)
        lo ^= l2
        l3, h3 = clmul_soft(h2, poly)
        return lo ^ l3
    sb = np.uint64(bits)
    mask = (_U1 << sb) - _U1
    while True:
        top = (lo >> sb) | (hi << np.uint64(64 - bits))
        if top == _U0:
            return lo
        l2, h2 = clmul_soft(top, poly)
        lo = (lo & mask) ^ l2
        hi = h2


@njit(cache=True, nogil=True)
def mul_arrays(a, b, bits, poly, logt, expt):
    out = np.empty(a.shape[0], dtype=np.uint64)
    for i in range(a.shape[0]):
        out[i] = gf_mul(a[i], b[i], bits, poly, logt, expt)
    return out


@njit(cache=True, nogil=True)
def walk_eval(x, indptr, indices, yarc, k, bits, poly, logt, expt, P, yx):
    """Evaluate the branching-walk polynomial at vertex values ``x``.

    ``P`` is scratch of shape ``(len(indices) + n, k + 1)``; row
    ``indptr[u] + u + i`` holds the cursor-``i`` column of vertex ``u``
    (0-based cursor, ``i == deg(u)`` is the empty tail).
    """
    n = x.shape[0]
    acc = _U0
    if k == 1:
        for u in range(n):
            acc ^= x[u]
        return acc
    for a in range(indices.shape[0]):
        yx[a] = gf_mul(yarc[a], x[indices[a]], bits, poly, logt, expt)
    for u in range(n):
        base = indptr[u] + u
        d = indptr[u + 1] - indptr[u]
        for i in range(d + 1):
            P[base + i, 1] = _U1
        for l in range(2, k + 1):
            P[base + d, l] = _U0
    for l in range(2, k + 1):
        for u in range(n):
            a0 = indptr[u]
            d = indptr[u + 1] - a0
            base = a0 + u
            for i in range(d - 1, -1, -1):
                a = a0 + i
                v = indices[a]
                vb = indptr[v] + v
                nxt = base + i + 1
                # l1 = 1 and l1 = l - 1 terms multiply by P[., 1] == 1
                if l == 2:
                    s = _U1
                else:
                    s = P[vb, l - 1] ^ P[nxt, l - 1]
                    for l1 in range(2, l - 1):
                        s ^= gf_mul(P[nxt, l1], P[vb, l - l1], bits, poly, logt, expt)
                P[base + i, l] = P[nxt, l] ^ gf_mul(yx[a], s, bits, poly, logt, expt)
    for u in range(n):
        acc ^= gf_mul(x[u], P[indptr[u] + u, k], bits, poly, logt, expt)
    return acc


@njit(cache=True, nogil=True)
def sweep(lo, hi, utab, indptr, indices, yarc, k, bits, poly, logt, expt):
    """XOR of the walk polynomial over subsets with Gray-code ranks in [lo, hi).

    Column ``j`` of ``utab`` holds the per-vertex contribution of label ``j``;
    the subset visited at rank ``r`` is ``r ^ (r >> 1)``.
    """
    n = utab.shape[0]
    labels = utab.shape[1]
    P = np.empty((indices.shape[0] + n, k + 1), dtype=np.uint64)
    yx = np.empty(indices.shape[0], dtype=np.uint64)
    x = np.zeros(n, dtype=np.uint64)
    g = lo ^ (lo >> 1)
    for j in range(labels):
        if (g >> j) & 1:
            for i in range(n):
                x[i] ^= utab[i, j]
    acc = _U0
    for r in range(lo, hi):
        if r != lo:
            j = 0
            while ((r >> j) & 1) == 0:
                j += 1
            for i in range(n):
                x[i] ^= utab[i, j]
        acc ^= walk_eval(x, indptr, indices, yarc, k, bits, poly, logt, expt, P, yx)
    return acc
