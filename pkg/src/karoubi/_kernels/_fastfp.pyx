# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled prime-field kernels; same contract as ``_pure.matmul_mod``/``rref_mod``."""
from libc.stdlib cimport malloc, free


cdef inline long _mod(long x, long p) nogil:
    x = x % p
    return x + p if x < 0 else x


cdef long _inv(long x, long p):
    # extended Euclid; x is nonzero mod p
    cdef long t = 0, newt = 1, r = p, newr = x, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    return _mod(t, p)


def matmul_mod(tuple a, tuple b, Py_ssize_t m, Py_ssize_t k, Py_ssize_t n, long p):
    if m == 0:
        return ()
    if n == 0:
        return ((),) * m
    if k == 0:
        return ((0,) * n,) * m
    cdef long *A = <long *> malloc(m * k * sizeof(long))
    cdef long *B = <long *> malloc(k * n * sizeof(long))
    cdef Py_ssize_t i, j, t
    cdef long acc
    cdef tuple row
    try:
        for i in range(m):
            row = <tuple> a[i]
            for t in range(k):
                A[i * k + t] = row[t]
        for t in range(k):
            row = <tuple> b[t]
            for j in range(n):
                B[t * n + j] = row[j]
        out = []
        for i in range(m):
            orow = []
            for j in range(n):
                acc = 0
                for t in range(k):
                    acc = (acc + A[i * k + t] * B[t * n + j]) % p
                orow.append(acc)
            out.append(tuple(orow))
        return tuple(out)
    finally:
        free(A)
        free(B)


def rref_mod(tuple a, Py_ssize_t m, Py_ssize_t n, long p):
    cdef long *R = <long *> malloc((m * n + 1) * sizeof(long))
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef long inv, f, tmp
    cdef tuple row
    pivots = []
    try:
        for i in range(m):
            row = <tuple> a[i]
            for j in range(n):
                R[i * n + j] = _mod(row[j], p)
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if R[i * n + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(n):
                    tmp = R[r * n + j]
                    R[r * n + j] = R[piv * n + j]
                    R[piv * n + j] = tmp
            inv = _inv(R[r * n + c], p)
            for j in range(n):
                R[r * n + j] = (R[r * n + j] * inv) % p
            for i in range(m):
                if i == r:
                    continue
                f = R[i * n + c]
                if f == 0:
                    continue
                for j in range(n):
                    R[i * n + j] = _mod(R[i * n + j] - f * R[r * n + j], p)
            pivots.append(c)
            r += 1
        out = tuple(tuple(R[i * n + j] for j in range(n)) for i in range(m))
        return out, tuple(pivots)
    finally:
        free(R)
