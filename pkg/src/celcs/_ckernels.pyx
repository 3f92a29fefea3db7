# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for periods of at most 64 bits (n <= 6).

Same API as ``celcs._pykernels``; the dispatcher in ``celcs.kernels`` only
routes n <= 6 here.
"""
from libc.stdint cimport uint64_t

MAX_N = 6


cdef inline int _gc(uint64_t v, int n) noexcept nogil:
    cdef int lc = 0
    cdef int half
    cdef uint64_t left, right
    while n > 0:
        half = 1 << (n - 1)
        left = v & ((<uint64_t>1 << half) - 1)
        right = v >> half
        if left != right:
            lc += half
            v = left ^ right
        else:
            v = left
        n -= 1
    return lc + <int>v


cdef inline int _popcount(uint64_t v) noexcept nogil:
    cdef int c = 0
    while v:
        v &= v - 1
        c += 1
    return c


cdef inline bint _next_comb(int* c, int w, int N) noexcept nogil:
    # advance c[0..w-1] to the next combination in lex order
    cdef int i = w - 1
    cdef int t
    while i >= 0 and c[i] == N - w + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for t in range(i + 1, w):
        c[t] = c[t - 1] + 1
    return True


cdef inline uint64_t _pattern(int* c, int w) noexcept nogil:
    cdef uint64_t e = 0
    cdef int t
    for t in range(w):
        e |= <uint64_t>1 << c[t]
    return e


def _check_n(int n):
    if n < 0 or n > MAX_N:
        raise ValueError(f"compiled kernels handle 0 <= n <= {MAX_N}, got {n}")


def games_chan(value, int n):
    _check_n(n)
    return _gc(<uint64_t>value, n)


def level_scan(value, int n, int weight):
    _check_n(n)
    cdef int N = 1 << n
    if weight < 0 or weight > N:
        raise ValueError("weight out of range")
    cdef uint64_t v = <uint64_t>value
    cdef int c[64]
    cdef int t, lc
    cdef int best = N + 1
    cdef uint64_t e, best_pattern = 0
    for t in range(weight):
        c[t] = t
    with nogil:
        while True:
            e = _pattern(c, weight)
            lc = _gc(v ^ e, n)
            if lc < best:
                best = lc
                best_pattern = e
                if lc == 0:
                    break
            if not _next_comb(c, weight, N):
                break
    return best, best_pattern


def first_match(value, int n, int weight, int target_lc, int target_weight=-1, after=None):
    _check_n(n)
    cdef int N = 1 << n
    if weight < 0 or weight > N:
        raise ValueError("weight out of range")
    cdef uint64_t v = <uint64_t>value
    cdef int c[64]
    cdef int t, p
    cdef uint64_t e, x
    cdef bint found = False
    cdef bint more = True
    cdef uint64_t a
    if after is None:
        for t in range(weight):
            c[t] = t
    else:
        a = <uint64_t>after
        t = 0
        for p in range(N):
            if (a >> p) & 1:
                if t < weight:
                    c[t] = p
                t += 1
        if t != weight:
            raise ValueError("after pattern has the wrong weight")
        more = _next_comb(c, weight, N)
    if not more:
        return None
    with nogil:
        while True:
            e = _pattern(c, weight)
            x = v ^ e
            if (target_weight < 0 or _popcount(x) == target_weight) and _gc(x, n) == target_lc:
                found = True
                break
            if not _next_comb(c, weight, N):
                break
    if found:
        return e
    return None
