"""Exact k-error tables that replace per-sequence brute force at small n.

Two engines, both exact:

* ``relaxation_table(n)`` for n <= 4.  Row ``k`` holds ``L_k`` for every
  sequence at once: row 0 is the complexity of each sequence and row ``k + 1``
  takes the minimum of row ``k`` over the sequence and its single-bit
  neighbours.  Equivalent to enumerating every error of weight <= k.

* ``Period32Engine`` for n = 5.  It computes, for each complexity bound
  ``l``, the least error weight ``d_l(s)`` that brings ``s`` down to
  complexity <= ``l``; the spectrum follows from ``L_k = min{l : d_l <= k}``.

  - For ``l <= 16`` the corrected sequence must have equal halves ``c``.
    With halves ``a, b`` and ``D = a ^ b`` the cost is
    ``wt(D) + 2 * min_{f subset of D} d4_l(a ^ f)``, where ``d4`` comes
    from the n = 4 relaxation table.
  - For ``l >= 16``, ``L(s + e) <= l`` iff ``(x + 1)^(32 - l)`` divides
    ``s(x) + e(x)``, so ``d_l`` is the weight of a minimum-weight coset
    leader for the syndrome of ``s`` modulo ``(x + 1)^(32 - l)``.  Leader
    weights come from a breadth-first relaxation over the 32 column
    syndromes.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "TABLE_MAX_N",
    "lc_array",
    "relaxation_table",
    "celcs_from_column",
    "Period32Engine",
    "period32_engine",
]

TABLE_MAX_N = 4


def lc_array(n: int) -> np.ndarray:
    """Games-Chan complexity of every packed period of length ``2^n``, vectorised."""
    if n > TABLE_MAX_N:
        raise ValueError(f"lc_array is limited to n <= {TABLE_MAX_N}")
    v = np.arange(1 << (1 << n), dtype=np.int64)
    lc = np.zeros_like(v)
    t = n
    while t > 0:
        half = 1 << (t - 1)
        left = v & ((1 << half) - 1)
        right = v >> half
        differ = left != right
        lc += np.where(differ, half, 0)
        v = np.where(differ, left ^ right, left)
        t -= 1
    return (lc + v).astype(np.int16)


@lru_cache(maxsize=None)
def relaxation_table(n: int) -> np.ndarray:
    """Array ``T`` with ``T[k, x] = L_k(x)`` for ``0 <= k <= 2^n``."""
    N = 1 << n
    rows = [lc_array(n)]
    idx = np.arange(1 << N)
    for _ in range(N):
        cur = rows[-1]
        nxt = cur.copy()
        for b in range(N):
            np.minimum(nxt, cur[idx ^ (1 << b)], out=nxt)
        rows.append(nxt)
    table = np.stack(rows)
    table.setflags(write=False)
    return table


def celcs_from_column(column) -> list[tuple[int, int]]:
    """Critical points of a non-increasing ``k -> L_k`` column."""
    points = [(0, int(column[0]))]
    for k in range(1, len(column)):
        v = int(column[k])
        if v < points[-1][1]:
            points.append((k, v))
    return points


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _x_plus_one_power(r: int) -> int:
    p = 1
    for _ in range(r):
        p ^= p << 1
    return p


class Period32Engine:
    """Exact spectra for periods of length 32."""

    n = 5
    N = 32
    HALF = 16

    def __init__(self) -> None:
        t4 = relaxation_table(4)
        ell = np.arange(self.HALF + 1)[:, None, None]
        # d4[l, x]: first k with L_k(x) <= l; row k = 16 always reaches 0
        self._d4 = np.argmax(t4[None, :, :] <= ell, axis=1).astype(np.int16)
        self._syndromes: dict[int, list[int]] = {}
        self._leaders: dict[int, np.ndarray] = {}
        for r in range(1, self.HALF + 1):
            modulus = _x_plus_one_power(r)
            cols = [_poly_mod(1 << i, modulus) for i in range(self.N)]
            size = 1 << r
            idx = np.arange(size)
            dist = np.full(size, self.N + 1, dtype=np.int16)
            dist[0] = 0
            while True:
                new = dist.copy()
                for c in cols:
                    np.minimum(new, dist[idx ^ c] + 1, out=new)
                if np.array_equal(new, dist):
                    break
                dist = new
            self._syndromes[r] = cols
            self._leaders[r] = dist

    def distance_profile(self, value: int) -> list[int]:
        """``d[l]`` for ``l = 0..32``: least error weight reaching complexity <= l."""
        a = value & 0xFFFF
        b = value >> 16
        diff = a ^ b
        subsets = np.zeros(1, dtype=np.int64)
        for i in range(self.HALF):
            if (diff >> i) & 1:
                subsets = np.concatenate([subsets, subsets | (1 << i)])
        low = self._d4[:, a ^ subsets].min(axis=1)
        wd = bin(diff).count("1")
        d = [wd + 2 * int(x) for x in low]
        for ell in range(self.HALF + 1, self.N):
            cols = self._syndromes[self.N - ell]
            syn, v, i = 0, value, 0
            while v:
                if v & 1:
                    syn ^= cols[i]
                v >>= 1
                i += 1
            d.append(int(self._leaders[self.N - ell][syn]))
        d.append(0)
        return d

    def celcs(self, value: int) -> list[tuple[int, int]]:
        d = self.distance_profile(value)
        points = [(0, next(ell for ell in range(self.N + 1) if d[ell] == 0))]
        while points[-1][1] > 0:
            cur = points[-1][1]
            k = min(d[:cur])
            points.append((k, next(ell for ell in range(cur) if d[ell] <= k)))
        return points

    def kerror_lc(self, value: int, k: int) -> int:
        d = self.distance_profile(value)
        return next(ell for ell in range(self.N + 1) if d[ell] <= k)


@lru_cache(maxsize=1)
def period32_engine() -> Period32Engine:
    return Period32Engine()
