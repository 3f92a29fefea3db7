"""Pure-Python versions of the hot loops.

Same API as the compiled ``_ckernels`` module.  Values are Python ints with
bit ``i`` holding ``s_i``; error patterns are enumerated by weight and, within
one weight, in lexicographic order of their sorted support.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

_SMALL_N = 4
_small_table: list[int] | None = None


def games_chan(value: int, n: int) -> int:
    """Linear complexity of the packed period ``value`` of length ``2^n``."""
    lc = 0
    while n > 0:
        half = 1 << (n - 1)
        left = value & ((1 << half) - 1)
        right = value >> half
        if left != right:
            lc += half
            value = left ^ right
        else:
            value = left
        n -= 1
    return lc + value


def _lc_table() -> list[int]:
    global _small_table
    if _small_table is None:
        _small_table = [games_chan(v, _SMALL_N) for v in range(1 << (1 << _SMALL_N))]
    return _small_table


def _lc_function(n: int):
    if n <= _SMALL_N:
        table = _lc_table()
        # a period of 2^n for n < 4 repeated 2^(4-n) times has the same
        # complexity, so one table serves every small n
        if n == _SMALL_N:
            return table.__getitem__
        reps = 1 << (_SMALL_N - n)
        width = 1 << n

        def lookup(v: int) -> int:
            full = 0
            for r in range(reps):
                full |= v << (r * width)
            return table[full]

        return lookup
    return lambda v: games_chan(v, n)


@lru_cache(maxsize=64)
def lex_patterns(N: int, weight: int) -> tuple[int, ...]:
    """All weight-``weight`` patterns on ``N`` positions in lexicographic support order."""
    bits = [1 << p for p in range(N)]
    return tuple(sum(bits[p] for p in c) for c in combinations(range(N), weight))


def _patterns(N: int, weight: int):
    # cache only modest levels; huge ones are streamed
    from math import comb

    if comb(N, weight) <= 200_000:
        return lex_patterns(N, weight)
    bits = [1 << p for p in range(N)]
    return (sum(bits[p] for p in c) for c in combinations(range(N), weight))


def level_scan(value: int, n: int, weight: int) -> tuple[int, int]:
    """Minimum complexity of ``value ^ e`` over weight-``weight`` patterns ``e``.

    Returns ``(best, pattern)`` where ``pattern`` is the lexicographically first
    pattern attaining ``best``.
    """
    if not 0 <= weight <= (1 << n):
        raise ValueError(f"weight {weight} outside 0..{1 << n}")
    lc = _lc_function(n)
    best = (1 << n) + 1
    best_pattern = 0
    for e in _patterns(1 << n, weight):
        v = lc(value ^ e)
        if v < best:
            best, best_pattern = v, e
            if v == 0:
                break
    return best, best_pattern


def _support_key(pattern: int) -> tuple[int, ...]:
    out, i = [], 0
    while pattern:
        if pattern & 1:
            out.append(i)
        pattern >>= 1
        i += 1
    return tuple(out)


def first_match(value: int, n: int, weight: int, target_lc: int,
                target_weight: int = -1, after: int | None = None) -> int | None:
    """First weight-``weight`` pattern ``e`` (lex order, strictly after ``after``)
    with ``L(value ^ e) == target_lc`` and, if ``target_weight >= 0``,
    ``popcount(value ^ e) == target_weight``.  ``None`` when there is none.
    """
    lc = _lc_function(n)
    N = 1 << n
    after_key = _support_key(after) if after is not None else None
    bits = [1 << p for p in range(N)]
    for c in combinations(range(N), weight):
        if after_key is not None:
            if c <= after_key:
                continue
            after_key = None
        e = 0
        for p in c:
            e |= bits[p]
        x = value ^ e
        if target_weight >= 0 and bin(x).count("1") != target_weight:
            continue
        if lc(x) == target_lc:
            return e
    return None
