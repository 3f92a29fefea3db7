"""k-error linear complexity, the critical-point spectrum, and error witnesses.

The reference method is brute force: error patterns are enumerated by
increasing weight and, within one weight, in lexicographic order of their
support.  Two exact shortcuts are used throughout:

* a pattern of weight ``w`` with ``wt(s) + w`` odd leaves an odd-weight
  sequence, whose complexity is the full period, so such levels never lower
  ``L_k`` and are skipped;
* complexity 0 is reached only by cancelling ``s`` itself, so ``L_k = 0``
  exactly when ``k >= wt(s)``.

For n <= 5 the default ``method="auto"`` reads the exact tables in
:mod:`celcs.tables` instead; ``method="brute"`` always enumerates.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb
from typing import Iterator

from celcs import kernels
from celcs.errors import CapacityError
from celcs.seqcore import Seq, linear_complexity, weight

__all__ = [
    "DEFAULT_BUDGET",
    "Celcs",
    "resolve_budget",
    "kerror_lc",
    "celcs",
    "first_descent_k",
    "first_drop",
    "error_witness",
]

DEFAULT_BUDGET = 10**9
_METHODS = ("auto", "table", "brute")


def resolve_budget(budget: int | None = None) -> int:
    """Explicit budget, else ``CELCS_BUDGET`` from the environment, else the default."""
    if budget is not None:
        if budget < 0:
            raise ValueError("budget must be non-negative")
        return budget
    env = os.environ.get("CELCS_BUDGET")
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise ValueError(f"CELCS_BUDGET is not a number: {env!r}") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class Celcs:
    """Critical points ``(k, L_k)`` where the k-error complexity strictly drops.

    ``points[0]`` is ``(0, L(s))``; ``points[i]`` is the i-th descent
    ``(k^(i), L^(i))``.
    """

    n: int
    points: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pts = self.points
        if not pts or pts[0][0] != 0:
            raise ValueError("a spectrum starts at k = 0")
        for (k0, l0), (k1, l1) in zip(pts, pts[1:]):
            if not (k1 > k0 and l1 < l0):
                raise ValueError(f"points must rise in k and fall in L: {pts}")

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def descents(self) -> int:
        """Number of strict drops."""
        return len(self.points) - 1

    def k(self, i: int) -> int:
        """``k^(i)``, the error count at the i-th drop (``k(0) == 0``)."""
        return self.points[i][0]

    def level(self, i: int) -> int:
        """``L^(i)``, the complexity after the i-th drop (``level(0) == L(s)``)."""
        return self.points[i][1]

    def lc_at(self, k: int) -> int:
        """``L_k`` read off the step function."""
        if k < 0:
            raise ValueError("k must be non-negative")
        value = self.points[0][1]
        for kk, lc in self.points:
            if kk > k:
                break
            value = lc
        return value

    def __str__(self) -> str:
        return " ".join(f"({k},{lc})" for k, lc in self.points)

    def to_json(self) -> dict:
        return {"n": self.n, "points": [list(p) for p in self.points]}


def _check_k(s: Seq, k: int) -> None:
    if not 0 <= k <= s.N:
        raise ValueError(f"k must lie in [0, {s.N}], got {k}")


def _check_method(method: str) -> None:
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {_METHODS}")


def _use_table(s: Seq, method: str) -> bool:
    _check_method(method)
    if method == "brute":
        return False
    if s.n <= 5:
        return True
    if method == "table":
        raise ValueError("exact tables exist only for n <= 5")
    return False


def _table_points(s: Seq) -> list[tuple[int, int]]:
    from celcs import tables

    if s.n <= tables.TABLE_MAX_N:
        return tables.celcs_from_column(tables.relaxation_table(s.n)[:, s.value])
    return tables.period32_engine().celcs(s.value)


class _Meter:
    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.used = 0

    def charge(self, cost: int, what: str) -> None:
        if self.used + cost > self.budget:
            raise CapacityError(
                f"{what} needs {self.used + cost} complexity evaluations, "
                f"over the budget of {self.budget}"
            )
        self.used += cost


def _brute_points(s: Seq, meter: _Meter, k_limit: int | None = None) -> list[tuple[int, int]]:
    """Brute-force spectrum, optionally only up to ``k_limit`` errors."""
    ws = weight(s)
    points = [(0, linear_complexity(s))]
    w = 0
    limit = s.N if k_limit is None else k_limit
    while points[-1][1] > 0 and w < limit:
        w += 1
        if w >= ws:
            points.append((ws, 0))
            break
        if (ws + w) % 2:
            continue
        meter.charge(comb(s.N, w), f"weight-{w} scan at n={s.n}")
        best, _ = kernels.level_scan(s.value, s.n, w)
        if best < points[-1][1]:
            points.append((w, best))
    return points


def celcs(s: Seq, *, method: str = "auto", budget: int | None = None) -> Celcs:
    """All critical points of ``k -> L_k(s)``, including ``(0, L(s))``.

    Raises:
        CapacityError: brute force would exceed the evaluation budget.
    """
    if _use_table(s, method):
        return Celcs(s.n, tuple(_table_points(s)))
    return Celcs(s.n, tuple(_brute_points(s, _Meter(resolve_budget(budget)))))


def kerror_lc(s: Seq, k: int, *, method: str = "auto", budget: int | None = None) -> int:
    """Least complexity reachable by changing at most ``k`` bits of one period."""
    _check_k(s, k)
    if _use_table(s, method):
        from celcs import tables

        if s.n <= tables.TABLE_MAX_N:
            return int(tables.relaxation_table(s.n)[k, s.value])
        return tables.period32_engine().kerror_lc(s.value, k)
    if k >= weight(s):
        return 0
    points = _brute_points(s, _Meter(resolve_budget(budget)), k_limit=k)
    return points[-1][1]


def first_descent_k(s: Seq) -> int:
    """``2^W`` where ``W`` is the Hamming weight of ``2^n - L(s)``."""
    lc = linear_complexity(s)
    if lc == 0:
        raise ValueError("the zero sequence has no descent")
    return 1 << bin(s.N - lc).count("1")


def first_drop(s: Seq, *, method: str = "auto", budget: int | None = None) -> int:
    """Smallest ``k`` with ``L_k(s) < L(s)``, found by search rather than formula."""
    if s.value == 0:
        raise ValueError("the zero sequence has no descent")
    if _use_table(s, method):
        return _table_points(s)[1][0]
    meter = _Meter(resolve_budget(budget))
    lc = linear_complexity(s)
    ws = weight(s)
    for w in range(1, ws):
        if (ws + w) % 2:
            continue
        meter.charge(comb(s.N, w), f"weight-{w} scan at n={s.n}")
        if kernels.level_scan(s.value, s.n, w)[0] < lc:
            return w
    return ws


def error_witness(s: Seq, k: int, *, method: str = "auto", budget: int | None = None) -> Seq:
    """Error pattern realising ``L_k(s)``.

    Among all patterns of weight at most ``k`` that reach ``L_k(s)``, returns
    one of least weight, and among those the one with the lexicographically
    smallest support.
    """
    _check_k(s, k)
    spec = celcs(s, method=method, budget=budget)
    target = spec.lc_at(k)
    w = next(kk for kk, lc in spec.points if lc == target)
    if w == 0:
        return Seq.zero(s.n)
    if target == 0:
        return s
    meter = _Meter(resolve_budget(budget))
    meter.charge(comb(s.N, w), f"weight-{w} witness search at n={s.n}")
    pattern = kernels.first_match(s.value, s.n, w, target)
    if pattern is None:  # pragma: no cover - the spectrum guarantees a match
        raise AssertionError("spectrum and witness search disagree")
    return Seq(s.n, pattern)
