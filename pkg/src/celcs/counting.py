"""Exact counts of sequences with a prescribed pair of descents.

Every count is a power of two, so results carry only the exponent.  Two
families are covered:

* three-error: ``L(s) = 2^n``, first drop at k = 1 to ``2^n - (2^i + 2^j)``,
  second drop at k = 3 to a target ``L``;
* four-error: ``L(s) = 2^n - 2^i0``, first drop at k = 2 to
  ``2^n - (2^i + 2^j)``, second drop at k = 4 to a target ``L``.

A target of ``L = 0`` is passed as ``target=None`` (or the integer 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

from celcs.cube import Mask, lc_mask
from celcs.errors import CelcsError

__all__ = [
    "CountingError",
    "CountQuery",
    "CountResult",
    "rueppel_count",
    "second_descent_possible",
    "allowed_final_L",
    "is_allowed_final",
    "count_t43",
    "count_t53",
    "format_power",
]

THREE = "3err"
FOUR = "4err"


class CountingError(CelcsError, ValueError):
    """A query violates a precondition, or the formula lost exactness."""


def format_power(exponent: int) -> str:
    """``"2^e"``, with the decimal value appended while it fits in 63 bits."""
    if exponent <= 62:
        return f"2^{exponent} = {1 << exponent}"
    return f"2^{exponent}"


@dataclass(frozen=True)
class CountResult:
    """A count ``2^exponent`` and the side parameters the formula used."""

    exponent: int
    branch: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise CountingError(f"negative exponent {self.exponent}: division was not exact")

    @property
    def value(self) -> int:
        return 1 << self.exponent

    def __str__(self) -> str:
        return format_power(self.exponent)

    def to_json(self) -> dict:
        return {"exponent": self.exponent, "branch": dict(self.branch)}


Target = Union[Mask, int, None]


def _target_mask(n: int, target: Target) -> Mask | None:
    if target is None:
        return None
    if isinstance(target, Mask):
        if target.n != n:
            raise CountingError(f"target mask has n={target.n}, query has n={n}")
        return target
    if target == 0:
        return None
    try:
        return lc_mask(n, int(target))
    except ValueError as exc:
        raise CountingError(str(exc)) from None


@dataclass(frozen=True)
class CountQuery:
    """Parameters of a count: ``n``, first-drop exponents ``i < j``, the target, and ``i0``."""

    n: int
    i: int
    j: int
    target: Mask | None = None
    i0: int | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.i < self.j < self.n:
            raise CountingError(f"need 0 <= i < j < n, got i={self.i}, j={self.j}, n={self.n}")
        if self.i0 is not None and not 0 <= self.i0 < self.n:
            raise CountingError(f"i0={self.i0} outside 0..{self.n - 1}")
        object.__setattr__(self, "target", _target_mask(self.n, self.target))

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def lc(self) -> int:
        """Target complexity (0 when no mask)."""
        return 0 if self.target is None else self.target.lc

    def to_json(self) -> dict:
        out = {"n": self.n, "i": self.i, "j": self.j, "L": self.lc}
        if self.i0 is not None:
            out["i0"] = self.i0
        return out


def rueppel_count(n: int, lc: int) -> CountResult:
    """Number of period-``2^n`` sequences with complexity ``lc``."""
    if not 0 <= lc <= (1 << n):
        raise CountingError(f"L must lie in [0, 2^{n}], got {lc}")
    return CountResult(0 if lc == 0 else lc - 1)


def _i0_order_ok(i0: int, i: int, j: int) -> bool:
    return i0 < i or i < i0 < j


def second_descent_possible(kind: str, n: int, drop_lc: int, i0: int | None = None) -> bool:
    """Can the later of the two drops happen at all, given the first drop level?

    ``3err``: the level after one error must have a weight-2 mask.
    ``4err``: the level after two errors must have a weight-2 mask
    ``{i, j}`` other than ``{0, 1}``, and ``i0`` must satisfy
    ``i0 < i`` or ``i < i0 < j``.
    """
    N = 1 << n
    if not 0 < drop_lc < N:
        return False
    m = lc_mask(n, drop_lc)
    if m.weight != 2:
        return False
    if kind == THREE:
        return True
    if kind != FOUR:
        raise ValueError(f"kind must be {THREE!r} or {FOUR!r}")
    if i0 is None:
        raise ValueError("4err needs i0")
    i, j = m.indices
    return (i, j) != (0, 1) and _i0_order_ok(i0, i, j)


def is_allowed_final(kind: str, n: int, i: int, j: int, target: Target,
                     i0: int | None = None) -> bool:
    """Whether ``target`` can be the level reached at the second drop."""
    if kind not in (THREE, FOUR):
        raise ValueError(f"kind must be {THREE!r} or {FOUR!r}")
    if kind == FOUR:
        if i0 is None:
            raise ValueError("4err needs i0")
        if (i, j) == (0, 1) or not _i0_order_ok(i0, i, j):
            return False
    m = _target_mask(n, target)
    if m is None:
        return True
    if m.lc >= (1 << n) - ((1 << i) + (1 << j)):
        return False
    idx = m.indices
    if kind == THREE:
        if len(idx) >= 3:
            return True
        return len(idx) == 2 and idx[0] not in (i, j) and idx[1] != j
    if len(idx) >= 4:
        return True
    if len(idx) == 3:
        return set(idx) != {i, j, i0} and set(idx) != {0, 1, 2}
    return len(idx) == 2 and idx[1] != j and idx[0] not in (i, j, i0)


def allowed_final_L(kind: str, n: int, i: int, j: int,
                    i0: int | None = None) -> Callable[[Target], bool]:
    """Predicate on candidate targets for fixed ``(kind, n, i0, i, j)``."""
    return lambda target: is_allowed_final(kind, n, i, j, target, i0)


def _below(N: int, a: int, b: int, lc: int) -> bool:
    """``2^n - (2^a + 2^b) < L``."""
    return N - ((1 << a) + (1 << b)) < lc


def count_t43(q: CountQuery) -> CountResult:
    """Number of full-complexity sequences with drops at k = 1 and k = 3.

    Exponent ``3n - j - i - 3 + (L - 1) - eps - (j - i0) - 3(n - i_m - 1)``
    where ``i_m`` is the largest target exponent and ``i0 <= j`` is the
    least exponent with ``2^n - (2^i0 + 2^j) < L`` (``j`` when none is).
    """
    if q.i0 is not None:
        raise CountingError("the three-error count takes no i0")
    if not is_allowed_final(THREE, q.n, q.i, q.j, q.target):
        raise CountingError(f"target L={q.lc} is not reachable for i={q.i}, j={q.j}")
    n, i, j, N = q.n, q.i, q.j, q.N
    head = 3 * n - j - i - 3
    if q.target is None:
        return CountResult(head, {"i0_eff": None, "gamma": None, "delta": None, "epsilon": None})
    lc = q.lc
    top = q.target.max_index()
    i0 = next((c for c in range(j + 1) if _below(N, c, j, lc)), j)
    if j == top or N - ((1 << j) + (1 << top)) > lc:
        eps = 0
    elif _below(N, i, top, lc):
        eps = 2
    else:
        eps = 1
    if eps > 0 and j - i0 > 0:
        raise CountingError(f"epsilon={eps} and j-i0={j - i0} are both positive")
    exponent = head + lc - 1 - eps - (j - i0) - 3 * (n - top - 1)
    return CountResult(exponent, {"i0_eff": i0, "gamma": None, "delta": None, "epsilon": eps})


def count_t53(q: CountQuery) -> CountResult:
    """Number of sequences with ``L = 2^n - 2^i0`` and drops at k = 2 and k = 4.

    Exponent ``4n - j - i - 4 - i0 - g + (L - 1) - delta - eps - 4(n - i_m - 1)``
    with ``g = 1`` when ``i0 > i``.
    """
    if q.i0 is None:
        raise CountingError("the four-error count needs i0")
    if not is_allowed_final(FOUR, q.n, q.i, q.j, q.target, q.i0):
        raise CountingError(
            f"target L={q.lc} is not reachable for i0={q.i0}, i={q.i}, j={q.j}"
        )
    n, i, j, i0, N = q.n, q.i, q.j, q.i0, q.N
    g = 1 if i0 > i else 0
    head = 4 * n - j - i - 4 - i0 - g
    if q.target is None:
        return CountResult(head, {"i0_eff": i0, "gamma": 1 << g, "delta": None, "epsilon": None})
    lc = q.lc
    top = q.target.max_index()
    if _below(N, i0, j, lc):
        delta = 2
    elif N - ((1 << i) + (1 << i0) + (1 << j)) < lc:
        delta = 1
    else:
        delta = 0
    if j == top or N - ((1 << j) + (1 << top)) > lc:
        eps = 0
    else:
        eps = 1 + _below(N, i, top, lc) + _below(N, i0, top, lc)
    if delta > 0 and eps > 0:
        raise CountingError(f"delta={delta} and epsilon={eps} are both positive")
    exponent = head + lc - 1 - delta - eps - 4 * (n - top - 1)
    return CountResult(exponent, {"i0_eff": i0, "gamma": 1 << g, "delta": delta, "epsilon": eps})
