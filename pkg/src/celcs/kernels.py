"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``CELCS_PURE_PYTHON=1`` to force the fallback.  Periods longer than 64
bits always use the Python code since the compiled loops work on one
machine word.
"""
from __future__ import annotations

import os

from celcs import _pykernels

__all__ = ["BACKEND", "games_chan", "level_scan", "first_match", "compiled_available"]

_compiled = None
if not os.environ.get("CELCS_PURE_PYTHON"):
    try:
        from celcs import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_WORD_N = 6


def compiled_available() -> bool:
    return _compiled is not None


def _pick(n: int):
    if _compiled is not None and n <= _WORD_N:
        return _compiled
    return _pykernels


def games_chan(value: int, n: int) -> int:
    return _pick(n).games_chan(value, n)


def level_scan(value: int, n: int, weight: int) -> tuple[int, int]:
    return _pick(n).level_scan(value, n, weight)


def first_match(value: int, n: int, weight: int, target_lc: int,
                target_weight: int = -1, after: int | None = None) -> int | None:
    return _pick(n).first_match(value, n, weight, target_lc, target_weight, after)
