"""Closed-form second and third descent points from exponent masks.

Masks are ``S^(i) = S(2^n - L^(i))`` for the spectrum levels ``L^(0) > L^(1) >
...``.  Only positive levels have masks; the zero level never enters these
formulas.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from celcs.cube import Mask, lc_mask
from celcs.seqcore import Seq

__all__ = [
    "DescentBranch",
    "K3Flags",
    "k2_second_descent",
    "k3_flags",
    "k3_conditions",
    "k3_third_descent",
    "prop31_applies",
    "prop31_next_k",
    "spectrum_masks",
]


class DescentBranch(enum.Enum):
    """Which last-term coefficient the third-descent formula uses."""

    REDUCED = 2
    PLAIN = 4


@dataclass(frozen=True)
class K3Flags:
    """Truth values of the three side conditions and the branch they select."""

    unshared_s1: bool
    s0_s2_inside_s1: bool
    top_unshared_above: bool
    branch: DescentBranch


def _pow_w(m: Mask) -> int:
    return 1 << m.weight


def _same_n(*masks: Mask) -> None:
    if len({m.n for m in masks}) != 1:
        raise ValueError("masks must share n")


def k2_second_descent(s0: Mask, s1: Mask) -> int:
    """``2^W(S0) + 2^W(S1) - 2 * 2^W(S0 & S1)``.

    With ``S0`` empty (full complexity) this is ``2^W(S1) - 1``.
    """
    _same_n(s0, s1)
    return _pow_w(s0) + _pow_w(s1) - 2 * _pow_w(s0 & s1)


def k3_flags(s0: Mask, s1: Mask, s2: Mask) -> K3Flags:
    """Evaluate the side conditions.

    * unshared_s1: some exponent of ``S1`` lies in neither ``S0`` nor ``S2``.
    * s0_s2_inside_s1: ``S0 & S2 == S0 & S1 & S2``.
    * top_unshared_above: with ``t`` the largest exponent of ``S1`` outside
      ``S0 | S2``, ``t`` exceeds the smallest exponent found in the nonempty
      ones among ``S1 & S2`` and ``S0 & S2``, and the exponents above ``t``
      shared by ``S0`` and ``S2`` all lie in ``S1``.  Fails when both
      intersections are empty; only evaluated when the first condition holds.
    """
    _same_n(s0, s1, s2)
    unshared = s1 - (s0 | s2)
    c1 = not unshared.is_empty()
    c2 = (s0 & s2) == (s0 & s1 & s2)
    c3 = False
    if c1:
        top = unshared.max_index()
        lows = [m.min_index() for m in (s1 & s2, s0 & s2) if not m.is_empty()]
        if lows:
            above = s0.restrict_above(top) & s2.restrict_above(top)
            c3 = top > min(lows) and above <= s1
    branch = DescentBranch.REDUCED if c1 and (c2 or c3) else DescentBranch.PLAIN
    return K3Flags(c1, c2, c3, branch)


def k3_conditions(s0: Mask, s1: Mask, s2: Mask) -> DescentBranch:
    return k3_flags(s0, s1, s2).branch


def k3_third_descent(s0: Mask, s1: Mask, s2: Mask) -> int:
    """Inclusion-exclusion count of the third descent point."""
    branch = k3_conditions(s0, s1, s2)
    return (
        _pow_w(s0) + _pow_w(s1) + _pow_w(s2)
        - 2 * _pow_w(s0 & s1) - 2 * _pow_w(s0 & s2) - 2 * _pow_w(s1 & s2)
        + branch.value * _pow_w(s0 & s1 & s2)
    )


def prop31_applies(masks: list[Mask], i: int) -> bool:
    """True when ``masks[i]`` contains every earlier mask (and ``i >= 2``)."""
    if i < 2:
        return False
    union = Mask(masks[i].n, 0)
    for m in masks[:i]:
        union = union | m
    return union <= masks[i]


def prop31_next_k(si: Mask, ki: int) -> int:
    """``2^W(S_i) - k_i``, valid when ``S_i`` contains all earlier masks."""
    total = _pow_w(si)
    if not 0 < ki < total:
        raise ValueError(f"k_i must lie in (0, {total}), got {ki}")
    return total - ki


def spectrum_masks(s: Seq, *, method: str = "auto", budget: int | None = None) -> list[Mask]:
    """Masks of the positive spectrum levels of ``s``, in order."""
    from celcs.spectrum import celcs

    return [lc_mask(s.n, lc) for _, lc in celcs(s, method=method, budget=budget) if lc > 0]
