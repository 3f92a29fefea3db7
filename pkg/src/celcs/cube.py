"""Cubes, exponent masks, and the two cube decompositions.

An m-cube is ``2^m`` nonzero positions built from a base by m dimensions.
Dimension ``j`` pairs every vertex built so far with a partner at an offset
whose 2-adic valuation is ``i_j`` (the edge exponent), with
``i_1 < i_2 < ... < i_m``.  In the common case one offset serves all
vertices of a dimension (a parallelepiped); the recursive definition also
allows the two halves of a cube to be different translates, so a dimension
may carry one offset per vertex.  ``{0, 1, 3, 6}`` at n = 4 is such a cube:
``{0, 1}`` and ``{3, 6}`` are 1-cubes of edge 2^0 paired at distance 2^1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence, Union

from celcs import kernels
from celcs.errors import CelcsError, SequenceFormatError
from celcs.seqcore import Seq

__all__ = [
    "Mask",
    "lc_mask",
    "mask_stats",
    "mask_restrict_above",
    "mask_intersect",
    "mask_union",
    "Cube",
    "cube_lc",
    "cube_to_sequence",
    "recognise_cube",
    "parse_cube",
    "CubeDecomposition",
    "DecompositionError",
    "standard_cube",
    "standard_decomposition",
    "kerror_decomposition",
    "kerror_decomposition_partial",
]

Offset = Union[int, tuple[int, ...]]


def _valuation(x: int) -> int:
    return (x & -x).bit_length() - 1


# ---------------------------------------------------------------- masks


@dataclass(frozen=True)
class Mask:
    """Set of exponents ``S(2^n - L)``, stored as a bitset over ``0..n-1``."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"mask bits {self.bits:#x} exceed n={self.n}")

    @classmethod
    def from_lc(cls, n: int, lc: int) -> Mask:
        return lc_mask(n, lc)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> Mask:
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"exponent {i} outside 0..{n - 1}")
            bits |= 1 << i
        return cls(n, bits)

    @classmethod
    def parse(cls, text: str, n: int) -> Mask:
        """Parse ``"0,1,3"`` (braces optional); an empty string is the empty mask."""
        body = text.strip().strip("{}").strip()
        if not body:
            return cls(n, 0)
        try:
            idx = [int(t) for t in re.split(r"[,\s]+", body) if t]
        except ValueError:
            raise SequenceFormatError(f"bad mask text {text!r}") from None
        try:
            return cls.from_indices(n, idx)
        except ValueError as exc:
            raise SequenceFormatError(str(exc)) from None

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.bits >> i) & 1)

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    @property
    def lc(self) -> int:
        """The complexity this mask encodes."""
        return (1 << self.n) - self.bits

    def is_empty(self) -> bool:
        return self.bits == 0

    def min_index(self) -> int:
        if not self.bits:
            raise ValueError("min index of an empty mask")
        return _valuation(self.bits)

    def max_index(self) -> int:
        if not self.bits:
            raise ValueError("max index of an empty mask")
        return self.bits.bit_length() - 1

    def _same(self, other: Mask) -> None:
        if self.n != other.n:
            raise ValueError(f"mask period mismatch: n={self.n} vs n={other.n}")

    def __and__(self, other: Mask) -> Mask:
        self._same(other)
        return Mask(self.n, self.bits & other.bits)

    def __or__(self, other: Mask) -> Mask:
        self._same(other)
        return Mask(self.n, self.bits | other.bits)

    def __sub__(self, other: Mask) -> Mask:
        self._same(other)
        return Mask(self.n, self.bits & ~other.bits)

    def __le__(self, other: Mask) -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: Mask) -> bool:
        return other <= self

    def restrict_above(self, i: int) -> Mask:
        """Exponents strictly greater than ``i``."""
        return Mask(self.n, self.bits & ~((1 << (i + 1)) - 1) if i >= 0 else self.bits)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.indices)) + "}"

    def to_json(self) -> dict:
        return {"n": self.n, "indices": list(self.indices), "L": self.lc}


def lc_mask(n: int, lc: int) -> Mask:
    """``S(2^n - L)`` for ``0 < L <= 2^n``; zero complexity has no mask."""
    if not 0 < lc <= (1 << n):
        raise ValueError(f"L must lie in (0, 2^{n}], got {lc}")
    return Mask(n, (1 << n) - lc)


def mask_stats(m: Mask) -> tuple[int, int, int]:
    """``(weight, min_index, max_index)``; raises on the empty mask."""
    return m.weight, m.min_index(), m.max_index()


def mask_restrict_above(m: Mask, i: int) -> Mask:
    return m.restrict_above(i)


def mask_intersect(a: Mask, b: Mask) -> Mask:
    return a & b


def mask_union(a: Mask, b: Mask) -> Mask:
    return a | b


# ---------------------------------------------------------------- cubes


def _build(n: int, base: int, offsets: Sequence[Offset]) -> list[int]:
    N = 1 << n
    verts = [base]
    for dim in offsets:
        per = (dim,) * len(verts) if isinstance(dim, int) else dim
        verts = verts + [(v + o) % N for v, o in zip(verts, per)]
    return verts


@dataclass(frozen=True, eq=False)
class Cube:
    """An m-cube of period ``2^n``.

    ``offsets[j]`` is one int used by every vertex, or a tuple with one
    offset per vertex present before dimension ``j`` is added.  Cubes compare
    equal when they cover the same positions.
    """

    n: int
    base: int
    offsets: tuple[Offset, ...] = ()

    def __post_init__(self) -> None:
        N = 1 << self.n
        if not 0 <= self.base < N:
            raise ValueError(f"base {self.base} outside period {N}")
        norm: list[Offset] = []
        prev = -1
        for j, dim in enumerate(self.offsets):
            per = (dim,) if isinstance(dim, int) else tuple(dim)
            if not isinstance(dim, int) and len(per) != 1 << j:
                raise ValueError(f"dimension {j} needs {1 << j} per-vertex offsets")
            if any(not 0 < o < N for o in per):
                raise ValueError(f"offsets of dimension {j} must lie in (0, {N})")
            vals = {_valuation(o) for o in per}
            if len(vals) != 1:
                raise ValueError(f"offsets of dimension {j} have mixed edge exponents")
            e = vals.pop()
            if e <= prev:
                raise ValueError("edge exponents must be strictly increasing")
            prev = e
            norm.append(per[0] if len(set(per)) == 1 else per)
        object.__setattr__(self, "offsets", tuple(norm))
        if len(set(_build(self.n, self.base, self.offsets))) != 1 << len(self.offsets):
            raise ValueError("cube positions collide")

    @property
    def m(self) -> int:
        return len(self.offsets)

    @property
    def edges(self) -> tuple[int, ...]:
        """Edge exponents ``i_1 < ... < i_m``."""
        return tuple(
            _valuation(d if isinstance(d, int) else d[0]) for d in self.offsets
        )

    def vertices(self) -> list[int]:
        """Positions in build order (base first)."""
        return _build(self.n, self.base, self.offsets)

    def positions(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices()))

    def lc(self) -> int:
        return cube_lc(self)

    def mask(self) -> Mask:
        return Mask.from_indices(self.n, self.edges)

    def to_sequence(self) -> Seq:
        return cube_to_sequence(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cube):
            return NotImplemented
        return self.n == other.n and self.positions() == other.positions()

    def __hash__(self) -> int:
        return hash((self.n, self.positions()))

    def __str__(self) -> str:
        parts = []
        for d, e in zip(self.offsets, self.edges):
            per = (d,) if isinstance(d, int) else d
            parts.append(f"2^{e}:" + "/".join(str(o >> e) for o in per))
        return f"base={self.base}; edges=" + ",".join(parts)

    def __repr__(self) -> str:
        return f"Cube(n={self.n}, {self})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "base": self.base,
            "offsets": [d if isinstance(d, int) else list(d) for d in self.offsets],
        }

    @classmethod
    def from_json(cls, data: dict) -> Cube:
        offs = tuple(d if isinstance(d, int) else tuple(d) for d in data["offsets"])
        return cls(int(data["n"]), int(data["base"]), offs)

    @classmethod
    def from_positions(cls, n: int, positions: Iterable[int]) -> Cube:
        """Canonical cube on exactly these positions; ``ValueError`` if they are not one."""
        cube = recognise_cube(n, positions)
        if cube is None:
            raise ValueError("positions do not form a cube")
        return cube


def cube_lc(c: Cube) -> int:
    """``2^n`` minus the sum of ``2^i`` over the edge exponents."""
    return (1 << c.n) - sum(1 << e for e in c.edges)


def cube_to_sequence(c: Cube) -> Seq:
    return Seq.from_support(c.n, c.vertices())


def parse_cube(text: str, n: int) -> Cube:
    """Parse ``"base=1; edges=2^1:5,2^2:1"``; per-vertex multipliers use ``/``."""
    m = re.fullmatch(r"\s*base\s*=\s*(\d+)\s*(?:;\s*edges\s*=\s*(.*?))?\s*", text)
    if not m:
        raise SequenceFormatError(f"bad cube text {text!r}")
    base = int(m.group(1))
    offsets: list[Offset] = []
    body = (m.group(2) or "").strip()
    for item in filter(None, (t.strip() for t in body.split(","))):
        em = re.fullmatch(r"2\^(\d+)\s*:\s*([\d/ ]+)", item)
        if not em:
            raise SequenceFormatError(f"bad edge {item!r}")
        e = int(em.group(1))
        mults = [int(x) for x in em.group(2).replace(" ", "").split("/") if x]
        if not mults or any(x % 2 == 0 for x in mults):
            raise SequenceFormatError(f"edge {item!r} needs odd multipliers")
        per = tuple(x << e for x in mults)
        offsets.append(per[0] if len(per) == 1 else per)
    try:
        return Cube(n, base, tuple(offsets))
    except ValueError as exc:
        raise SequenceFormatError(str(exc)) from None


def _recognise(n: int, pts: list[int]) -> tuple[int, tuple[Offset, ...]] | None:
    N = 1 << n
    pts = sorted(pts)
    b = pts[0]
    if len(pts) == 1:
        return b, ()
    size = len(pts)
    if size & (size - 1):
        return None
    top = next((i for i in range(n + 1) if len({p % (1 << i) for p in pts}) == size), None)
    if top is None or top == 0:
        return None
    edge = top - 1
    groups: dict[int, list[int]] = {}
    for p in pts:
        groups.setdefault(p % (1 << edge), []).append(p)
    if any(len(g) != 2 for g in groups.values()):
        return None
    x, y = groups[b % (1 << edge)]
    o = (y - x) % N if x == b else (x - y) % N
    if o == N // 2:
        sub = _recognise(n - 1, sorted({p % (N // 2) for p in pts}))
        if sub is None:
            return None
        return b, sub[1] + (o,)
    lower, partner = [], {}
    for x, y in groups.values():
        if (y - x) % N == o:
            q, r = x, y
        elif (x - y) % N == o:
            q, r = y, x
        else:
            q, r = min(x, y), max(x, y)
        lower.append(q)
        partner[q] = r
    sub = _recognise(n, lower)
    if sub is None or sub[0] != b:
        return None
    order = _build(n, sub[0], sub[1])
    per = tuple((partner[v] - v) % N for v in order)
    if len({_valuation(o) for o in per}) != 1:
        return None
    return b, sub[1] + (per[0] if len(set(per)) == 1 else per,)


def recognise_cube(n: int, positions: Iterable[int]) -> Cube | None:
    """Canonical cube covering exactly ``positions``, or ``None``.

    The base is the smallest position.  The top edge exponent is found as the
    largest ``i`` at which residues mod ``2^i`` still collide; positions are
    paired within residue classes and the lower half is recognised
    recursively.
    """
    pts = sorted(set(positions))
    if not pts:
        return None
    found = _recognise(n, pts)
    if found is None:
        return None
    try:
        cube = Cube(n, found[0], found[1])
    except ValueError:
        return None
    return cube if cube.positions() == tuple(pts) else None


# ---------------------------------------------------------------- decompositions


class DecompositionError(CelcsError):
    """No cube realises a level that the spectrum says is reachable."""


@dataclass(frozen=True)
class CubeDecomposition:
    """Cubes of strictly decreasing complexity, plus an optional remainder."""

    source: Seq
    cubes: tuple[Cube, ...]
    remainder: Seq | None = None

    def lcs(self) -> tuple[int, ...]:
        return tuple(c.lc() for c in self.cubes)

    def cumulative_weights(self) -> tuple[int, ...]:
        out, acc = [], 0
        for c in self.cubes:
            acc ^= c.to_sequence().value
            out.append(bin(acc).count("1"))
        return tuple(out)

    def total(self) -> Seq:
        acc = 0 if self.remainder is None else self.remainder.value
        for c in self.cubes:
            acc ^= c.to_sequence().value
        return Seq(self.source.n, acc)

    def to_json(self) -> dict:
        return {
            "source": str(self.source),
            "cubes": [
                {**c.to_json(), "text": str(c), "sequence": str(c.to_sequence()), "L": c.lc()}
                for c in self.cubes
            ],
            "cumulative_weights": list(self.cumulative_weights()),
            "remainder": None if self.remainder is None else str(self.remainder),
        }


def _standard_positions(value: int, n: int) -> list[int]:
    # downward Games-Chan pass, remembering the sequence and whether halves matched
    trace = []
    cur, t = value, n
    while t > 0:
        half = 1 << (t - 1)
        left, right = cur & ((1 << half) - 1), cur >> half
        trace.append((half, cur, left == right))
        cur = left if left == right else left ^ right
        t -= 1
    pts = [0]
    for half, upper, equal in reversed(trace):
        if equal:
            pts = pts + [p + half for p in pts]
        else:
            pts = [p if (upper >> p) & 1 else p + half for p in pts]
    return sorted(pts)


def standard_cube(s: Seq) -> Cube:
    """First cube peeled off by the standard decomposition; it has complexity ``L(s)``."""
    if s.value == 0:
        raise ValueError("the zero sequence contains no cube")
    cube = recognise_cube(s.n, _standard_positions(s.value, s.n))
    if cube is None:  # pragma: no cover - the peeling always yields a cube
        raise DecompositionError(f"standard peeling of {s} did not give a cube")
    return cube


def standard_decomposition(s: Seq) -> CubeDecomposition:
    """Repeatedly peel the Games-Chan cube; complexities strictly decrease."""
    cubes = []
    cur = s
    while cur.value:
        c = standard_cube(cur)
        cubes.append(c)
        cur = Seq(s.n, cur.value ^ c.to_sequence().value)
    return CubeDecomposition(s, tuple(cubes))


def _cube_at_distance(cur: Seq, k: int, target_lc: int, meter) -> tuple[Cube, Seq]:
    """Lex-first weight-``k`` error ``e`` such that ``cur + e`` is a cube of
    complexity ``target_lc``; returns ``(cube, e)``."""
    size = 1 << bin(cur.N - target_lc).count("1")
    after = None
    meter.charge(comb(cur.N, k), f"cube search at n={cur.n}, weight {k}")
    while True:
        e = kernels.first_match(cur.value, cur.n, k, target_lc, size, after)
        if e is None:
            raise DecompositionError(
                f"no weight-{k} change turns {cur} into a cube of complexity {target_lc}"
            )
        x = cur.value ^ e
        cube = recognise_cube(cur.n, [p for p in range(cur.N) if (x >> p) & 1])
        if cube is not None:
            return cube, Seq(cur.n, e)
        after = e


def _meter(budget: int | None):
    from celcs.spectrum import _Meter, resolve_budget

    return _Meter(resolve_budget(budget))


def _backward(s: Seq, meter, method: str, budget: int | None) -> list[Cube]:
    from celcs.spectrum import celcs

    cubes: list[Cube] = []
    cur = s
    while cur.value:
        points = celcs(cur, method=method, budget=budget).points
        k, target = points[-2]
        cube, cur = _cube_at_distance(cur, k, target, meter)
        cubes.insert(0, cube)
    return cubes


def kerror_decomposition(s: Seq, *, method: str = "auto",
                         budget: int | None = None) -> CubeDecomposition:
    """Cubes whose complexities are the spectrum levels and whose running
    sums have the descent points as weights.

    Works backwards: the last nonzero level ``L^(j)`` is reached by a
    least-weight error ``e`` with ``s + e`` a cube ``c^(j)``; the earlier
    cubes decompose ``e`` the same way.  Among qualifying errors the
    lexicographically first support is used.

    Raises:
        CapacityError: the searches exceed the evaluation budget.
        DecompositionError: no qualifying cube exists at some step.
    """
    return CubeDecomposition(s, tuple(_backward(s, _meter(budget), method, budget)))


def kerror_decomposition_partial(s: Seq, m: int, *, method: str = "auto",
                                 budget: int | None = None) -> CubeDecomposition:
    """``m + 1`` cubes for levels ``L^(0) .. L^(m)`` plus a remainder.

    ``e_m`` is the witness for ``k^(m)``; ``c^(m)`` is the first standard cube
    of ``s + e_m`` and the remainder is what is left of ``s + e_m``, so its
    complexity is below ``L^(m)``.  The earlier cubes decompose ``e_m``.
    """
    from celcs.spectrum import celcs, error_witness

    spec = celcs(s, method=method, budget=budget)
    nonzero = [i for i, (_, lc) in enumerate(spec.points) if lc > 0]
    if not nonzero or not 0 <= m <= nonzero[-1]:
        raise ValueError(f"m must lie in [0, {nonzero[-1] if nonzero else -1}]")
    e = error_witness(s, spec.k(m), method=method, budget=budget)
    near = s ^ e
    top = standard_cube(near)
    rest = Seq(s.n, near.value ^ top.to_sequence().value)
    head = _backward(e, _meter(budget), method, budget)
    return CubeDecomposition(s, tuple(head) + (top,), rest)
