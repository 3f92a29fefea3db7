"""One period of a 2^n-periodic binary sequence, and its linear complexity.

A period is stored packed into a Python int: bit ``i`` of :attr:`Seq.value`
holds ``s_i``.  The text form writes ``s_0`` first (leftmost), grouped into
nibbles, e.g. ``"1101 1001 1000 0000"``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from celcs import kernels
from celcs.errors import SequenceFormatError

__all__ = [
    "Seq",
    "parse_sequence",
    "format_sequence",
    "weight",
    "add",
    "phi",
    "linear_complexity",
    "lc_poly_oracle",
]

_HEX_DIGITS = "0123456789abcdefABCDEF"


@dataclass(frozen=True)
class Seq:
    """One period ``s_0 .. s_{2^n - 1}`` of a binary sequence."""

    n: int
    value: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"period exponent must be non-negative, got {self.n}")
        if not 0 <= self.value < (1 << (1 << self.n)):
            raise ValueError(f"value does not fit in a period of 2^{self.n} bits")

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.N))

    def __len__(self) -> int:
        return self.N

    def __getitem__(self, i: int) -> int:
        if not -self.N <= i < self.N:
            raise IndexError(i)
        return (self.value >> (i % self.N)) & 1

    def __iter__(self):
        return iter(self.bits)

    def __xor__(self, other: Seq) -> Seq:
        return add(self, other)

    __add__ = __xor__

    def __str__(self) -> str:
        return format_sequence(self)

    def support(self) -> tuple[int, ...]:
        """Positions of the nonzero elements, ascending."""
        v, out, i = self.value, [], 0
        while v:
            if v & 1:
                out.append(i)
            v >>= 1
            i += 1
        return tuple(out)

    def left(self) -> Seq:
        if self.n == 0:
            raise ValueError("a period of length 1 has no halves")
        half = self.N >> 1
        return Seq(self.n - 1, self.value & ((1 << half) - 1))

    def right(self) -> Seq:
        if self.n == 0:
            raise ValueError("a period of length 1 has no halves")
        return Seq(self.n - 1, self.value >> (self.N >> 1))

    @classmethod
    def zero(cls, n: int) -> Seq:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> Seq:
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> Seq:
        n = _exponent_of(len(bits))
        if n is None:
            raise SequenceFormatError(f"length {len(bits)} is not a power of two")
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise SequenceFormatError(f"bit {i} is {b!r}, expected 0 or 1")
            value |= b << i
        return cls(n, value)

    @classmethod
    def from_support(cls, n: int, positions: Iterable[int]) -> Seq:
        """Sequence with ones exactly at ``positions`` (duplicates cancel)."""
        N = 1 << n
        value = 0
        for p in positions:
            if not 0 <= p < N:
                raise ValueError(f"position {p} outside period {N}")
            value ^= 1 << p
        return cls(n, value)


def _exponent_of(length: int) -> int | None:
    if length <= 0 or length & (length - 1):
        return None
    return length.bit_length() - 1


def parse_sequence(text: str, n: int | None = None) -> Seq:
    """Parse the binary or ``0x``-prefixed hex text form of one period.

    Binary text may contain spaces; the leftmost character is ``s_0``.  Each
    hex digit expands to four bits, most significant bit first, so ``0xD980``
    equals ``"1101 1001 1000 0000"``.

    Raises:
        SequenceFormatError: on an illegal character, a length that is not a
            power of two, or a length that disagrees with ``n``.
    """
    raw = text.strip()
    if raw[:2].lower() == "0x":
        digits = re.sub(r"[\s_]", "", raw[2:])
        if not digits:
            raise SequenceFormatError("empty hex sequence")
        bad = [c for c in digits if c not in _HEX_DIGITS]
        if bad:
            raise SequenceFormatError(f"illegal hex character {bad[0]!r}")
        chars = "".join(format(int(c, 16), "04b") for c in digits)
        if n is not None and len(chars) != (1 << n):
            raise SequenceFormatError(
                f"hex length mismatch: {len(digits)} digits give {len(chars)} bits, "
                f"expected 2^{n} = {1 << n}"
            )
    else:
        chars = re.sub(r"\s", "", raw)
        bad = [c for c in chars if c not in "01"]
        if bad:
            raise SequenceFormatError(f"illegal character {bad[0]!r} in binary sequence")
    length = len(chars)
    exp = _exponent_of(length)
    if exp is None:
        raise SequenceFormatError(f"length {length} is not a power of two")
    if n is not None and exp != n:
        raise SequenceFormatError(f"length {length} does not match period 2^{n}")
    value = 0
    for i, c in enumerate(chars):
        if c == "1":
            value |= 1 << i
    return Seq(exp, value)


def format_sequence(s: Seq) -> str:
    """Canonical text form: bits ``s_0`` first, space separated in nibbles."""
    text = "".join("1" if (s.value >> i) & 1 else "0" for i in range(s.N))
    return " ".join(text[i:i + 4] for i in range(0, len(text), 4))


def weight(s: Seq) -> int:
    """Hamming weight of one period."""
    return s.value.bit_count() if hasattr(int, "bit_count") else bin(s.value).count("1")


def add(a: Seq, b: Seq) -> Seq:
    """Elementwise sum over GF(2)."""
    if a.n != b.n:
        raise ValueError(f"period mismatch: 2^{a.n} vs 2^{b.n}")
    return Seq(a.n, a.value ^ b.value)


def phi(s: Seq) -> Seq:
    """Fold a period onto its first half: element ``i`` is ``s_i + s_{i + 2^(n-1)}``."""
    if s.n == 0:
        raise ValueError("phi needs n >= 1")
    half = s.N >> 1
    return Seq(s.n - 1, (s.value & ((1 << half) - 1)) ^ (s.value >> half))


def linear_complexity(s: Seq) -> int:
    """Linear complexity of ``s`` by the Games-Chan halving recursion."""
    return kernels.games_chan(s.value, s.n)


def lc_poly_oracle(s: Seq) -> int:
    """Linear complexity from the (x+1)-adic valuation of the period polynomial.

    Over GF(2), ``x^N - 1 = (x + 1)^N`` for ``N = 2^n``, so the complexity is
    ``N - v`` where ``(x + 1)^v`` is the largest power dividing
    ``s_0 + s_1 x + ... + s_{N-1} x^{N-1}``.  The valuation is found by
    repeated synthetic division at the root 1 on an explicit coefficient list,
    sharing no code with :func:`linear_complexity`.
    """
    coeffs = [(s.value >> i) & 1 for i in range(s.N)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return 0
    v = 0
    while True:
        # Horner at x = 1 from the top coefficient down; the running values
        # are the quotient coefficients and the final one is the remainder.
        quotient = [0] * (len(coeffs) - 1)
        acc = 0
        for k in range(len(coeffs) - 1, 0, -1):
            acc ^= coeffs[k]
            quotient[k - 1] = acc
        if acc ^ coeffs[0]:
            break
        coeffs = quotient
        v += 1
    return s.N - v
