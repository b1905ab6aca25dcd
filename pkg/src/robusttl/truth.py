"""Five-valued truth domain used by the robust semantics.

A truth value is a monotonically decreasing word of four bits
b1 b2 b3 b4 (each bit at least the next one), giving the chain

    0000 < 0001 < 0011 < 0111 < 1111

Bit 1 is the strongest reading of a property, bit 4 the weakest.
"""
from __future__ import annotations

from dataclasses import dataclass

_VALID_BITS = (0b0000, 0b0001, 0b0011, 0b0111, 0b1111)


class NonMonotoneBitsError(ValueError):
    """Raised when four bits do not form a monotone truth value."""


@dataclass(frozen=True, order=True)
class TruthValue4:
    """One of the five monotone four-bit truth values."""

    bits: int

    def __post_init__(self) -> None:
        if self.bits not in _VALID_BITS:
            msg = f"non-monotone bit pattern {self.bits:04b}"
            raise NonMonotoneBitsError(msg)

    def bit(self, i: int) -> int:
        """Return bit i (1-based, bit 1 is the most significant)."""
        if not 1 <= i <= 4:
            msg = f"bit index {i} out of range 1..4"
            raise ValueError(msg)
        return (self.bits >> (4 - i)) & 1

    @property
    def bit_index(self) -> int:
        """For a value above 0000, the position of its highest set bit.

        1111 -> 1, 0111 -> 2, 0011 -> 3, 0001 -> 4.
        """
        if self.bits == 0:
            msg = "0000 has no set bit"
            raise ValueError(msg)
        return 5 - bin(self.bits).count("1")

    def __str__(self) -> str:
        return format(self.bits, "04b")

    def __repr__(self) -> str:
        return f"TruthValue4({self})"


BOTTOM = TruthValue4(0b0000)
V0001 = TruthValue4(0b0001)
V0011 = TruthValue4(0b0011)
V0111 = TruthValue4(0b0111)
TOP = TruthValue4(0b1111)

#: All five values in ascending order.
ALL_VALUES = (BOTTOM, V0001, V0011, V0111, TOP)

#: The four values above 0000 in ascending order.
POSITIVE_VALUES = (V0001, V0011, V0111, TOP)


def from_bits(b1: int, b2: int, b3: int, b4: int) -> TruthValue4:
    """Build a truth value from four bits, rejecting non-monotone input."""
    for b in (b1, b2, b3, b4):
        if b not in (0, 1):
            msg = f"bit {b!r} is not 0 or 1"
            raise NonMonotoneBitsError(msg)
    return TruthValue4((b1 << 3) | (b2 << 2) | (b3 << 1) | b4)


def from_string(text: str) -> TruthValue4:
    """Parse a truth value written as four bits, e.g. ``0111``."""
    if len(text) != 4 or any(c not in "01" for c in text):
        msg = f"expected four bits, got {text!r}"
        raise NonMonotoneBitsError(msg)
    return TruthValue4(int(text, 2))


def for_bit(i: int) -> TruthValue4:
    """The smallest value whose bit i is set: 1 -> 1111, ..., 4 -> 0001."""
    if not 1 <= i <= 4:
        msg = f"bit index {i} out of range 1..4"
        raise ValueError(msg)
    return TruthValue4((1 << (5 - i)) - 1)


def meet(a: TruthValue4, b: TruthValue4) -> TruthValue4:
    """Greatest lower bound; bitwise conjunction."""
    return TruthValue4(a.bits & b.bits)


def join(a: TruthValue4, b: TruthValue4) -> TruthValue4:
    """Least upper bound; bitwise disjunction."""
    return TruthValue4(a.bits | b.bits)


def negate(a: TruthValue4) -> TruthValue4:
    """0000 if a is 1111, else 1111."""
    return BOTTOM if a == TOP else TOP


def imply(a: TruthValue4, b: TruthValue4) -> TruthValue4:
    """1111 if a is at most b, else b."""
    return TOP if a <= b else b


def empty_min() -> TruthValue4:
    """Minimum over the empty set of truth values."""
    return TOP


def empty_max() -> TruthValue4:
    """Maximum over the empty set of truth values."""
    return BOTTOM


def min_value(values, default: TruthValue4 | None = None) -> TruthValue4:
    """Minimum of an iterable, defaulting to 1111 on empty input."""
    values = list(values)
    if not values:
        return empty_min() if default is None else default
    return min(values)


def max_value(values, default: TruthValue4 | None = None) -> TruthValue4:
    """Maximum of an iterable, defaulting to 0000 on empty input."""
    values = list(values)
    if not values:
        return empty_max() if default is None else default
    return max(values)
