"""Fixed-width bit vectors and the big-integer reference arithmetic.

Bits are indexed LSB-first: index 0 carries weight 2**0. Display order is
MSB-first, matching the written form of binary numbers. Lowercase unprefixed
hex is the interchange encoding. Everything here is immutable, so values can
be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

# Arbitrary-precision nonnegative integer: the ground truth every simulated
# circuit is checked against. Python ints already have the right semantics.
WideValue = int


class ModelIntegrityError(RuntimeError):
    """A circuit-model invariant that should be unreachable was violated."""


@dataclass(frozen=True)
class BitVector:
    """A nonnegative integer pinned to an explicit bit width."""

    width: int
    value: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"width must be a positive integer, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value!r} does not fit in {self.width} bits")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        """Build from an LSB-first sequence of 0/1 values."""
        seq = tuple(bits)
        if not seq:
            raise ValueError("bit sequence must be non-empty")
        value = 0
        for index, bit in enumerate(seq):
            if bit not in (0, 1):
                raise ValueError(f"bit at index {index} must be 0 or 1, got {bit!r}")
            value |= bit << index
        return cls(len(seq), value)

    @classmethod
    def from_hex(cls, text: str, width: int) -> BitVector:
        """Parse unprefixed hex text into a width-checked vector."""
        try:
            value = int(text, 16)
        except (ValueError, TypeError):
            raise ValueError(f"malformed hex string: {text!r}") from None
        if value < 0:
            raise ValueError(f"hex value must be nonnegative, got {text!r}")
        return cls(width, value)

    @property
    def bits(self) -> tuple[int, ...]:
        """The bit sequence, LSB first."""
        return tuple((self.value >> j) & 1 for j in range(self.width))

    def bit(self, index: int) -> int:
        if not 0 <= index < self.width:
            raise ValueError(f"bit index {index} out of range for width {self.width}")
        return (self.value >> index) & 1

    def to_hex(self) -> str:
        """Lowercase hex, zero-padded to the width's nibble count, no prefix."""
        return format(self.value, "0{}x".format((self.width + 3) // 4))

    def to_binary(self) -> str:
        """MSB-first digit string, the display convention."""
        return format(self.value, "0{}b".format(self.width))

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return self.to_binary()


def to_value(vector: BitVector) -> WideValue:
    """Positional value of the vector: sum of bit_j * 2**j."""
    return vector.value


def oracle_add(a: WideValue, b: WideValue) -> WideValue:
    """Reference addition on arbitrary-precision integers."""
    if a < 0 or b < 0:
        raise ValueError("oracle operands must be nonnegative")
    return a + b


def oracle_mul(a: WideValue, b: WideValue) -> WideValue:
    """Reference multiplication on arbitrary-precision integers."""
    if a < 0 or b < 0:
        raise ValueError("oracle operands must be nonnegative")
    return a * b


def lowest_zero_index(value: int) -> int:
    """Index of the least-significant 0 bit of a nonnegative integer.

    This is the combinational function of a trailing-ones detector: the
    returned index is the unique position j such that bits 0..j-1 are all 1
    and bit j is 0.
    """
    if value < 0:
        raise ValueError("value must be nonnegative")
    return (value ^ (value + 1)).bit_length() - 1
