"""Width normalization and two's-complement helpers."""

from __future__ import annotations

MASK32 = 0xFFFFFFFF


def u32(value: int) -> int:
    """Truncate to the low 32 bits."""
    return value & MASK32


def u5(value: int) -> int:
    """Truncate to the low 5 bits (register index or shift amount)."""
    return value & 0x1F


def sign_extend(value: int, width: int) -> int:
    """Sign-extend the low `width` bits of `value` into a 32-bit word."""
    value &= (1 << width) - 1
    if value & (1 << (width - 1)):
        value -= 1 << width
    return value & MASK32


def to_signed(word: int) -> int:
    """Read a 32-bit word as a two's-complement integer."""
    return word - 0x1_0000_0000 if word & 0x8000_0000 else word
