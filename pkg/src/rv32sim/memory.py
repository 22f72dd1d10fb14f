"""Byte-addressable memory over the full 2**32 space, with word access.

Storage is sparse: 4 KiB pages are allocated on first nonzero write and
dropped again the moment they become all-zero. An untouched region is
therefore indistinguishable from an explicitly zeroed one, and two
memories compare equal exactly when every address holds the same byte.

Multi-byte accessors are little-endian and wrap addresses modulo 2**32,
so a word read at 0xFFFFFFFF takes bytes 0xFFFFFFFF, 0, 1, 2. Misaligned
access is permitted and behaves as the byte-wise composition.
"""

from __future__ import annotations

from dataclasses import replace
from typing import TYPE_CHECKING, Iterator

from .bits import u32

if TYPE_CHECKING:
    from .state import MachineState

PAGE_SIZE = 4096
_PAGE_MASK = PAGE_SIZE - 1
_ZERO_PAGE = bytes(PAGE_SIZE)


class Memory:
    """Sparse paged mapping from 32-bit addresses to byte values."""

    __slots__ = ("_pages",)

    def __init__(self, pages: dict[int, bytes] | None = None) -> None:
        self._pages: dict[int, bytes] = {} if pages is None else pages

    def byte_at(self, addr: int) -> int:
        """Byte stored at `addr` (0 for any never-written address)."""
        page = self._pages.get(addr >> 12)
        return page[addr & _PAGE_MASK] if page is not None else 0

    def word_at(self, addr: int) -> int:
        """Little-endian 32-bit word at `addr`, wrapping modulo 2**32."""
        offset = addr & _PAGE_MASK
        if offset <= PAGE_SIZE - 4:
            page = self._pages.get(addr >> 12)
            if page is None:
                return 0
            return int.from_bytes(page[offset:offset + 4], "little")
        return (self.byte_at(addr)
                | (self.byte_at(u32(addr + 1)) << 8)
                | (self.byte_at(u32(addr + 2)) << 16)
                | (self.byte_at(u32(addr + 3)) << 24))

    def with_byte(self, addr: int, value: int) -> Memory:
        """New memory with `addr` mapped to `value`; self is unchanged."""
        index = addr >> 12
        offset = addr & _PAGE_MASK
        page = self._pages.get(index, _ZERO_PAGE)
        if page[offset] == value:
            return self
        new_page = page[:offset] + bytes((value,)) + page[offset + 1:]
        pages = dict(self._pages)
        if new_page == _ZERO_PAGE:
            del pages[index]
        else:
            pages[index] = new_page
        return Memory(pages)

    def nonzero_bytes(self) -> Iterator[tuple[int, int]]:
        """Yield (addr, byte) for every nonzero byte, addresses ascending."""
        for index in sorted(self._pages):
            page = self._pages[index]
            base = index << 12
            for offset, byte in enumerate(page):
                if byte:
                    yield base + offset, byte

    def well_formed(self) -> bool:
        """Representation invariant: full in-range pages, no zero page kept."""
        for index, page in self._pages.items():
            if not 0 <= index < (1 << 20):
                return False
            if not isinstance(page, bytes) or len(page) != PAGE_SIZE:
                return False
            if page == _ZERO_PAGE:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Memory):
            return NotImplemented
        return self._pages == other._pages

    def __repr__(self) -> str:
        return f"Memory(<{len(self._pages)} pages>)"


def rm08(addr: int, s: MachineState) -> int:
    """Read the byte at `addr`."""
    return s.mem.byte_at(u32(addr))


def wm08(addr: int, value: int, s: MachineState) -> MachineState:
    """Write the low byte of `value` at `addr`."""
    mem = s.mem.with_byte(u32(addr), value & 0xFF)
    return s if mem is s.mem else replace(s, mem=mem)


def rm16(addr: int, s: MachineState) -> int:
    """Read a little-endian halfword, wrapping the address."""
    return rm08(addr, s) | (rm08(addr + 1, s) << 8)


def wm16(addr: int, value: int, s: MachineState) -> MachineState:
    """Write a little-endian halfword as two byte writes."""
    s = wm08(addr, value, s)
    return wm08(addr + 1, value >> 8, s)


def rm32(addr: int, s: MachineState) -> int:
    """Read a little-endian word, wrapping the address."""
    return s.mem.word_at(u32(addr))


def wm32(addr: int, value: int, s: MachineState) -> MachineState:
    """Write a little-endian word as four byte writes."""
    s = wm08(addr, value, s)
    s = wm08(addr + 1, value >> 8, s)
    s = wm08(addr + 2, value >> 16, s)
    return wm08(addr + 3, value >> 24, s)
