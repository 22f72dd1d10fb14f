"""Program images: parsing, loading, and state dumps.

Two on-disk forms are supported. A file ending in .hex is a text image:

    # comment
    @00000000 33 01 20 00      segment start plus bytes
    93 02 30 00                bare byte lines continue the segment
    entry 00000000             initial pc (hex, at most once)
    reg x5 DEADBEEF            initial register value (hex, x0 rejected)

Any other file is a flat binary whose bytes land at a caller-chosen
base address. Addresses wrap modulo 2**32 within a segment; distinct
segments must not overlap. `dump_memory` emits the same text form, so
a dump can be reloaded as an image.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .bits import MASK32, u32
from .memory import rm08, wm08
from .state import MachineState, set_xpc, write_rgfi


class ImageError(Exception):
    """Base class for image parsing and loading failures."""


class ImageSyntaxError(ImageError):
    """A malformed line in a text image; message carries file:line."""

    def __init__(self, path: str, line_no: int, message: str) -> None:
        super().__init__(f"{path}:{line_no}: {message}")
        self.line_no = line_no


class AddressOutOfRangeError(ImageError):
    """An address or entry point does not fit in 32 bits."""


class OverlappingSegmentsError(ImageError):
    """Two segments claim the same byte address."""


class RegisterIndexOutOfRangeError(ImageError):
    """A register init names an index above 31."""


class InitWritesX0Error(ImageError):
    """A register init targets x0, which is not assignable."""


@dataclass(frozen=True)
class ProgramImage:
    """Bytes to place in memory, the entry pc, and register inits."""

    segments: tuple[tuple[int, bytes], ...]
    entry: int = 0
    regs: tuple[tuple[int, int], ...] = ()


_REG_RE = re.compile(r"^x(\d+)$")
_BYTE_RE = re.compile(r"^[0-9a-fA-F]{2}$")


def _parse_hex_word(token: str, what: str, path: str,
                    line_no: int) -> int:
    text = token[2:] if token[:2].lower() == "0x" else token
    if not text or not re.fullmatch(r"[0-9a-fA-F]+", text):
        raise ImageSyntaxError(path, line_no, f"bad {what} {token!r}")
    value = int(text, 16)
    if value > MASK32:
        raise AddressOutOfRangeError(
            f"{path}:{line_no}: {what} {token!r} exceeds 32 bits")
    return value


def _parse_bytes(tokens: list[str], path: str, line_no: int) -> bytes:
    out = bytearray()
    for token in tokens:
        if not _BYTE_RE.match(token):
            raise ImageSyntaxError(path, line_no,
                                   f"bad byte {token!r} (want 2 hex digits)")
        out.append(int(token, 16))
    return bytes(out)


def _parse_text_image(path: str, text: str) -> ProgramImage:
    segments: list[tuple[int, bytearray]] = []
    entry: int | None = None
    regs: list[tuple[int, int]] = []
    seen_regs: set[int] = set()
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        head = tokens[0]
        if head.startswith("@"):
            addr = _parse_hex_word(head[1:], "segment address", path, line_no)
            segments.append((addr, bytearray()))
            segments[-1][1].extend(_parse_bytes(tokens[1:], path, line_no))
        elif head == "entry":
            if len(tokens) != 2:
                raise ImageSyntaxError(path, line_no, "entry takes one value")
            if entry is not None:
                raise ImageSyntaxError(path, line_no, "duplicate entry")
            entry = _parse_hex_word(tokens[1], "entry", path, line_no)
        elif head == "reg":
            if len(tokens) != 3:
                raise ImageSyntaxError(path, line_no,
                                       "reg takes a register and a value")
            match = _REG_RE.match(tokens[1])
            if not match:
                raise ImageSyntaxError(path, line_no,
                                       f"bad register {tokens[1]!r}")
            index = int(match.group(1))
            if index in seen_regs:
                raise ImageSyntaxError(path, line_no,
                                       f"duplicate reg x{index}")
            seen_regs.add(index)
            value = tokens[2]
            text_value = value[2:] if value[:2].lower() == "0x" else value
            if not re.fullmatch(r"[0-9a-fA-F]{1,8}", text_value or ""):
                raise ImageSyntaxError(path, line_no,
                                       f"bad register value {value!r}")
            regs.append((index, int(text_value, 16)))
        else:
            if not segments:
                raise ImageSyntaxError(path, line_no,
                                       "bytes before any @segment line")
            segments[-1][1].extend(_parse_bytes(tokens, path, line_no))
    return ProgramImage(
        segments=tuple((addr, bytes(data)) for addr, data in segments),
        entry=entry if entry is not None else 0,
        regs=tuple(regs),
    )


def parse_image_file(path: str, base: int = 0) -> ProgramImage:
    """Parse `path` as a text image (.hex) or flat binary at `base`.

    A binary image's entry point defaults to `base`; a text image's
    defaults to 0 unless an `entry` line says otherwise.
    """
    p = Path(path)
    if p.suffix.lower() == ".hex":
        return _parse_text_image(path, p.read_text())
    data = p.read_bytes()
    if not 0 <= base <= MASK32:
        raise AddressOutOfRangeError(f"base {base:#x} exceeds 32 bits")
    return ProgramImage(segments=((base, data),), entry=base)


def _intervals(segments: tuple[tuple[int, bytes], ...]) -> list[tuple[int, int, int]]:
    # Split wrap-around segments into two half-open intervals.
    out = []
    for seg_no, (base, data) in enumerate(segments):
        if not data:
            continue
        end = base + len(data)
        if end <= MASK32 + 1:
            out.append((base, end, seg_no))
        else:
            out.append((base, MASK32 + 1, seg_no))
            out.append((0, end - (MASK32 + 1), seg_no))
    return out


def load_image(image: ProgramImage, s: MachineState) -> MachineState:
    """Place an image into a state: bytes, register inits, entry pc."""
    if any(len(data) > MASK32 + 1 for _, data in image.segments):
        raise OverlappingSegmentsError("segment longer than the address space")
    spans = sorted(_intervals(image.segments))
    for (lo_a, hi_a, seg_a), (lo_b, _, seg_b) in zip(spans, spans[1:]):
        if lo_b < hi_a:
            raise OverlappingSegmentsError(
                f"segments at {image.segments[seg_a][0]:#010x} and "
                f"{image.segments[seg_b][0]:#010x} overlap")
    for index, _ in image.regs:
        if not 0 <= index <= 31:
            raise RegisterIndexOutOfRangeError(f"register x{index}")
        if index == 0:
            raise InitWritesX0Error("x0 is not assignable")
    for base, data in image.segments:
        for offset, byte in enumerate(data):
            s = wm08(u32(base + offset), byte, s)
    for index, value in image.regs:
        s = write_rgfi(index, value, s)
    return set_xpc(image.entry, s)


def dump_registers(s: MachineState) -> list[str]:
    """Render the register file and pc, one line each."""
    lines = [f"{f'x{i}':<3} {value:08X}" for i, value in enumerate(s.regs)]
    lines.append(f"pc  {s.pc:08X}")
    return lines


def dump_memory(s: MachineState, addr: int, length: int) -> list[str]:
    """Render `length` bytes from `addr` in the text-image segment form."""
    lines = []
    for start in range(0, length, 16):
        row = range(start, min(start + 16, length))
        row_bytes = " ".join(f"{rm08(addr + k, s):02X}" for k in row)
        lines.append(f"@{u32(addr + start):08X} {row_bytes}")
    return lines
