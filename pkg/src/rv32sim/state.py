"""Machine state and its accessors/updaters.

A `MachineState` is an immutable value: every updater returns a new
state and never mutates its argument, so intermediate states can be
kept, compared, and diffed freely. Equality is structural, with memory
compared by content (sparse pages are canonical, see `memory`).

Register x0 is hardwired to zero: reads always return 0 and writes are
silently discarded.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .bits import MASK32
from .memory import Memory


@dataclass(frozen=True)
class Running:
    """Normal execution: step performs a fetch-decode-execute cycle."""


@dataclass(frozen=True)
class IllegalInstruction:
    """Execution froze on an undecodable word, recorded with its pc."""

    word: int
    pc: int


@dataclass(frozen=True)
class Halted:
    """Execution stopped deliberately, with a caller-defined reason code."""

    reason: int


ModelStatus = Running | IllegalInstruction | Halted

RUNNING = Running()

NUM_REGS = 32
_ZERO_REGS = (0,) * NUM_REGS


@dataclass(frozen=True)
class MachineState:
    """Register file, program counter, memory, and model status."""

    regs: tuple[int, ...]
    pc: int
    mem: Memory
    ms: ModelStatus


def init_state() -> MachineState:
    """Reset state: all registers 0, pc 0, memory all-zero, status Running."""
    return MachineState(regs=_ZERO_REGS, pc=0, mem=Memory(), ms=RUNNING)


def rgfi(i: int, s: MachineState) -> int:
    """Read register i; x0 always reads 0."""
    return s.regs[i]


def write_rgfi(i: int, v: int, s: MachineState) -> MachineState:
    """Write v to register i; writes to x0 are discarded."""
    if i == 0 or s.regs[i] == v:
        return s
    return replace(s, regs=s.regs[:i] + (v,) + s.regs[i + 1:])


def xpc(s: MachineState) -> int:
    """Read the program counter."""
    return s.pc


def set_xpc(v: int, s: MachineState) -> MachineState:
    """Set the program counter."""
    return s if s.pc == v else replace(s, pc=v)


def get_ms(s: MachineState) -> ModelStatus:
    """Read the model status."""
    return s.ms


def set_ms(v: ModelStatus, s: MachineState) -> MachineState:
    """Set the model status."""
    return s if s.ms == v else replace(s, ms=v)


def well_formed(s: MachineState) -> bool:
    """Check the state invariants: shapes, ranges, x0, canonical memory."""
    regs = s.regs
    if len(regs) != NUM_REGS or regs[0] != 0:
        return False
    if any(not 0 <= r <= MASK32 for r in regs):
        return False
    if not 0 <= s.pc <= MASK32:
        return False
    if not isinstance(s.ms, (Running, IllegalInstruction, Halted)):
        return False
    return s.mem.well_formed()
