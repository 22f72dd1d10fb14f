"""Execution traces: one JSON-serializable record per step.

A record holds the cycle number, the pc and raw word fetched, the
mnemonic (or "illegal"), and the full list of state writes the step
performed, each as target/old/new. Targets are "x1".."x31", "pc",
"ms", or "mem[AAAAAAAA]"; register and pc values render as 8 hex
digits, memory bytes as 2, and the status as a short tag string.

Records capture every difference between the pre- and post-states, so
replaying a trace's writes onto the initial state reproduces the final
state exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .decode import decode
from .memory import rm32, wm08
from .state import (Halted, IllegalInstruction, MachineState, ModelStatus,
                    RUNNING, set_ms, set_xpc, write_rgfi)
from .step import RunOutcome, StopReason, step


def render_status(ms: ModelStatus) -> str:
    if isinstance(ms, IllegalInstruction):
        return f"illegal:{ms.word:08X}@{ms.pc:08X}"
    if isinstance(ms, Halted):
        return f"halted:{ms.reason}"
    return "running"


def parse_status(text: str) -> ModelStatus:
    if text == "running":
        return RUNNING
    kind, _, rest = text.partition(":")
    if kind == "illegal":
        word, _, pc = rest.partition("@")
        return IllegalInstruction(int(word, 16), int(pc, 16))
    if kind == "halted":
        return Halted(int(rest))
    raise ValueError(f"bad status {text!r}")


@dataclass(frozen=True)
class TraceRecord:
    """One step's fetch facts and state writes."""

    cycle: int
    pc: int
    raw: int
    mnemonic: str
    writes: tuple[tuple[str, str, str], ...]

    def to_json(self) -> str:
        return json.dumps({
            "cycle": self.cycle,
            "pc": f"{self.pc:08X}",
            "raw": f"{self.raw:08X}",
            "mnemonic": self.mnemonic,
            "writes": [{"target": t, "old": old, "new": new}
                       for t, old, new in self.writes],
        }, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> TraceRecord:
        data = json.loads(line)
        return cls(
            cycle=data["cycle"],
            pc=int(data["pc"], 16),
            raw=int(data["raw"], 16),
            mnemonic=data["mnemonic"],
            writes=tuple((w["target"], w["old"], w["new"])
                         for w in data["writes"]),
        )


def state_writes(before: MachineState,
                 after: MachineState) -> tuple[tuple[str, str, str], ...]:
    """Every difference between two states, in deterministic order."""
    writes: list[tuple[str, str, str]] = []
    for i, (old, new) in enumerate(zip(before.regs, after.regs)):
        if old != new:
            writes.append((f"x{i}", f"{old:08X}", f"{new:08X}"))
    if before.mem != after.mem:
        old_bytes = dict(before.mem.nonzero_bytes())
        new_bytes = dict(after.mem.nonzero_bytes())
        for addr in sorted(old_bytes.keys() | new_bytes.keys()):
            old = old_bytes.get(addr, 0)
            new = new_bytes.get(addr, 0)
            if old != new:
                writes.append((f"mem[{addr:08X}]", f"{old:02X}", f"{new:02X}"))
    if before.pc != after.pc:
        writes.append(("pc", f"{before.pc:08X}", f"{after.pc:08X}"))
    if before.ms != after.ms:
        writes.append(("ms", render_status(before.ms),
                       render_status(after.ms)))
    return tuple(writes)


def replay_writes(writes: tuple[tuple[str, str, str], ...],
                  s: MachineState) -> MachineState:
    """Apply a record's writes to a state."""
    for target, _, new in writes:
        if target == "pc":
            s = set_xpc(int(new, 16), s)
        elif target == "ms":
            s = set_ms(parse_status(new), s)
        elif target.startswith("mem["):
            s = wm08(int(target[4:-1], 16), int(new, 16), s)
        else:
            s = write_rgfi(int(target[1:]), int(new, 16), s)
    return s


def run_traced(s: MachineState,
               budget: int) -> tuple[RunOutcome, list[TraceRecord]]:
    """Like `step.run`, also collecting one TraceRecord per step."""
    records: list[TraceRecord] = []
    steps = 0
    while steps < budget:
        if s.ms != RUNNING:
            return RunOutcome(s, steps, StopReason.NOT_RUNNING), records
        word = rm32(s.pc, s)
        decoded = decode(word)
        after = step(s)
        records.append(TraceRecord(
            cycle=steps,
            pc=s.pc,
            raw=word,
            mnemonic=decoded.mnemonic if decoded is not None else "illegal",
            writes=state_writes(s, after),
        ))
        s = after
        steps += 1
    if s.ms != RUNNING:
        return RunOutcome(s, steps, StopReason.NOT_RUNNING), records
    return RunOutcome(s, steps, StopReason.BUDGET_EXHAUSTED), records
