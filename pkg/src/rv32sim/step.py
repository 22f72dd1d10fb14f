"""Fetch-decode-execute driver.

`step` is a pure state transformer: it fetches the word at pc, decodes
it, and applies the matching semantic function. A word that does not
decode freezes the machine by recording it in the model status; once
the status is anything other than Running, `step` is the identity, so
a frozen state stays put no matter how often it is stepped.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .decode import decode
from .memory import rm32
from .semantics import execute
from .state import RUNNING, IllegalInstruction, MachineState, set_ms


class StopReason(Enum):
    """Why `run` returned."""

    BUDGET_EXHAUSTED = "budget-exhausted"
    NOT_RUNNING = "not-running"


@dataclass(frozen=True)
class RunOutcome:
    """Result of `run`: where it ended, how far it got, and why."""

    final_state: MachineState
    steps_executed: int
    stop_reason: StopReason


def step(s: MachineState) -> MachineState:
    """Execute one instruction; identity when the status is not Running."""
    if s.ms != RUNNING:
        return s
    word = rm32(s.pc, s)
    decoded = decode(word)
    if decoded is None:
        return set_ms(IllegalInstruction(word, s.pc), s)
    return execute(decoded, s)


def run(s: MachineState, budget: int) -> RunOutcome:
    """Step at most `budget` times, stopping early once not Running."""
    steps = 0
    while steps < budget:
        if s.ms != RUNNING:
            return RunOutcome(s, steps, StopReason.NOT_RUNNING)
        s = step(s)
        steps += 1
    if s.ms != RUNNING:
        return RunOutcome(s, steps, StopReason.NOT_RUNNING)
    return RunOutcome(s, steps, StopReason.BUDGET_EXHAUSTED)
