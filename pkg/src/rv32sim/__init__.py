"""Executable RV32I simulator built from pure state transformers.

The machine is an immutable value (registers, pc, sparse memory, model
status); every instruction's meaning is a function from state to state.
A strictly separated decode layer identifies words and extracts fields,
per-instruction encoders invert it, and the step driver ties fetch,
decode, and execute together. Undecodable words freeze the machine in
its status field instead of raising.
"""

from .bits import MASK32, sign_extend, to_signed, u32, u5
from .decode import DecodedInstruction, decode
from .encode import ASSEMBLERS, EncodingRangeError, assemble
from .image import (ImageError, ProgramImage, dump_memory, dump_registers,
                    load_image, parse_image_file)
from .isa import MNEMONICS, SPECS, InstructionSpec
from .memory import (Memory, PAGE_SIZE, rm08, rm16, rm32, wm08, wm16, wm32)
from .state import (Halted, IllegalInstruction, MachineState, ModelStatus,
                    RUNNING, Running, get_ms, init_state, rgfi, set_ms,
                    set_xpc, well_formed, write_rgfi, xpc)
from .step import RunOutcome, StopReason, run, step
from .trace import TraceRecord, run_traced

__version__ = "0.1.0"

__all__ = [
    "MASK32", "sign_extend", "to_signed", "u32", "u5",
    "DecodedInstruction", "decode",
    "ASSEMBLERS", "EncodingRangeError", "assemble",
    "ImageError", "ProgramImage", "dump_memory", "dump_registers",
    "load_image", "parse_image_file",
    "MNEMONICS", "SPECS", "InstructionSpec",
    "Memory", "PAGE_SIZE", "rm08", "rm16", "rm32", "wm08", "wm16", "wm32",
    "Halted", "IllegalInstruction", "MachineState", "ModelStatus",
    "RUNNING", "Running", "get_ms", "init_state", "rgfi", "set_ms",
    "set_xpc", "well_formed", "write_rgfi", "xpc",
    "RunOutcome", "StopReason", "run", "step",
    "TraceRecord", "run_traced",
    "__version__",
]
