"""Instruction semantic functions.

Each function takes already-decoded fields plus a state and returns the
successor state for one instruction, including the pc update. Operand
values are unsigned 32-bit words throughout; signed behavior is derived
via two's-complement reads where an instruction calls for it.

Immediates must arrive fully sign-extended (as the decode layer
produces them), so address and ALU arithmetic is plain modulo 2**32.
"""

from __future__ import annotations

from typing import Callable

from . import isa
from .bits import MASK32, sign_extend, to_signed, u32
from .decode import DecodedInstruction
from .isa import SPECS
from .memory import rm08, rm16, rm32, wm08, wm16, wm32
from .state import MachineState, set_xpc, write_rgfi

_ALU: dict[str, Callable[[int, int], int]] = {
    "add": lambda a, b: (a + b) & MASK32,
    "sub": lambda a, b: (a - b) & MASK32,
    "sll": lambda a, b: (a << (b & 31)) & MASK32,
    "slt": lambda a, b: int(to_signed(a) < to_signed(b)),
    "sltu": lambda a, b: int(a < b),
    "xor": lambda a, b: a ^ b,
    "srl": lambda a, b: a >> (b & 31),
    "sra": lambda a, b: (to_signed(a) >> (b & 31)) & MASK32,
    "or": lambda a, b: a | b,
    "and": lambda a, b: a & b,
}

# Immediate forms compute the same ALU function on (rs1, imm) or
# (rs1, shamt); sltiu compares against the sign-extended immediate
# read as unsigned.
_IMM_ALU = {
    "addi": "add",
    "slti": "slt",
    "sltiu": "sltu",
    "xori": "xor",
    "ori": "or",
    "andi": "and",
    "slli": "sll",
    "srli": "srl",
    "srai": "sra",
}

_LOADERS: dict[str, Callable[[int, MachineState], int]] = {
    "lb": lambda addr, s: sign_extend(rm08(addr, s), 8),
    "lh": lambda addr, s: sign_extend(rm16(addr, s), 16),
    "lw": rm32,
    "lbu": rm08,
    "lhu": rm16,
}

_BRANCH_TESTS: dict[str, Callable[[int, int], bool]] = {
    "beq": lambda a, b: a == b,
    "bne": lambda a, b: a != b,
    "blt": lambda a, b: to_signed(a) < to_signed(b),
    "bge": lambda a, b: to_signed(a) >= to_signed(b),
    "bltu": lambda a, b: a < b,
    "bgeu": lambda a, b: a >= b,
}


def exec_op_r(mnemonic: str, rd: int, rs1: int, rs2: int,
              s: MachineState) -> MachineState:
    """Register-register ALU instruction."""
    value = _ALU[mnemonic](s.regs[rs1], s.regs[rs2])
    return set_xpc(u32(s.pc + 4), write_rgfi(rd, value, s))


def exec_op_imm(mnemonic: str, rd: int, rs1: int, imm: int,
                s: MachineState) -> MachineState:
    """Register-immediate ALU instruction; `imm` is the shamt for shifts."""
    value = _ALU[_IMM_ALU[mnemonic]](s.regs[rs1], imm)
    return set_xpc(u32(s.pc + 4), write_rgfi(rd, value, s))


def exec_load(mnemonic: str, rd: int, rs1: int, imm: int,
              s: MachineState) -> MachineState:
    """Load from rs1+imm; LB/LH sign-extend, LBU/LHU zero-extend."""
    addr = u32(s.regs[rs1] + imm)
    value = _LOADERS[mnemonic](addr, s)
    return set_xpc(u32(s.pc + 4), write_rgfi(rd, value, s))


def exec_store(mnemonic: str, rs1: int, rs2: int, imm: int,
               s: MachineState) -> MachineState:
    """Store the low bytes of rs2 at rs1+imm."""
    addr = u32(s.regs[rs1] + imm)
    value = s.regs[rs2]
    if mnemonic == "sb":
        s = wm08(addr, value, s)
    elif mnemonic == "sh":
        s = wm16(addr, value, s)
    else:
        s = wm32(addr, value, s)
    return set_xpc(u32(s.pc + 4), s)


def exec_branch(mnemonic: str, rs1: int, rs2: int, imm: int,
                s: MachineState) -> MachineState:
    """Conditional branch: pc+imm when taken, pc+4 otherwise."""
    taken = _BRANCH_TESTS[mnemonic](s.regs[rs1], s.regs[rs2])
    return set_xpc(u32(s.pc + imm) if taken else u32(s.pc + 4), s)


def exec_jal(rd: int, imm: int, s: MachineState) -> MachineState:
    """Jump to pc+imm, linking pc+4 into rd."""
    link = u32(s.pc + 4)
    return set_xpc(u32(s.pc + imm), write_rgfi(rd, link, s))


def exec_jalr(rd: int, rs1: int, imm: int, s: MachineState) -> MachineState:
    """Jump to (rs1+imm) with bit 0 cleared, linking pc+4 into rd.

    rs1 is read before rd is written, so rd == rs1 uses the old value.
    """
    target = u32(s.regs[rs1] + imm) & 0xFFFFFFFE
    link = u32(s.pc + 4)
    return set_xpc(target, write_rgfi(rd, link, s))


def exec_lui(rd: int, imm: int, s: MachineState) -> MachineState:
    """Load the U-format immediate into rd."""
    return set_xpc(u32(s.pc + 4), write_rgfi(rd, imm, s))


def exec_auipc(rd: int, imm: int, s: MachineState) -> MachineState:
    """Add the U-format immediate to pc and write the sum to rd."""
    return set_xpc(u32(s.pc + 4), write_rgfi(rd, u32(s.pc + imm), s))


def execute(d: DecodedInstruction, s: MachineState) -> MachineState:
    """Dispatch a decoded instruction to its semantic function."""
    spec = SPECS[d.mnemonic]
    fmt = spec.fmt
    if fmt == isa.R:
        return exec_op_r(d.mnemonic, d.rd, d.rs1, d.rs2, s)
    if fmt == isa.SHIFT:
        return exec_op_imm(d.mnemonic, d.rd, d.rs1, d.shamt, s)
    if fmt == isa.I:
        if spec.opcode == isa.OPCODE_OP_IMM:
            return exec_op_imm(d.mnemonic, d.rd, d.rs1, d.imm, s)
        if spec.opcode == isa.OPCODE_LOAD:
            return exec_load(d.mnemonic, d.rd, d.rs1, d.imm, s)
        return exec_jalr(d.rd, d.rs1, d.imm, s)
    if fmt == isa.S:
        return exec_store(d.mnemonic, d.rs1, d.rs2, d.imm, s)
    if fmt == isa.B:
        return exec_branch(d.mnemonic, d.rs1, d.rs2, d.imm, s)
    if fmt == isa.J:
        return exec_jal(d.rd, d.imm, s)
    if d.mnemonic == "lui":
        return exec_lui(d.rd, d.imm, s)
    return exec_auipc(d.rd, d.imm, s)
