"""Decode layer: field extractors, immediate reconstruction, instruction id.

Decoding is total and pure: `decode` maps every 32-bit word either to
exactly one `DecodedInstruction` or to None for an illegal word. It
never raises and never touches machine state.

Immediates come back fully sign-extended as unsigned 32-bit words, so
execution can use plain modular arithmetic without re-extending.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import isa
from .bits import sign_extend
from .isa import SPECS, InstructionSpec


def get_opcode(word: int) -> int:
    """Bits 6..0."""
    return word & 0x7F


def get_rd(word: int) -> int:
    """Bits 11..7."""
    return (word >> 7) & 0x1F


def get_funct3(word: int) -> int:
    """Bits 14..12."""
    return (word >> 12) & 0x07


def get_rs1(word: int) -> int:
    """Bits 19..15."""
    return (word >> 15) & 0x1F


def get_rs2(word: int) -> int:
    """Bits 24..20."""
    return (word >> 20) & 0x1F


def get_funct7(word: int) -> int:
    """Bits 31..25."""
    return (word >> 25) & 0x7F


def imm_i(word: int) -> int:
    """I-format immediate: bits 31..20, sign-extended."""
    return sign_extend(word >> 20, 12)


def imm_s(word: int) -> int:
    """S-format immediate: bits 31..25 | 11..7, sign-extended."""
    return sign_extend(((word >> 25) << 5) | ((word >> 7) & 0x1F), 12)


def imm_b(word: int) -> int:
    """B-format immediate: the scattered even branch offset, sign-extended."""
    value = (((word >> 31) & 0x1) << 12) \
        | (((word >> 7) & 0x1) << 11) \
        | (((word >> 25) & 0x3F) << 5) \
        | (((word >> 8) & 0xF) << 1)
    return sign_extend(value, 13)


def imm_u(word: int) -> int:
    """U-format immediate: bits 31..12, already in position, low 12 zero."""
    return word & 0xFFFFF000


def imm_j(word: int) -> int:
    """J-format immediate: the scattered even jump offset, sign-extended."""
    value = (((word >> 31) & 0x1) << 20) \
        | (((word >> 12) & 0xFF) << 12) \
        | (((word >> 20) & 0x1) << 11) \
        | (((word >> 21) & 0x3FF) << 1)
    return sign_extend(value, 21)


@dataclass(frozen=True)
class DecodedInstruction:
    """A named instruction with its extracted fields.

    Only the fields meaningful for the instruction's format are set;
    the rest stay None. `imm` is the sign-extended unsigned-32 value.
    """

    mnemonic: str
    rd: int | None = None
    rs1: int | None = None
    rs2: int | None = None
    imm: int | None = None
    shamt: int | None = None

    @property
    def spec(self) -> InstructionSpec:
        return SPECS[self.mnemonic]


def _rows(fmt: str, opcode: int) -> list[InstructionSpec]:
    return [r for r in SPECS.values() if r.fmt == fmt and r.opcode == opcode]


_OP_BY_F3_F7 = {(r.funct3, r.funct7): r for r in _rows(isa.R, isa.OPCODE_OP)}
_OP_IMM_BY_F3 = {r.funct3: r for r in _rows(isa.I, isa.OPCODE_OP_IMM)}
_SHIFT_BY_F3_F7 = {(r.funct3, r.funct7): r
                   for r in _rows(isa.SHIFT, isa.OPCODE_OP_IMM)}
_LOAD_BY_F3 = {r.funct3: r for r in _rows(isa.I, isa.OPCODE_LOAD)}
_STORE_BY_F3 = {r.funct3: r for r in _rows(isa.S, isa.OPCODE_STORE)}
_BRANCH_BY_F3 = {r.funct3: r for r in _rows(isa.B, isa.OPCODE_BRANCH)}


def decode(word: int) -> DecodedInstruction | None:
    """Identify `word` and extract its fields; None if illegal.

    Strict on fixed fields: a bad funct7 on shifts, a nonzero funct3 on
    JALR, or any unknown opcode/funct combination is illegal.
    """
    opcode = word & 0x7F
    if opcode == isa.OPCODE_OP:
        row = _OP_BY_F3_F7.get((get_funct3(word), get_funct7(word)))
        if row is None:
            return None
        return DecodedInstruction(row.mnemonic, rd=get_rd(word),
                                  rs1=get_rs1(word), rs2=get_rs2(word))
    if opcode == isa.OPCODE_OP_IMM:
        funct3 = get_funct3(word)
        if funct3 in (0b001, 0b101):
            row = _SHIFT_BY_F3_F7.get((funct3, get_funct7(word)))
            if row is None:
                return None
            return DecodedInstruction(row.mnemonic, rd=get_rd(word),
                                      rs1=get_rs1(word), shamt=get_rs2(word))
        row = _OP_IMM_BY_F3[funct3]
        return DecodedInstruction(row.mnemonic, rd=get_rd(word),
                                  rs1=get_rs1(word), imm=imm_i(word))
    if opcode == isa.OPCODE_LOAD:
        row = _LOAD_BY_F3.get(get_funct3(word))
        if row is None:
            return None
        return DecodedInstruction(row.mnemonic, rd=get_rd(word),
                                  rs1=get_rs1(word), imm=imm_i(word))
    if opcode == isa.OPCODE_STORE:
        row = _STORE_BY_F3.get(get_funct3(word))
        if row is None:
            return None
        return DecodedInstruction(row.mnemonic, rs1=get_rs1(word),
                                  rs2=get_rs2(word), imm=imm_s(word))
    if opcode == isa.OPCODE_BRANCH:
        row = _BRANCH_BY_F3.get(get_funct3(word))
        if row is None:
            return None
        return DecodedInstruction(row.mnemonic, rs1=get_rs1(word),
                                  rs2=get_rs2(word), imm=imm_b(word))
    if opcode == isa.OPCODE_JALR:
        if get_funct3(word) != 0:
            return None
        return DecodedInstruction("jalr", rd=get_rd(word),
                                  rs1=get_rs1(word), imm=imm_i(word))
    if opcode == isa.OPCODE_JAL:
        return DecodedInstruction("jal", rd=get_rd(word), imm=imm_j(word))
    if opcode == isa.OPCODE_LUI:
        return DecodedInstruction("lui", rd=get_rd(word), imm=imm_u(word))
    if opcode == isa.OPCODE_AUIPC:
        return DecodedInstruction("auipc", rd=get_rd(word), imm=imm_u(word))
    return None
