"""Per-instruction binary encoders, the inverses of the decode layer.

By default operands are masked into their fields (a register index
takes its low 5 bits, an immediate its field width, and branch/jump
offsets drop bit 0), so every encoder is total. With strict=True an
operand that does not fit its field raises `EncodingRangeError`
instead.

One `asm_*` function exists per instruction. Argument orders follow
the formats: R takes (rs1, rs2, rd), I takes (rs1, imm, rd), shifts
take (rs1, shamt, rd), S and B take (rs1, rs2, imm), U and J take
(imm, rd). U-format immediates are the already-shifted 32-bit value
with the low 12 bits zero.
"""

from __future__ import annotations

from typing import Callable

from . import isa
from .bits import MASK32, to_signed, u5, u32
from .isa import SPECS, InstructionSpec


class EncodingRangeError(ValueError):
    """An operand does not fit its instruction field (strict mode only)."""


def _check_reg(name: str, value: int) -> None:
    if not 0 <= value <= 31:
        raise EncodingRangeError(f"{name}={value} is not a register index")


def _check_shamt(value: int) -> None:
    if not 0 <= value <= 31:
        raise EncodingRangeError(f"shamt={value} is not in 0..31")


def _check_imm(value: int, width: int, even: bool = False) -> None:
    if not -(1 << 31) <= value <= MASK32:
        raise EncodingRangeError(f"imm={value} is not a 32-bit value")
    signed = to_signed(u32(value))
    lo, hi = -(1 << (width - 1)), (1 << (width - 1)) - 1
    if not lo <= signed <= hi:
        raise EncodingRangeError(f"imm={value} does not fit {width} bits")
    if even and signed % 2:
        raise EncodingRangeError(f"imm={value} must be even")


def _check_imm_u(value: int) -> None:
    if not -(1 << 31) <= value <= MASK32:
        raise EncodingRangeError(f"imm={value} is not a 32-bit value")
    if u32(value) & 0xFFF:
        raise EncodingRangeError(f"imm={value:#x} has nonzero low 12 bits")


def encode_r(spec: InstructionSpec, rs1: int, rs2: int, rd: int,
             strict: bool = False) -> int:
    if strict:
        _check_reg("rs1", rs1)
        _check_reg("rs2", rs2)
        _check_reg("rd", rd)
    return ((spec.funct7 << 25) | (u5(rs2) << 20) | (u5(rs1) << 15)
            | (spec.funct3 << 12) | (u5(rd) << 7) | spec.opcode)


def encode_i(spec: InstructionSpec, rs1: int, imm: int, rd: int,
             strict: bool = False) -> int:
    if strict:
        _check_reg("rs1", rs1)
        _check_reg("rd", rd)
        _check_imm(imm, 12)
    return ((imm & 0xFFF) << 20) | (u5(rs1) << 15) | (spec.funct3 << 12) \
        | (u5(rd) << 7) | spec.opcode


def encode_shift(spec: InstructionSpec, rs1: int, shamt: int, rd: int,
                 strict: bool = False) -> int:
    if strict:
        _check_reg("rs1", rs1)
        _check_reg("rd", rd)
        _check_shamt(shamt)
    return ((spec.funct7 << 25) | (u5(shamt) << 20) | (u5(rs1) << 15)
            | (spec.funct3 << 12) | (u5(rd) << 7) | spec.opcode)


def encode_s(spec: InstructionSpec, rs1: int, rs2: int, imm: int,
             strict: bool = False) -> int:
    if strict:
        _check_reg("rs1", rs1)
        _check_reg("rs2", rs2)
        _check_imm(imm, 12)
    imm &= 0xFFF
    return (((imm >> 5) << 25) | (u5(rs2) << 20) | (u5(rs1) << 15)
            | (spec.funct3 << 12) | ((imm & 0x1F) << 7) | spec.opcode)


def encode_b(spec: InstructionSpec, rs1: int, rs2: int, imm: int,
             strict: bool = False) -> int:
    if strict:
        _check_reg("rs1", rs1)
        _check_reg("rs2", rs2)
        _check_imm(imm, 13, even=True)
    imm &= 0x1FFE
    return ((((imm >> 12) & 0x1) << 31) | (((imm >> 5) & 0x3F) << 25)
            | (u5(rs2) << 20) | (u5(rs1) << 15) | (spec.funct3 << 12)
            | (((imm >> 1) & 0xF) << 8) | (((imm >> 11) & 0x1) << 7)
            | spec.opcode)


def encode_u(spec: InstructionSpec, imm: int, rd: int,
             strict: bool = False) -> int:
    if strict:
        _check_reg("rd", rd)
        _check_imm_u(imm)
    return (imm & 0xFFFFF000) | (u5(rd) << 7) | spec.opcode


def encode_j(spec: InstructionSpec, imm: int, rd: int,
             strict: bool = False) -> int:
    if strict:
        _check_reg("rd", rd)
        _check_imm(imm, 21, even=True)
    imm &= 0x1FFFFE
    return ((((imm >> 20) & 0x1) << 31) | (((imm >> 1) & 0x3FF) << 21)
            | (((imm >> 11) & 0x1) << 20) | (((imm >> 12) & 0xFF) << 12)
            | (u5(rd) << 7) | spec.opcode)


def asm_add(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["add"], rs1, rs2, rd)


def asm_sub(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["sub"], rs1, rs2, rd)


def asm_sll(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["sll"], rs1, rs2, rd)


def asm_slt(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["slt"], rs1, rs2, rd)


def asm_sltu(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["sltu"], rs1, rs2, rd)


def asm_xor(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["xor"], rs1, rs2, rd)


def asm_srl(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["srl"], rs1, rs2, rd)


def asm_sra(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["sra"], rs1, rs2, rd)


def asm_or(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["or"], rs1, rs2, rd)


def asm_and(rs1: int, rs2: int, rd: int) -> int:
    return encode_r(SPECS["and"], rs1, rs2, rd)


def asm_addi(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["addi"], rs1, imm, rd)


def asm_slti(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["slti"], rs1, imm, rd)


def asm_sltiu(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["sltiu"], rs1, imm, rd)


def asm_xori(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["xori"], rs1, imm, rd)


def asm_ori(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["ori"], rs1, imm, rd)


def asm_andi(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["andi"], rs1, imm, rd)


def asm_slli(rs1: int, shamt: int, rd: int) -> int:
    return encode_shift(SPECS["slli"], rs1, shamt, rd)


def asm_srli(rs1: int, shamt: int, rd: int) -> int:
    return encode_shift(SPECS["srli"], rs1, shamt, rd)


def asm_srai(rs1: int, shamt: int, rd: int) -> int:
    return encode_shift(SPECS["srai"], rs1, shamt, rd)


def asm_lb(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["lb"], rs1, imm, rd)


def asm_lh(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["lh"], rs1, imm, rd)


def asm_lw(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["lw"], rs1, imm, rd)


def asm_lbu(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["lbu"], rs1, imm, rd)


def asm_lhu(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["lhu"], rs1, imm, rd)


def asm_sb(rs1: int, rs2: int, imm: int) -> int:
    return encode_s(SPECS["sb"], rs1, rs2, imm)


def asm_sh(rs1: int, rs2: int, imm: int) -> int:
    return encode_s(SPECS["sh"], rs1, rs2, imm)


def asm_sw(rs1: int, rs2: int, imm: int) -> int:
    return encode_s(SPECS["sw"], rs1, rs2, imm)


def asm_beq(rs1: int, rs2: int, imm: int) -> int:
    return encode_b(SPECS["beq"], rs1, rs2, imm)


def asm_bne(rs1: int, rs2: int, imm: int) -> int:
    return encode_b(SPECS["bne"], rs1, rs2, imm)


def asm_blt(rs1: int, rs2: int, imm: int) -> int:
    return encode_b(SPECS["blt"], rs1, rs2, imm)


def asm_bge(rs1: int, rs2: int, imm: int) -> int:
    return encode_b(SPECS["bge"], rs1, rs2, imm)


def asm_bltu(rs1: int, rs2: int, imm: int) -> int:
    return encode_b(SPECS["bltu"], rs1, rs2, imm)


def asm_bgeu(rs1: int, rs2: int, imm: int) -> int:
    return encode_b(SPECS["bgeu"], rs1, rs2, imm)


def asm_jalr(rs1: int, imm: int, rd: int) -> int:
    return encode_i(SPECS["jalr"], rs1, imm, rd)


def asm_jal(imm: int, rd: int) -> int:
    return encode_j(SPECS["jal"], imm, rd)


def asm_lui(imm: int, rd: int) -> int:
    return encode_u(SPECS["lui"], imm, rd)


def asm_auipc(imm: int, rd: int) -> int:
    return encode_u(SPECS["auipc"], imm, rd)


ASSEMBLERS: dict[str, Callable[..., int]] = {
    name: globals()[f"asm_{name}"] for name in SPECS
}

_FORMAT_ENCODERS = {
    isa.R: encode_r,
    isa.I: encode_i,
    isa.SHIFT: encode_shift,
    isa.S: encode_s,
    isa.B: encode_b,
    isa.U: encode_u,
    isa.J: encode_j,
}

_FORMAT_OPERANDS = {
    isa.R: ("rs1", "rs2", "rd"),
    isa.I: ("rs1", "imm", "rd"),
    isa.SHIFT: ("rs1", "shamt", "rd"),
    isa.S: ("rs1", "rs2", "imm"),
    isa.B: ("rs1", "rs2", "imm"),
    isa.U: ("imm", "rd"),
    isa.J: ("imm", "rd"),
}


def operand_names(mnemonic: str) -> tuple[str, ...]:
    """Positional operand names for a mnemonic, in asm_* order."""
    return _FORMAT_OPERANDS[SPECS[mnemonic].fmt]


def assemble(mnemonic: str, operands: tuple[int, ...] | list[int],
             strict: bool = False) -> int:
    """Encode `mnemonic` with positional operands in asm_* order.

    Raises KeyError for an unknown mnemonic, TypeError for a wrong
    operand count, and EncodingRangeError in strict mode.
    """
    spec = SPECS[mnemonic]
    expected = len(_FORMAT_OPERANDS[spec.fmt])
    if len(operands) != expected:
        raise TypeError(f"{mnemonic} takes {expected} operands, "
                        f"got {len(operands)}")
    return _FORMAT_ENCODERS[spec.fmt](spec, *operands, strict=strict)
