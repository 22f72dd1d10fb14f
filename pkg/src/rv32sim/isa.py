"""Static encoding table for the 37 RV32I computational instructions.

FENCE, ECALL, and EBREAK are out of scope: this simulator models the
base integer instructions only, and an undecodable word freezes the
machine rather than trapping.
"""

from __future__ import annotations

from dataclasses import dataclass

# Instruction formats. SHIFT is the I-format shift-immediate variant,
# whose upper 7 bits are constrained like an R-format funct7.
R = "R"
I = "I"
SHIFT = "SHIFT"
S = "S"
B = "B"
U = "U"
J = "J"

OPCODE_OP = 0b0110011
OPCODE_OP_IMM = 0b0010011
OPCODE_LOAD = 0b0000011
OPCODE_STORE = 0b0100011
OPCODE_BRANCH = 0b1100011
OPCODE_JALR = 0b1100111
OPCODE_JAL = 0b1101111
OPCODE_LUI = 0b0110111
OPCODE_AUIPC = 0b0010111


@dataclass(frozen=True)
class InstructionSpec:
    """One encoding-table row: the fixed fields selecting a mnemonic."""

    mnemonic: str
    fmt: str
    opcode: int
    funct3: int | None = None
    funct7: int | None = None


_ROWS = (
    InstructionSpec("add", R, OPCODE_OP, 0b000, 0b0000000),
    InstructionSpec("sub", R, OPCODE_OP, 0b000, 0b0100000),
    InstructionSpec("sll", R, OPCODE_OP, 0b001, 0b0000000),
    InstructionSpec("slt", R, OPCODE_OP, 0b010, 0b0000000),
    InstructionSpec("sltu", R, OPCODE_OP, 0b011, 0b0000000),
    InstructionSpec("xor", R, OPCODE_OP, 0b100, 0b0000000),
    InstructionSpec("srl", R, OPCODE_OP, 0b101, 0b0000000),
    InstructionSpec("sra", R, OPCODE_OP, 0b101, 0b0100000),
    InstructionSpec("or", R, OPCODE_OP, 0b110, 0b0000000),
    InstructionSpec("and", R, OPCODE_OP, 0b111, 0b0000000),
    InstructionSpec("addi", I, OPCODE_OP_IMM, 0b000),
    InstructionSpec("slti", I, OPCODE_OP_IMM, 0b010),
    InstructionSpec("sltiu", I, OPCODE_OP_IMM, 0b011),
    InstructionSpec("xori", I, OPCODE_OP_IMM, 0b100),
    InstructionSpec("ori", I, OPCODE_OP_IMM, 0b110),
    InstructionSpec("andi", I, OPCODE_OP_IMM, 0b111),
    InstructionSpec("slli", SHIFT, OPCODE_OP_IMM, 0b001, 0b0000000),
    InstructionSpec("srli", SHIFT, OPCODE_OP_IMM, 0b101, 0b0000000),
    InstructionSpec("srai", SHIFT, OPCODE_OP_IMM, 0b101, 0b0100000),
    InstructionSpec("lb", I, OPCODE_LOAD, 0b000),
    InstructionSpec("lh", I, OPCODE_LOAD, 0b001),
    InstructionSpec("lw", I, OPCODE_LOAD, 0b010),
    InstructionSpec("lbu", I, OPCODE_LOAD, 0b100),
    InstructionSpec("lhu", I, OPCODE_LOAD, 0b101),
    InstructionSpec("sb", S, OPCODE_STORE, 0b000),
    InstructionSpec("sh", S, OPCODE_STORE, 0b001),
    InstructionSpec("sw", S, OPCODE_STORE, 0b010),
    InstructionSpec("beq", B, OPCODE_BRANCH, 0b000),
    InstructionSpec("bne", B, OPCODE_BRANCH, 0b001),
    InstructionSpec("blt", B, OPCODE_BRANCH, 0b100),
    InstructionSpec("bge", B, OPCODE_BRANCH, 0b101),
    InstructionSpec("bltu", B, OPCODE_BRANCH, 0b110),
    InstructionSpec("bgeu", B, OPCODE_BRANCH, 0b111),
    InstructionSpec("jalr", I, OPCODE_JALR, 0b000),
    InstructionSpec("jal", J, OPCODE_JAL),
    InstructionSpec("lui", U, OPCODE_LUI),
    InstructionSpec("auipc", U, OPCODE_AUIPC),
)

SPECS: dict[str, InstructionSpec] = {row.mnemonic: row for row in _ROWS}
MNEMONICS: tuple[str, ...] = tuple(SPECS)
