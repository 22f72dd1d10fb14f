"""Shared builders for the randomized suites.

Random states come from seeded `random.Random` instances so every run
is reproducible. The differential driver mirrors one package state
into the reference interpreter, steps both, and rebuilds the expected
package state from the reference's outcome for a single structural
comparison.
"""

from __future__ import annotations

import random

import rv32_reference as ref
from rv32sim import isa
from rv32sim.bits import sign_extend, to_signed, u5, u32
from rv32sim.decode import DecodedInstruction
from rv32sim.encode import ASSEMBLERS
from rv32sim.isa import SPECS
from rv32sim.memory import Memory
from rv32sim.state import MachineState, IllegalInstruction, RUNNING
from rv32sim.step import step
from rv32sim.trace import state_writes

TWO32 = 2 ** 32

EDGE_WORDS = (0, 1, 2, 0x7FFFFFFF, 0x80000000, 0x80000001,
              0xFFFFFFFE, 0xFFFFFFFF)


def random_regs(rng: random.Random) -> tuple[int, ...]:
    return (0,) + tuple(rng.getrandbits(32) for _ in range(31))


def random_memory(rng: random.Random, writes: int = 8) -> Memory:
    mem = Memory()
    for _ in range(writes):
        mem = mem.with_byte(rng.getrandbits(32), rng.getrandbits(8))
    return mem


def random_state(rng: random.Random, mem_writes: int = 8) -> MachineState:
    return MachineState(regs=random_regs(rng), pc=rng.getrandbits(32),
                        mem=random_memory(rng, mem_writes), ms=RUNNING)


def state_pool(seed: int, count: int = 256,
               mem_writes: int = 8) -> list[MachineState]:
    rng = random.Random(seed)
    return [random_state(rng, mem_writes) for _ in range(count)]


def random_raw_operand(rng: random.Random) -> int:
    """Any int, usually outside its field, to exercise operand masking."""
    return rng.getrandbits(34) - (1 << 33)


def random_legal_operands(rng: random.Random,
                          mnemonic: str) -> tuple[int, ...]:
    """In-range operands for `mnemonic`, in asm_* order."""
    fmt = SPECS[mnemonic].fmt
    rd = rng.randrange(32)
    rs1 = rng.randrange(32)
    rs2 = rs1 if rng.random() < 0.2 else rng.randrange(32)
    if mnemonic == "jalr" and rng.random() < 0.3:
        rd = rs1
    if fmt == isa.R:
        return (rs1, rs2, rd)
    if fmt == isa.I:
        return (rs1, rng.randrange(-2048, 2048), rd)
    if fmt == isa.SHIFT:
        return (rs1, rng.randrange(32), rd)
    if fmt == isa.S:
        return (rs1, rs2, rng.randrange(-2048, 2048))
    if fmt == isa.B:
        return (rs1, rs2, rng.randrange(-4096, 4096, 2))
    if fmt == isa.U:
        return (rng.getrandbits(32) & 0xFFFFF000, rd)
    return (rng.randrange(-(1 << 20), 1 << 20, 2), rd)


def expected_decoded(mnemonic: str, ops: tuple[int, ...]) -> DecodedInstruction:
    """The decode result an assembled word must produce: masked fields."""
    fmt = SPECS[mnemonic].fmt
    if fmt == isa.R:
        rs1, rs2, rd = ops
        return DecodedInstruction(mnemonic, rd=u5(rd), rs1=u5(rs1),
                                  rs2=u5(rs2))
    if fmt == isa.I:
        rs1, imm, rd = ops
        return DecodedInstruction(mnemonic, rd=u5(rd), rs1=u5(rs1),
                                  imm=sign_extend(imm, 12))
    if fmt == isa.SHIFT:
        rs1, shamt, rd = ops
        return DecodedInstruction(mnemonic, rd=u5(rd), rs1=u5(rs1),
                                  shamt=u5(shamt))
    if fmt == isa.S:
        rs1, rs2, imm = ops
        return DecodedInstruction(mnemonic, rs1=u5(rs1), rs2=u5(rs2),
                                  imm=sign_extend(imm, 12))
    if fmt == isa.B:
        rs1, rs2, imm = ops
        return DecodedInstruction(mnemonic, rs1=u5(rs1), rs2=u5(rs2),
                                  imm=sign_extend(imm & ~1, 13))
    if fmt == isa.U:
        imm, rd = ops
        return DecodedInstruction(mnemonic, rd=u5(rd),
                                  imm=u32(imm) & 0xFFFFF000)
    imm, rd = ops
    return DecodedInstruction(mnemonic, rd=u5(rd),
                              imm=sign_extend(imm & ~1, 21))


def _biased_word(rng: random.Random) -> int:
    return rng.choice(EDGE_WORDS) if rng.random() < 0.25 else \
        rng.getrandbits(32)


def differential_case(rng: random.Random, mnemonic: str,
                      base_regs: tuple[int, ...],
                      base_signed: list[int]) -> str | None:
    """Step one random instance on both interpreters; None if they agree."""
    spec = SPECS[mnemonic]
    fmt = spec.fmt
    ops = random_legal_operands(rng, mnemonic)
    word = ASSEMBLERS[mnemonic](*ops)

    regs = list(base_regs)
    if fmt in (isa.R, isa.I, isa.SHIFT, isa.S, isa.B):
        rs1 = ops[0]
        regs[rs1] = _biased_word(rng)
        if fmt in (isa.R, isa.S, isa.B):
            rs2 = ops[1]
            regs[rs2] = regs[rs1] if rng.random() < 0.25 \
                else _biased_word(rng)
    regs[0] = 0

    pc = rng.getrandbits(32)
    if rng.random() < 0.8:
        pc &= 0xFFFFFFFC

    mem_bytes: dict[int, int] = {}
    for k in range(4):
        mem_bytes[(pc + k) % TWO32] = (word >> (8 * k)) & 0xFF
    if spec.opcode == isa.OPCODE_LOAD:
        addr = (regs[ops[0]] + ops[1]) % TWO32
        for k in range(4):
            mem_bytes.setdefault((addr + k) % TWO32, rng.getrandbits(8))

    mem = Memory()
    for a, b in mem_bytes.items():
        mem = mem.with_byte(a, b)
    s = MachineState(regs=tuple(regs), pc=pc, mem=mem, ms=RUNNING)

    core = ref.RefCore()
    signed = list(base_signed)
    for i in range(1, 32):
        if regs[i] != base_regs[i]:
            signed[i] = to_signed(regs[i])
    core.regs = signed
    core.pc = pc
    core.mem = dict(mem_bytes)
    core.step()

    stepped = step(s)

    exp_mem = s.mem
    for a, v in core.mem.items():
        if mem_bytes.get(a, 0) != v:
            exp_mem = exp_mem.with_byte(a, v)
    expected = MachineState(
        regs=tuple(v % TWO32 for v in core.regs),
        pc=core.pc,
        mem=exp_mem,
        ms=RUNNING if core.illegal is None
        else IllegalInstruction(*core.illegal),
    )
    if stepped == expected:
        return None
    diff = state_writes(stepped, expected)
    return (f"word={word:08X} ops={ops} pc={pc:08X} "
            f"got-vs-want={diff[:4]}")


def run_differential(mnemonic: str, cases: int, seed: int) -> list[str]:
    """Run `cases` differential comparisons; returns failure messages."""
    rng = random.Random(seed)
    regs_pool = [random_regs(rng) for _ in range(64)]
    signed_pool = [[to_signed(v) for v in regs] for regs in regs_pool]
    failures: list[str] = []
    for n in range(cases):
        idx = n & 63
        message = differential_case(rng, mnemonic,
                                    regs_pool[idx], signed_pool[idx])
        if message is not None:
            failures.append(f"{mnemonic}[{n}]: {message}")
            if len(failures) >= 3:
                break
    return failures
