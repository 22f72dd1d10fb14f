"""Command-line driver: run images, assemble words, decode words.

Exit codes: 0 for a run that ends at the expected halt (a frozen state
whose illegal word is the 0x00000000 sentinel, a deliberate Halted
status, or budget exhaustion under --allow-budget), 2 for a run that
froze on any other word or ran out of budget without --allow-budget,
and 1 for usage, parse, or load errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import isa
from .bits import MASK32, to_signed
from .decode import DecodedInstruction, decode
from .encode import EncodingRangeError, assemble, operand_names
from .image import (ImageError, dump_memory, dump_registers, load_image,
                    parse_image_file)
from .isa import SPECS
from .state import Halted, IllegalInstruction, init_state
from .step import run
from .trace import render_status, run_traced

SENTINEL_WORD = 0x00000000


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the CLI contract wants 1."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _hex_word(text: str) -> int:
    try:
        value = int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad hex value {text!r}") from None
    if not 0 <= value <= MASK32:
        raise argparse.ArgumentTypeError(f"{text!r} exceeds 32 bits")
    return value


def _count(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad count {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("count must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rv32-sim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="load an image and step it")
    p_run.add_argument("image", help=".hex text image or flat binary")
    p_run.add_argument("--steps", type=_count, default=1_000_000,
                       help="step budget (default 1000000)")
    p_run.add_argument("--base", type=_hex_word, default=0,
                       help="load address for flat binaries (hex)")
    p_run.add_argument("--entry", type=_hex_word, default=None,
                       help="override the entry pc (hex)")
    p_run.add_argument("--reg", action="append", default=[],
                       metavar="N=HEX", help="initial register value")
    p_run.add_argument("--trace", metavar="PATH",
                       help="write one JSON record per step")
    p_run.add_argument("--dump-regs", action="store_true",
                       help="print the final register file")
    p_run.add_argument("--dump-mem", nargs=2, metavar=("ADDR", "LEN"),
                       help="print LEN bytes of final memory at hex ADDR")
    p_run.add_argument("--allow-budget", action="store_true",
                       help="exit 0 when the budget runs out")
    p_run.add_argument("--strict-encode", action="store_true",
                       help="accepted for interface compatibility; "
                            "only assembly consumes it")

    p_asm = sub.add_parser("asm-word", help="encode one instruction")
    p_asm.add_argument("mnemonic")
    p_asm.add_argument("fields", nargs="*",
                       help="operands in encoder order (int, 0x ok)")
    p_asm.add_argument("--strict-encode", action="store_true",
                       help="reject out-of-range operands")

    p_dec = sub.add_parser("decode-word", help="decode one hex word")
    p_dec.add_argument("word", type=_hex_word)
    return parser


def _render(d: DecodedInstruction) -> str:
    spec = SPECS[d.mnemonic]
    fmt = spec.fmt
    if fmt == isa.R:
        return f"{d.mnemonic} x{d.rd}, x{d.rs1}, x{d.rs2}"
    if fmt == isa.SHIFT:
        return f"{d.mnemonic} x{d.rd}, x{d.rs1}, {d.shamt}"
    if fmt == isa.I:
        if spec.opcode in (isa.OPCODE_LOAD, isa.OPCODE_JALR):
            return f"{d.mnemonic} x{d.rd}, {to_signed(d.imm)}(x{d.rs1})"
        return f"{d.mnemonic} x{d.rd}, x{d.rs1}, {to_signed(d.imm)}"
    if fmt == isa.S:
        return f"{d.mnemonic} x{d.rs2}, {to_signed(d.imm)}(x{d.rs1})"
    if fmt == isa.B:
        return f"{d.mnemonic} x{d.rs1}, x{d.rs2}, {to_signed(d.imm)}"
    if fmt == isa.U:
        return f"{d.mnemonic} x{d.rd}, 0x{d.imm >> 12:X}"
    return f"{d.mnemonic} x{d.rd}, {to_signed(d.imm)}"


def _parse_reg_init(text: str) -> tuple[int, int]:
    name, eq, value = text.partition("=")
    if not eq:
        raise ValueError(f"bad --reg {text!r} (want N=HEX)")
    if name.startswith("x"):
        name = name[1:]
    if not name.isdigit():
        raise ValueError(f"bad --reg register {text!r}")
    word = int(value, 16) if value else -1
    if not 0 <= word <= MASK32:
        raise ValueError(f"bad --reg value {text!r}")
    return int(name), word


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        image = parse_image_file(args.image, base=args.base)
        if args.entry is not None:
            image = replace(image, entry=args.entry)
        if args.reg:
            extra = tuple(_parse_reg_init(text) for text in args.reg)
            image = replace(image, regs=image.regs + extra)
        state = load_image(image, init_state())
    except (OSError, ImageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.trace:
        outcome, records = run_traced(state, args.steps)
        try:
            with open(args.trace, "w") as fh:
                for record in records:
                    fh.write(record.to_json() + "\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    else:
        outcome = run(state, args.steps)
    final = outcome.final_state
    print(f"steps {outcome.steps_executed}")
    print(f"stop  {outcome.stop_reason.value}")
    print(f"pc    {final.pc:08X}")
    print(f"ms    {render_status(final.ms)}")
    if args.dump_regs:
        print("# registers")
        for line in dump_registers(final):
            print(line)
    if args.dump_mem:
        try:
            addr = _hex_word(args.dump_mem[0])
            length = _count(args.dump_mem[1])
        except argparse.ArgumentTypeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"# memory {addr:08X}+{length}")
        for line in dump_memory(final, addr, length):
            print(line)
    ms = final.ms
    if isinstance(ms, IllegalInstruction):
        return 0 if ms.word == SENTINEL_WORD else 2
    if isinstance(ms, Halted):
        return 0
    return 0 if args.allow_budget else 2


def _cmd_asm_word(args: argparse.Namespace) -> int:
    if args.mnemonic not in SPECS:
        print(f"error: unknown mnemonic {args.mnemonic!r}", file=sys.stderr)
        return 1
    try:
        fields = tuple(int(text, 0) for text in args.fields)
    except ValueError:
        print(f"error: fields must be integers: {args.fields}",
              file=sys.stderr)
        return 1
    try:
        word = assemble(args.mnemonic, fields, strict=args.strict_encode)
    except TypeError:
        names = ", ".join(operand_names(args.mnemonic))
        print(f"error: {args.mnemonic} takes: {names}", file=sys.stderr)
        return 1
    except EncodingRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{word:08X}")
    return 0


def _cmd_decode_word(args: argparse.Namespace) -> int:
    decoded = decode(args.word)
    print("illegal" if decoded is None else _render(decoded))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "asm-word":
        return _cmd_asm_word(args)
    return _cmd_decode_word(args)


if __name__ == "__main__":
    sys.exit(main())
