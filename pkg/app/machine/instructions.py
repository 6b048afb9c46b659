# app/machine/instructions.py
"""
Instruction Set and Program Text

The machine has unbounded natural-valued registers r0, r1, ... and seven
opcodes. r0 carries the input in and the output out.

    INC r          r := r + 1
    DECJZ r t      if r = 0 jump to instruction t, else r := r - 1
    QRY ra rd      rd := oracle(ra)
    HALT           stop, output r0
    SET r c        r := c
    PAIR rd ra rb  rd := pair(ra, rb)
    CALL p ra rd   rd := procedure p applied to ra

The text format has one instruction per line, `#` starts a comment and CALL
names its procedure: `CALL apply r0 r0`.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import List, Tuple

from app.machine.procedures import PROCEDURE_NAMES, procedure_id, UnknownProcedureError


class Opcode(IntEnum):
    INC = 0
    DECJZ = 1
    QRY = 2
    HALT = 3
    SET = 4
    PAIR = 5
    CALL = 6


ARITY = {
    Opcode.INC: 1,
    Opcode.DECJZ: 2,
    Opcode.QRY: 2,
    Opcode.HALT: 0,
    Opcode.SET: 2,
    Opcode.PAIR: 3,
    Opcode.CALL: 3,
}

# Operand kinds: "r" register, "n" natural constant or jump target, "p" procedure.
OPERANDS = {
    Opcode.INC: "r",
    Opcode.DECJZ: "rn",
    Opcode.QRY: "rr",
    Opcode.HALT: "",
    Opcode.SET: "rn",
    Opcode.PAIR: "rrr",
    Opcode.CALL: "prr",
}


class ProgramSyntaxError(ValueError):
    """Raised when program text cannot be parsed."""


@dataclass(frozen=True, slots=True)
class Instruction:
    op: Opcode
    args: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.args) != ARITY[self.op]:
            raise ProgramSyntaxError(
                f"{self.op.name} takes {ARITY[self.op]} operands, got {len(self.args)}"
            )
        if any(a < 0 for a in self.args):
            raise ProgramSyntaxError(f"Negative operand in {self.op.name}")
        if self.op is Opcode.CALL and self.args[0] >= len(PROCEDURE_NAMES):
            raise ProgramSyntaxError(f"Unknown procedure number {self.args[0]}")

    def __str__(self) -> str:
        parts = [self.op.name]
        for kind, value in zip(OPERANDS[self.op], self.args):
            if kind == "r":
                parts.append(f"r{value}")
            elif kind == "p":
                parts.append(PROCEDURE_NAMES[value])
            else:
                parts.append(str(value))
        return " ".join(parts)


# Shorthand constructors used by the program templates.
def INC(r: int) -> Instruction:
    return Instruction(Opcode.INC, (r,))


def DECJZ(r: int, target: int) -> Instruction:
    return Instruction(Opcode.DECJZ, (r, target))


def QRY(ra: int, rd: int) -> Instruction:
    return Instruction(Opcode.QRY, (ra, rd))


def HALT() -> Instruction:
    return Instruction(Opcode.HALT)


def SET(r: int, value: int) -> Instruction:
    return Instruction(Opcode.SET, (r, value))


def PAIR(rd: int, ra: int, rb: int) -> Instruction:
    return Instruction(Opcode.PAIR, (rd, ra, rb))


def CALL(name: str, ra: int, rd: int) -> Instruction:
    return Instruction(Opcode.CALL, (procedure_id(name), ra, rd))


class Parser:
    """Compiles program text into a tuple of instructions."""

    def compile(self, text: str) -> Tuple[Instruction, ...]:
        code: List[Instruction] = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            comment = line.find("#")
            if comment != -1:
                line = line[:comment]
            line = line.strip()
            if not line:
                continue
            fields = line.split()
            try:
                op = Opcode[fields[0].upper()]
            except KeyError:
                raise ProgramSyntaxError(f"line {lineno}: unknown opcode {fields[0]!r}") from None
            kinds = OPERANDS[op]
            if len(fields) - 1 != len(kinds):
                raise ProgramSyntaxError(
                    f"line {lineno}: {op.name} takes {len(kinds)} operands"
                )
            args = tuple(
                self.operand(kind, token, lineno) for kind, token in zip(kinds, fields[1:])
            )
            code.append(Instruction(op, args))
        return tuple(code)

    def operand(self, kind: str, token: str, lineno: int) -> int:
        if kind == "p":
            try:
                return procedure_id(token)
            except UnknownProcedureError as exc:
                raise ProgramSyntaxError(f"line {lineno}: {exc}") from None
        if kind == "r":
            if not token.lower().startswith("r"):
                raise ProgramSyntaxError(f"line {lineno}: expected a register, got {token!r}")
            token = token[1:]
        if not token.isdigit():
            raise ProgramSyntaxError(f"line {lineno}: expected a natural number, got {token!r}")
        return int(token)


def compile_program(text: str) -> Tuple[Instruction, ...]:
    return Parser().compile(text)


def format_program(program: Tuple[Instruction, ...]) -> str:
    return "\n".join(str(instr) for instr in program)
