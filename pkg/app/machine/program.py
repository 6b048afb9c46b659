# app/machine/program.py
"""
Gödel Numbering of Programs

encode writes each instruction as gamma(opcode + 1) followed by
gamma(operand + 1) for each operand, concatenates, and reads the bit string
behind a leading 1 as a binary number. decode is total: 0 and every number
whose bits do not parse as a complete program decode to LOOP, the canonical
diverger. Index 1 is the empty program, which halts at once and so computes
the identity.

For a fixed program shape the index is strictly increasing in every constant
operand, which is what makes smn and pad monotone.
"""

from functools import lru_cache
from typing import Sequence, Tuple

from app.machine.coding import gamma, read_gamma
from app.machine.instructions import ARITY, DECJZ, Instruction, Opcode, ProgramSyntaxError

Program = Tuple[Instruction, ...]

LOOP: Program = (DECJZ(1, 0),)
EMPTY_PROGRAM: Program = ()


def encode(program: Sequence[Instruction]) -> int:
    bits = []
    for instr in program:
        bits.append(gamma(int(instr.op) + 1))
        bits.extend(gamma(a + 1) for a in instr.args)
    return int("1" + "".join(bits), 2)


@lru_cache(maxsize=131072)
def decode(index: int) -> Program:
    if index <= 0:
        return LOOP
    bits = bin(index)[3:]
    pos, length = 0, len(bits)
    code = []
    while pos < length:
        read = read_gamma(bits, pos)
        if read is None or read[0] - 1 >= len(Opcode):
            return LOOP
        op = Opcode(read[0] - 1)
        pos = read[1]
        args = []
        for _ in range(ARITY[op]):
            read = read_gamma(bits, pos)
            if read is None:
                return LOOP
            args.append(read[0] - 1)
            pos = read[1]
        try:
            code.append(Instruction(op, tuple(args)))
        except ProgramSyntaxError:
            return LOOP
    return tuple(code)


IDENTITY = encode(EMPTY_PROGRAM)
LOOP_INDEX = 0
