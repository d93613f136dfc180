"""Line-oriented circuit language for small statevector experiments.

Grammar (exact; one statement per line, tokens separated by one or more
spaces, case-sensitive mnemonics, base-10 non-negative integers):

    file    := line*
    line    := comment | blank | stmt
    comment := '#' <anything to end of line>
    stmt    := 'qubits' INT | 'h' INT | 'x' INT | 'cnot' INT INT
             | 'measure' INT

The 'qubits' declaration must appear exactly once, before any other
statement. Files use UTF-8 text and conventionally carry the `.qc`
extension. All diagnostics carry the offending line number.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .statevector import (
    MAX_QUBITS,
    RandomSource,
    _apply_cnot,
    _apply_hadamard,
    _apply_not,
    _born_probabilities,
    _collapse_branch,
    _select_outcome,
)


class ParseError(ValueError):
    """Malformed circuit text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message}, line {line}"
        super().__init__(message)


@dataclass(frozen=True)
class Instruction:
    """One executable statement; ``line`` records where it was parsed.

    Line numbers are bookkeeping, not identity: comparisons ignore them
    so a rendered-and-reparsed circuit is equal to its source circuit.
    """

    op: str
    args: tuple[int, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Circuit:
    """Validated program: qubit count plus the statements after it."""

    num_qubits: int
    instructions: tuple[Instruction, ...]


class MeasurementRecord(NamedTuple):
    line: int
    qubit: int
    bit: int


@dataclass(frozen=True)
class RunRecord:
    """Outcomes of one shot, in program order."""

    shot_index: int
    measurement_outcomes: tuple[MeasurementRecord, ...]


_ARITY = {"qubits": 1, "h": 1, "x": 1, "cnot": 2, "measure": 1}
_INT_RE = re.compile(r"[0-9]+\Z")


def parse(text: str) -> Circuit:
    """Parse circuit text, validating structure and qubit indices."""
    num_qubits: int | None = None
    instructions: list[Instruction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        if raw.lstrip(" ").startswith("#"):
            continue
        tokens = [t for t in raw.split(" ") if t]
        op = tokens[0]
        if op not in _ARITY:
            raise ParseError(f"unknown mnemonic '{op}'", lineno)
        if len(tokens) - 1 != _ARITY[op]:
            raise ParseError(
                f"'{op}' takes {_ARITY[op]} operand(s), got {len(tokens) - 1}", lineno
            )
        args = []
        for tok in tokens[1:]:
            if not _INT_RE.match(tok):
                raise ParseError(f"malformed integer '{tok}'", lineno)
            args.append(int(tok))
        if op == "qubits":
            if num_qubits is not None:
                raise ParseError("duplicate qubits declaration", lineno)
            if not 1 <= args[0] <= MAX_QUBITS:
                raise ParseError(
                    f"qubit count must be between 1 and {MAX_QUBITS}, got {args[0]}",
                    lineno,
                )
            num_qubits = args[0]
            continue
        if num_qubits is None:
            raise ParseError("statement before qubits declaration", lineno)
        for q in args:
            if q >= num_qubits:
                raise ParseError(
                    f"qubit index {q} out of range for {num_qubits} qubit(s)", lineno
                )
        if op == "cnot" and args[0] == args[1]:
            raise ParseError("cnot operands must differ", lineno)
        instructions.append(Instruction(op, tuple(args), lineno))
    if num_qubits is None:
        raise ParseError("missing qubits declaration")
    return Circuit(num_qubits, tuple(instructions))


def render(circuit: Circuit) -> str:
    """Canonical text for a circuit; parse(render(c)) == c."""
    lines = [f"qubits {circuit.num_qubits}"]
    lines.extend(f"{ins.op} {' '.join(str(a) for a in ins.args)}" for ins in circuit.instructions)
    return "\n".join(lines) + "\n"


def load(path) -> Circuit:
    """Parse a circuit file (UTF-8)."""
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def execute(circuit: Circuit, shots: int, rng: RandomSource) -> list[RunRecord]:
    """Run the circuit ``shots`` times, each from the ground state.

    Measurements collapse the state and consume one uniform each; shots
    consume the stream sequentially, so a fixed seed reproduces every
    record bit for bit.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    amps = np.zeros(1 << circuit.num_qubits, dtype=np.complex128)
    records = []
    for shot in range(shots):
        amps[:] = 0.0
        amps[0] = 1.0
        outcomes = []
        for ins in circuit.instructions:
            if ins.op == "h":
                _apply_hadamard(amps, ins.args[0])
            elif ins.op == "x":
                _apply_not(amps, ins.args[0])
            elif ins.op == "cnot":
                _apply_cnot(amps, ins.args[0], ins.args[1], circuit.num_qubits)
            else:
                qubit = ins.args[0]
                p0, p1 = _born_probabilities(amps, qubit)
                bit = _select_outcome(float(p0), float(p1), rng.random())
                _collapse_branch(amps, qubit, bit, float(p1 if bit else p0))
                outcomes.append(MeasurementRecord(ins.line, qubit, bit))
        records.append(RunRecord(shot, tuple(outcomes)))
    return records
