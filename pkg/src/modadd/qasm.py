"""OpenQASM 2.0 export and a parser for the subset we emit.

The register layout travels in ``// @segment`` comment lines so that a round
trip restores it; other tools simply see comments.
"""
from __future__ import annotations

import re

from .circuit import Circuit, CircuitError, Gate, GateKind, RegisterLayout, Segment

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'

_QREG = re.compile(r"^qreg\s+q\[(\d+)\]$")
_GATE = re.compile(r"^([a-z]+)\s+(q\[\d+\](?:\s*,\s*q\[\d+\])*)$")
_INDEX = re.compile(r"q\[(\d+)\]")
_SEGMENT = re.compile(r"^//\s*@segment\s+(\S+)\s+(\S+)\s+(\d+)\s+(\d+)\s*$")
_N = re.compile(r"^//\s*@n\s+(\d+)\s*$")


class QasmError(CircuitError):
    pass


def export_qasm(circuit: Circuit) -> str:
    lines = [HEADER.rstrip("\n")]
    if circuit.layout.n is not None:
        lines.append(f"// @n {circuit.layout.n}")
    for s in circuit.layout.segments:
        lines.append(f"// @segment {s.name} {s.role} {s.start} {s.stop}")
    lines.append(f"qreg q[{circuit.width}];")
    for g in circuit.gates:
        args = ",".join(f"q[{q}]" for q in g.operands)
        lines.append(f"{g.kind.value} {args};")
    return "\n".join(lines) + "\n"


def parse_qasm(text: str) -> Circuit:
    width = None
    gates: list[Gate] = []
    segments: list[Segment] = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("//"):
            if m := _SEGMENT.match(line):
                segments.append(Segment(m[1], m[2], int(m[3]), int(m[4])))
            elif m := _N.match(line):
                n = int(m[1])
            continue
        line = line.split("//", 1)[0].strip()
        for stmt in filter(None, (s.strip() for s in line.split(";"))):
            if stmt == "OPENQASM 2.0" or stmt == 'include "qelib1.inc"':
                continue
            if m := _QREG.match(stmt):
                if width is not None:
                    raise QasmError(f"line {lineno}: only one qreg is supported")
                width = int(m[1])
                continue
            m = _GATE.match(stmt)
            if m is None:
                raise QasmError(f"line {lineno}: unsupported statement {stmt!r}")
            try:
                kind = GateKind(m[1])
            except ValueError:
                raise QasmError(f"line {lineno}: unsupported statement {stmt!r}") from None
            if width is None:
                raise QasmError(f"line {lineno}: gate before qreg declaration")
            operands = tuple(int(i) for i in _INDEX.findall(m[2]))
            if any(q >= width for q in operands):
                raise QasmError(f"line {lineno}: malformed index in {stmt!r}")
            gates.append(Gate(kind, operands))
    if width is None:
        raise QasmError("missing qreg declaration")
    return Circuit(width, tuple(gates), RegisterLayout(tuple(segments), n))
