"""Exhaustive verification of blocks against integer oracles.

Each block gets an oracle over its named registers. Inputs are enumerated
over the block's domain (every register value, except clean qubits pinned to
0 and the modular adder's ``a < N``), pushed through the circuit, and the
outputs are compared register by register. Toffoli-level circuits go through
the bit-sliced engine; lowered Clifford+T circuits through the statevector
engine, one basis column at a time, with the ancilla pool pinned to |0>.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .blocks import (
    build_adder,
    build_carry,
    build_ctrl_incrementer,
    build_ctrl_recursive_adder,
    build_incrementer,
    build_recursive_adder,
)
from .circuit import CLASSICAL_KINDS, Circuit, RegisterLayout
from .decompose import Decomposition, lower
from .modadder import ModAdderSpec, build_mod_adder
from .simulate import EQUIV_TOL, run_batch, run_statevector

Registers = dict[str, int]
Oracle = Callable[[Registers], Registers]

# registers that must enter (and leave) as 0
CLEAN = ("flag", "pool")

OPS = ("adder", "incrementer", "ctrl-incrementer", "carry", "recadd", "ctrl-recadd", "cmodadd")
CONSTANT_OPS = ("carry", "recadd", "ctrl-recadd", "cmodadd")


def oracle_for(op: str, n: int, c: int = 0, modulus: int | None = None) -> Oracle:
    mask = (1 << n) - 1
    if op == "adder":
        return lambda r: {**r, "y": (r["x"] + r["y"]) & mask}
    if op == "incrementer":
        return lambda r: {**r, "a": (r["a"] + 1) & mask}
    if op == "ctrl-incrementer":
        return lambda r: {**r, "a": (r["a"] + r["ctrl"]) & mask}
    if op == "carry":
        return lambda r: {**r, "out": r["out"] ^ ((r["a"] + c) >> n & 1)}
    if op == "recadd":
        return lambda r: {**r, "a": (r["a"] + c) & mask}
    if op == "ctrl-recadd":
        return lambda r: {**r, "a": (r["a"] + r["ctrl"] * c) & mask}
    if op == "cmodadd":
        if modulus is None:
            raise ValueError("cmodadd oracle needs a modulus")
        return lambda r: {**r, "a": (r["a"] + c) % modulus}
    raise ValueError(f"unknown op {op!r}")


def build_op(
    op: str,
    n: int,
    c: int = 0,
    modulus: int | None = None,
    parallel: bool = True,
) -> Circuit:
    if op == "adder":
        return build_adder(n)
    if op == "incrementer":
        return build_incrementer(n)
    if op == "ctrl-incrementer":
        return build_ctrl_incrementer(n)
    if op == "carry":
        return build_carry(n, c)
    if op == "recadd":
        return build_recursive_adder(n, c, parallel=parallel)
    if op == "ctrl-recadd":
        return build_ctrl_recursive_adder(n, c, parallel=parallel)
    if op == "cmodadd":
        if modulus is None:
            raise ValueError("cmodadd needs a modulus")
        return build_mod_adder(ModAdderSpec(n, c, modulus), parallel=parallel)
    raise ValueError(f"unknown op {op!r}")


def _domains(layout: RegisterLayout, limits: Mapping[str, int]) -> dict[str, range]:
    out = {}
    for seg in layout.segments:
        if seg.name in CLEAN:
            out[seg.name] = range(1)
        else:
            out[seg.name] = range(limits.get(seg.name, 1 << len(seg)))
    return out


def _pack(layout: RegisterLayout, regs: Mapping[str, int]) -> int:
    return sum(regs.get(s.name, 0) << s.start for s in layout.segments)


def _unpack(layout: RegisterLayout, state: int) -> Registers:
    return {s.name: state >> s.start & ((1 << len(s)) - 1) for s in layout.segments}


@dataclass
class BlockFailure:
    inputs: Registers
    expected: Registers
    got: Registers | None


@dataclass
class BlockReport:
    label: str
    engine: str
    cases: int = 0
    failed: int = 0
    # first few counterexamples only
    failures: list[BlockFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.label} [{self.engine}]: {self.cases - self.failed}/{self.cases} {status}"


def _column_image(circuit: Circuit, state: int) -> int | None:
    psi = run_statevector(circuit, state)
    k = int(np.argmax(np.abs(psi)))
    return k if abs(abs(psi[k]) - 1) <= EQUIV_TOL else None


def verify_circuit(
    circuit: Circuit,
    oracle: Oracle,
    label: str,
    limits: Mapping[str, int] | None = None,
    max_failures: int = 20,
) -> BlockReport:
    """Enumerate the input domain of ``circuit`` and check every image."""
    layout = circuit.layout
    domains = _domains(layout, limits or {})
    names = list(domains)
    regs_list = [dict(zip(names, vals)) for vals in itertools.product(*domains.values())]
    states = [_pack(layout, r) for r in regs_list]

    classical = circuit.kinds() <= CLASSICAL_KINDS
    if classical:
        images: list[int | None] = run_batch(circuit, states).tolist()
    else:
        images = [_column_image(circuit, s) for s in states]

    report = BlockReport(label, "bitvector" if classical else "statevector", cases=len(states))
    for regs, img in zip(regs_list, images):
        expected = {k: v for k, v in oracle(regs).items() if k in domains}
        got = None if img is None else _unpack(layout, img)
        if got != expected:
            report.failed += 1
            if len(report.failures) < max_failures:
                report.failures.append(BlockFailure(regs, expected, got))
    return report


def verify_op(
    op: str,
    n: int,
    c: int = 0,
    modulus: int | None = None,
    decompose: Decomposition | str = Decomposition.NONE,
    parallel: bool = True,
) -> BlockReport:
    circuit = lower(build_op(op, n, c, modulus, parallel), decompose)
    limits = {"a": modulus} if op == "cmodadd" else {}
    label = f"{op} n={n}"
    if op in CONSTANT_OPS:
        label += f" c={c}"
    if op == "cmodadd":
        label += f" N={modulus}"
    strategy = Decomposition(decompose).value
    if strategy != "none":
        label += f" {strategy}"
    return verify_circuit(circuit, oracle_for(op, n, c, modulus), label, limits)


def constants_for(op: str, n: int):
    """Every admissible (c, modulus) pair for ``op`` at ``n`` bits."""
    if op == "cmodadd":
        for modulus in range(1, 1 << n):
            for c in range(modulus):
                yield c, modulus
    elif op in CONSTANT_OPS:
        for c in range(1 << n):
            yield c, None
    else:
        yield 0, None
