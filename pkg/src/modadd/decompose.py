"""Toffoli lowering to Clifford+T.

Two networks are provided:

* ``0at3``: no ancillae, seven T gates, T-depth 3 (7 CNOT, 2 H).
* ``4at1``: four clean ancillae, seven T gates all in one layer. When a whole
  circuit is lowered with it, one shared pool of four ancillae is appended
  after the existing qubits and reused by every Toffoli, since each network
  returns its ancillae to |0>.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .circuit import (
    CNOT,
    H,
    T,
    Circuit,
    CircuitError,
    Gate,
    GateKind,
    Tdg,
)


class Decomposition(str, Enum):
    NONE = "none"
    ZERO_ANCILLA_TDEPTH_3 = "0at3"
    FOUR_ANCILLA_TDEPTH_1 = "4at1"


@dataclass(frozen=True)
class DecompositionStrategy:
    kind: Decomposition = Decomposition.NONE
    ancilla_policy: str = "reuse-pool"

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Decomposition(self.kind))
        if self.ancilla_policy != "reuse-pool":
            raise ValueError(f"unsupported ancilla policy {self.ancilla_policy!r}")

    @property
    def extra_qubits(self) -> int:
        return 4 if self.kind is Decomposition.FOUR_ANCILLA_TDEPTH_1 else 0


POOL_SIZE = 4


def _check_toffoli(gate: Gate) -> tuple[int, int, int]:
    if gate.kind is not GateKind.TOFFOLI:
        raise CircuitError(f"expected a Toffoli, got {gate}")
    return gate.operands


def decompose_0at3(gate: Gate) -> list[Gate]:
    a, b, t = _check_toffoli(gate)
    # phase polynomial of CCZ on parities x,y,z | x^y, x^y^z, x^z | y^z
    return [
        H(t),
        T(a), T(b), T(t),
        CNOT(b, a), CNOT(a, t), CNOT(t, b),
        Tdg(a), Tdg(b), T(t),
        CNOT(a, b), CNOT(a, t),
        Tdg(b),
        CNOT(t, b), CNOT(b, a),
        H(t),
    ]


def decompose_4at1(gate: Gate, ancillae: Sequence[int]) -> list[Gate]:
    a, b, t = _check_toffoli(gate)
    if len(ancillae) < POOL_SIZE:
        raise CircuitError(f"4at1 needs {POOL_SIZE} ancillae, got {len(ancillae)}")
    p0, p1, p2, p3 = ancillae[:POOL_SIZE]
    if len({a, b, t, p0, p1, p2, p3}) != 7:
        raise CircuitError("ancillae collide with the Toffoli operands")
    encode = [
        H(t), CNOT(b, p2), CNOT(a, p0),
        CNOT(b, p1), CNOT(t, p2), CNOT(p0, p3),
        CNOT(a, p1), CNOT(t, p3), CNOT(p2, p0),
    ]
    # p0 = a^b^t, p1 = a^b, p2 = b^t, p3 = a^t
    phase = [T(a), T(b), T(t), T(p0), Tdg(p1), Tdg(p2), Tdg(p3)]
    return encode + phase + encode[::-1]


def lower(circuit: Circuit, strategy: DecompositionStrategy | Decomposition | str) -> Circuit:
    """Replace every Toffoli by the chosen Clifford+T network."""
    if not isinstance(strategy, DecompositionStrategy):
        strategy = DecompositionStrategy(Decomposition(strategy))
    kind = strategy.kind
    if kind is Decomposition.NONE:
        return circuit
    bad = circuit.kinds() - {GateKind.X, GateKind.CNOT, GateKind.TOFFOLI}
    if bad:
        raise CircuitError(f"cannot lower a circuit containing {sorted(k.name for k in bad)}")

    width, layout = circuit.width, circuit.layout
    if kind is Decomposition.FOUR_ANCILLA_TDEPTH_1:
        pool = list(range(width, width + POOL_SIZE))
        width += POOL_SIZE
        if layout.segments:
            layout = layout.with_segment("pool", "ancilla", POOL_SIZE)

    gates: list[Gate] = []
    for g in circuit.gates:
        if g.kind is not GateKind.TOFFOLI:
            gates.append(g)
        elif kind is Decomposition.ZERO_ANCILLA_TDEPTH_3:
            gates.extend(decompose_0at3(g))
        else:
            gates.extend(decompose_4at1(g, pool))
    return Circuit(width, tuple(gates), layout)
