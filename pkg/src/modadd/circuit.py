"""Gate-level circuit representation.

Circuits are immutable: every transformation returns a new :class:`Circuit`.
Qubits are flat integer indices; :class:`RegisterLayout` only names ranges of
them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class GateKind(str, Enum):
    X = "x"
    CNOT = "cx"
    TOFFOLI = "ccx"
    H = "h"
    T = "t"
    TDG = "tdg"
    S = "s"
    SDG = "sdg"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {
    GateKind.X: 1,
    GateKind.CNOT: 2,
    GateKind.TOFFOLI: 3,
    GateKind.H: 1,
    GateKind.T: 1,
    GateKind.TDG: 1,
    GateKind.S: 1,
    GateKind.SDG: 1,
}

_INVERSE_KIND = {
    GateKind.T: GateKind.TDG,
    GateKind.TDG: GateKind.T,
    GateKind.S: GateKind.SDG,
    GateKind.SDG: GateKind.S,
}

CLASSICAL_KINDS = frozenset({GateKind.X, GateKind.CNOT, GateKind.TOFFOLI})
T_KINDS = frozenset({GateKind.T, GateKind.TDG})


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    """One primitive gate. Controls come first, the target is last."""

    kind: GateKind
    operands: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "operands", tuple(int(q) for q in self.operands))
        if len(self.operands) != self.kind.arity:
            raise CircuitError(
                f"{self.kind.name} takes {self.kind.arity} operands, got {len(self.operands)}"
            )
        if len(set(self.operands)) != len(self.operands):
            raise CircuitError(f"duplicate operands in {self}")
        if any(q < 0 for q in self.operands):
            raise CircuitError(f"negative qubit index in {self}")

    @property
    def target(self) -> int:
        return self.operands[-1]

    @property
    def controls(self) -> tuple[int, ...]:
        return self.operands[:-1]

    def inverse(self) -> Gate:
        return Gate(_INVERSE_KIND.get(self.kind, self.kind), self.operands)

    def remap(self, mapping: Sequence[int]) -> Gate:
        return Gate(self.kind, tuple(mapping[q] for q in self.operands))

    def __str__(self) -> str:
        return f"{self.kind.name}({','.join(map(str, self.operands))})"


def X(q: int) -> Gate:
    return Gate(GateKind.X, (q,))


def CNOT(c: int, t: int) -> Gate:
    return Gate(GateKind.CNOT, (c, t))


def Toffoli(c0: int, c1: int, t: int) -> Gate:
    return Gate(GateKind.TOFFOLI, (c0, c1, t))


def H(q: int) -> Gate:
    return Gate(GateKind.H, (q,))


def T(q: int) -> Gate:
    return Gate(GateKind.T, (q,))


def Tdg(q: int) -> Gate:
    return Gate(GateKind.TDG, (q,))


def S(q: int) -> Gate:
    return Gate(GateKind.S, (q,))


def Sdg(q: int) -> Gate:
    return Gate(GateKind.SDG, (q,))


ROLES = ("target", "operand", "output", "garbage", "flag", "control", "ancilla")


@dataclass(frozen=True)
class Segment:
    name: str
    role: str
    start: int
    stop: int

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise CircuitError(f"unknown role {self.role!r}")
        if not 0 <= self.start < self.stop:
            raise CircuitError(f"empty or negative segment {self.name!r}")

    @property
    def qubits(self) -> range:
        return range(self.start, self.stop)

    def __len__(self) -> int:
        return self.stop - self.start


@dataclass(frozen=True)
class RegisterLayout:
    """Named, contiguous qubit ranges. Metadata only; simulation ignores it."""

    segments: tuple[Segment, ...] = ()
    n: int | None = None

    @classmethod
    def build(cls, *specs: tuple[str, str, int], n: int | None = None) -> RegisterLayout:
        """Lay out ``(name, role, size)`` triples back to back from qubit 0."""
        segs, pos = [], 0
        for name, role, size in specs:
            if size == 0:
                continue
            segs.append(Segment(name, role, pos, pos + size))
            pos += size
        return cls(tuple(segs), n)

    @property
    def width(self) -> int:
        return max((s.stop for s in self.segments), default=0)

    def __getitem__(self, name: str) -> Segment:
        for s in self.segments:
            if s.name == name:
                return s
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(s.name == name for s in self.segments)

    def qubits(self, name: str) -> list[int]:
        return list(self[name].qubits)

    def with_segment(self, name: str, role: str, size: int) -> RegisterLayout:
        start = self.width
        return RegisterLayout(self.segments + (Segment(name, role, start, start + size),), self.n)

    def check(self, width: int) -> None:
        covered: set[int] = set()
        for s in self.segments:
            if covered.intersection(s.qubits):
                raise CircuitError(f"segment {s.name!r} overlaps another")
            covered.update(s.qubits)
        if covered != set(range(width)):
            raise CircuitError("layout does not cover the circuit width")


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...] = ()
    layout: RegisterLayout = field(default_factory=RegisterLayout)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            _check_range(g, self.width)
        if self.layout.segments:
            self.layout.check(self.width)

    @classmethod
    def from_layout(cls, layout: RegisterLayout, gates: Iterable[Gate] = ()) -> Circuit:
        return cls(layout.width, tuple(gates), layout)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def append(self, gate: Gate) -> Circuit:
        _check_range(gate, self.width)
        return Circuit(self.width, self.gates + (gate,), self.layout)

    def extend(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.width, self.gates + tuple(gates), self.layout)

    def __add__(self, other: Circuit) -> Circuit:
        if other.width != self.width:
            raise CircuitError(f"width mismatch: {self.width} vs {other.width}")
        return self.extend(other.gates)

    def inverse(self) -> Circuit:
        return inverse(self)

    def count(self, *kinds: GateKind) -> int:
        return sum(1 for g in self.gates if g.kind in kinds)

    def kinds(self) -> set[GateKind]:
        return {g.kind for g in self.gates}

    def __str__(self) -> str:
        body = " ".join(str(g) for g in self.gates)
        return f"Circuit(width={self.width}, gates=[{body}])"


def _check_range(gate: Gate, width: int) -> None:
    bad = [q for q in gate.operands if q >= width]
    if bad:
        raise CircuitError(f"qubit index out of range in {gate} (width {width})")


def append(circuit: Circuit, gate: Gate) -> Circuit:
    return circuit.append(gate)


def inverse_gates(gates: Sequence[Gate]) -> list[Gate]:
    return [g.inverse() for g in reversed(gates)]


def inverse(circuit: Circuit) -> Circuit:
    return Circuit(circuit.width, tuple(inverse_gates(circuit.gates)), circuit.layout)


def controlled_gates(gates: Sequence[Gate], control: int) -> list[Gate]:
    out = []
    for g in gates:
        if control in g.operands:
            raise CircuitError(f"control {control} collides with {g}")
        if g.kind is GateKind.X:
            out.append(CNOT(control, g.target))
        elif g.kind is GateKind.CNOT:
            out.append(Toffoli(control, *g.operands))
        else:
            raise CircuitError(f"{g.kind.name} is not controllable at this layer")
    return out


def controlled(circuit: Circuit, control: int) -> Circuit:
    """Condition every gate on ``control``: X becomes CNOT, CNOT becomes Toffoli.

    A control index at or beyond the current width widens the circuit and adds
    a ``control`` segment to the layout.
    """
    width, layout = circuit.width, circuit.layout
    if control >= width:
        if control != width:
            raise CircuitError("control must be an existing qubit or the next free index")
        width += 1
        if layout.segments:
            layout = layout.with_segment("control", "control", 1)
    return Circuit(width, tuple(controlled_gates(circuit.gates, control)), layout)
