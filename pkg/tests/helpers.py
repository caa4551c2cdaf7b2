"""Test-side oracles that share no code with the package under test."""
from __future__ import annotations

import numpy as np

from modadd.circuit import Circuit, GateKind

_H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
_T = np.diag([1, np.exp(1j * np.pi / 4)])
_S = np.diag([1, 1j])
_MATS = {
    GateKind.H: _H,
    GateKind.T: _T,
    GateKind.TDG: _T.conj(),
    GateKind.S: _S,
    GateKind.SDG: _S.conj(),
}


def gate_matrix(gate, width: int) -> np.ndarray:
    """Full 2^w x 2^w matrix of one gate, built index by index."""
    dim = 1 << width
    m = np.zeros((dim, dim), dtype=complex)
    if gate.kind in _MATS:
        (q,) = gate.operands
        u = _MATS[gate.kind]
        for col in range(dim):
            b = col >> q & 1
            for nb in (0, 1):
                m[(col & ~(1 << q)) | (nb << q), col] += u[nb, b]
        return m
    *ctrls, tgt = gate.operands
    for col in range(dim):
        fire = all(col >> c & 1 for c in ctrls)
        m[col ^ (1 << tgt) if fire else col, col] = 1
    return m


def dense_unitary(circuit: Circuit) -> np.ndarray:
    u = np.eye(1 << circuit.width, dtype=complex)
    for g in circuit.gates:
        u = gate_matrix(g, circuit.width) @ u
    return u


def toffoli_matrix(width: int, a: int, b: int, t: int) -> np.ndarray:
    dim = 1 << width
    m = np.zeros((dim, dim))
    for x in range(dim):
        m[x ^ (1 << t) if (x >> a & 1 and x >> b & 1) else x, x] = 1
    return m


def apply_classical(circuit: Circuit, state: int) -> int:
    """Straight-line interpreter, one basis state at a time."""
    bits = [state >> q & 1 for q in range(circuit.width)]
    for g in circuit.gates:
        *ctrls, tgt = g.operands
        if all(bits[c] for c in ctrls):
            bits[tgt] ^= 1
    return sum(b << q for q, b in enumerate(bits))


def longest_path(circuit: Circuit, weight) -> int:
    """Longest weighted path through the explicit gate dependency DAG (O(g^2))."""
    gates = circuit.gates
    best = []
    for i, g in enumerate(gates):
        pred = [best[j] for j in range(i) if set(gates[j].operands) & set(g.operands)]
        best.append(max(pred, default=0) + weight(g))
    return max(best, default=0)


def registers(layout, state: int) -> dict[str, int]:
    return {s.name: state >> s.start & ((1 << len(s)) - 1) for s in layout.segments}


def pack(layout, **regs: int) -> int:
    return sum(regs.get(s.name, 0) << s.start for s in layout.segments)
