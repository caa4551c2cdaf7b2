"""Verification engines.

``run_reversible``/``run_batch``/``permutation_of`` treat {X, CNOT, Toffoli}
circuits as classical bit permutations. ``run_batch`` and ``permutation_of``
are bit-sliced: every qubit is one Python integer holding that qubit's value
across all simulated inputs, so each gate is a single bitwise operation.

``run_statevector`` is a small dense simulator for the full Clifford+T
alphabet, used to check the Toffoli decompositions.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from .circuit import CLASSICAL_KINDS, Circuit, CircuitError, GateKind

MAX_PERMUTATION_WIDTH = 26
MAX_STATEVECTOR_WIDTH = 14
EQUIV_TOL = 1e-10
NORM_TOL = 1e-12


class SimulationError(CircuitError):
    pass


def _require_classical(circuit: Circuit) -> None:
    bad = circuit.kinds() - CLASSICAL_KINDS
    if bad:
        names = ", ".join(sorted(k.name for k in bad))
        raise SimulationError(f"non-classical gate(s) present: {names}")


def run_reversible(circuit: Circuit, state: int) -> int:
    """Apply the circuit to one basis state (bit i = qubit i)."""
    _require_classical(circuit)
    if not 0 <= state < (1 << circuit.width):
        raise SimulationError(f"basis state {state} does not fit {circuit.width} qubits")
    for g in circuit.gates:
        ops = g.operands
        if g.kind is GateKind.X:
            state ^= 1 << ops[0]
        elif g.kind is GateKind.CNOT:
            if state >> ops[0] & 1:
                state ^= 1 << ops[1]
        elif state >> ops[0] & 1 and state >> ops[1] & 1:
            state ^= 1 << ops[2]
    return state


def _slice(inputs: np.ndarray, width: int) -> list[int]:
    cols = []
    for q in range(width):
        bits = ((inputs >> np.uint64(q)) & np.uint64(1)).astype(np.uint8)
        cols.append(int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))
    return cols


def _unslice(cols: Sequence[int], count: int) -> np.ndarray:
    nbytes = (count + 7) // 8
    out = np.zeros(count, dtype=np.uint64)
    for q, col in enumerate(cols):
        raw = np.frombuffer(col.to_bytes(nbytes, "little"), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[:count].astype(np.uint64)
        out |= bits << np.uint64(q)
    return out


def _propagate(circuit: Circuit, cols: list[int], ones: int) -> list[int]:
    X, CX = GateKind.X, GateKind.CNOT
    for g in circuit.gates:
        ops = g.operands
        if g.kind is X:
            cols[ops[0]] ^= ones
        elif g.kind is CX:
            cols[ops[1]] ^= cols[ops[0]]
        else:
            cols[ops[2]] ^= cols[ops[0]] & cols[ops[1]]
    return cols


def run_batch(circuit: Circuit, inputs: Iterable[int]) -> np.ndarray:
    """Bit-parallel ``run_reversible`` over many basis states at once."""
    _require_classical(circuit)
    arr = np.asarray(list(inputs) if not isinstance(inputs, np.ndarray) else inputs, dtype=np.uint64)
    if arr.size == 0:
        return arr
    if circuit.width > 63:
        raise SimulationError("run_batch supports at most 63 qubits")
    if int(arr.max()) >> circuit.width:
        raise SimulationError("input state does not fit the circuit width")
    ones = (1 << arr.size) - 1
    cols = _propagate(circuit, _slice(arr, circuit.width), ones)
    return _unslice(cols, arr.size)


def permutation_of(circuit: Circuit) -> np.ndarray:
    """Full truth table: ``perm[s]`` is the image of basis state ``s``."""
    if circuit.width > MAX_PERMUTATION_WIDTH:
        raise SimulationError(
            f"width {circuit.width} exceeds permutation guard {MAX_PERMUTATION_WIDTH}"
        )
    return run_batch(circuit, np.arange(1 << circuit.width, dtype=np.uint64))


def is_bijection(perm: np.ndarray) -> bool:
    return bool(np.array_equal(np.sort(perm), np.arange(perm.size, dtype=perm.dtype)))


# -- dense statevector ---------------------------------------------------------

_S2 = 1 / np.sqrt(2)
_ONE_QUBIT = {
    GateKind.H: np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    GateKind.T: np.diag([1, np.exp(1j * np.pi / 4)]),
    GateKind.TDG: np.diag([1, np.exp(-1j * np.pi / 4)]),
    GateKind.S: np.diag([1, 1j]),
    GateKind.SDG: np.diag([1, -1j]),
}


def basis_state(width: int, index: int) -> np.ndarray:
    psi = np.zeros(1 << width, dtype=complex)
    psi[index] = 1.0
    return psi


def run_statevector(circuit: Circuit, state: np.ndarray | int) -> np.ndarray:
    """Apply every gate exactly to a dense state of ``2**width`` amplitudes."""
    w = circuit.width
    if w > MAX_STATEVECTOR_WIDTH:
        raise SimulationError(f"width {w} exceeds statevector guard {MAX_STATEVECTOR_WIDTH}")
    psi = basis_state(w, state) if isinstance(state, (int, np.integer)) else np.array(state, dtype=complex)
    if psi.shape != (1 << w,):
        raise SimulationError(f"state has {psi.size} amplitudes, expected {1 << w}")
    # axis w-1-q holds qubit q (row-major, qubit 0 least significant)
    t = psi.reshape((2,) * w) if w else psi
    for g in circuit.gates:
        axes = [w - 1 - q for q in g.operands]
        if g.kind in _ONE_QUBIT:
            t = np.moveaxis(np.tensordot(_ONE_QUBIT[g.kind], t, axes=([1], [axes[0]])), 0, axes[0])
            continue
        idx: list = [slice(None)] * w
        for a in axes[:-1]:
            idx[a] = 1
        # flipping the target axis on the controls-set slice is the X action
        t = t.copy()
        sub = t[tuple(idx)]
        tgt = axes[-1] - sum(1 for a in axes[:-1] if a < axes[-1])
        t[tuple(idx)] = np.flip(sub, axis=tgt)
    return t.reshape(-1)


def _subspace_indices(width: int, fixed: Mapping[int, int]) -> list[int]:
    free = [q for q in range(width) if q not in fixed]
    base = sum(v << q for q, v in fixed.items())
    out = []
    for k in range(1 << len(free)):
        s = base
        for i, q in enumerate(free):
            if k >> i & 1:
                s |= 1 << q
        out.append(s)
    return out


def unitary_equiv(
    a: Circuit, b: Circuit, fixed: Mapping[int, int] | None = None, tol: float = EQUIV_TOL
) -> tuple[bool, float]:
    """Compare two circuits column by column up to one shared global phase.

    ``fixed`` pins qubits to a basis value (e.g. ancillae to 0); only input
    columns inside that subspace are compared. Returns ``(equivalent,
    max_deviation)``.
    """
    if a.width != b.width:
        raise SimulationError(f"width mismatch: {a.width} vs {b.width}")
    fixed = dict(fixed or {})
    if any(q >= a.width or v not in (0, 1) for q, v in fixed.items()):
        raise SimulationError("invalid subspace constraint")
    phase = None
    worst = 0.0
    for s in _subspace_indices(a.width, fixed):
        ca = run_statevector(a, s)
        cb = run_statevector(b, s)
        if phase is None:
            k = int(np.flatnonzero(np.abs(ca) > tol)[0])
            phase = cb[k] / ca[k]
            if abs(abs(phase) - 1) > tol:
                return False, float(abs(abs(phase) - 1))
        worst = max(worst, float(np.max(np.abs(phase * ca - cb))))
    return worst <= tol, worst
