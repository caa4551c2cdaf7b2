"""Constant modular addition in n+3 qubits, with Clifford+T lowering and cost analysis."""
from .blocks import (
    BlockKind,
    BlockSpec,
    ConstantOperand,
    ControlMethod,
    build_adder,
    build_block,
    build_carry,
    build_ctrl_adder,
    build_ctrl_incrementer,
    build_ctrl_recursive_adder,
    build_incrementer,
    build_recursive_adder,
)
from .circuit import CNOT, Circuit, CircuitError, Gate, GateKind, RegisterLayout, Toffoli, X
from .decompose import Decomposition, DecompositionStrategy, lower
from .modadder import ModAdderSpec, build_mod_adder, verify_mod_adder
from .qasm import export_qasm, parse_qasm
from .resources import analyze, sweep
from .simulate import run_batch, run_reversible, run_statevector, unitary_equiv

__all__ = [
    "BlockKind", "BlockSpec", "CNOT", "Circuit", "CircuitError", "ConstantOperand",
    "ControlMethod", "Decomposition", "DecompositionStrategy", "Gate", "GateKind",
    "ModAdderSpec", "RegisterLayout", "Toffoli", "X", "analyze", "build_adder",
    "build_block", "build_carry", "build_ctrl_adder", "build_ctrl_incrementer",
    "build_ctrl_recursive_adder", "build_incrementer", "build_mod_adder",
    "build_recursive_adder", "export_qasm", "lower", "parse_qasm", "run_batch",
    "run_reversible", "run_statevector", "sweep", "unitary_equiv", "verify_mod_adder",
]
