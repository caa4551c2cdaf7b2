"""The n+3 qubit constant modular adder.

Layout: ``a`` (n+1 qubits, little-endian, MSB = sign after subtracting N),
``g`` (one dirty qubit borrowed by every recursive adder) and ``flag`` (one
clean qubit, returned to |0>).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blocks import ControlMethod, ctrl_recursive_adder_gates, recursive_adder_gates
from .circuit import CNOT, Circuit, Gate, RegisterLayout, X, inverse_gates
from .simulate import run_batch


@dataclass(frozen=True)
class ModAdderSpec:
    n: int
    c: int
    modulus: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        if self.modulus >= 1 << self.n:
            raise ValueError(f"modulus must be < 2^n = {1 << self.n}")
        if not 0 <= self.c < self.modulus:
            raise ValueError("c must be < modulus")

    @property
    def width(self) -> int:
        return self.n + 3


def mod_adder_layout(n: int) -> RegisterLayout:
    return RegisterLayout.build(("a", "target", n + 1), ("g", "garbage", 1), ("flag", "flag", 1), n=n)


def build_mod_adder(
    spec: ModAdderSpec,
    ctrl_method: ControlMethod | str = ControlMethod.COMPLEMENT,
    parallel: bool = True,
) -> Circuit:
    layout = mod_adder_layout(spec.n)
    a = layout.qubits("a")
    g = layout["g"].start
    flag = layout["flag"].start
    msb = a[-1]

    def add(const: int) -> list[Gate]:
        return recursive_adder_gates(a, const, [g], parallel=parallel)

    gates: list[Gate] = []
    gates += add(spec.c)
    gates += inverse_gates(add(spec.modulus))
    gates.append(CNOT(msb, flag))
    gates += ctrl_recursive_adder_gates(a, spec.modulus, g, flag, ctrl_method, parallel)
    gates += inverse_gates(add(spec.c))
    # MSB is now the complement of flag, so this pair always clears it
    gates.append(CNOT(msb, flag))
    gates.append(X(flag))
    gates += add(spec.c)
    return Circuit.from_layout(layout, gates)


@dataclass
class CaseResult:
    a: int
    g: int
    expected: int
    got: int
    garbage_ok: bool
    flag_ok: bool

    @property
    def ok(self) -> bool:
        return self.got == self.expected and self.garbage_ok and self.flag_ok


@dataclass
class VerificationReport:
    spec: tuple[int, int, int]
    cases: list[CaseResult] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.cases)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed + (self.error is not None)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        n, c, modulus = self.spec
        head = f"cmodadd n={n} c={c} N={modulus}"
        if self.error:
            return f"{head}: ERROR {self.error}"
        return f"{head}: {self.passed}/{len(self.cases)} cases pass"


def verify_circuit(circuit: Circuit, spec: ModAdderSpec) -> list[CaseResult]:
    """Run every (a, g) with a < N through ``circuit`` at once and compare."""
    layout = circuit.layout
    a_seg, g_q, f_q = layout["a"], layout["g"].start, layout["flag"].start
    mask = (1 << len(a_seg)) - 1
    inputs = [(a << a_seg.start) | (g << g_q) for g in (0, 1) for a in range(spec.modulus)]
    outputs = run_batch(circuit, inputs)
    cases = []
    for s, o in zip(inputs, outputs.tolist()):
        a, g = (s >> a_seg.start) & mask, s >> g_q & 1
        cases.append(
            CaseResult(
                a=a,
                g=g,
                expected=(a + spec.c) % spec.modulus,
                got=(o >> a_seg.start) & mask,
                garbage_ok=(o >> g_q & 1) == g,
                flag_ok=(o >> f_q & 1) == 0,
            )
        )
    return cases


def verify_mod_adder(spec: ModAdderSpec | tuple[int, int, int], **build_kwargs) -> VerificationReport:
    """Exhaustive check over every residue and both garbage values.

    Construction errors (invalid spec) are recorded in the report rather than
    raised.
    """
    if not isinstance(spec, ModAdderSpec):
        n, c, modulus = spec
        try:
            spec = ModAdderSpec(n, c, modulus)
        except ValueError as exc:
            return VerificationReport((n, c, modulus), error=str(exc))
    report = VerificationReport((spec.n, spec.c, spec.modulus))
    report.cases = verify_circuit(build_mod_adder(spec, **build_kwargs), spec)
    return report


def all_specs(n: int):
    for modulus in range(1, 1 << n):
        for c in range(modulus):
            yield ModAdderSpec(n, c, modulus)


def outputs_for(spec: ModAdderSpec) -> np.ndarray:
    """Images of the valid inputs (g = 0), mainly for permutation checks."""
    circuit = build_mod_adder(spec)
    return run_batch(circuit, list(range(spec.modulus)))
