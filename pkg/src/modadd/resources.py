"""Gate counting, depth layering and the closed-form cost model.

Two depth notions are exposed:

* ``depth_sequential``: longest dependency path with each Toffoli weighted by
  the symbolic depth D_Tf of one decomposed Toffoli and every other gate by 1.
  Paths are compared lexicographically (Toffoli weight first), i.e. in the
  limit of large D_Tf, which keeps the result an exact affine form.
* ``depth_asap``: plain greedy layering where every gate costs one layer.
  Applied to lowered circuits this is the concrete depth.

T-depth is the largest number of T/T-dagger gates on any dependency path.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from functools import total_ordering
from typing import Callable, Iterable, Sequence

from .blocks import (
    build_adder,
    build_carry,
    build_ctrl_incrementer,
    build_ctrl_recursive_adder,
    build_incrementer,
    build_recursive_adder,
)
from .circuit import Circuit, GateKind, T_KINDS, Toffoli
from .decompose import Decomposition, decompose_0at3, decompose_4at1, lower
from .modadder import ModAdderSpec, build_mod_adder


@total_ordering
@dataclass(frozen=True)
class SymbolicDepth:
    """``tf_coeff * D_Tf + const``."""

    tf_coeff: int = 0
    const: int = 0

    def __add__(self, other: SymbolicDepth | int) -> SymbolicDepth:
        if isinstance(other, int):
            return SymbolicDepth(self.tf_coeff, self.const + other)
        return SymbolicDepth(self.tf_coeff + other.tf_coeff, self.const + other.const)

    __radd__ = __add__

    def __sub__(self, other: SymbolicDepth) -> SymbolicDepth:
        return SymbolicDepth(self.tf_coeff - other.tf_coeff, self.const - other.const)

    def __rmul__(self, k: int) -> SymbolicDepth:
        return SymbolicDepth(k * self.tf_coeff, k * self.const)

    def __lt__(self, other: SymbolicDepth) -> bool:
        return (self.tf_coeff, self.const) < (other.tf_coeff, other.const)

    def evaluate(self, d_tf: int | float) -> int | float:
        return self.tf_coeff * d_tf + self.const

    def __str__(self) -> str:
        if not self.tf_coeff:
            return str(self.const)
        sign = "-" if self.const < 0 else "+"
        return f"{self.tf_coeff}*D_Tf {sign} {abs(self.const)}"


_ZERO = SymbolicDepth()
_TOF = SymbolicDepth(1, 0)
_UNIT = SymbolicDepth(0, 1)


def sequential_depth(circuit: Circuit) -> SymbolicDepth:
    front: dict[int, SymbolicDepth] = {}
    best = _ZERO
    for g in circuit.gates:
        start = max((front.get(q, _ZERO) for q in g.operands), default=_ZERO)
        end = start + (_TOF if g.kind is GateKind.TOFFOLI else _UNIT)
        for q in g.operands:
            front[q] = end
        best = max(best, end)
    return best


def asap_layers(circuit: Circuit) -> list[int]:
    """Layer index (1-based) of every gate under greedy ASAP scheduling."""
    front = [0] * circuit.width
    layers = []
    for g in circuit.gates:
        layer = max(front[q] for q in g.operands) + 1
        for q in g.operands:
            front[q] = layer
        layers.append(layer)
    return layers


def asap_depth(circuit: Circuit) -> int:
    return max(asap_layers(circuit), default=0)


def t_depth(circuit: Circuit) -> int:
    front = [0] * circuit.width
    for g in circuit.gates:
        d = max(front[q] for q in g.operands) + (g.kind in T_KINDS)
        for q in g.operands:
            front[q] = d
    return max(front, default=0)


@dataclass(frozen=True)
class ResourceReport:
    width: int
    depth_sequential: SymbolicDepth
    depth_asap: int
    gate_count: int
    toffoli_count: int
    cnot_count: int
    x_count: int
    t_count: int
    t_depth: int
    area: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["depth_sequential"] = {
            "tf_coeff": self.depth_sequential.tf_coeff,
            "const": self.depth_sequential.const,
        }
        return d


def analyze(circuit: Circuit) -> ResourceReport:
    depth = asap_depth(circuit)
    return ResourceReport(
        width=circuit.width,
        depth_sequential=sequential_depth(circuit),
        depth_asap=depth,
        gate_count=len(circuit),
        toffoli_count=circuit.count(GateKind.TOFFOLI),
        cnot_count=circuit.count(GateKind.CNOT),
        x_count=circuit.count(GateKind.X),
        t_count=circuit.count(*T_KINDS),
        t_depth=t_depth(circuit),
        area=depth * circuit.width,
    )


# -- closed-form predictions -------------------------------------------------------


def predict_incrementer_depth(n: int) -> SymbolicDepth:
    if n < 2:
        raise ValueError("incrementer depth formula holds for n > 1")
    return SymbolicDepth(6 * n - 4, 2 * n - 4)


def predict_carry_depth(n: int) -> SymbolicDepth:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return SymbolicDepth(0, 1)
    if n == 2:
        return SymbolicDepth(0, 4)
    return SymbolicDepth(4 * n - 6, 4 * n - 2)


def _incrementer_or_zero(n: int) -> SymbolicDepth:
    # the incrementer formula is undefined at n = 1; a 1-bit block has no incrementer
    return _ZERO if n == 1 else predict_incrementer_depth(n)


def _power_of_two(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    return n.bit_length() - 1


def predict_recursive_adder_depth(n: int) -> SymbolicDepth:
    levels = _power_of_two(n)
    total = _ZERO
    for i in range(1, levels + 1):
        k = n >> i
        total = total + _incrementer_or_zero(k) + predict_carry_depth(k) + 2
    return 2 * total


def predict_ctrl_recursive_adder_depth(n: int) -> SymbolicDepth:
    return SymbolicDepth(4 * n - 4, 4 * n - 4)


def predict_mod_adder_depth(n: int) -> SymbolicDepth:
    return 4 * predict_recursive_adder_depth(n) + predict_ctrl_recursive_adder_depth(n) + 2


def predict_width(op: str, n: int) -> int:
    return {"recadd": n + 2, "cmodadd": n + 3, "incrementer": 2 * n, "ctrl-incrementer": 2 * n + 1}[op]


def decomposition_depth(kind: Decomposition | str) -> int:
    """ASAP depth of one decomposed Toffoli: the value of D_Tf for ``kind``."""
    kind = Decomposition(kind)
    if kind is Decomposition.NONE:
        return 1
    if kind is Decomposition.ZERO_ANCILLA_TDEPTH_3:
        gates = decompose_0at3(Toffoli(0, 1, 2))
        return asap_depth(Circuit(3, tuple(gates)))
    gates = decompose_4at1(Toffoli(0, 1, 2), [3, 4, 5, 6])
    return asap_depth(Circuit(7, tuple(gates)))


# -- reference circuits and sweeps ---------------------------------------------------


def worst_case_constant(n: int) -> int:
    return (1 << n) - 1


def reference_mod_spec(n: int) -> ModAdderSpec:
    """Largest modulus and constant allowed at ``n`` bits."""
    modulus = (1 << n) - 1
    return ModAdderSpec(n, max(modulus - 1, 0), modulus)


REFERENCE_BUILDERS: dict[str, Callable[..., Circuit]] = {
    "adder": lambda n, parallel: build_adder(n),
    "incrementer": lambda n, parallel: build_incrementer(n),
    "ctrl-incrementer": lambda n, parallel: build_ctrl_incrementer(n),
    "carry": lambda n, parallel: build_carry(n, worst_case_constant(n)),
    "recadd": lambda n, parallel: build_recursive_adder(n, worst_case_constant(n), parallel=parallel),
    "ctrl-recadd": lambda n, parallel: build_ctrl_recursive_adder(
        n, worst_case_constant(n), parallel=parallel
    ),
    "cmodadd": lambda n, parallel: build_mod_adder(reference_mod_spec(n), parallel=parallel),
}


def reference_circuit(op: str, n: int, parallel: bool = False) -> Circuit:
    """Worst-case instance of ``op`` at ``n`` bits.

    ``parallel`` selects the mutual-garbage recursion for the recursive
    adders; the default is the sequential one, whose Toffolis share a single
    dirty qubit and therefore never compete for a shared 4at1 pool.
    """
    if op not in REFERENCE_BUILDERS:
        raise ValueError(f"unknown op {op!r}")
    return REFERENCE_BUILDERS[op](n, parallel)


PREDICTORS: dict[str, Callable[[int], SymbolicDepth]] = {
    "incrementer": predict_incrementer_depth,
    "ctrl-incrementer": predict_incrementer_depth,
    "carry": predict_carry_depth,
    "recadd": predict_recursive_adder_depth,
    "ctrl-recadd": predict_ctrl_recursive_adder_depth,
    "cmodadd": predict_mod_adder_depth,
}

SWEEP_COLUMNS = (
    "op", "n", "strategy", "width", "depth", "t_count", "t_depth",
    "toffoli_count", "cnot_count", "area",
    "seq_depth_tf", "seq_depth_const", "d_tf", "predicted_depth", "measured_seq_depth",
)


def predicted(op: str, n: int) -> SymbolicDepth | None:
    fn = PREDICTORS.get(op)
    if fn is None:
        return None
    try:
        return fn(n)
    except ValueError:
        return None


def sweep_row(
    op: str,
    n: int,
    strategy: Decomposition | str,
    circuit: Circuit | None = None,
    parallel: bool = False,
) -> dict:
    strategy = Decomposition(strategy)
    base = circuit if circuit is not None else reference_circuit(op, n, parallel)
    seq = sequential_depth(base)
    toffolis = base.count(GateKind.TOFFOLI)
    lowered = lower(base, strategy)
    rep = analyze(lowered)
    d_tf = decomposition_depth(strategy)
    pred = predicted(op, n)
    return {
        "op": op,
        "n": n,
        "strategy": strategy.value,
        "width": rep.width,
        "depth": rep.depth_asap,
        "t_count": rep.t_count,
        "t_depth": rep.t_depth,
        "toffoli_count": toffolis,
        "cnot_count": rep.cnot_count,
        "area": rep.area,
        "seq_depth_tf": seq.tf_coeff,
        "seq_depth_const": seq.const,
        "d_tf": d_tf,
        "predicted_depth": pred.evaluate(d_tf) if pred is not None else None,
        "measured_seq_depth": seq.evaluate(d_tf),
    }


def sweep(
    op: str,
    ns: Iterable[int],
    strategies: Sequence[Decomposition | str] = ("0at3", "4at1"),
    parallel: bool = False,
) -> list[dict]:
    rows = []
    for n in ns:
        base = reference_circuit(op, n, parallel)
        for s in strategies:
            rows.append(sweep_row(op, n, s, base))
    return rows


def area_ratios(rows: Sequence[dict]) -> dict[int, float]:
    """4at1 area over 0at3 area per n, for rows of a single op."""
    by = {(r["n"], r["strategy"]): r for r in rows}
    out = {}
    for n in sorted({r["n"] for r in rows}):
        a, b = by.get((n, "4at1")), by.get((n, "0at3"))
        if a and b and b["area"]:
            out[n] = a["area"] / b["area"]
    return out


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def rows_to_json(rows: Sequence[dict]) -> str:
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"


def linear_fit_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def n_log_n(n: int) -> float:
    return n * math.log2(n)
