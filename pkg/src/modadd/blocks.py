"""Reversible arithmetic building blocks over {X, CNOT, Toffoli}.

Every block has two faces: a ``*_gates`` function that emits gates on caller
chosen qubit lists (so blocks nest inside each other), and a ``build_*``
function that wraps it in a :class:`Circuit` with a named layout.

Registers are little-endian lists of qubit indices. "Garbage" qubits are
dirty: they may hold anything on entry and are returned unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .circuit import (
    CNOT,
    Circuit,
    Gate,
    RegisterLayout,
    Toffoli,
    X,
    inverse_gates,
)

Qubits = Sequence[int]


@dataclass(frozen=True)
class ConstantOperand:
    value: int
    bit_length: int

    def __post_init__(self) -> None:
        if self.bit_length < 1:
            raise ValueError("bit_length must be >= 1")
        if not 0 <= self.value < 1 << self.bit_length:
            raise ValueError(f"constant {self.value} does not fit in {self.bit_length} bits")

    def bit(self, i: int) -> int:
        return self.value >> i & 1


def _constant(c: int | ConstantOperand, n: int) -> int:
    if isinstance(c, ConstantOperand):
        if c.bit_length != n:
            raise ValueError(f"constant has {c.bit_length} bits, block has {n}")
        return c.value
    return ConstantOperand(int(c), n).value


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")


# -- quantum-quantum adders ------------------------------------------------------


def adder_gates(x: Qubits, y: Qubits, ctrl: int | None = None) -> list[Gate]:
    """``y <- y + x mod 2**n`` with no ancilla; ``x`` is restored.

    Ripple-carry network in the style of Takahashi, Tani and Kunihiro: the
    carries ripple through ``x`` itself. With ``ctrl`` the three sum-writing
    CNOT sets become Toffolis, which is enough to make the whole addition
    conditional (3n-2 Toffolis instead of 2n-2).
    """
    n = len(x)
    if n != len(y) or n == 0:
        raise ValueError("adder registers must be non-empty and equally long")

    def write(src: int, dst: int) -> Gate:
        return CNOT(src, dst) if ctrl is None else Toffoli(ctrl, src, dst)

    gates: list[Gate] = []
    gates += [CNOT(x[i], y[i]) for i in range(1, n)]
    gates += [CNOT(x[i], x[i + 1]) for i in range(n - 2, 0, -1)]
    gates += [Toffoli(y[i], x[i], x[i + 1]) for i in range(n - 1)]
    for i in range(n - 1, 0, -1):
        gates.append(write(x[i], y[i]))
        gates.append(Toffoli(y[i - 1], x[i - 1], x[i]))
    gates += [CNOT(x[i], x[i + 1]) for i in range(1, n - 1)]
    gates.append(write(x[0], y[0]))
    gates += [CNOT(x[i], y[i]) for i in range(1, n)]
    return gates


def incrementer_gates(target: Qubits, garbage: Qubits, ctrl: int | None = None) -> list[Gate]:
    """``target <- target + 1`` borrowing ``len(target)`` dirty qubits.

    a - g - ~g = a + 1 because g + ~g = -1 in two's complement. With ``ctrl``
    both subtractions are controlled; the garbage flips need no control since
    they always come in pairs.
    """
    n = len(target)
    if len(garbage) < n:
        raise ValueError(f"incrementer on {n} qubits needs {n} garbage qubits")
    g = list(garbage[:n])
    sub = inverse_gates(adder_gates(g, target, ctrl))
    flip = [X(q) for q in g]
    return sub + flip + sub + flip


def carry_gates(
    a: Qubits, c: int, garbage: Qubits, out: int, ctrl: int | None = None
) -> list[Gate]:
    """``out ^= carry-out of a + c`` using ``len(a) - 1`` dirty qubits.

    The carry chain z[s+1] = alpha[s] ^ beta[s]*z[s] has alpha = a AND c-bit
    and beta = a (c-bit 0) or NOT a (c-bit 1). Dirty slot s holds z[s] only
    as a toggle: the recursive sequence V[s] = B[s] V[s-1] B[s] A[s] flips
    slot s by exactly z[s+1] whatever the slot held, and running V twice
    restores every slot.

    With ``ctrl`` the constant is replaced by ``ctrl * c``, so only the
    constant-dependent gates pick up the extra control.
    """
    n = len(a)
    if n == 0:
        raise ValueError("carry needs at least one bit")
    if not 0 <= c < 1 << n:
        raise ValueError(f"constant {c} out of range for {n} bits")
    if len(garbage) < n - 1:
        raise ValueError(f"carry on {n} bits needs {n - 1} garbage qubits")
    slot = [None, *garbage[: n - 1], out]  # slot[s] holds z[s], s = 1..n

    def negate(q: int) -> Gate:
        return X(q) if ctrl is None else CNOT(ctrl, q)

    def A(s: int) -> list[Gate]:
        if not c >> (s - 1) & 1:
            return []
        src = a[s - 1]
        return [CNOT(src, slot[s]) if ctrl is None else Toffoli(ctrl, src, slot[s])]

    def B(s: int) -> list[Gate]:
        src = a[s - 1]
        tof = Toffoli(src, slot[s - 1], slot[s])
        if c >> (s - 1) & 1:
            return [negate(src), tof, negate(src)]
        return [tof]

    def V(s: int) -> list[Gate]:
        if s == 1:
            return A(1)
        return B(s) + V(s - 1) + B(s) + A(s)

    if n == 1:
        return A(1)
    inner = V(n - 1)
    return B(n) + inner + B(n) + A(n) + inner


# -- constant adders ------------------------------------------------------------------


def _split(reg: Qubits, c: int) -> tuple[list[int], list[int], int, int]:
    # low half takes the larger share so each half can borrow enough of the other
    m = (len(reg) + 1) // 2
    return list(reg[:m]), list(reg[m:]), c & ((1 << m) - 1), c >> m


def carry_block_gates(reg: Qubits, c: int, g: int, ctrl: int | None = None) -> list[Gate]:
    """Add the carry of ``low + c_low`` into the high half, borrowing ``g``.

    Inc(H | g), CNOTs g->H, Carry into g, Inc(H | g), Carry into g, CNOTs
    g->H. For g = 1 the CNOT sets turn H into -H-2 and back, so the two
    increments together add exactly the carry whatever g holds.
    """
    low, high, c_low, _ = _split(reg, c)
    if c_low == 0:
        return []
    fan = [CNOT(g, q) for q in high]
    inc = incrementer_gates(high, low, ctrl=g)
    carry = carry_gates(low, c_low, high, g, ctrl=ctrl)
    return inc + fan + carry + inc + carry + fan


def recursive_adder_gates(
    reg: Qubits,
    c: int,
    pool: Qubits,
    ctrl: int | None = None,
    parallel: bool = True,
) -> list[Gate]:
    """``reg <- reg + c mod 2**len(reg)`` borrowing dirty qubits from ``pool``.

    ``pool`` must hold at least one qubit outside ``reg``. With ``parallel``
    the two halves are processed with disjoint borrowed qubits, so sub-blocks
    at the same recursion level touch disjoint qubits; when only one external
    qubit is available the halves borrow from each other instead (low half
    first, then high half). Without ``parallel`` every level borrows
    ``pool[0]`` and all blocks serialize on it.

    ``ctrl`` turns this into ``reg <- reg + ctrl*c`` by controlling only the
    constant-dependent gates.
    """
    k = len(reg)
    if k == 0 or not pool:
        raise ValueError("need a non-empty register and at least one borrowed qubit")
    if c == 0:
        return []
    if k == 1:
        return [X(reg[0]) if ctrl is None else CNOT(ctrl, reg[0])]
    low, high, c_low, c_high = _split(reg, c)
    gates = carry_block_gates(reg, c, pool[0], ctrl)
    if not parallel:
        pool_low = pool_high = pool[:1]
        order = ((low, c_low, pool_low), (high, c_high, pool_high))
    elif len(pool) >= 2:
        order = ((low, c_low, pool[0::2]), (high, c_high, pool[1::2]))
    else:
        order = ((low, c_low, high), (high, c_high, low))
    for sub, sub_c, sub_pool in order:
        gates += recursive_adder_gates(sub, sub_c, sub_pool, ctrl, parallel)
    return gates


class ControlMethod(str, Enum):
    # constant-dependent gates gain the control
    PROMOTE = "promote"
    # conditional complement around uncontrolled constant additions
    COMPLEMENT = "complement"


def ctrl_recursive_adder_gates(
    reg: Qubits,
    c: int,
    g: int,
    ctrl: int,
    method: ControlMethod | str = ControlMethod.COMPLEMENT,
    parallel: bool = True,
) -> list[Gate]:
    """``reg <- reg + ctrl*c mod 2**len(reg)`` borrowing the single qubit ``g``.

    ``complement`` keeps every recursive adder uncontrolled: with F the fan
    of CNOTs ctrl->reg, F Add(-c/2) F Add(c/2) adds c when ctrl = 1 (since
    ~(~a - c/2) = a + c/2) and nothing when ctrl = 0. An odd constant first
    gets a controlled +1, done as an increment of the register extended by
    ``ctrl`` as its lowest bit, followed by X(ctrl). Only the two fans touch
    the control, so the control qubit is not a serial bottleneck.
    """
    method = ControlMethod(method)
    k = len(reg)
    if method is ControlMethod.PROMOTE:
        return recursive_adder_gates(reg, c, [g], ctrl=ctrl, parallel=parallel)
    gates: list[Gate] = []
    if c & 1:
        gates += recursive_adder_gates([ctrl, *reg], 1, [g], parallel=parallel)
        gates.append(X(ctrl))
        c -= 1
    if c:
        half = c >> 1
        fan = [CNOT(ctrl, q) for q in reg]
        gates += fan
        gates += recursive_adder_gates(reg, -half % (1 << k), [g], parallel=parallel)
        gates += fan
        gates += recursive_adder_gates(reg, half, [g], parallel=parallel)
    return gates


# -- circuit builders -------------------------------------------------------------------


def build_adder(n: int) -> Circuit:
    _check_n(n)
    layout = RegisterLayout.build(("x", "operand", n), ("y", "target", n), n=n)
    return Circuit.from_layout(layout, adder_gates(layout.qubits("x"), layout.qubits("y")))


def build_ctrl_adder(n: int) -> Circuit:
    _check_n(n)
    layout = RegisterLayout.build(
        ("x", "operand", n), ("y", "target", n), ("ctrl", "control", 1), n=n
    )
    gates = adder_gates(layout.qubits("x"), layout.qubits("y"), ctrl=layout["ctrl"].start)
    return Circuit.from_layout(layout, gates)


def build_incrementer(n: int) -> Circuit:
    _check_n(n)
    layout = RegisterLayout.build(("a", "target", n), ("g", "garbage", n), n=n)
    return Circuit.from_layout(layout, incrementer_gates(layout.qubits("a"), layout.qubits("g")))


def build_ctrl_incrementer(n: int) -> Circuit:
    _check_n(n)
    layout = RegisterLayout.build(
        ("a", "target", n), ("g", "garbage", n), ("ctrl", "control", 1), n=n
    )
    gates = incrementer_gates(layout.qubits("a"), layout.qubits("g"), ctrl=layout["ctrl"].start)
    return Circuit.from_layout(layout, gates)


def build_carry(n: int, c: int | ConstantOperand) -> Circuit:
    _check_n(n)
    value = _constant(c, n)
    layout = RegisterLayout.build(
        ("a", "target", n), ("g", "garbage", n - 1), ("out", "output", 1), n=n
    )
    gates = carry_gates(layout.qubits("a"), value, layout.qubits("g") if n > 1 else [], layout["out"].start)
    return Circuit.from_layout(layout, gates)


def build_recursive_adder(n: int, c: int | ConstantOperand, parallel: bool = True) -> Circuit:
    _check_n(n)
    value = _constant(c, n)
    layout = RegisterLayout.build(("a", "target", n), ("g", "garbage", 1), n=n)
    gates = recursive_adder_gates(layout.qubits("a"), value, [layout["g"].start], parallel=parallel)
    return Circuit.from_layout(layout, gates)


def build_ctrl_recursive_adder(
    n: int,
    c: int | ConstantOperand,
    method: ControlMethod | str = ControlMethod.COMPLEMENT,
    parallel: bool = True,
) -> Circuit:
    _check_n(n)
    value = _constant(c, n)
    layout = RegisterLayout.build(
        ("a", "target", n), ("g", "garbage", 1), ("ctrl", "control", 1), n=n
    )
    gates = ctrl_recursive_adder_gates(
        layout.qubits("a"), value, layout["g"].start, layout["ctrl"].start, method, parallel
    )
    return Circuit.from_layout(layout, gates)


class BlockKind(str, Enum):
    ADDER = "adder"
    INCREMENTER = "incrementer"
    CTRL_INCREMENTER = "ctrl-incrementer"
    CARRY = "carry"
    RECURSIVE_ADDER = "recadd"
    CTRL_RECURSIVE_ADDER = "ctrl-recadd"


@dataclass(frozen=True)
class BlockSpec:
    kind: BlockKind
    n: int
    constant: ConstantOperand | None = None
    parallel: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", BlockKind(self.kind))
        _check_n(self.n)
        if self.constant is not None and self.constant.bit_length != self.n:
            raise ValueError("constant bit_length must equal n")

    @property
    def needs_constant(self) -> bool:
        return self.kind in (BlockKind.CARRY, BlockKind.RECURSIVE_ADDER, BlockKind.CTRL_RECURSIVE_ADDER)


def build_block(spec: BlockSpec) -> Circuit:
    if spec.needs_constant and spec.constant is None:
        raise ValueError(f"{spec.kind.value} needs a constant")
    k = spec.kind
    if k is BlockKind.ADDER:
        return build_adder(spec.n)
    if k is BlockKind.INCREMENTER:
        return build_incrementer(spec.n)
    if k is BlockKind.CTRL_INCREMENTER:
        return build_ctrl_incrementer(spec.n)
    if k is BlockKind.CARRY:
        return build_carry(spec.n, spec.constant)
    if k is BlockKind.RECURSIVE_ADDER:
        return build_recursive_adder(spec.n, spec.constant, parallel=spec.parallel)
    return build_ctrl_recursive_adder(spec.n, spec.constant, parallel=spec.parallel)
