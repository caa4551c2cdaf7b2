import itertools

import pytest
from hypothesis import given, strategies as st

from helpers import apply_classical, pack, registers
from modadd.blocks import (
    BlockKind,
    BlockSpec,
    ConstantOperand,
    ControlMethod,
    adder_gates,
    build_adder,
    build_block,
    build_carry,
    build_ctrl_adder,
    build_ctrl_incrementer,
    build_ctrl_recursive_adder,
    build_incrementer,
    build_recursive_adder,
    carry_gates,
    recursive_adder_gates,
)
from modadd.circuit import CLASSICAL_KINDS, Circuit, GateKind, inverse
from modadd.simulate import permutation_of, run_batch


def _images(circuit, inputs):
    return dict(zip(inputs, run_batch(circuit, inputs).tolist()))


def _all_states(circuit, pinned=()):
    free = [s for s in circuit.layout.segments if s.name not in pinned]
    for vals in itertools.product(*(range(1 << len(s)) for s in free)):
        yield pack(circuit.layout, **{s.name: v for s, v in zip(free, vals)})


# -- examples -------------------------------------------------------------------------


def test_adder_example():
    c = build_adder(3)
    out = registers(c.layout, apply_classical(c, pack(c.layout, x=2, y=3)))
    assert out == {"x": 2, "y": 5}


def test_incrementer_examples():
    c = build_incrementer(3)
    for g in range(8):
        assert registers(c.layout, apply_classical(c, pack(c.layout, a=7, g=g))) == {"a": 0, "g": g}
    assert registers(c.layout, apply_classical(c, pack(c.layout, a=0, g=5))) == {"a": 1, "g": 5}


def test_ctrl_incrementer_example():
    c = build_ctrl_incrementer(2)
    assert registers(c.layout, apply_classical(c, pack(c.layout, a=1, ctrl=1)))["a"] == 2
    assert registers(c.layout, apply_classical(c, pack(c.layout, a=1, ctrl=0)))["a"] == 1


def test_recursive_adder_example():
    c = build_recursive_adder(4, 15)
    assert registers(c.layout, apply_classical(c, pack(c.layout, a=1, g=1))) == {"a": 0, "g": 1}


def test_ctrl_recursive_adder_example():
    for method in ControlMethod:
        c = build_ctrl_recursive_adder(3, 3, method)
        out = registers(c.layout, apply_classical(c, pack(c.layout, a=6, ctrl=1)))
        assert out["a"] == 1 and out["ctrl"] == 1


def test_constants_validated():
    with pytest.raises(ValueError):
        ConstantOperand(8, 3)
    with pytest.raises(ValueError):
        build_carry(3, ConstantOperand(1, 4))
    with pytest.raises(ValueError):
        build_recursive_adder(0, 0)


# -- exhaustive contracts ---------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_adder_and_ctrl_adder_exhaustive(n):
    mask = (1 << n) - 1
    c = build_adder(n)
    for s, o in _images(c, list(_all_states(c))).items():
        r = registers(c.layout, s)
        assert registers(c.layout, o) == {"x": r["x"], "y": (r["x"] + r["y"]) & mask}
    cc = build_ctrl_adder(n)
    for s, o in _images(cc, list(_all_states(cc))).items():
        r = registers(cc.layout, s)
        assert registers(cc.layout, o) == {**r, "y": (r["y"] + r["ctrl"] * r["x"]) & mask}


@pytest.mark.parametrize("n", range(1, 6))
def test_incrementers_exhaustive(n):
    mask = (1 << n) - 1
    for c, step in ((build_incrementer(n), lambda r: 1), (build_ctrl_incrementer(n), lambda r: r["ctrl"])):
        for s, o in _images(c, list(_all_states(c))).items():
            r = registers(c.layout, s)
            assert registers(c.layout, o) == {**r, "a": (r["a"] + step(r)) & mask}


@pytest.mark.parametrize("n", range(1, 6))
def test_carry_exhaustive(n):
    for const in range(1 << n):
        c = build_carry(n, const)
        for s, o in _images(c, list(_all_states(c))).items():
            r = registers(c.layout, s)
            assert registers(c.layout, o) == {**r, "out": r["out"] ^ ((r["a"] + const) >> n)}


@pytest.mark.parametrize("parallel", [True, False])
@pytest.mark.parametrize("n", range(1, 6))
def test_recursive_adder_exhaustive(n, parallel):
    mask = (1 << n) - 1
    for const in range(1 << n):
        c = build_recursive_adder(n, const, parallel=parallel)
        for s, o in _images(c, list(_all_states(c))).items():
            r = registers(c.layout, s)
            assert registers(c.layout, o) == {**r, "a": (r["a"] + const) & mask}


@pytest.mark.parametrize("method", list(ControlMethod))
@pytest.mark.parametrize("n", range(1, 6))
def test_ctrl_recursive_adder_exhaustive(n, method):
    mask = (1 << n) - 1
    for const in range(1 << n):
        c = build_ctrl_recursive_adder(n, const, method)
        for s, o in _images(c, list(_all_states(c))).items():
            r = registers(c.layout, s)
            assert registers(c.layout, o) == {**r, "a": (r["a"] + r["ctrl"] * const) & mask}


def test_zero_constant_is_identity():
    for n in range(1, 7):
        assert len(build_recursive_adder(n, 0)) == 0
        c = build_carry(n, 0)
        perm = permutation_of(c)
        assert perm.tolist() == list(range(1 << c.width))


# -- structure ----------------------------------------------------------------------


def test_gate_alphabet_and_widths():
    for n in (1, 2, 5, 8):
        for c in (
            build_adder(n), build_incrementer(n), build_ctrl_incrementer(n),
            build_carry(n, (1 << n) - 1), build_recursive_adder(n, (1 << n) - 1),
            build_ctrl_recursive_adder(n, (1 << n) - 1),
        ):
            assert c.kinds() <= CLASSICAL_KINDS
        assert build_incrementer(n).width == 2 * n
        assert build_ctrl_incrementer(n).width == 2 * n + 1
        assert build_recursive_adder(n, 1).width == n + 1


@pytest.mark.parametrize("n", [2, 3, 8, 20])
def test_toffoli_counts(n):
    x, y = list(range(n)), list(range(n, 2 * n))
    tof = lambda gates: sum(g.kind is GateKind.TOFFOLI for g in gates)
    assert tof(adder_gates(x, y)) == 2 * n - 2
    assert tof(adder_gates(x, y, ctrl=2 * n)) == 3 * n - 2
    assert build_incrementer(n).count(GateKind.TOFFOLI) == 4 * n - 4
    assert build_ctrl_incrementer(n).count(GateKind.TOFFOLI) == 6 * n - 4
    if n >= 2:
        assert build_carry(n, (1 << n) - 1).count(GateKind.TOFFOLI) == 4 * n - 6


def test_recursive_adder_borrows_only_the_pool():
    reg, pool = [0, 1, 2, 3], [9]
    touched = {q for g in recursive_adder_gates(reg, 11, pool, parallel=False) for q in g.operands}
    assert touched <= {0, 1, 2, 3, 9}


def test_block_spec_dispatch():
    spec = BlockSpec(BlockKind.CARRY, 3, ConstantOperand(5, 3))
    assert build_block(spec) == build_carry(3, 5)
    with pytest.raises(ValueError):
        build_block(BlockSpec(BlockKind.RECURSIVE_ADDER, 3))
    assert build_block(BlockSpec("incrementer", 3)) == build_incrementer(3)


# -- properties ---------------------------------------------------------------------


@given(st.integers(1, 12), st.data())
def test_recursive_adder_random(n, data):
    const = data.draw(st.integers(0, (1 << n) - 1))
    parallel = data.draw(st.booleans())
    c = build_recursive_adder(n, const, parallel=parallel)
    a, g = data.draw(st.integers(0, (1 << n) - 1)), data.draw(st.integers(0, 1))
    out = registers(c.layout, apply_classical(c, pack(c.layout, a=a, g=g)))
    assert out == {"a": (a + const) % (1 << n), "g": g}


@given(st.integers(1, 10), st.data())
def test_constant_shifts_compose(n, data):
    c1 = data.draw(st.integers(0, (1 << n) - 1))
    c2 = data.draw(st.integers(0, (1 << n) - 1))
    both = build_recursive_adder(n, c1) + build_recursive_adder(n, c2)
    direct = build_recursive_adder(n, (c1 + c2) % (1 << n))
    probe = [data.draw(st.integers(0, (1 << (n + 1)) - 1)) for _ in range(8)]
    assert run_batch(both, probe).tolist() == run_batch(direct, probe).tolist()


@given(st.integers(1, 10), st.data())
def test_inverse_adds_the_negation(n, data):
    const = data.draw(st.integers(0, (1 << n) - 1))
    sub = inverse(build_recursive_adder(n, const))
    neg = build_recursive_adder(n, -const % (1 << n))
    probe = [data.draw(st.integers(0, (1 << (n + 1)) - 1)) for _ in range(8)]
    assert run_batch(sub, probe).tolist() == run_batch(neg, probe).tolist()


@given(st.integers(2, 10), st.data())
def test_carry_on_random_dirty_state(n, data):
    const = data.draw(st.integers(0, (1 << n) - 1))
    c = build_carry(n, const)
    a = data.draw(st.integers(0, (1 << n) - 1))
    g = data.draw(st.integers(0, (1 << (n - 1)) - 1))
    out_bit = data.draw(st.integers(0, 1))
    got = registers(c.layout, apply_classical(c, pack(c.layout, a=a, g=g, out=out_bit)))
    assert got == {"a": a, "g": g, "out": out_bit ^ ((a + const) >> n)}


def test_carry_gates_argument_checks():
    with pytest.raises(ValueError):
        carry_gates([0, 1, 2], 3, [5], 6)
    with pytest.raises(ValueError):
        carry_gates([0, 1], 4, [5], 6)
