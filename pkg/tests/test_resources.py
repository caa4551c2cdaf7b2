import pytest
from hypothesis import given, strategies as st

from helpers import longest_path
from modadd.blocks import build_carry, build_ctrl_incrementer, build_recursive_adder
from modadd.circuit import CNOT, Circuit, GateKind, T_KINDS, Toffoli, X
from modadd.decompose import lower
from modadd.modadder import ModAdderSpec, build_mod_adder
from modadd.resources import (
    SWEEP_COLUMNS,
    SymbolicDepth,
    analyze,
    area_ratios,
    asap_depth,
    decomposition_depth,
    linear_fit_slope,
    predict_carry_depth,
    predict_ctrl_recursive_adder_depth,
    predict_incrementer_depth,
    predict_mod_adder_depth,
    predict_recursive_adder_depth,
    predict_width,
    reference_circuit,
    rows_to_csv,
    rows_to_json,
    sequential_depth,
    sweep,
    t_depth,
)

D = SymbolicDepth


def test_symbolic_arithmetic():
    assert D(2, 3) + D(1, 1) == D(3, 4)
    assert D(2, 3) + 1 == D(2, 4)
    assert 3 * D(1, 2) == D(3, 6)
    assert D(5, -1) - D(2, 2) == D(3, -3)
    assert D(1, 0) > D(0, 1000)
    assert D(4, 2).evaluate(9) == 38
    assert str(D(4, -2)) == "4*D_Tf - 2" and str(D(0, 5)) == "5"


def test_analyze_small_examples():
    rep = analyze(Circuit(2, (X(0), X(1))))
    assert rep.depth_asap == 1 and rep.gate_count == 2 and rep.x_count == 2
    rep = analyze(Circuit(3, (Toffoli(0, 1, 2), CNOT(2, 0))))
    assert rep.depth_sequential == D(1, 1) and rep.toffoli_count == 1 and rep.cnot_count == 1
    assert rep.area == rep.depth_asap * 3


def test_mod_adder_width_report():
    assert analyze(build_mod_adder(ModAdderSpec(4, 14, 15))).width == 7


@pytest.mark.parametrize(
    "n,expected", [(2, D(8, 0)), (4, D(20, 4)), (8, D(44, 12))]
)
def test_incrementer_prediction(n, expected):
    assert predict_incrementer_depth(n) == expected


def test_incrementer_prediction_domain():
    with pytest.raises(ValueError):
        predict_incrementer_depth(1)


@pytest.mark.parametrize("n,expected", [(1, D(0, 1)), (2, D(0, 4)), (3, D(6, 10))])
def test_carry_prediction(n, expected):
    assert predict_carry_depth(n) == expected


def test_recursive_and_mod_predictions():
    assert predict_recursive_adder_depth(2) == D(0, 6)
    assert predict_recursive_adder_depth(4) == D(16, 18)
    assert predict_ctrl_recursive_adder_depth(4) == D(12, 12)
    assert predict_mod_adder_depth(4) == D(76, 86)
    assert predict_mod_adder_depth(2) == D(4, 30)
    with pytest.raises(ValueError):
        predict_recursive_adder_depth(6)


def test_width_predictions():
    # the recursive adder inside the n-bit modular adder acts on n+1 qubits plus g
    assert predict_width("recadd", 8) == 10 == build_recursive_adder(9, 1).width
    assert predict_width("cmodadd", 5) == 8


@pytest.mark.parametrize("n", range(3, 9))
def test_carry_depth_tracks_prediction_with_fixed_offset(n):
    measured = sequential_depth(build_carry(n, (1 << n) - 1))
    assert measured - predict_carry_depth(n) == D(0, -1)


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_ctrl_incrementer_toffoli_coefficient(n):
    assert sequential_depth(build_ctrl_incrementer(n)).tf_coeff == predict_incrementer_depth(n).tf_coeff


def test_decomposition_depths():
    assert decomposition_depth("none") == 1
    assert decomposition_depth("0at3") == 9
    assert decomposition_depth("4at1") == 7


circuits = st.integers(3, 7).flatmap(
    lambda w: st.lists(
        st.one_of(
            st.integers(0, w - 1).map(X),
            st.permutations(range(w)).map(lambda p: CNOT(p[0], p[1])),
            st.permutations(range(w)).map(lambda p: Toffoli(*p[:3])),
        ),
        max_size=30,
    ).map(lambda gs: Circuit(w, tuple(gs)))
)


@given(circuits)
def test_depths_match_dag_oracle(c):
    assert asap_depth(c) == longest_path(c, lambda g: 1)
    big = 10**6  # large enough that the Toffoli count dominates, as in the lexicographic order
    seq = sequential_depth(c)
    assert seq.evaluate(big) == longest_path(c, lambda g: big if g.kind is GateKind.TOFFOLI else 1)


@given(circuits)
def test_t_depth_matches_dag_oracle(c):
    low = lower(c, "0at3")
    assert t_depth(low) == longest_path(low, lambda g: int(g.kind in T_KINDS))
    assert t_depth(lower(c, "4at1")) == c.count(GateKind.TOFFOLI)


def test_sweep_table_shape_and_columns():
    rows = sweep("cmodadd", [2, 4, 8, 16])
    assert len(rows) == 8
    assert {"op", "n", "strategy", "width", "depth", "t_count", "t_depth", "area"} <= set(rows[0])
    header = rows_to_csv(rows).splitlines()[0].split(",")
    assert header[:10] == ["op", "n", "strategy", "width", "depth", "t_count", "t_depth",
                           "toffoli_count", "cnot_count", "area"]
    assert tuple(header) == SWEEP_COLUMNS
    by = {(r["n"], r["strategy"]): r for r in rows}
    for n in (2, 4, 8, 16):
        four, zero = by[n, "4at1"], by[n, "0at3"]
        assert four["width"] == zero["width"] + 4
        assert four["t_depth"] == four["toffoli_count"]
        assert zero["t_depth"] <= 3 * zero["toffoli_count"]
        assert four["t_count"] == zero["t_count"] == 7 * zero["toffoli_count"]
    assert set(area_ratios(rows)) == {2, 4, 8, 16}
    assert rows_to_json(rows).startswith("[")


def test_small_sweep_t_depth_is_exact():
    # at small n no two Toffolis of the sequential construction overlap
    for r in sweep("cmodadd", [2, 4], ["0at3"]):
        assert r["t_depth"] == 3 * r["toffoli_count"]


def test_reference_circuit_rejects_unknown():
    with pytest.raises(ValueError):
        reference_circuit("multiply", 4)


def test_linear_fit_slope():
    assert linear_fit_slope([1, 2, 3], [2, 4, 6]) == pytest.approx(2)
