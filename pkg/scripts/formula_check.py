"""Measured symbolic depth against the closed-form predictions.

For each block prints measured, predicted and the difference, all as
``a*D_Tf + b``. A difference whose D_Tf part is zero and whose constant does
not move with n is a pure bookkeeping offset.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from modadd.blocks import build_ctrl_incrementer
from modadd.resources import (
    predict_carry_depth,
    predict_ctrl_recursive_adder_depth,
    predict_incrementer_depth,
    predict_mod_adder_depth,
    predict_recursive_adder_depth,
    reference_circuit,
    sequential_depth,
)


@dataclass
class FormulaConfig:
    powers: tuple[int, ...] = (2, 4, 8, 16, 32)
    carry_ns: tuple[int, ...] = (3, 4, 5, 6, 7, 8)
    parallel: bool = True


def table(title, ns, build, predict):
    print(f"\n{title}")
    print(f"{'n':>4}  {'measured':>20}  {'predicted':>20}  {'difference':>20}")
    for n in ns:
        m, p = sequential_depth(build(n)), predict(n)
        print(f"{n:4d}  {str(m):>20}  {str(p):>20}  {str(m - p):>20}")


def run(cfg: FormulaConfig) -> None:
    par = cfg.parallel
    table("carry (c = 2^n - 1)", cfg.carry_ns, lambda n: reference_circuit("carry", n), predict_carry_depth)
    table("controlled incrementer", cfg.powers, build_ctrl_incrementer, predict_incrementer_depth)
    table("recursive adder (c = 2^n - 1)", cfg.powers,
          lambda n: reference_circuit("recadd", n, par), predict_recursive_adder_depth)
    table("controlled recursive adder", cfg.powers,
          lambda n: reference_circuit("ctrl-recadd", n, par), predict_ctrl_recursive_adder_depth)
    table("modular adder (N = 2^n - 1, c = N - 1)", cfg.powers,
          lambda n: reference_circuit("cmodadd", n, par), predict_mod_adder_depth)
    print("\npredictions evaluate D_Inc(1) as 0")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sequential", action="store_true")
    a = p.parse_args()
    run(FormulaConfig(parallel=not a.sequential))


if __name__ == "__main__":
    main()
