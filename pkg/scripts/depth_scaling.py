"""How the lowered modular adder's depth grows with n.

Compares the sequential recursion (one borrowed qubit for every level) with
the mutual-garbage one, after 0at3 and 4at1 lowering, and fits depth against
n and n log n on two overlapping windows.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from modadd.decompose import lower
from modadd.resources import asap_depth, linear_fit_slope, n_log_n, reference_circuit


@dataclass
class ScalingConfig:
    ns: tuple[int, ...] = (4, 8, 16, 32, 64)
    strategies: tuple[str, ...] = ("0at3", "4at1")


def slope_change(ns, ys, transform=lambda n: n):
    xs = [transform(n) for n in ns]
    s1 = linear_fit_slope(xs[:-1], ys[:-1])
    s2 = linear_fit_slope(xs[1:], ys[1:])
    return s1, s2, abs(s2 - s1) / s1


def run(cfg: ScalingConfig) -> None:
    for parallel in (True, False):
        for s in cfg.strategies:
            ys = [asap_depth(lower(reference_circuit("cmodadd", n, parallel), s)) for n in cfg.ns]
            lin = slope_change(cfg.ns, ys)
            nlg = slope_change(cfg.ns, ys, n_log_n)
            mode = "parallel" if parallel else "sequential"
            print(f"{mode:10s} {s}  depths {ys}")
            print(f"{'':15s} vs n:       slopes {lin[0]:9.1f} {lin[1]:9.1f}  change {lin[2]:6.2%}")
            print(f"{'':15s} vs n log n: slopes {nlg[0]:9.1f} {nlg[1]:9.1f}  change {nlg[2]:6.2%}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=64)
    a = p.parse_args()
    ns = tuple(1 << k for k in range(2, a.n_max.bit_length()) if 1 << k <= a.n_max)
    run(ScalingConfig(ns=ns))


if __name__ == "__main__":
    main()
