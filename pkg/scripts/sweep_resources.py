"""Resource sweep for every block and both Toffoli lowerings.

Writes one CSV and one JSON table per op into --out-dir and prints the
4at1/0at3 area ratios of the modular adder.

    python3 scripts/sweep_resources.py --n-max 32 --out-dir results
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from modadd.resources import area_ratios, rows_to_csv, rows_to_json, sweep

OPS = ("incrementer", "ctrl-incrementer", "carry", "recadd", "ctrl-recadd", "cmodadd")


@dataclass
class SweepConfig:
    n_min: int = 2
    n_max: int = 32
    out_dir: Path = Path("results")
    parallel: bool = False
    ops: tuple[str, ...] = OPS

    @property
    def ns(self) -> list[int]:
        return [1 << k for k in range(self.n_max.bit_length()) if self.n_min <= 1 << k <= self.n_max]


def run(cfg: SweepConfig) -> dict[str, list[dict]]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    tables = {}
    for op in cfg.ops:
        rows = sweep(op, cfg.ns, parallel=cfg.parallel)
        tag = f"{op}_{'parallel' if cfg.parallel else 'sequential'}"
        (cfg.out_dir / f"{tag}.csv").write_text(rows_to_csv(rows))
        (cfg.out_dir / f"{tag}.json").write_text(rows_to_json(rows))
        tables[op] = rows
        print(f"{op:17s} {len(rows):3d} rows -> {cfg.out_dir / tag}.{{csv,json}}")
    if "cmodadd" in tables:
        print("\ncmodadd   n   depth 4at1   depth 0at3   area 4at1/0at3")
        by = {(r["n"], r["strategy"]): r for r in tables["cmodadd"]}
        for n, ratio in area_ratios(tables["cmodadd"]).items():
            print(f"        {n:4d} {by[n, '4at1']['depth']:12d} {by[n, '0at3']['depth']:12d} {ratio:16.3f}")
    return tables


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=32)
    p.add_argument("--out-dir", type=Path, default=Path("results"))
    p.add_argument("--parallel", action="store_true", help="mutual-garbage recursion instead of sequential")
    a = p.parse_args()
    run(SweepConfig(a.n_min, a.n_max, a.out_dir, a.parallel))


if __name__ == "__main__":
    main()
