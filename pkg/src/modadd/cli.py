"""Command-line entry point: ``modadd {build,verify,report,sweep}``.

Exit codes: 0 success, 1 verification failure, 2 usage error. Data goes to
stdout (or ``--out``), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .circuit import CircuitError, GateKind
from .decompose import Decomposition, lower
from .qasm import export_qasm
from .resources import (
    analyze,
    decomposition_depth,
    predicted,
    reference_mod_spec,
    rows_to_csv,
    rows_to_json,
    sequential_depth,
    sweep,
    worst_case_constant,
)
from .verify import CONSTANT_OPS, OPS, build_op, constants_for, verify_op

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modadd", description="constant modular adder toolkit")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp: argparse.ArgumentParser, single_n: bool = True) -> None:
        sp.add_argument("--op", required=True, choices=OPS)
        if single_n:
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--c", type=int)
            sp.add_argument("--modulus", type=int)
        sp.add_argument("--decompose", choices=[d.value for d in Decomposition], default="none")
        sp.add_argument("--out", type=Path)

    b = sub.add_parser("build", help="emit OpenQASM")
    common(b)
    b.add_argument("--schedule", choices=("parallel", "sequential"), default="parallel")

    v = sub.add_parser("verify", help="exhaustive check against the arithmetic oracle")
    common(v)
    v.add_argument("--all-constants", action="store_true")
    v.add_argument("--schedule", choices=("parallel", "sequential"), default="parallel")

    r = sub.add_parser("report", help="resource counts for one circuit")
    common(r)
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.add_argument("--schedule", choices=("parallel", "sequential"), default="parallel")

    s = sub.add_parser("sweep", help="resource table over a range of n")
    common(s, single_n=False)
    s.add_argument("--n-min", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--step", choices=("pow2", "linear"), default="pow2")
    s.add_argument("--strategies", default="0at3,4at1")
    s.add_argument("--format", choices=("csv", "json"))
    # the sweep defaults to the sequential adder: it is the layout in which
    # one shared 4at1 pool costs no parallelism
    s.add_argument("--schedule", choices=("parallel", "sequential"), default="sequential")
    return p


def _constants(args: argparse.Namespace) -> tuple[int, int | None]:
    """Resolve --c/--modulus, defaulting to the worst case for ``op``."""
    op, n = args.op, args.n
    if n < 1:
        raise UsageError("n must be >= 1")
    if op == "cmodadd":
        if args.c is None and args.modulus is None:
            ref = reference_mod_spec(n)
            return ref.c, ref.modulus
        if args.c is None or args.modulus is None:
            raise UsageError("cmodadd needs both --c and --modulus")
        if args.modulus < 1:
            raise UsageError("modulus must be >= 1")
        if not 0 <= args.c < args.modulus:
            raise UsageError("c must be < modulus")
        if args.modulus >= 1 << n:
            raise UsageError(f"modulus must be < 2^n = {1 << n}")
        return args.c, args.modulus
    if args.modulus is not None:
        raise UsageError(f"--modulus does not apply to {op}")
    if op in CONSTANT_OPS:
        c = worst_case_constant(n) if args.c is None else args.c
        if not 0 <= c < 1 << n:
            raise UsageError(f"c must be in [0, 2^n) = [0, {1 << n})")
        return c, None
    if args.c is not None:
        raise UsageError(f"--c does not apply to {op}")
    return 0, None


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
        print(f"wrote {out}", file=sys.stderr)


def _cmd_build(args: argparse.Namespace) -> int:
    c, modulus = _constants(args)
    circuit = build_op(args.op, args.n, c, modulus, args.schedule == "parallel")
    _emit(export_qasm(lower(circuit, args.decompose)), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.all_constants:
        if args.c is not None or args.modulus is not None:
            raise UsageError("--all-constants excludes --c and --modulus")
        if args.n < 1:
            raise UsageError("n must be >= 1")
        cases = list(constants_for(args.op, args.n))
    else:
        cases = [_constants(args)]
    lines, failed = [], 0
    for c, modulus in cases:
        rep = verify_op(args.op, args.n, c, modulus, args.decompose, args.schedule == "parallel")
        lines.append(rep.summary())
        failed += not rep.ok
        for f in rep.failures[:3]:
            print(f"  counterexample {f.inputs}: expected {f.expected}, got {f.got}", file=sys.stderr)
    lines.append(f"{len(cases) - failed}/{len(cases)} configurations pass")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    c, modulus = _constants(args)
    base = build_op(args.op, args.n, c, modulus, args.schedule == "parallel")
    rep = analyze(lower(base, args.decompose))
    seq = sequential_depth(base)
    d_tf = decomposition_depth(args.decompose)
    pred = predicted(args.op, args.n)
    data = {
        "op": args.op,
        "n": args.n,
        "c": c,
        "modulus": modulus,
        "strategy": args.decompose,
        "schedule": args.schedule,
        **rep.as_dict(),
        "toffoli_count_before_lowering": base.count(GateKind.TOFFOLI),
        "sequential_depth_symbolic": str(seq),
        "d_tf": d_tf,
        "predicted_depth_symbolic": None if pred is None else str(pred),
        "deviation_symbolic": None if pred is None else str(seq - pred),
    }
    if args.op in ("recadd", "cmodadd") and pred is not None:
        data["note"] = "prediction uses D_Inc(1) = 0"
    if args.format == "json":
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    else:
        text = "".join(f"{k}: {v}\n" for k, v in data.items())
    _emit(text, args.out)
    return EXIT_OK


def _sweep_ns(args: argparse.Namespace) -> list[int]:
    lo, hi = args.n_min, args.n_max
    if lo < 1 or hi < lo:
        raise UsageError("need 1 <= n-min <= n-max")
    if args.step == "linear":
        return list(range(lo, hi + 1))
    ns, k = [], 1
    while k <= hi:
        if k >= lo:
            ns.append(k)
        k *= 2
    if not ns:
        raise UsageError(f"no power of two in [{lo}, {hi}]")
    return ns


def _cmd_sweep(args: argparse.Namespace) -> int:
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    valid = {d.value for d in Decomposition}
    bad = [s for s in strategies if s not in valid]
    if bad or not strategies:
        raise UsageError(f"unknown strategies {bad}; choose from {sorted(valid)}")
    if args.decompose != "none":
        raise UsageError("sweep takes --strategies, not --decompose")
    rows = sweep(args.op, _sweep_ns(args), strategies, parallel=args.schedule == "parallel")
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out is not None and args.out.suffix == ".json" else "csv"
    _emit(rows_to_json(rows) if fmt == "json" else rows_to_csv(rows), args.out)
    return EXIT_OK


_COMMANDS = {"build": _cmd_build, "verify": _cmd_verify, "report": _cmd_report, "sweep": _cmd_sweep}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its message to stderr
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.verb](args)
    except (UsageError, CircuitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
