"""Command-line front end.

Subcommands: generate, simplify, synth, verify, bench. Polynomials travel
as JSON; circuits as QASM 2.0 or gate-list JSON. Exit code 0 on success,
nonzero on any verification failure or error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import circuit as circ
from . import sim
from .arch import build_architecture
from .bench import records_to_csv, run_bench
from .generators import maxcut_qaoa, random_poly
from .poly import ZXPolynomial
from .simplify import simplify as simplify_poly
from .synth import synthesize


def _read_text(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_poly(path: str) -> ZXPolynomial:
    return ZXPolynomial.from_json(_read_text(path))


def _load_circuit(path: str) -> circ.Circuit:
    text = _read_text(path)
    if path.endswith(".qasm") or text.lstrip().startswith("OPENQASM"):
        return circ.from_qasm(text)
    return circ.circuit_from_json(text)


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.maxcut:
        poly = maxcut_qaoa(args.vertices, args.p_edge, args.layers, args.seed)
    else:
        poly = random_poly(args.qubits, args.gadgets, args.max_legs, args.seed)
    _write_text(args.out, poly.to_json(indent=2) + "\n")
    return 0


def _cmd_simplify(args: argparse.Namespace) -> int:
    poly = _load_poly(args.infile)
    _write_text(args.out, simplify_poly(poly).to_json(indent=2) + "\n")
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    poly = _load_poly(args.infile)
    arch_spec = args.arch
    if arch_spec.endswith(".json"):
        arch_spec = Path(arch_spec).read_text()
    arch = build_architecture(arch_spec)
    if arch.num_qubits != poly.num_qubits:
        print(f"error: polynomial has {poly.num_qubits} qubits, architecture "
              f"{arch.name} has {arch.num_qubits}", file=sys.stderr)
        return 2
    if args.simplify:
        poly = simplify_poly(poly)
    regions = synthesize(poly, arch, args.mode)
    lowered = circ.lower_regions(regions, arch)
    if args.format == "qasm":
        _write_text(args.out, circ.to_qasm(lowered))
    else:
        _write_text(args.out, circ.circuit_to_json(lowered, indent=2) + "\n")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    poly = _load_poly(args.poly)
    circuit = _load_circuit(args.circuit)
    if circuit.num_qubits != poly.num_qubits:
        print("error: qubit counts differ", file=sys.stderr)
        return 2
    u_poly = sim.poly_unitary(poly)
    u_circ = sim.circuit_unitary(circuit)
    ok = sim.equal_up_to_global_phase(u_poly, u_circ, tol=args.tol)
    flat = abs(u_poly).argmax()
    i, j = divmod(int(flat), u_poly.shape[1])
    ratio = u_poly[i, j] / u_circ[i, j] if abs(u_circ[i, j]) > 0 else 1.0
    if abs(ratio) > 0:
        ratio /= abs(ratio)
    residual = float(abs(u_poly - ratio * u_circ).max())
    print(f"{'PASS' if ok else 'FAIL'} residual={residual:.3e} tol={args.tol:.1e}")
    return 0 if ok else 1


def _cmd_bench(args: argparse.Namespace) -> int:
    grid = json.loads(_read_text(args.grid))
    records, failures = run_bench(grid, reps=args.reps, base_seed=args.seed,
                                  verify=not args.no_verify)
    _write_text(args.out, records_to_csv(records))
    print(f"{len(records)} records, {failures} failures", file=sys.stderr)
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zxpoly",
        description="Simplify and synthesize ZX phase-gadget circuits onto "
                    "constrained qubit connectivities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a random or MaxCut polynomial")
    gen.add_argument("--qubits", type=int, default=4)
    gen.add_argument("--gadgets", type=int, default=10)
    gen.add_argument("--max-legs", type=int, default=4)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--maxcut", action="store_true",
                     help="generate a MaxCut ansatz instead of a random polynomial")
    gen.add_argument("--vertices", type=int, default=4)
    gen.add_argument("--p-edge", type=float, default=0.5)
    gen.add_argument("--layers", type=int, default=1)
    gen.add_argument("--out", default="-")
    gen.set_defaults(func=_cmd_generate)

    simp = sub.add_parser("simplify", help="peephole-simplify a polynomial JSON")
    simp.add_argument("--in", dest="infile", required=True)
    simp.add_argument("--out", default="-")
    simp.set_defaults(func=_cmd_simplify)

    syn = sub.add_parser("synth", help="synthesize a polynomial onto an architecture")
    syn.add_argument("--in", dest="infile", required=True)
    syn.add_argument("--arch", required=True,
                     help="descriptor like line:4, grid:3x3, complete:5, or a JSON graph file")
    syn.add_argument("--mode", choices=("fast", "gauss"), default="fast")
    syn.add_argument("--format", choices=("qasm", "json"), default="qasm")
    syn.add_argument("--no-simplify", dest="simplify", action="store_false",
                     help="skip the simplification pass before synthesis")
    syn.add_argument("--out", default="-")
    syn.set_defaults(func=_cmd_synth)

    ver = sub.add_parser("verify", help="compare a polynomial against a circuit")
    ver.add_argument("--poly", required=True)
    ver.add_argument("--circuit", required=True)
    ver.add_argument("--tol", type=float, default=1e-9)
    ver.set_defaults(func=_cmd_verify)

    ben = sub.add_parser("bench", help="run a benchmark sweep to CSV")
    ben.add_argument("--grid", required=True, help="JSON sweep description")
    ben.add_argument("--reps", type=int, default=20)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--out", default="-")
    ben.add_argument("--no-verify", action="store_true",
                     help="skip per-instance oracle checks")
    ben.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
