"""Benchmark sweeps: instance generation, pipeline timing, CNOT accounting.

A sweep grid is a JSON object like

    {"kind": "random",
     "qubits": [4, 5, 6],
     "gadgets": [10, 30, 50, 70, 90],
     "max_legs": 4,
     "architectures": ["complete", "line", "circle"],
     "algorithms": ["divide_fast", "divide_gauss"]}

(for kind "maxcut" use "vertices", "p_edges" and "layers" lists instead of
"qubits"/"gadgets"/"max_legs"). Repetition r of a grid point uses seed
base_seed + r, so runs are reproducible; the wall-time column is the only
non-deterministic output. Every instance with few enough qubits is checked
against the dense oracle, and failures are recorded without aborting the
sweep.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

from . import sim
from .arch import Architecture, build_architecture
from .circuit import Circuit, cnot_count, lower_regions, naive_poly_circuit
from .generators import maxcut_qaoa, random_poly
from .poly import ZXPolynomial
from .simplify import simplify
from .synth import synthesize

VERIFY_MAX_QUBITS = 8

ALGORITHMS = ("divide_fast", "divide_gauss", "naive")


@dataclass
class BenchRecord:
    n_qubits: int
    n_pgs: int
    max_legs: int
    architecture: str
    algorithm: str
    seed: int
    cx_naive: int
    cx_out: int
    reduction_pct: float
    time_s: float
    verified: bool | None = None  # None when the oracle check was skipped

CSV_HEADER = [
    "n_qubits", "n_pgs", "max_legs", "architecture", "algorithm",
    "seed", "cx_naive", "cx_out", "reduction_pct", "time_s",
]


def _arch_descriptor(name: str, num_qubits: int) -> str:
    name = name.lower()
    if ":" in name or name.startswith("{"):
        return name
    if name in ("line", "circle", "complete"):
        return f"{name}:{num_qubits}"
    if name in ("grid", "square"):
        side = round(num_qubits ** 0.5)
        if side * side != num_qubits:
            raise ValueError(f"square architecture needs a square qubit count, got {num_qubits}")
        return f"grid:{side}x{side}"
    raise ValueError(f"unknown architecture name {name!r}")


def run_instance(
    poly: ZXPolynomial,
    arch: Architecture,
    algorithm: str,
    verify: bool,
) -> tuple[int, int, float, float, bool | None, Circuit]:
    """Run one pipeline; returns (cx_naive, cx_out, reduction, time, verified, circuit)."""
    cx_naive = cnot_count(naive_poly_circuit(poly, arch))
    if algorithm == "naive":
        start = time.perf_counter()
        circuit = naive_poly_circuit(poly, arch)
        elapsed = time.perf_counter() - start
    else:
        mode = {"divide_fast": "fast", "divide_gauss": "gauss"}[algorithm]
        reduced = simplify(poly)
        start = time.perf_counter()
        regions = synthesize(reduced, arch, mode)
        circuit = lower_regions(regions, arch)
        elapsed = time.perf_counter() - start
    cx_out = cnot_count(circuit)
    reduction_pct = 0.0 if cx_naive == 0 else 100.0 * (cx_naive - cx_out) / cx_naive
    verified: bool | None = None
    if verify and poly.num_qubits <= VERIFY_MAX_QUBITS:
        verified = sim.equal_up_to_global_phase(
            sim.poly_unitary(poly), sim.circuit_unitary(circuit), tol=1e-9
        )
    return cx_naive, cx_out, reduction_pct, elapsed, verified, circuit


def _grid_points(grid: dict):
    kind = grid.get("kind", "random")
    arch_names = grid.get("architectures", ["complete"])
    algorithms = grid.get("algorithms", ["divide_fast"])
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algo!r}")
    if kind == "random":
        for q in grid["qubits"]:
            for n in grid["gadgets"]:
                for arch_name in arch_names:
                    yield {"kind": kind, "qubits": q, "gadgets": n,
                           "max_legs": grid.get("max_legs", 4),
                           "arch": arch_name, "algorithms": algorithms}
    elif kind == "maxcut":
        for v in grid["vertices"]:
            for p in grid["p_edges"]:
                for layers in grid["layers"]:
                    for arch_name in arch_names:
                        yield {"kind": kind, "qubits": v, "p_edge": p,
                               "layers": layers, "arch": arch_name,
                               "algorithms": algorithms}
    else:
        raise ValueError(f"unknown grid kind {kind!r}")


def run_bench(
    grid: dict, reps: int, base_seed: int, verify: bool = True
) -> tuple[list[BenchRecord], int]:
    """Run the sweep; returns (records, number of failed instances)."""
    records: list[BenchRecord] = []
    failures = 0
    for point in _grid_points(grid):
        arch = build_architecture(_arch_descriptor(point["arch"], point["qubits"]))
        for rep in range(reps):
            seed = base_seed + rep
            if point["kind"] == "random":
                poly = random_poly(point["qubits"], point["gadgets"], point["max_legs"], seed)
                max_legs = point["max_legs"]
            else:
                poly = maxcut_qaoa(point["qubits"], point["p_edge"], point["layers"], seed)
                max_legs = 2
            for algorithm in point["algorithms"]:
                try:
                    cx_naive, cx_out, red, elapsed, verified, _ = run_instance(
                        poly, arch, algorithm, verify
                    )
                except Exception:
                    failures += 1
                    continue
                if verified is False:
                    failures += 1
                records.append(BenchRecord(
                    n_qubits=poly.num_qubits,
                    n_pgs=len(poly.gadgets),
                    max_legs=max_legs,
                    architecture=arch.name,
                    algorithm=algorithm,
                    seed=seed,
                    cx_naive=cx_naive,
                    cx_out=cx_out,
                    reduction_pct=red,
                    time_s=elapsed,
                    verified=verified,
                ))
    return records, failures


def records_to_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([
            r.n_qubits, r.n_pgs, r.max_legs, r.architecture, r.algorithm,
            r.seed, r.cx_naive, r.cx_out, f"{r.reduction_pct:.4f}", f"{r.time_s:.6f}",
        ])
    return buf.getvalue()


def mean(values) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0
