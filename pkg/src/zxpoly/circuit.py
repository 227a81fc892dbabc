"""Gate-level circuit IR, gadget emitters, region lowering, and QASM export.

The gate set is CNOT / RZ / RX. Two gadget emitters are provided:

  * `naive_gadget_circuit` is the definitional ladder (parity cascade over
    ascending legs, one rotation, mirrored cascade) with every non-adjacent
    logical CNOT expanded into a 4(d-1)-CNOT edge-only zig-zag; it is the
    baseline that CNOT-reduction percentages are measured against.
  * `steiner_gadget_circuit` places CNOTs along a Steiner tree over the
    legs, cancelling non-leg relay wires, and is what the synthesis
    pipeline emits.

Both produce circuits whose unitary equals the gadget's exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import pi

from .arch import Architecture, rooted_tree
from .parity import steiner_gauss
from .poly import Phase, PhaseGadget, ZXPolynomial
from .rules import Cnot
from .synth import GadgetRegion, ParityRegion, Region


@dataclass(frozen=True)
class Rz:
    phase: Phase
    qubit: int


@dataclass(frozen=True)
class Rx:
    phase: Phase
    qubit: int


Gate = Cnot | Rz | Rx


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        for gate in self.gates:
            self._check(gate)

    def _check(self, gate: Gate) -> None:
        if isinstance(gate, Cnot):
            if gate.control >= self.num_qubits or gate.target >= self.num_qubits:
                raise ValueError(f"{gate} out of range for {self.num_qubits} qubits")
        elif gate.qubit >= self.num_qubits:
            raise ValueError(f"gate qubit {gate.qubit} out of range")

    def append(self, gate: Gate) -> None:
        self._check(gate)
        self.gates.append(gate)

    def extend(self, gates) -> None:
        for gate in gates:
            self.append(gate)

    def __len__(self) -> int:
        return len(self.gates)


def cnot_count(circuit: Circuit) -> int:
    return sum(1 for gate in circuit.gates if isinstance(gate, Cnot))


def reduction(cx_naive: int, cx_out: int) -> float:
    """CNOT reduction percentage, positive when the output is smaller."""
    if cx_naive <= 0:
        raise ValueError("reduction undefined for a zero-CNOT baseline")
    return 100.0 * (cx_naive - cx_out) / cx_naive


def routed_cnot(arch: Architecture, control: int, target: int) -> list[Cnot]:
    """Edge-only implementation of CNOT(control, target).

    Adjacent pairs emit a single gate; a pair at distance d > 1 expands to
    4(d-1) CNOTs by two zig-zag sweeps along the shortest path.
    """
    path = arch.shortest_path(control, target)
    d = len(path) - 1
    if d == 0:
        raise ValueError("control equals target")
    step = lambda i: Cnot(path[i], path[i + 1])
    gates = [step(i) for i in range(d)]
    gates += [step(i) for i in range(d - 2, -1, -1)]
    gates += [step(i) for i in range(1, d)]
    gates += [step(i) for i in range(d - 2, 0, -1)]
    return gates


def _ladder_cnot(arch: Architecture, upstream: int, downstream: int, basis: str) -> list[Cnot]:
    # Z ladders cascade parity downward (control above), X ladders are the
    # Hadamard-conjugated mirror with control and target exchanged.
    if basis == "Z":
        return routed_cnot(arch, upstream, downstream)
    return routed_cnot(arch, downstream, upstream)


def _rotation(basis: str, phase: Phase, qubit: int) -> Gate:
    return Rz(phase, qubit) if basis == "Z" else Rx(phase, qubit)


def naive_gadget_circuit(gadget: PhaseGadget, arch: Architecture) -> Circuit:
    """Definitional ladder circuit for one gadget, made edge-legal by routing."""
    legs = gadget.leg_list()
    if not legs or legs[-1] >= arch.num_qubits:
        raise ValueError("gadget legs invalid for the architecture")
    circuit = Circuit(arch.num_qubits)
    up: list[Cnot] = []
    for a, b in zip(legs, legs[1:]):
        up.extend(_ladder_cnot(arch, a, b, gadget.basis))
    circuit.extend(up)
    circuit.append(_rotation(gadget.basis, gadget.phase, legs[-1]))
    circuit.extend(reversed(up))
    return circuit


def naive_poly_circuit(poly: ZXPolynomial, arch: Architecture) -> Circuit:
    """Concatenated naive ladders for every gadget; the metric baseline."""
    circuit = Circuit(arch.num_qubits)
    for gadget in poly.gadgets:
        circuit.extend(naive_gadget_circuit(gadget, arch).gates)
    return circuit


def _tree_root(tree_edges, legs: list[int]) -> int:
    """Leg vertex with minimal tree eccentricity.

    Ties go to the highest leg index, matching the naive ladder's
    convention of rotating the last leg.
    """
    if not tree_edges:
        return legs[0]
    best = None
    for leg in sorted(legs):
        parent, order = rooted_tree(tree_edges, leg)
        depth = {leg: 0}
        for v in order[1:]:
            depth[v] = depth[parent[v]] + 1
        ecc = max(depth.values())
        if best is None or ecc <= best[0]:
            best = (ecc, leg)
    return best[1]


def steiner_gadget_circuit(gadget: PhaseGadget, arch: Architecture) -> Circuit:
    """Tree-placed circuit for one gadget.

    The parity of the legs is accumulated onto the root by a post-order
    sweep of CNOT(child, parent) ops; each non-leg relay vertex emits one
    extra cancelling CNOT before its subtree so its own input drops out of
    the parity. The sweep is mirrored after the rotation. X gadgets use the
    same structure with every CNOT direction reversed and an RX rotation.
    """
    legs = gadget.leg_list()
    if not legs or legs[-1] >= arch.num_qubits:
        raise ValueError("gadget legs invalid for the architecture")
    circuit = Circuit(arch.num_qubits)
    if len(legs) == 1:
        circuit.append(_rotation(gadget.basis, gadget.phase, legs[0]))
        return circuit
    tree_edges, _ = arch.terminal_tree(legs)
    root = _tree_root(tree_edges, legs)
    parent, order = rooted_tree(tree_edges, root)
    children: dict[int, list[int]] = {v: [] for v in order}
    for v in order[1:]:
        children[parent[v]].append(v)

    flip = gadget.basis == "X"

    def edge_cnot(v: int) -> Cnot:
        return Cnot(parent[v], v) if flip else Cnot(v, parent[v])

    def emit(v: int) -> list[Cnot]:
        gates: list[Cnot] = []
        if not gadget.has_leg(v):
            gates.append(edge_cnot(v))
        for child in sorted(children[v]):
            gates.extend(emit(child))
        gates.append(edge_cnot(v))
        return gates

    up: list[Cnot] = []
    for child in sorted(children[root]):
        up.extend(emit(child))
    circuit.extend(up)
    circuit.append(_rotation(gadget.basis, gadget.phase, root))
    circuit.extend(reversed(up))
    return circuit


def lower_regions(regions: list[Region], arch: Architecture) -> Circuit:
    """Lower an alternating region list: Steiner-Gauss for parity regions,
    tree-placed gadget circuits for gadget regions, concatenated in order."""
    circuit = Circuit(arch.num_qubits)
    for region in regions:
        if isinstance(region, ParityRegion):
            if region.map.size != arch.num_qubits:
                raise ValueError("parity region size does not match architecture")
            circuit.extend(steiner_gauss(region.map, arch))
        elif isinstance(region, GadgetRegion):
            if region.poly.num_qubits != arch.num_qubits:
                raise ValueError("gadget region size does not match architecture")
            for gadget in region.poly.gadgets:
                circuit.extend(steiner_gadget_circuit(gadget, arch).gates)
        else:  # pragma: no cover - exhaustive over the region union
            raise TypeError(f"unknown region {region!r}")
    return circuit


# --- QASM 2.0 / JSON interchange ---------------------------------------------

_QASM_CX = re.compile(r"^cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;$")
_QASM_ROT = re.compile(r"^(rz|rx)\(([-+0-9.eE]+)\)\s+q\[(\d+)\]\s*;$")
_QASM_QREG = re.compile(r"^qreg\s+q\[(\d+)\]\s*;$")


def to_qasm(circuit: Circuit) -> str:
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    for gate in circuit.gates:
        if isinstance(gate, Cnot):
            lines.append(f"cx q[{gate.control}],q[{gate.target}];")
        else:
            name = "rz" if isinstance(gate, Rz) else "rx"
            theta = gate.phase.radians()
            lines.append(f"{name}({theta:.12g}) q[{gate.qubit}];")
    return "\n".join(lines) + "\n"


def _phase_from_radians(theta: float) -> Phase:
    frac = Fraction(theta / pi).limit_denominator(10**6)
    return Phase(frac.numerator, frac.denominator)


def from_qasm(text: str) -> Circuit:
    num_qubits = None
    gates: list[Gate] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("//") or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        m = _QASM_QREG.match(line)
        if m:
            num_qubits = int(m.group(1))
            continue
        m = _QASM_CX.match(line)
        if m:
            gates.append(Cnot(int(m.group(1)), int(m.group(2))))
            continue
        m = _QASM_ROT.match(line)
        if m:
            phase = _phase_from_radians(float(m.group(2)))
            qubit = int(m.group(3))
            gates.append(Rz(phase, qubit) if m.group(1) == "rz" else Rx(phase, qubit))
            continue
        raise ValueError(f"unsupported QASM line: {line!r}")
    if num_qubits is None:
        raise ValueError("QASM input has no qreg declaration")
    return Circuit(num_qubits, gates)


def to_json_dict(circuit: Circuit) -> dict:
    gates = []
    for gate in circuit.gates:
        if isinstance(gate, Cnot):
            gates.append({"gate": "cx", "control": gate.control, "target": gate.target})
        else:
            name = "rz" if isinstance(gate, Rz) else "rx"
            gates.append({"gate": name, "phase": str(gate.phase), "qubit": gate.qubit})
    return {"qubits": circuit.num_qubits, "gates": gates}


def from_json_dict(data: dict) -> Circuit:
    gates: list[Gate] = []
    for entry in data.get("gates", ()):
        kind = entry["gate"]
        if kind == "cx":
            gates.append(Cnot(int(entry["control"]), int(entry["target"])))
        elif kind in ("rz", "rx"):
            phase = Phase.parse(str(entry["phase"]))
            cls = Rz if kind == "rz" else Rx
            gates.append(cls(phase, int(entry["qubit"])))
        else:
            raise ValueError(f"unknown gate kind {kind!r}")
    return Circuit(int(data["qubits"]), gates)


def circuit_to_json(circuit: Circuit, indent: int | None = None) -> str:
    return json.dumps(to_json_dict(circuit), indent=indent)


def circuit_from_json(text: str) -> Circuit:
    return from_json_dict(json.loads(text))
