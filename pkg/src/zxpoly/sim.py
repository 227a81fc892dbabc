"""Dense-unitary oracle for desk-scale correctness checks.

Builds exact 2^q x 2^q unitaries for gadgets, polynomials, circuits, parity
maps and region lists so rewrite rules and the synthesis pipeline can be
verified numerically. Qubit j is the j-th least significant bit of the
basis-state index. Capped at 12 qubits; this module is an oracle, not a
simulator.
"""

from __future__ import annotations

from math import cos, sin

import numpy as np

from .circuit import Circuit, Rx, Rz
from .parity import ParityMap
from .poly import PhaseGadget, ZXPolynomial
from .rules import Cnot
from .synth import GadgetRegion, ParityRegion, Region

MAX_QUBITS = 12
_INV_SQRT2 = 2.0 ** -0.5


def _check_size(num_qubits: int) -> None:
    if num_qubits > MAX_QUBITS:
        raise ValueError(f"oracle supports at most {MAX_QUBITS} qubits, got {num_qubits}")
    if num_qubits < 1:
        raise ValueError("need at least one qubit")


def _leg_parities(legs: int, num_qubits: int) -> np.ndarray:
    """Parity of (basis index & legs) for every basis index, as +-1 signs."""
    masked = np.arange(1 << num_qubits, dtype=np.int64) & legs
    parity = np.zeros(1 << num_qubits, dtype=np.int64)
    for b in range(num_qubits):
        parity ^= (masked >> b) & 1
    return 1 - 2 * parity  # parity 0 -> +1, parity 1 -> -1


def _apply_cnot(mat: np.ndarray, cnot: Cnot, num_qubits: int) -> np.ndarray:
    idx = np.arange(1 << num_qubits)
    perm = np.where((idx >> cnot.control) & 1 == 1, idx ^ (1 << cnot.target), idx)
    return mat[perm]


def _apply_rz(mat: np.ndarray, theta: float, qubit: int, num_qubits: int) -> np.ndarray:
    bits = (np.arange(1 << num_qubits) >> qubit) & 1
    factors = np.exp(-0.5j * theta * (1 - 2 * bits))
    return factors[:, None] * mat


def _apply_rx(mat: np.ndarray, theta: float, qubit: int, num_qubits: int) -> np.ndarray:
    idx = np.arange(1 << num_qubits)
    lo = idx[(idx >> qubit) & 1 == 0]
    hi = lo ^ (1 << qubit)
    c, s = cos(theta / 2), sin(theta / 2)
    out = np.empty_like(mat)
    out[lo] = c * mat[lo] - 1j * s * mat[hi]
    out[hi] = -1j * s * mat[lo] + c * mat[hi]
    return out


def _apply_h(mat: np.ndarray, qubit: int, num_qubits: int) -> np.ndarray:
    idx = np.arange(1 << num_qubits)
    lo = idx[(idx >> qubit) & 1 == 0]
    hi = lo ^ (1 << qubit)
    out = np.empty_like(mat)
    out[lo] = (mat[lo] + mat[hi]) * _INV_SQRT2
    out[hi] = (mat[lo] - mat[hi]) * _INV_SQRT2
    return out


def _apply_gadget(mat: np.ndarray, gadget: PhaseGadget, num_qubits: int) -> np.ndarray:
    legs = gadget.leg_list()
    if gadget.basis == "X":
        for leg in legs:
            mat = _apply_h(mat, leg, num_qubits)
    signs = _leg_parities(gadget.legs, num_qubits)
    factors = np.exp(-0.5j * gadget.phase.radians() * signs)
    mat = factors[:, None] * mat
    if gadget.basis == "X":
        for leg in legs:
            mat = _apply_h(mat, leg, num_qubits)
    return mat


def identity_unitary(num_qubits: int) -> np.ndarray:
    _check_size(num_qubits)
    return np.eye(1 << num_qubits, dtype=complex)


def gadget_unitary(gadget: PhaseGadget, num_qubits: int) -> np.ndarray:
    """Unitary of one gadget: diagonal parity phases, Hadamard-conjugated on X."""
    _check_size(num_qubits)
    if gadget.legs >> num_qubits:
        raise ValueError("gadget legs out of range")
    return _apply_gadget(identity_unitary(num_qubits), gadget, num_qubits)


def poly_unitary(poly: ZXPolynomial) -> np.ndarray:
    _check_size(poly.num_qubits)
    mat = identity_unitary(poly.num_qubits)
    for gadget in poly.gadgets:
        mat = _apply_gadget(mat, gadget, poly.num_qubits)
    return mat


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Unitary of a gate list; temporal order left to right."""
    _check_size(circuit.num_qubits)
    mat = identity_unitary(circuit.num_qubits)
    for gate in circuit.gates:
        if isinstance(gate, Cnot):
            mat = _apply_cnot(mat, gate, circuit.num_qubits)
        elif isinstance(gate, Rz):
            mat = _apply_rz(mat, gate.phase.radians(), gate.qubit, circuit.num_qubits)
        elif isinstance(gate, Rx):
            mat = _apply_rx(mat, gate.phase.radians(), gate.qubit, circuit.num_qubits)
        else:  # pragma: no cover - exhaustive over the gate union
            raise TypeError(f"unknown gate {gate!r}")
    return mat


def parity_unitary(m: ParityMap) -> np.ndarray:
    """Permutation unitary sending basis state x to M x over GF(2)."""
    _check_size(m.size)
    dim = 1 << m.size
    mat = np.zeros((dim, dim), dtype=complex)
    for x in range(dim):
        y = 0
        for i, row in enumerate(m.rows):
            y |= ((row & x).bit_count() & 1) << i
        mat[y, x] = 1.0
    return mat


def regions_unitary(regions: list[Region]) -> np.ndarray:
    """Unitary of an alternating parity/gadget region list, temporal order."""
    if not regions:
        raise ValueError("empty region list")
    size = regions[0].map.size if isinstance(regions[0], ParityRegion) else regions[0].poly.num_qubits
    mat = identity_unitary(size)
    for region in regions:
        if isinstance(region, ParityRegion):
            mat = parity_unitary(region.map) @ mat
        elif isinstance(region, GadgetRegion):
            for gadget in region.poly.gadgets:
                mat = _apply_gadget(mat, gadget, size)
        else:  # pragma: no cover
            raise TypeError(f"unknown region {region!r}")
    return mat


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Frobenius comparison after aligning b's global phase to a's."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    flat = int(np.argmax(np.abs(a)))
    i, j = divmod(flat, a.shape[1])
    if abs(b[i, j]) == 0.0:
        return False
    ratio = a[i, j] / b[i, j]
    ratio /= abs(ratio)
    return bool(np.linalg.norm(a - ratio * b) < tol)
