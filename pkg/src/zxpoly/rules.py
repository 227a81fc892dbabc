"""Rewrite rules on phase gadgets.

All rules are exact and unitary-preserving:
  * conjugating a gadget by a CNOT pair toggles one leg,
  * two gadgets commute iff they share a basis or overlap on an even
    number of wires,
  * a non-commuting pair where one gadget has phase pi may still be
    swapped by negating the other gadget's phase,
  * gadgets with identical basis and legs merge by adding phases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import PhaseGadget, ZXPolynomial


@dataclass(frozen=True)
class Cnot:
    """A CNOT gate with the given control and target wires."""

    control: int
    target: int

    def __post_init__(self) -> None:
        if self.control == self.target:
            raise ValueError("CNOT control and target must differ")
        if self.control < 0 or self.target < 0:
            raise ValueError("CNOT wires must be non-negative")

    def __str__(self) -> str:
        return f"CNOT({self.control},{self.target})"


def propagate_cnot_gadget(gadget: PhaseGadget, cnot: Cnot) -> PhaseGadget:
    """Conjugate a gadget by a CNOT: returns CNOT * gadget * CNOT.

    For a Z gadget the control leg toggles iff the target wire carries a
    leg; for an X gadget the target leg toggles iff the control wire does.
    Basis and phase are unchanged, and the leg set can never become empty
    (the tested wire keeps its leg).
    """
    if gadget.basis == "Z":
        tested, toggled = cnot.target, cnot.control
    else:
        tested, toggled = cnot.control, cnot.target
    if gadget.legs >> tested & 1:
        return gadget.with_legs(gadget.legs ^ (1 << toggled))
    return gadget


def propagate_cnot_poly(poly: ZXPolynomial, cnot: Cnot) -> ZXPolynomial:
    """Conjugate every gadget in the polynomial by the CNOT.

    The caller is responsible for absorbing the emitted CNOT pair into the
    flanking parity maps; the conjugated polynomial alone satisfies
    U(CNOT) * U(poly') * U(CNOT) = U(poly).
    """
    if not (cnot.control < poly.num_qubits and cnot.target < poly.num_qubits):
        raise ValueError(f"{cnot} out of range for {poly.num_qubits} qubits")
    return ZXPolynomial(
        poly.num_qubits,
        tuple(propagate_cnot_gadget(g, cnot) for g in poly.gadgets),
    )


def commutes(a: PhaseGadget, b: PhaseGadget) -> bool:
    """True iff the gadgets share a basis or overlap on an even wire count."""
    if a.basis == b.basis:
        return True
    return (a.legs & b.legs).bit_count() % 2 == 0


def pi_commute_swap(
    a: PhaseGadget, b: PhaseGadget
) -> tuple[PhaseGadget, PhaseGadget] | None:
    """Swap a non-commuting adjacent pair when one gadget has phase pi.

    `(a, b)` is in temporal order (a applied first). Returns the swapped
    pair `(b', a')`, again in temporal order, where the pi gadget passes
    through unchanged and the other gadget's phase is negated, so that
    U(b)*U(a) = U(a')*U(b'). Returns None when the pair already commutes
    or when neither phase is pi. When both phases are pi the left gadget
    is treated as the pi carrier (negating pi is a no-op).
    """
    if commutes(a, b):
        return None
    if a.phase.is_pi():
        return b.with_phase(-b.phase), a
    if b.phase.is_pi():
        return b, a.with_phase(-a.phase)
    return None


def try_merge(a: PhaseGadget, b: PhaseGadget) -> PhaseGadget | None:
    """Merge two gadgets with identical basis and legs by adding phases.

    Returns None when basis or legs differ. A merged gadget may have zero
    phase; removing it is the caller's decision.
    """
    if a.basis == b.basis and a.legs == b.legs:
        return a.with_phase(a.phase + b.phase)
    return None
