"""Core data model: exact phases, phase gadgets, and ZX polynomials.

Phases are exact rational multiples of pi so that gadget merging, the
zero-phase removal test and the pi-commutation test are exact predicates
rather than float comparisons. Gadget legs are stored as int bitmasks
(bit j set = the gadget has a leg on wire j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import pi
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Phase:
    """An angle of (numerator/denominator)*pi, normalized into [0, 2pi).

    Stored in lowest terms with a positive denominator, so equal angles
    always compare equal. Addition and negation are modulo 2*pi.
    """

    numerator: int
    denominator: int = 1

    def __post_init__(self) -> None:
        if self.denominator == 0:
            raise ValueError("phase denominator must be nonzero")
        frac = Fraction(self.numerator, self.denominator) % 2
        object.__setattr__(self, "numerator", frac.numerator)
        object.__setattr__(self, "denominator", frac.denominator)

    @staticmethod
    def zero() -> "Phase":
        return Phase(0)

    @staticmethod
    def pi() -> "Phase":
        return Phase(1)

    @staticmethod
    def from_fraction(frac: Fraction) -> "Phase":
        return Phase(frac.numerator, frac.denominator)

    @staticmethod
    def parse(text: str) -> "Phase":
        """Parse a phase in pi-units from a fraction string, e.g. "1/2" or "-3/4"."""
        return Phase.from_fraction(Fraction(text.strip()))

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def radians(self) -> float:
        return float(self.as_fraction()) * pi

    def is_zero(self) -> bool:
        return self.numerator == 0

    def is_pi(self) -> bool:
        return self.numerator == 1 and self.denominator == 1

    def __add__(self, other: "Phase") -> "Phase":
        return Phase.from_fraction(self.as_fraction() + other.as_fraction())

    def __neg__(self) -> "Phase":
        return Phase.from_fraction(-self.as_fraction())

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def legs_to_mask(legs: Iterable[int]) -> int:
    mask = 0
    for leg in legs:
        if leg < 0:
            raise ValueError(f"negative leg index {leg}")
        mask |= 1 << leg
    return mask


def mask_to_legs(mask: int) -> list[int]:
    legs = []
    wire = 0
    while mask:
        if mask & 1:
            legs.append(wire)
        mask >>= 1
        wire += 1
    return legs


@dataclass(frozen=True)
class PhaseGadget:
    """A single Z- or X-basis many-qubit rotation.

    `legs` is a bitmask of the wires the rotation acts on; `phase` is the
    rotation angle. A Z gadget applies exp(-i*phase/2) to basis states with
    even leg parity and exp(+i*phase/2) to odd ones; an X gadget is the same
    conjugated by Hadamards on its legs.
    """

    basis: str
    legs: int
    phase: Phase

    def __post_init__(self) -> None:
        if self.basis not in ("Z", "X"):
            raise ValueError(f"basis must be 'Z' or 'X', got {self.basis!r}")
        if self.legs < 0:
            raise ValueError("legs mask must be non-negative")

    @staticmethod
    def z(legs: Iterable[int], phase: Phase) -> "PhaseGadget":
        return PhaseGadget("Z", legs_to_mask(legs), phase)

    @staticmethod
    def x(legs: Iterable[int], phase: Phase) -> "PhaseGadget":
        return PhaseGadget("X", legs_to_mask(legs), phase)

    def leg_list(self) -> list[int]:
        return mask_to_legs(self.legs)

    def num_legs(self) -> int:
        return self.legs.bit_count()

    def has_leg(self, wire: int) -> bool:
        return bool(self.legs >> wire & 1)

    def with_legs(self, mask: int) -> "PhaseGadget":
        return PhaseGadget(self.basis, mask, self.phase)

    def with_phase(self, phase: Phase) -> "PhaseGadget":
        return PhaseGadget(self.basis, self.legs, phase)

    def __str__(self) -> str:
        return f"{self.basis}{{{','.join(map(str, self.leg_list()))}}}({self.phase})"


@dataclass(frozen=True)
class ZXPolynomial:
    """An ordered sequence of phase gadgets over a fixed number of wires.

    Sequence order is circuit temporal order: the leftmost gadget is applied
    first.
    """

    num_qubits: int
    gadgets: tuple[PhaseGadget, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        object.__setattr__(self, "gadgets", tuple(self.gadgets))

    def __len__(self) -> int:
        return len(self.gadgets)

    def __iter__(self) -> Iterator[PhaseGadget]:
        return iter(self.gadgets)

    def validate(self) -> str | None:
        """Check structural invariants; return the first violation or None.

        Reported violations: a gadget with an empty leg set, or a leg index
        outside [0, num_qubits).
        """
        full = (1 << self.num_qubits) - 1
        for i, g in enumerate(self.gadgets):
            if g.legs == 0:
                return f"gadget {i}: empty leg set"
            if g.legs & ~full:
                bad = min(w for w in mask_to_legs(g.legs) if w >= self.num_qubits)
                return f"gadget {i}: leg {bad} out of range for {self.num_qubits} qubits"
        return None

    def to_json_dict(self) -> dict:
        return {
            "qubits": self.num_qubits,
            "gadgets": [
                {"basis": g.basis, "legs": g.leg_list(), "phase": str(g.phase)}
                for g in self.gadgets
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "ZXPolynomial":
        try:
            qubits = int(data["qubits"])
            gadgets = tuple(
                PhaseGadget(
                    str(entry["basis"]),
                    legs_to_mask(int(l) for l in entry["legs"]),
                    Phase.parse(str(entry["phase"])),
                )
                for entry in data.get("gadgets", ())
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc
        poly = ZXPolynomial(qubits, gadgets)
        violation = poly.validate()
        if violation is not None:
            raise ValueError(f"invalid polynomial: {violation}")
        return poly

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    @staticmethod
    def from_json(text: str) -> "ZXPolynomial":
        return ZXPolynomial.from_json_dict(json.loads(text))
