"""Architecture-aware synthesis: cost model, CNOT extraction, regrouping,
and the recursive divide-and-conquer driver.

A polynomial is optimized inside an alternating region list
[P_0, G_1, P_1, ..., G_k, P_k] of parity maps and gadget runs. Extracting a
CNOT conjugates every gadget of one run and absorbs the gate pair into the
two flanking parity regions, preserving the total unitary while (ideally)
shrinking the gadgets' leg trees.

Cost conventions: `effect_zx` is the change (after minus before) in the
gadget-tree CNOT estimate, so negative is an improvement. `effect_parity`
follows the opposite orientation (cost before minus cost after, i.e. the
CNOTs saved on that parity region); the greedy test therefore accepts a
candidate when effect_zx - effect_parity(left) - effect_parity(right) < 0,
which is exactly "the total emitted-CNOT estimate strictly decreases".
"""

from __future__ import annotations

from dataclasses import dataclass

from .arch import Architecture
from .parity import ParityMap, append_cnot, cnot_cost, identity_map, prepend_cnot, steiner_gauss
from .poly import PhaseGadget, ZXPolynomial
from .rules import Cnot, commutes, pi_commute_swap, propagate_cnot_poly


@dataclass
class ParityRegion:
    """Holder for a parity map; shared by the two gadget runs it separates."""

    map: ParityMap


@dataclass(frozen=True)
class GadgetRegion:
    poly: ZXPolynomial


Region = ParityRegion | GadgetRegion


def _tree_weight(arch: Architecture, legs: int) -> int:
    cached = arch._gadget_cost_cache.get(legs)
    if cached is None:
        _, cached = arch.terminal_tree(
            [w for w in range(arch.num_qubits) if legs >> w & 1]
        )
        arch._gadget_cost_cache[legs] = cached
    return cached


def gadget_cost(gadget: PhaseGadget, arch: Architecture) -> int:
    """Heuristic CNOT count for emitting one gadget: twice its tree weight."""
    return 2 * _tree_weight(arch, gadget.legs)


def _propagated_legs(gadget: PhaseGadget, cnot: Cnot) -> int:
    if gadget.basis == "Z":
        tested, toggled = cnot.target, cnot.control
    else:
        tested, toggled = cnot.control, cnot.target
    if gadget.legs >> tested & 1:
        return gadget.legs ^ (1 << toggled)
    return gadget.legs


def effect_zx(poly: ZXPolynomial, cnot: Cnot, arch: Architecture) -> int:
    """Change in the summed gadget cost if the CNOT pair were propagated
    through the whole run; negative means the gadgets get cheaper."""
    delta = 0
    for gadget in poly.gadgets:
        new_legs = _propagated_legs(gadget, cnot)
        if new_legs != gadget.legs:
            delta += 2 * (_tree_weight(arch, new_legs) - _tree_weight(arch, gadget.legs))
    return delta


def effect_parity(m: ParityMap, cnot: Cnot, side: str, arch: Architecture) -> int:
    """CNOTs saved on a parity region by absorbing the propagated CNOT.

    The left region absorbs by append, the right by prepend, matching the
    conjugation direction of the polynomial propagation. Positive means the
    region synthesizes cheaper afterwards; the value never exceeds the
    control-target hop distance.
    """
    if side == "left":
        absorbed = append_cnot(m, cnot)
    elif side == "right":
        absorbed = prepend_cnot(m, cnot)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return cnot_cost(m, arch) - cnot_cost(absorbed, arch)


def _propagate_all(
    pl: ParityMap, poly: ZXPolynomial, pr: ParityMap, cnot: Cnot
) -> tuple[ParityMap, ZXPolynomial, ParityMap]:
    return (
        append_cnot(pl, cnot),
        propagate_cnot_poly(poly, cnot),
        prepend_cnot(pr, cnot),
    )


def optimize_gauss(
    pl: ParityMap, poly: ZXPolynomial, pr: ParityMap, arch: Architecture
) -> tuple[ParityMap, ZXPolynomial, ParityMap]:
    """Single greedy sweep over all ordered (control, target) pairs,
    propagating whenever the exact total emitted-CNOT estimate drops."""
    q = arch.num_qubits
    for control in range(q):
        for target in range(q):
            if control == target:
                continue
            cnot = Cnot(control, target)
            net = (
                effect_zx(poly, cnot, arch)
                - effect_parity(pl, cnot, "left", arch)
                - effect_parity(pr, cnot, "right", arch)
            )
            if net < 0:
                pl, poly, pr = _propagate_all(pl, poly, pr, cnot)
    return pl, poly, pr


def optimize_fast(
    pl: ParityMap, poly: ZXPolynomial, pr: ParityMap, arch: Architecture
) -> tuple[ParityMap, ZXPolynomial, ParityMap]:
    """Single heuristic sweep: instead of re-running Steiner-Gauss per
    candidate, bound both parity penalties by the hop distance and demand
    effect_zx < -2*d(c, t). Candidates come from the CNOTs of each parity
    region's own synthesis (computed once), then from all ordered pairs."""
    def worthwhile(cnot: Cnot) -> bool:
        return effect_zx(poly, cnot, arch) < -2 * arch.distance(cnot.control, cnot.target)

    for cnot in steiner_gauss(pl, arch):
        if worthwhile(cnot):
            pl, poly, pr = _propagate_all(pl, poly, pr, cnot)
    for cnot in steiner_gauss(pr, arch):
        if worthwhile(cnot):
            pl, poly, pr = _propagate_all(pl, poly, pr, cnot)
    q = arch.num_qubits
    for control in range(q):
        for target in range(q):
            if control != target:
                cnot = Cnot(control, target)
                if worthwhile(cnot):
                    pl, poly, pr = _propagate_all(pl, poly, pr, cnot)
    return pl, poly, pr


def score(a: PhaseGadget, b: PhaseGadget, num_qubits: int) -> int:
    """Leg-affinity score between two gadgets, basis ignored.

    Per wire: +1 when both gadgets have a leg, -1 when exactly one does,
    -1 when neither does. Bounded by num_qubits in absolute value.
    """
    both = (a.legs & b.legs).bit_count()
    either = (a.legs | b.legs).bit_count()
    mismatch = either - both
    neither = num_qubits - either
    return both - mismatch - neither


def _legal_swap(
    first: PhaseGadget, second: PhaseGadget
) -> tuple[PhaseGadget, PhaseGadget] | None:
    """Swap an adjacent pair if commuting (free) or via the pi rule."""
    if commutes(first, second):
        return second, first
    return pi_commute_swap(first, second)


def regroup(poly: ZXPolynomial) -> ZXPolynomial:
    """Insertion-sort-like regrouping pass.

    A gadget bubbles right while the gadget after it scores higher against
    its predecessor than it does itself; each transposition is performed
    only when legal (commuting, or pi-commutation with the mandated phase
    flip), so the unitary is preserved up to global phase.
    """
    gadgets = list(poly.gadgets)
    n = len(gadgets)
    q = poly.num_qubits
    col = 1
    while col < n - 1:
        prev, cur, nxt = col - 1, col, col + 1
        while nxt < n and score(gadgets[prev], gadgets[cur], q) < score(
            gadgets[prev], gadgets[nxt], q
        ):
            swapped = _legal_swap(gadgets[cur], gadgets[nxt])
            if swapped is None:
                break
            gadgets[cur], gadgets[nxt] = swapped
            prev, cur, nxt = cur, nxt, nxt + 1
        col += 1
    return ZXPolynomial(poly.num_qubits, tuple(gadgets))


def split(poly: ZXPolynomial) -> tuple[ZXPolynomial, ZXPolynomial]:
    """Split into a ceil(n/2) head and the remaining tail."""
    if len(poly.gadgets) == 0:
        raise ValueError("cannot split an empty polynomial")
    half = (len(poly.gadgets) + 1) // 2
    return (
        ZXPolynomial(poly.num_qubits, poly.gadgets[:half]),
        ZXPolynomial(poly.num_qubits, poly.gadgets[half:]),
    )


_OPTIMIZERS = {"fast": optimize_fast, "gauss": optimize_gauss}


def synthesize(
    poly: ZXPolynomial, arch: Architecture, mode: str = "fast"
) -> list[Region]:
    """Divide-and-conquer synthesis into an alternating region list.

    Starts from [I, poly, I]; every recursion step regroups its gadget run,
    runs one optimizer sweep against the run's flanking parity regions
    (which may be shared with a neighboring run), and splits runs longer
    than two gadgets around a fresh identity parity region. Returns a list
    alternating parity and gadget regions that begins and ends with a
    parity region and whose total unitary equals the polynomial's.
    """
    if mode not in _OPTIMIZERS:
        raise ValueError(f"mode must be one of {sorted(_OPTIMIZERS)}, got {mode!r}")
    if poly.num_qubits != arch.num_qubits:
        raise ValueError("polynomial and architecture disagree on qubit count")
    if len(poly.gadgets) == 0:
        return [ParityRegion(identity_map(arch.num_qubits))]
    optimize = _OPTIMIZERS[mode]
    left = ParityRegion(identity_map(arch.num_qubits))
    right = ParityRegion(identity_map(arch.num_qubits))

    def descend(pl: ParityRegion, run: ZXPolynomial, pr: ParityRegion) -> list[Region]:
        run = regroup(run)
        pl.map, run, pr.map = optimize(pl.map, run, pr.map, arch)
        if len(run.gadgets) <= 2:
            return [GadgetRegion(run)]
        head, tail = split(run)
        middle = ParityRegion(identity_map(arch.num_qubits))
        left_part = descend(pl, head, middle)
        right_part = descend(middle, tail, pr)
        return left_part + [middle] + right_part

    inner = descend(left, poly, right)
    return [left] + inner + [right]
