"""Invertible GF(2) parity maps and CNOT resynthesis.

A parity map records the linear action of a CNOT subcircuit: rows[i] is an
int bitmask and bit j of rows[i] says the output parity of wire i includes
input x_j. Appending a CNOT (gate after the map) adds the control row onto
the target row; prepending (gate before the map) adds the target column
onto the control column.

`gauss_cnots` resynthesizes a map with unrestricted row additions;
`steiner_gauss` restricts every emitted CNOT to an architecture edge by
organizing each pivot column's elimination along a Steiner tree. Both
satisfy the replay contract: applying the returned gates in order to the
identity map reproduces the input bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .arch import Architecture, rooted_tree
from .rules import Cnot


@dataclass(frozen=True)
class ParityMap:
    size: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("parity map size must be positive")
        if len(self.rows) != self.size:
            raise ValueError("row count must equal size")
        full = (1 << self.size) - 1
        if any(row & ~full for row in self.rows):
            raise ValueError("row has bits outside the map size")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "ParityMap":
        masks = tuple(
            sum((1 if bit else 0) << j for j, bit in enumerate(row)) for row in rows
        )
        return ParityMap(len(masks), masks)

    def to_lists(self) -> list[list[int]]:
        return [[self.rows[i] >> j & 1 for j in range(self.size)] for i in range(self.size)]

    def is_identity(self) -> bool:
        return all(row == 1 << i for i, row in enumerate(self.rows))

    def __str__(self) -> str:
        return "\n".join(
            " ".join(str(self.rows[i] >> j & 1) for j in range(self.size))
            for i in range(self.size)
        )


def identity_map(num_qubits: int) -> ParityMap:
    return ParityMap(num_qubits, tuple(1 << i for i in range(num_qubits)))


def append_cnot(m: ParityMap, cnot: Cnot) -> ParityMap:
    """Map followed by the gate: target row gains the control row."""
    rows = list(m.rows)
    rows[cnot.target] ^= rows[cnot.control]
    return ParityMap(m.size, tuple(rows))


def prepend_cnot(m: ParityMap, cnot: Cnot) -> ParityMap:
    """Gate followed by the map: control column gains the target column."""
    tbit = 1 << cnot.target
    cbit = 1 << cnot.control
    rows = tuple(row ^ cbit if row & tbit else row for row in m.rows)
    return ParityMap(m.size, rows)


def from_cnots(num_qubits: int, cnots: Iterable[Cnot]) -> ParityMap:
    """Replay a CNOT sequence from the identity map."""
    m = identity_map(num_qubits)
    for cnot in cnots:
        m = append_cnot(m, cnot)
    return m


def gauss_cnots(m: ParityMap) -> list[Cnot]:
    """Architecture-unaware Gauss-Jordan resynthesis over GF(2).

    Uses row additions only (no permutations); the pivot fix picks the
    smallest row below the diagonal carrying a 1. Raises ValueError on a
    singular map.
    """
    q = m.size
    rows = list(m.rows)
    ops: list[tuple[int, int]] = []  # (src, dst): rows[dst] ^= rows[src]
    for col in range(q):
        bit = 1 << col
        if not rows[col] & bit:
            pivot = next((r for r in range(col + 1, q) if rows[r] & bit), None)
            if pivot is None:
                raise ValueError("parity map is singular")
            rows[col] ^= rows[pivot]
            ops.append((pivot, col))
        for r in range(q):
            if r != col and rows[r] & bit:
                rows[r] ^= rows[col]
                ops.append((col, r))
    return [Cnot(src, dst) for src, dst in reversed(ops)]


def _column_step(
    rows: list[int], pivot: int, allowed: frozenset[int], arch: Architecture
) -> list[tuple[int, int]]:
    """Make column `pivot` a unit column using tree-edge row additions.

    Builds a Steiner tree over the rows carrying the pivot bit plus the
    pivot row, fills ones downward so every tree row carries the bit, then
    eliminates upward so only the pivot row keeps it. All ops stay inside
    the allowed vertex set.
    """
    bit = 1 << pivot
    carriers = {r for r in allowed if rows[r] & bit}
    if not carriers:
        raise ValueError("parity map is singular")
    if carriers == {pivot}:
        return []
    ops: list[tuple[int, int]] = []
    tree_edges, _ = arch.terminal_tree(carriers | {pivot}, allowed)
    parent, bfs_order = rooted_tree(tree_edges, pivot)
    if not rows[pivot] & bit:
        # Pull a 1 up to the pivot along the path from the nearest carrier;
        # every vertex strictly between them lacks the bit, so each hop sets it.
        nearest = next(v for v in bfs_order if v in carriers)
        path = [nearest]
        while path[-1] != pivot:
            path.append(parent[path[-1]])
        for child, par in zip(path, path[1:]):
            rows[par] ^= rows[child]
            ops.append((child, par))
    for v in bfs_order[1:]:  # fill: every tree row carries the pivot bit
        if not rows[v] & bit:
            rows[v] ^= rows[parent[v]]
            ops.append((parent[v], v))
    for v in reversed(bfs_order[1:]):  # eliminate: only the pivot row keeps it
        rows[v] ^= rows[parent[v]]
        ops.append((parent[v], v))
    return ops


def _solve_row_combination(
    rows: list[int], candidates: list[int], target: int
) -> list[int]:
    """Subset of candidate rows XOR-summing to target (unique by invertibility).

    XOR basis keyed by lowest set bit: inserting reduces a vector by
    existing pivots until it lands on a fresh one, and the target is
    expressed by greedy reduction, which strictly raises its lowest bit.
    """
    pivots: dict[int, tuple[int, int]] = {}  # lowest bit -> (vector, combo mask)
    for idx, r in enumerate(candidates):
        vec, combo = rows[r], 1 << idx
        while vec:
            hit = pivots.get(vec & -vec)
            if hit is None:
                pivots[vec & -vec] = (vec, combo)
                break
            vec ^= hit[0]
            combo ^= hit[1]
    rest, combo = target, 0
    while rest:
        hit = pivots.get(rest & -rest)
        if hit is None:
            raise ValueError("parity map is singular")
        rest ^= hit[0]
        combo ^= hit[1]
    return [candidates[i] for i in range(len(candidates)) if combo >> i & 1]


def _row_step(
    rows: list[int],
    pivot: int,
    sources: list[int],
    arch: Architecture,
) -> list[tuple[int, int]]:
    """Add the XOR of the source rows onto the pivot row; restore the rest.

    Gathers along a Steiner tree rooted at the pivot: each subtree delivers
    its sources' XOR to its parent, with relay rows pre-cancelled so their
    own content stays out of the sum; replaying the non-pivot ops in
    reverse afterwards restores every other row (the pivot row is never a
    source, so the rewind is exact). Because everything but the pivot row
    is restored, the tree may route through any vertex of the graph.
    """
    tree_edges, _ = arch.terminal_tree(set(sources) | {pivot})
    parent, order = rooted_tree(tree_edges, pivot)
    children: dict[int, list[int]] = {v: [] for v in order}
    for v in order[1:]:
        children[parent[v]].append(v)
    wanted = set(sources)
    carries: dict[int, bool] = {}
    for v in reversed(order):
        carries[v] = v in wanted or any(carries[c] for c in children[v])

    ops: list[tuple[int, int]] = []

    def gather(v: int) -> None:
        for child in sorted(children[v]):
            if not carries[child]:
                continue
            if child not in wanted:
                ops.append((child, v))
                rows[v] ^= rows[child]
            gather(child)
            ops.append((child, v))
            rows[v] ^= rows[child]

    gather(pivot)
    undo = [(src, dst) for src, dst in reversed(ops) if dst != pivot]
    for src, dst in undo:
        rows[dst] ^= rows[src]
    return ops + undo


def _cnots_commute(a: Cnot, b: Cnot) -> bool:
    # CNOTs commute unless one's control is the other's target.
    return a.control != b.target and a.target != b.control


def _cancel_cnots(seq: list[Cnot]) -> list[Cnot]:
    """Drop self-cancelling CNOT pairs, looking through commuting gates.

    Product-preserving: a gate only meets its twin after commuting past
    everything in between, and CNOTs are self-inverse.
    """
    gates = list(seq)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(gates):
            twin = None
            for j in range(i + 1, len(gates)):
                if gates[j] == gates[i]:
                    twin = j
                    break
                if not _cnots_commute(gates[i], gates[j]):
                    break
            if twin is None:
                i += 1
            else:
                del gates[twin]
                del gates[i]
                changed = True
    return gates


def _eliminate_vertex(
    rows: list[int], pivot: int, allowed: frozenset[int], arch: Architecture
) -> list[tuple[int, int]]:
    """Purify the pivot's column and row; afterwards both equal the unit vector.

    The column step must stay inside the unfinished vertex set (its relay
    rows end up scrambled), but the row step restores every non-pivot row
    exactly, so its trees may route through finished vertices.
    """
    ops = _column_step(rows, pivot, allowed, arch)
    residue = rows[pivot] ^ (1 << pivot)
    if residue:
        candidates = sorted(allowed - {pivot})
        sources = _solve_row_combination(rows, candidates, residue)
        ops.extend(_row_step(rows, pivot, sources, arch))
    return ops


def _synthesize_raw(m: ParityMap, arch: Architecture) -> list[Cnot]:
    """Single greedy vertex-elimination synthesis of the map.

    Each round eliminates the cheapest vertex among those whose removal
    keeps the remaining graph connected; ties prefer the vertex that least
    stretches the distances between vertices still carrying matrix
    structure, then the smallest index.
    """
    rows = list(m.rows)
    ops: list[tuple[int, int]] = []
    remaining = set(range(m.size))
    while remaining:
        allowed = frozenset(remaining)
        trials = []
        for pivot in sorted(remaining):
            if len(remaining) > 1 and not _stays_connected(arch, remaining, pivot):
                continue
            trial_rows = rows[:]
            trial_ops = _eliminate_vertex(trial_rows, pivot, allowed, arch)
            trials.append((len(trial_ops), pivot, trial_ops, trial_rows))
        assert trials  # connected graphs always have a non-cut vertex
        cheapest = min(t[0] for t in trials)
        tied = [t for t in trials if t[0] == cheapest]
        if len(tied) > 1:  # the penalty is only a tie-break; skip it otherwise
            tied.sort(key=lambda t: (_stretch_penalty(arch, remaining, t[1], rows), t[1]))
        _, pivot, trial_ops, trial_rows = tied[0]
        ops.extend(trial_ops)
        rows = trial_rows
        remaining.remove(pivot)
    if any(row != 1 << i for i, row in enumerate(rows)):
        raise ValueError("parity map is singular")
    return _cancel_cnots([Cnot(src, dst) for src, dst in reversed(ops)])


def _stays_connected(arch: Architecture, remaining: set[int], pivot: int) -> bool:
    rest = frozenset(remaining - {pivot})
    start = next(iter(rest))
    dist = arch._bfs(start, rest)
    return all(dist[v] >= 0 for v in rest)


def _stretch_penalty(
    arch: Architecture, remaining: set[int], pivot: int, rows: list[int]
) -> int:
    """Total growth of pairwise distances between structure-carrying
    vertices if the pivot were removed from the remaining subgraph."""
    involved = sorted(
        v for v in remaining
        if v != pivot and (rows[v] != 1 << v or any(rows[u] >> v & 1 for u in remaining if u != v))
    )
    if len(involved) < 2:
        return 0
    rest = frozenset(remaining - {pivot})
    now = frozenset(remaining)
    penalty = 0
    for i, u in enumerate(involved):
        before = arch._bfs(u, now)
        after = arch._bfs(u, rest)
        for w in involved[i + 1:]:
            penalty += after[w] - before[w]
    return penalty


def _gf2_transpose(m: ParityMap) -> ParityMap:
    q = m.size
    return ParityMap(
        q, tuple(sum((m.rows[j] >> i & 1) << j for j in range(q)) for i in range(q))
    )


def _gf2_invert(m: ParityMap) -> ParityMap:
    """Gauss-Jordan inverse over GF(2); raises ValueError when singular."""
    q = m.size
    rows = list(m.rows)
    inv = [1 << i for i in range(q)]
    for col in range(q):
        bit = 1 << col
        pivot = next((r for r in range(col, q) if rows[r] & bit), None)
        if pivot is None:
            raise ValueError("parity map is singular")
        if pivot != col:
            rows[col] ^= rows[pivot]
            inv[col] ^= inv[pivot]
        for r in range(q):
            if r != col and rows[r] & bit:
                rows[r] ^= rows[col]
                inv[r] ^= inv[col]
    return ParityMap(q, tuple(inv))


def steiner_gauss(m: ParityMap, arch: Architecture) -> list[Cnot]:
    """Architecture-aware resynthesis: every returned CNOT is a coupling edge.

    The core pass eliminates one vertex at a time: the pivot's column is
    purified along a Steiner tree (fill ones downward so every tree row
    carries the pivot bit, then eliminate upward so only the pivot row
    keeps it), then the pivot's row (the unique subset of remaining rows
    summing to the residue is gathered in along a second tree). Finished
    vertices are never touched again, so replaying the returned gates from
    the identity reproduces the map bit-for-bit. Pivots are chosen
    greedily: among vertices whose removal keeps the remaining coupling
    graph connected, the cheapest elimination wins, with ties preferring
    the vertex that least stretches distances between vertices still
    carrying matrix structure, then the smallest index.

    The pass runs on the map, its inverse, its transpose, and its
    inverse-transpose, whose gate lists convert into one another by
    reversal and/or control-target exchange; the shortest synthesis wins.
    """
    if m.size != arch.num_qubits:
        raise ValueError(f"map size {m.size} does not match architecture {arch.name}")
    inverse = _gf2_invert(m)
    transpose = _gf2_transpose(m)
    inv_transpose = _gf2_transpose(inverse)
    best: list[Cnot] | None = None
    for variant, convert in (
        (m, lambda seq: seq),
        (inverse, lambda seq: [Cnot(g.control, g.target) for g in reversed(seq)]),
        (transpose, lambda seq: [Cnot(g.target, g.control) for g in reversed(seq)]),
        (inv_transpose, lambda seq: [Cnot(g.target, g.control) for g in seq]),
    ):
        candidate = convert(_synthesize_raw(variant, arch))
        if best is None or len(candidate) < len(best):
            best = candidate
    return best


def cnot_cost(m: ParityMap, arch: Architecture) -> int:
    """Number of CNOTs steiner_gauss emits for the map; pure and memoized."""
    cached = arch._cnot_cost_cache.get(m.rows)
    if cached is None:
        cached = len(steiner_gauss(m, arch))
        arch._cnot_cost_cache[m.rows] = cached
    return cached
