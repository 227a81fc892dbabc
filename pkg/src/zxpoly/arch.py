"""Hardware coupling graphs: distances, topologies, and Steiner trees.

An Architecture is an undirected connected graph over qubit indices
0..num_qubits-1 with an all-pairs hop-count table. It is immutable after
construction and safe to share across threads; internal caches only memoize
pure results.

Determinism conventions used throughout:
  * among equal-length shortest paths the lexicographically smallest vertex
    sequence is chosen,
  * Kruskal edges are sorted by (weight, u, v),
  * tree traversals visit children in ascending index order.

Steiner trees are approximated by the minimum spanning tree of the terminal
set's metric closure (the classic 2-approximation), expanded back into
concrete shortest paths and pruned to a tree over physical vertices.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, Sequence

TreeEdges = tuple[tuple[int, int], ...]


class Architecture:
    """Undirected coupling graph with precomputed shortest-path distances."""

    def __init__(self, num_qubits: int, edges: Iterable[tuple[int, int]], name: str = ""):
        if num_qubits < 1:
            raise ValueError("architecture needs at least one qubit")
        normalized: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < num_qubits and 0 <= v < num_qubits):
                raise ValueError(f"edge ({u},{v}) out of range for {num_qubits} qubits")
            if u == v:
                raise ValueError(f"self-loop ({u},{u}) not allowed")
            normalized.add((min(u, v), max(u, v)))
        self.num_qubits = num_qubits
        self.edges = frozenset(normalized)
        self.name = name or f"graph:{num_qubits}"
        adj: list[list[int]] = [[] for _ in range(num_qubits)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = [sorted(ns) for ns in adj]
        self.dist = [self._bfs(s) for s in range(num_qubits)]
        if num_qubits > 1 and any(d < 0 for d in self.dist[0]):
            raise ValueError("architecture graph must be connected")
        self._tree_cache: dict[tuple[int, int], tuple[TreeEdges, int]] = {}
        self._gadget_cost_cache: dict[int, int] = {}
        self._cnot_cost_cache: dict[tuple[int, ...], int] = {}

    def _bfs(self, source: int, allowed: frozenset[int] | None = None) -> list[int]:
        dist = [-1] * self.num_qubits
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if dist[v] < 0 and (allowed is None or v in allowed):
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def distance(self, u: int, v: int) -> int:
        return self.dist[u][v]

    def is_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def shortest_path(self, u: int, v: int, allowed: frozenset[int] | None = None) -> list[int]:
        """Lexicographically smallest shortest path from u to v (inclusive)."""
        dist_to_v = self._bfs(v, allowed) if allowed is not None else self.dist[v]
        if dist_to_v[u] < 0:
            raise ValueError(f"no path from {u} to {v}")
        path = [u]
        cur = u
        while cur != v:
            cur = min(w for w in self.adj[cur]
                      if dist_to_v[w] == dist_to_v[cur] - 1
                      and (allowed is None or w in allowed))
            path.append(cur)
        return path

    def terminal_tree(
        self, terminals: Iterable[int], allowed: frozenset[int] | None = None
    ) -> tuple[TreeEdges, int]:
        """Approximate Steiner tree connecting the terminals.

        Returns (tree edges over physical vertices, weight), where weight is
        the number of physical edges. A single terminal yields an empty tree
        of weight 0.
        """
        terms = sorted(set(terminals))
        if not terms:
            raise ValueError("terminal set must be non-empty")
        for t in terms:
            if not 0 <= t < self.num_qubits:
                raise ValueError(f"terminal {t} out of range")
            if allowed is not None and t not in allowed:
                raise ValueError(f"terminal {t} not in the allowed vertex set")
        term_mask = 0
        for t in terms:
            term_mask |= 1 << t
        allowed_mask = -1 if allowed is None else sum(1 << v for v in allowed)
        key = (term_mask, allowed_mask)
        cached = self._tree_cache.get(key)
        if cached is not None:
            return cached
        result = self._terminal_tree_uncached(terms, allowed)
        self._tree_cache[key] = result
        return result

    def _terminal_tree_uncached(
        self, terms: list[int], allowed: frozenset[int] | None
    ) -> tuple[TreeEdges, int]:
        if len(terms) == 1:
            return (), 0
        # Metric closure distances between terminals.
        if allowed is None:
            dist = {t: self.dist[t] for t in terms}
        else:
            dist = {t: self._bfs(t, allowed) for t in terms}
        metric = sorted(
            (dist[u][v], u, v) for i, u in enumerate(terms) for v in terms[i + 1:]
        )
        # Kruskal over the metric closure.
        parent = {t: t for t in terms}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        chosen: list[tuple[int, int]] = []
        for _, u, v in metric:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                chosen.append((u, v))
                if len(chosen) == len(terms) - 1:
                    break
        # Expand metric edges into concrete paths; the union may have cycles.
        union_edges: set[tuple[int, int]] = set()
        for u, v in chosen:
            path = self.shortest_path(u, v, allowed)
            for a, b in zip(path, path[1:]):
                union_edges.add((min(a, b), max(a, b)))
        # Prune the union back to a tree by BFS from the smallest terminal.
        nbrs: dict[int, list[int]] = {}
        for a, b in union_edges:
            nbrs.setdefault(a, []).append(b)
            nbrs.setdefault(b, []).append(a)
        for ns in nbrs.values():
            ns.sort()
        root = terms[0]
        seen = {root}
        tree_edges: list[tuple[int, int]] = []
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in nbrs.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    tree_edges.append((min(u, v), max(u, v)))
                    queue.append(v)
        result = (tuple(sorted(tree_edges)), len(tree_edges))
        return result

    def __repr__(self) -> str:
        return f"Architecture({self.name!r}, qubits={self.num_qubits}, edges={len(self.edges)})"


def rooted_tree(edges: Sequence[tuple[int, int]], root: int) -> tuple[dict[int, int], list[int]]:
    """Root an undirected tree edge set; return (parent map, BFS vertex order).

    Children are visited in ascending index order; the root maps to itself.
    """
    nbrs: dict[int, list[int]] = {root: []}
    for a, b in edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    for ns in nbrs.values():
        ns.sort()
    parent = {root: root}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if v not in parent:
                parent[v] = u
                order.append(v)
                queue.append(v)
    return parent, order


def line(num_qubits: int) -> Architecture:
    return Architecture(
        num_qubits,
        [(i, i + 1) for i in range(num_qubits - 1)],
        name=f"line:{num_qubits}",
    )


def circle(num_qubits: int) -> Architecture:
    edges = [(i, i + 1) for i in range(num_qubits - 1)]
    if num_qubits > 2:
        edges.append((num_qubits - 1, 0))
    return Architecture(num_qubits, edges, name=f"circle:{num_qubits}")


def grid(rows: int, cols: int) -> Architecture:
    if rows * cols == 0:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                edges.append((i, i + 1))
            if r + 1 < rows:
                edges.append((i, i + cols))
    return Architecture(rows * cols, edges, name=f"grid:{rows}x{cols}")


def complete(num_qubits: int) -> Architecture:
    edges = [(i, j) for i in range(num_qubits) for j in range(i + 1, num_qubits)]
    return Architecture(num_qubits, edges, name=f"complete:{num_qubits}")


def build_architecture(spec: str | dict) -> Architecture:
    """Build an architecture from a descriptor.

    Accepts "line:Q", "circle:Q", "grid:RxC", "complete:Q", or an explicit
    graph as {"qubits": Q, "edges": [[u, v], ...]} (as a dict or JSON text).
    """
    if isinstance(spec, dict):
        return Architecture(int(spec["qubits"]), [tuple(e) for e in spec["edges"]])
    text = spec.strip()
    if text.startswith("{"):
        return build_architecture(json.loads(text))
    kind, _, arg = text.partition(":")
    kind = kind.lower()
    try:
        if kind == "line":
            return line(int(arg))
        if kind == "circle":
            return circle(int(arg))
        if kind == "complete":
            return complete(int(arg))
        if kind == "grid":
            rows, _, cols = arg.lower().partition("x")
            return grid(int(rows), int(cols))
    except ValueError as exc:
        raise ValueError(f"bad architecture descriptor {spec!r}: {exc}") from exc
    raise ValueError(f"unknown architecture descriptor {spec!r}")
