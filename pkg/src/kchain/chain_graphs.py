"""Linear crossed polyomino chains and their vertical-edge-deleted subgraphs.

Vertices are encoded top-then-bottom: indices ``0..n`` are the top vertices
``1..n+1`` and indices ``n+1..2n+1`` are the bottom twins ``1'..(n+1)'``.
Every block operation downstream slices on these two index ranges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator


class ChainSpecError(ValueError):
    """Invalid chain length or deletion index."""


@dataclass(frozen=True, order=True)
class ChainSpec:
    n: int
    deleted: tuple[int, ...] = ()

    def __init__(self, n: int, deleted: Iterable[int] = ()):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ChainSpecError(f"n must be a positive integer, got {n!r}")
        items = list(deleted)
        if len(set(items)) != len(items):
            raise ChainSpecError(f"duplicate deletion index in {items}")
        for i in items:
            if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= n + 1:
                raise ChainSpecError(f"deletion index {i!r} outside [1, {n + 1}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "deleted", tuple(sorted(items)))

    @property
    def r(self) -> int:
        return len(self.deleted)

    def to_dict(self) -> dict:
        return {"n": self.n, "deleted": list(self.deleted)}

    @classmethod
    def from_dict(cls, data: dict) -> ChainSpec:
        return cls(data["n"], data.get("deleted", ()))


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]]) -> Graph:
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise ValueError(f"multi-edge {e}")
            canon.add(e)
        adj: list[list[int]] = [[] for _ in range(num_vertices)]
        for u, v in canon:
            adj[u].append(v)
            adj[v].append(u)
        return cls(
            num_vertices,
            tuple(sorted(canon)),
            tuple(tuple(sorted(a)) for a in adj),
        )

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def is_connected(self) -> bool:
        if self.num_vertices == 0:
            return True
        seen = [False] * self.num_vertices
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in self.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        return count == self.num_vertices

    def to_edge_list(self) -> list[list[int]]:
        return [[u, v] for u, v in self.edges]


def top(n: int, i: int) -> int:
    """Index of top vertex ``i`` (1-based label)."""
    return i - 1


def bottom(n: int, i: int) -> int:
    """Index of bottom vertex ``i'`` (1-based label)."""
    return n + i


def _chain_edges(n: int, deleted: frozenset[int] = frozenset()) -> list[tuple[int, int]]:
    edges = []
    for i in range(1, n + 2):
        if i not in deleted:
            edges.append((top(n, i), bottom(n, i)))
    for i in range(1, n + 1):
        edges.append((top(n, i), top(n, i + 1)))
        edges.append((bottom(n, i), bottom(n, i + 1)))
        edges.append((top(n, i), bottom(n, i + 1)))
        edges.append((bottom(n, i), top(n, i + 1)))
    return edges


def build_chain(n: int) -> Graph:
    """Build ``G_n``: ``n`` copies of K_4 glued along shared vertical edges."""
    return build_subchain(ChainSpec(n))


def build_subchain(spec: ChainSpec) -> Graph:
    """Build ``G_n`` with the vertical edges ``ii'`` for ``i in spec.deleted`` removed."""
    return Graph.from_edges(2 * spec.n + 2, _chain_edges(spec.n, frozenset(spec.deleted)))


def end_degree_sum(spec: ChainSpec) -> int:
    """``d_1 + d_{n+1}`` in the subchain; one of 4, 5, 6."""
    return 6 - (1 in spec.deleted) - (spec.n + 1 in spec.deleted)


def enumerate_subchains(n: int, r: int) -> Iterator[ChainSpec]:
    """Every member of the family with exactly ``r`` verticals deleted, lexicographically."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ChainSpecError(f"n must be a positive integer, got {n!r}")
    if not 0 <= r <= n + 1:
        raise ChainSpecError(f"r={r} outside [0, {n + 1}]")
    for subset in combinations(range(1, n + 2), r):
        yield ChainSpec(n, subset)


def enumerate_family(n: int) -> Iterator[ChainSpec]:
    """All ``2^(n+1)`` deletion sets, grouped by increasing ``r``."""
    for r in range(n + 2):
        yield from enumerate_subchains(n, r)


def laplacian(g: Graph) -> list[list[int]]:
    size = g.num_vertices
    lap = [[0] * size for _ in range(size)]
    for u, v in g.edges:
        lap[u][v] = lap[v][u] = -1
        lap[u][u] += 1
        lap[v][v] += 1
    return lap


def laplacian_blocks(g: Graph, spec: ChainSpec) -> tuple[list[list[int]], list[list[int]]]:
    """Return ``(L_11, L_12)``, the top-top and top-bottom blocks of the Laplacian.

    Raises RuntimeError if the bottom blocks do not mirror the top ones, which
    would mean the graph was not built with the canonical vertex ordering.
    """
    m = spec.n + 1
    if g.num_vertices != 2 * m:
        raise RuntimeError(f"graph has {g.num_vertices} vertices, expected {2 * m}")
    lap = laplacian(g)
    l11 = [row[:m] for row in lap[:m]]
    l12 = [row[m:] for row in lap[:m]]
    l21 = [row[:m] for row in lap[m:]]
    l22 = [row[m:] for row in lap[m:]]
    if l11 != l22 or l12 != l21:
        raise RuntimeError(f"top/bottom block symmetry violated for {spec}")
    return l11, l12
