"""Brute-force ground truth for the distance and resistance invariants.

Distances come from BFS, resistances from an exact grounded Laplacian
solve, spanning trees from a reduced-Laplacian determinant. None of this
touches the spectral machinery, so it can referee the closed forms.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .chain_graphs import ChainSpec, Graph, build_subchain, laplacian
from .exact_linalg import determinant, display2, format_rational, reduced, resistance_matrix


class DisconnectedGraphError(ValueError):
    pass


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("invariant is undefined on a disconnected graph")


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.num_vertices
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def distance_matrix(g: Graph) -> list[list[int]]:
    _require_connected(g)
    return [bfs_distances(g, s) for s in range(g.num_vertices)]


def wiener(g: Graph) -> int:
    dist = distance_matrix(g)
    k = g.num_vertices
    return sum(dist[i][j] for i in range(k) for j in range(i + 1, k))


def gutman(g: Graph) -> int:
    dist = distance_matrix(g)
    deg = g.degrees()
    k = g.num_vertices
    return sum(deg[i] * deg[j] * dist[i][j] for i in range(k) for j in range(i + 1, k))


def _resistances(g: Graph) -> list[list[Fraction]]:
    _require_connected(g)
    return resistance_matrix(laplacian(g))


def _kirchhoff_from(res: list[list[Fraction]]) -> Fraction:
    k = len(res)
    return sum((res[i][j] for i in range(k) for j in range(i + 1, k)), Fraction(0))


def _mult_deg_from(res: list[list[Fraction]], deg: list[int]) -> Fraction:
    k = len(res)
    return sum(
        (deg[i] * deg[j] * res[i][j] for i in range(k) for j in range(i + 1, k)),
        Fraction(0),
    )


def kirchhoff(g: Graph) -> Fraction:
    return _kirchhoff_from(_resistances(g))


def mult_deg_kirchhoff(g: Graph) -> Fraction:
    return _mult_deg_from(_resistances(g), g.degrees())


def spanning_trees(g: Graph) -> int:
    """Matrix-tree count; 0 for a disconnected graph."""
    if g.num_vertices <= 1:
        return 1
    det = determinant(reduced(laplacian(g), 0))
    assert det.denominator == 1
    return int(det)


def vertex_distance_sums(g: Graph) -> list[int]:
    """Row sums of the distance matrix."""
    return [sum(row) for row in distance_matrix(g)]


def vertex_weighted_distance_sums(g: Graph) -> list[int]:
    """Row sums of ``d_i d_j dist(i, j)``."""
    dist = distance_matrix(g)
    deg = g.degrees()
    return [deg[i] * sum(deg[j] * dist[i][j] for j in range(g.num_vertices)) for i in range(g.num_vertices)]


@dataclass(frozen=True)
class InvariantReport:
    spec: ChainSpec
    wiener: int
    gutman: int
    kirchhoff: Fraction
    mult_deg_kirchhoff: Fraction
    spanning_trees: int

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "wiener": self.wiener,
            "gutman": self.gutman,
            "kirchhoff": format_rational(self.kirchhoff),
            "kirchhoff_display": display2(self.kirchhoff),
            "mult_deg_kirchhoff": format_rational(self.mult_deg_kirchhoff),
            "mult_deg_kirchhoff_display": display2(self.mult_deg_kirchhoff),
            "spanning_trees": str(self.spanning_trees),
        }


def full_report(spec: ChainSpec) -> InvariantReport:
    g = build_subchain(spec)
    dist = distance_matrix(g)
    deg = g.degrees()
    k = g.num_vertices
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    res = resistance_matrix(laplacian(g))
    return InvariantReport(
        spec=spec,
        wiener=sum(dist[i][j] for i, j in pairs),
        gutman=sum(deg[i] * deg[j] * dist[i][j] for i, j in pairs),
        kirchhoff=_kirchhoff_from(res),
        mult_deg_kirchhoff=_mult_deg_from(res, deg),
        spanning_trees=spanning_trees(g),
    )
