"""Degree histograms, triangle counts and clustering coefficients."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .adjacency import AdjacencyGraph
from .partition import CliquePartition


@dataclass
class DegreeHistogram:
    """X[n, d] after ``steps`` steps; ``sum(counts.values()) == steps + 1``."""

    steps: int
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return sum(self.counts.values())

    def proportion(self, d: int, per: str = "vertices") -> float:
        """Share of degree-``d`` vertices, normalised by ``n+1`` (vertices) or ``n`` (steps)."""
        denom = self.n_vertices if per == "vertices" else self.steps
        return self.counts.get(d, 0) / denom if denom else 0.0

    def max_degree(self) -> int:
        return max((d for d, c in self.counts.items() if c), default=0)


def degree_histogram(state) -> DegreeHistogram:
    """Exact degree counts for either state type.

    A clique of size ``k`` contributes ``k`` vertices of degree ``k - 1``.
    """
    if isinstance(state, CliquePartition):
        counts = {k - 1: k * c for k, c in enumerate(state.counts) if c}
    else:
        counts = dict(Counter(len(nb) for nb in state.neighbors))
    return DegreeHistogram(steps=state.steps, counts=dict(sorted(counts.items())))


def _oriented(graph: AdjacencyGraph) -> list[list[int]]:
    # orient each edge from lower to higher (degree, id); out-degrees stay O(sqrt(S))
    deg = [len(nb) for nb in graph.neighbors]
    out = []
    for a, nb in enumerate(graph.neighbors):
        da = deg[a]
        out.append([b for b in nb if (deg[b], b) > (da, a)])
    return out


def triangles_per_vertex(graph: AdjacencyGraph) -> list[int]:
    """Number of triangles through each vertex."""
    out = _oriented(graph)
    out_sets = [set(o) for o in out]
    tri = [0] * graph.n_vertices
    for a, oa in enumerate(out):
        if len(oa) < 2:
            continue
        sa = out_sets[a]
        for b in oa:
            common = sa & out_sets[b]
            if common:
                c = len(common)
                tri[a] += c
                tri[b] += c
                for x in common:
                    tri[x] += 1
    return tri


def triangle_count(graph) -> int:
    if isinstance(graph, CliquePartition):
        return sum(c * k * (k - 1) * (k - 2) // 6 for k, c in enumerate(graph.counts))
    return sum(triangles_per_vertex(graph)) // 3


def connected_triplets(graph) -> int:
    """Paths of length two, i.e. sum over vertices of C(deg, 2)."""
    if isinstance(graph, CliquePartition):
        return sum(c * k * (k - 1) * (k - 2) // 2 for k, c in enumerate(graph.counts))
    return sum(len(nb) * (len(nb) - 1) // 2 for nb in graph.neighbors)


def clustering_global(graph) -> float:
    """Transitivity 3T / P2; 0 when the graph has no path of length two."""
    p2 = connected_triplets(graph)
    if p2 == 0:
        return 0.0
    return 3 * triangle_count(graph) / p2


def clustering_average(graph) -> float:
    """Mean local clustering coefficient, vertices of degree < 2 counting as 0."""
    if isinstance(graph, CliquePartition):
        # every vertex in a clique of size >= 3 has local coefficient 1
        return sum(k * c for k, c in enumerate(graph.counts) if k >= 3) / graph.n_vertices
    tri = triangles_per_vertex(graph)
    total = 0.0
    for t, nb in zip(tri, graph.neighbors):
        d = len(nb)
        if d >= 2:
            total += t / (d * (d - 1) / 2)
    return total / graph.n_vertices
