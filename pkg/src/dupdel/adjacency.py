"""Version-1 state: explicit adjacency sets."""

from __future__ import annotations

from collections.abc import Iterable

from .partition import ContractViolation, InvariantError


class AdjacencyGraph:
    """Simple undirected graph on vertices ``0..n-1`` with a running edge count."""

    __slots__ = ("neighbors", "edge_count", "steps")

    def __init__(self):
        self.neighbors: list[set[int]] = [set()]
        self.edge_count = 0
        self.steps = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> AdjacencyGraph:
        g = cls.__new__(cls)
        g.neighbors = [set() for _ in range(n)]
        g.edge_count = 0
        for a, b in edges:
            if a == b:
                raise ContractViolation(f"loop at vertex {a}")
            if b not in g.neighbors[a]:
                g.neighbors[a].add(b)
                g.neighbors[b].add(a)
                g.edge_count += 1
        g.steps = n - 1
        return g

    @property
    def n_vertices(self) -> int:
        return len(self.neighbors)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def edges(self) -> set[tuple[int, int]]:
        return {(a, b) for a, nb in enumerate(self.neighbors) for b in nb if a < b}

    def step(self, u: int, v: int) -> None:
        """One version-1 step in place; edges of the new vertex survive the deletion."""
        nbrs = self.neighbors
        n = len(nbrs)
        if not (0 <= u < n and 0 <= v < n):
            raise ContractViolation(f"picks {(u, v)} are not old vertices (n={n})")
        w = n
        nu = nbrs[u]
        new = set(nu)
        for x in nu:
            nbrs[x].add(w)
        nu.add(w)
        new.add(u)
        nbrs.append(new)
        self.edge_count += len(new)

        nv = nbrs[v]
        keep = w in nv
        for x in nv:
            if x != w:
                nbrs[x].discard(v)
        self.edge_count -= len(nv) - keep
        nbrs[v] = {w} if keep else set()
        self.steps += 1

    def check_invariants(self) -> None:
        total = 0
        for a, nb in enumerate(self.neighbors):
            if a in nb:
                raise InvariantError(f"loop at {a}")
            for b in nb:
                if a not in self.neighbors[b]:
                    raise InvariantError(f"asymmetric edge {a}-{b}")
            total += len(nb)
        if total != 2 * self.edge_count:
            raise InvariantError("edge count out of sync with neighbor sets")
        if len(self.neighbors) != self.steps + 1:
            raise InvariantError("vertex count differs from steps + 1")
