"""Version 1 and version 2 driven by the same picks, with red/black colouring.

Red edges are the ones version 1 keeps but version 2 has deleted, so the
black edges of the version-1 graph always form the version-2 graph. Red
vertices are a superset of the endpoints of red edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .adjacency import AdjacencyGraph
from .partition import CliquePartition, ContractViolation, InvariantError


@dataclass(frozen=True)
class Diagnostics:
    steps: int
    edges: int  # S_n
    red_vertices: int  # Z_n
    red_edges: int  # R_n
    max_degree: int  # M_n

    @property
    def edges_per_step(self) -> float:
        return self.edges / self.steps if self.steps else 0.0


class CoupledState:
    """Coloured version-1 graph plus the shadow version-2 partition."""

    def __init__(self):
        self.graph = AdjacencyGraph()
        self.red_neighbors: list[set[int]] = [set()]
        self.red: list[bool] = [False]
        self.shadow = CliquePartition()
        self.red_vertex_count = 0
        self.red_edge_count = 0

    @property
    def steps(self) -> int:
        return self.graph.steps

    def step(self, u: int, v: int) -> None:
        """Advance both versions by one step with the picks ``(u, v)``."""
        nbrs = self.graph.neighbors
        red_nb = self.red_neighbors
        n = len(nbrs)
        if not (0 <= u < n and 0 <= v < n):
            raise ContractViolation(f"picks {(u, v)} are not old vertices (n={n})")
        w = n

        # duplication: copies of red edges are red, {w, u} is black
        nu = nbrs[u]
        new = set(nu)
        for x in nu:
            nbrs[x].add(w)
        nu.add(w)
        new.add(u)
        nbrs.append(new)
        ru = red_nb[u]
        for x in ru:
            red_nb[x].add(w)
        red_nb.append(set(ru))
        self.red_edge_count += len(ru)
        self.graph.edge_count += len(new)
        red_w = self.red[u]
        self.red.append(red_w)
        self.red_vertex_count += red_w

        # deletion: everything at v goes except the protected edge to w
        nv = nbrs[v]
        rv = red_nb[v]
        keep = w in nv
        for x in nv:
            if x != w:
                nbrs[x].discard(v)
                red_nb[x].discard(v)
        self.graph.edge_count -= len(nv) - keep
        self.red_edge_count -= len(rv) - (w in rv)
        if keep:
            nbrs[v] = {w}
            if w not in rv:
                self.red_edge_count += 1
                red_nb[w].add(v)
            red_nb[v] = {w}
            for x in (v, w):
                if not self.red[x]:
                    self.red[x] = True
                    self.red_vertex_count += 1
        else:
            nbrs[v] = set()
            red_nb[v] = set()
            if self.red[v]:
                self.red[v] = False
                self.red_vertex_count -= 1
        self.graph.steps += 1

        self.shadow.step(u, v)

    def diagnostics(self) -> Diagnostics:
        return Diagnostics(
            steps=self.steps,
            edges=self.graph.edge_count,
            red_vertices=self.red_vertex_count,
            red_edges=self.red_edge_count,
            max_degree=max(len(nb) for nb in self.graph.neighbors),
        )

    # -- oracle checks ---------------------------------------------------

    def black_components(self) -> list[int]:
        """Component label of every vertex in the black-edge subgraph."""
        nbrs = self.graph.neighbors
        red_nb = self.red_neighbors
        label = [-1] * len(nbrs)
        for start in range(len(nbrs)):
            if label[start] >= 0:
                continue
            label[start] = start
            stack = [start]
            while stack:
                a = stack.pop()
                ra = red_nb[a]
                for b in nbrs[a]:
                    if label[b] < 0 and b not in ra:
                        label[b] = start
                        stack.append(b)
        return label

    def black_matches_shadow(self) -> bool:
        """True when the black subgraph is exactly the shadow version-2 graph.

        Checks that black components and shadow cliques are the same vertex
        groups, and that each black component is complete (edge count).
        """
        label = self.black_components()
        vtc = self.shadow.vertex_to_clique
        pairing: dict[int, int] = {}
        back: dict[int, int] = {}
        for vertex, comp in enumerate(label):
            cid = vtc[vertex]
            if pairing.setdefault(comp, cid) != cid or back.setdefault(cid, comp) != comp:
                return False
        black_edges = self.graph.edge_count - self.red_edge_count
        return black_edges == self.shadow.edge_count()

    def black_component_sizes(self) -> list[int]:
        sizes: dict[int, int] = {}
        for comp in self.black_components():
            sizes[comp] = sizes.get(comp, 0) + 1
        return sorted(sizes.values())

    def check_invariants(self) -> None:
        """Colour soundness and counter consistency; O(n + S)."""
        self.graph.check_invariants()
        red_total = 0
        for a, ra in enumerate(self.red_neighbors):
            if ra and not self.red[a]:
                raise InvariantError(f"black vertex {a} has red edges")
            for b in ra:
                if b not in self.graph.neighbors[a]:
                    raise InvariantError(f"red edge {a}-{b} is not an edge")
                if a not in self.red_neighbors[b]:
                    raise InvariantError(f"red edge {a}-{b} is one-sided")
                if not self.red[b]:
                    raise InvariantError(f"red edge {a}-{b} has a black endpoint")
            red_total += len(ra)
        if red_total != 2 * self.red_edge_count:
            raise InvariantError("red edge count out of sync")
        if sum(self.red) != self.red_vertex_count:
            raise InvariantError("red vertex count out of sync")
