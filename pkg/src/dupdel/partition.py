"""Version-2 state: the graph is always a disjoint union of cliques.

Only clique sizes and the vertex -> clique map are stored. Picking a clique
with probability proportional to its size is the same as picking a uniform
vertex and looking up its clique, so a step costs O(1).
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np


class ContractViolation(ValueError):
    """A caller broke an operation's precondition (e.g. a non-existent vertex id)."""


class InvariantError(AssertionError):
    """Internal state no longer satisfies its structural invariants."""


class CliquePartition:
    """Clique sizes plus a vertex -> clique map.

    Clique ids are never reused: a clique emptied by a deletion keeps its id
    with size 0 (a tombstone). ``counts[k]`` is the number of live cliques
    of size ``k`` (``counts[0]`` is unused and stays 0).
    """

    __slots__ = ("sizes", "vertex_to_clique", "counts", "steps")

    def __init__(self):
        self.sizes: list[int] = [1]
        self.vertex_to_clique: list[int] = [0]
        self.counts: list[int] = [0, 1]
        self.steps = 0

    @classmethod
    def from_cliques(cls, cliques: Iterable[Iterable[int]]) -> CliquePartition:
        """Build a partition from explicit vertex groups covering ``0..n-1``."""
        groups = [sorted(c) for c in cliques]
        members = sorted(v for g in groups for v in g)
        if members != list(range(len(members))) or any(not g for g in groups):
            raise ContractViolation("cliques must be nonempty and partition 0..n-1")
        state = cls.__new__(cls)
        state.sizes = [len(g) for g in groups]
        state.vertex_to_clique = [0] * len(members)
        for cid, g in enumerate(groups):
            for v in g:
                state.vertex_to_clique[v] = cid
        state.counts = [0] * (max(state.sizes) + 1)
        for k in state.sizes:
            state.counts[k] += 1
        state.steps = len(members) - 1
        return state

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_to_clique)

    def copy(self) -> CliquePartition:
        other = CliquePartition.__new__(CliquePartition)
        other.sizes = self.sizes.copy()
        other.vertex_to_clique = self.vertex_to_clique.copy()
        other.counts = self.counts.copy()
        other.steps = self.steps
        return other

    def step(self, u: int, v: int) -> None:
        """Apply one version-2 step in place: ``u`` is duplicated, then ``v`` is stripped."""
        vtc = self.vertex_to_clique
        n = len(vtc)
        if not (0 <= u < n and 0 <= v < n):
            raise ContractViolation(f"picks {(u, v)} are not old vertices (n={n})")
        sizes = self.sizes
        counts = self.counts

        cu = vtc[u]
        k = sizes[cu]
        sizes[cu] = k + 1
        counts[k] -= 1
        if k + 1 == len(counts):
            counts.append(1)
        else:
            counts[k + 1] += 1
        vtc.append(cu)

        cv = vtc[v]
        k = sizes[cv]
        if k > 1:
            sizes[cv] = k - 1
            counts[k] -= 1
            counts[k - 1] += 1
            vtc[v] = len(sizes)
            sizes.append(1)
            counts[1] += 1
        self.steps += 1

    # -- derived views -------------------------------------------------

    def clique_counts(self) -> dict[int, int]:
        """Y[n, k]: number of cliques of each size ``k`` (nonzero entries only)."""
        return {k: c for k, c in enumerate(self.counts) if c}

    def clique_size_multiset(self) -> list[int]:
        return sorted(k for k in self.sizes if k)

    def edge_count(self) -> int:
        return sum(c * k * (k - 1) // 2 for k, c in enumerate(self.counts))

    def members(self) -> dict[int, list[int]]:
        """Live clique id -> sorted member list. O(n)."""
        groups: dict[int, list[int]] = {}
        for vertex, cid in enumerate(self.vertex_to_clique):
            groups.setdefault(cid, []).append(vertex)
        return groups

    def edges(self) -> set[tuple[int, int]]:
        """Explicit edge set; intended for small graphs and cross-checks."""
        out = set()
        for group in self.members().values():
            for i, a in enumerate(group):
                for b in group[i + 1:]:
                    out.add((a, b))
        return out

    def check_invariants(self) -> None:
        """Raise InvariantError unless the partition is internally consistent. O(n) via numpy."""
        sizes = np.asarray(self.sizes, dtype=np.int64)
        vtc = np.asarray(self.vertex_to_clique, dtype=np.int64)
        n = vtc.size
        if n != self.steps + 1:
            raise InvariantError(f"{n} vertices after {self.steps} steps")
        if vtc.min() < 0 or vtc.max() >= sizes.size:
            raise InvariantError("vertex mapped outside the clique table")
        occupancy = np.bincount(vtc, minlength=sizes.size)
        if not np.array_equal(occupancy, sizes):
            raise InvariantError("clique sizes disagree with the vertex map")
        if sizes.sum() != n:
            raise InvariantError("clique sizes do not sum to the vertex count")
        derived = np.bincount(sizes[sizes > 0], minlength=len(self.counts))
        derived[0] = 0
        if derived.size != len(self.counts) or not np.array_equal(derived, self.counts):
            raise InvariantError("maintained clique-size counts are stale")
        if int(np.dot(np.arange(derived.size), derived)) != n:
            raise InvariantError("sum of k * Y[n, k] differs from n")
