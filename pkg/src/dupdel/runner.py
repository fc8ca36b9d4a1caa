"""Drive the models for ``n`` steps and record checkpoint snapshots."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field

from .adjacency import AdjacencyGraph
from .coupling import CoupledState, Diagnostics
from .partition import CliquePartition
from .stats import DegreeHistogram, degree_histogram
from .stream import ChoiceStream


def pow2_checkpoints(steps: int) -> list[int]:
    """1, 2, 4, ... up to ``steps``, always ending at ``steps`` itself."""
    out = []
    c = 1
    while c < steps:
        out.append(c)
        c *= 2
    if steps >= 1:
        out.append(steps)
    return out


def resolve_checkpoints(steps: int, checkpoints: Iterable[int] | str | None) -> list[int]:
    if checkpoints is None or checkpoints == "pow2":
        return pow2_checkpoints(steps)
    points = sorted({int(c) for c in checkpoints if 1 <= int(c) <= steps})
    if steps >= 1 and (not points or points[-1] != steps):
        points.append(steps)
    return points


@dataclass
class Snapshot:
    steps: int
    degrees: DegreeHistogram
    cliques: dict[int, int] | None = None  # Y[n, k], version 2 only


@dataclass
class RunResult:
    version: int
    seed: int | None
    state: object
    snapshots: list[Snapshot] = field(default_factory=list)


def new_state(version: int):
    if version == 1:
        return AdjacencyGraph()
    if version == 2:
        return CliquePartition()
    raise ValueError(f"version must be 1 or 2, got {version}")


def _snapshot(state) -> Snapshot:
    cliques = state.clique_counts() if isinstance(state, CliquePartition) else None
    return Snapshot(steps=state.steps, degrees=degree_histogram(state), cliques=cliques)


def run(version: int, steps: int, stream, checkpoints=None, check: bool = False) -> RunResult:
    """Evolve a fresh single-vertex graph for ``steps`` steps.

    Args:
        version: 1 (new edges protected) or 2 (no protection).
        steps: number of steps, ``>= 0``.
        stream: a ChoiceStream, or an int seed to build one.
        checkpoints: ``"pow2"`` (default) or an explicit list of step counts.
        check: verify the state invariants after every step (slow).

    Returns:
        RunResult with the final state and one Snapshot per checkpoint.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if isinstance(stream, int):
        stream = ChoiceStream(stream)
    state = new_state(version)
    result = RunResult(version=version, seed=getattr(stream, "seed", None), state=state)
    step = state.step
    done = 0
    for target in resolve_checkpoints(steps, checkpoints):
        for _ in range(target - done):
            u, v = next(stream)
            step(u, v)
            if check:
                state.check_invariants()
        done = target
        result.snapshots.append(_snapshot(state))
    return result


@dataclass
class CoupledResult:
    seed: int | None
    state: CoupledState
    diagnostics: list[Diagnostics] = field(default_factory=list)
    equivalent: list[bool] = field(default_factory=list)  # black subgraph == shadow, per checkpoint
    degrees: list[DegreeHistogram] = field(default_factory=list)

    @property
    def all_equivalent(self) -> bool:
        return all(self.equivalent)


def run_coupled(steps: int, stream, checkpoints=None, check: bool = False,
                verify: bool = True) -> CoupledResult:
    """Coupled version-1/version-2 run.

    With ``check`` the colour invariants and the black/shadow equivalence are
    verified after every step; ``verify`` does the equivalence check at
    checkpoints only.
    """
    if isinstance(stream, int):
        stream = ChoiceStream(stream)
    state = CoupledState()
    result = CoupledResult(seed=getattr(stream, "seed", None), state=state)
    step = state.step
    done = 0
    for target in resolve_checkpoints(steps, checkpoints):
        for _ in range(target - done):
            u, v = next(stream)
            step(u, v)
            if check:
                state.check_invariants()
                if not state.black_matches_shadow():
                    result.equivalent.append(False)
        done = target
        result.diagnostics.append(state.diagnostics())
        result.degrees.append(degree_histogram(state.graph))
        if verify or check:
            result.equivalent.append(state.black_matches_shadow())
    return result


def growth_diagnostics(trace: Iterable[Diagnostics]) -> list[tuple[int, int, float, int, int, int]]:
    """Rows of (n, S_n, S_n / n, Z_n, R_n, M_n) from a checkpoint trace."""
    return [(d.steps, d.edges, d.edges_per_step, d.red_vertices, d.red_edges, d.max_degree)
            for d in trace]


def exact_clique_distribution(steps: int) -> Counter:
    """Number of pick streams (out of (steps!)^2) leading to each clique-size multiset.

    Runs the engine's own step on one representative partition per multiset;
    the multiset process is Markov because picks are uniform over vertices.
    """
    layer = {(1,): (CliquePartition(), 1)}
    for _ in range(steps):
        nxt: dict[tuple, list] = {}
        for state, weight in layer.values():
            n = state.n_vertices
            for u in range(n):
                for v in range(n):
                    child = state.copy()
                    child.step(u, v)
                    key = tuple(child.clique_size_multiset())
                    if key in nxt:
                        nxt[key][1] += weight
                    else:
                        nxt[key] = [child, weight]
        layer = {k: (s, w) for k, (s, w) in nxt.items()}
    return Counter({k: w for k, (_, w) in layer.items()})
