"""Monte Carlo replications, seed aggregation and the serialised run report.

Reports are nested dicts whose floats are already formatted as decimal
strings, so ``dumps(loads(text)) == text`` byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .runner import resolve_checkpoints, run, run_coupled
from .stats import clustering_average, clustering_global
from .theory import (METHODS, cd_quadrature, normalization_check, recursion_residuals,
                     theoretical_distribution)

COMPARISON_COLUMNS = ("d", "empirical_mean", "empirical_stderr", "theoretical", "gap", "verdict")


def fmt(x: float) -> str:
    """Canonical decimal string: 9 significant digits."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.9g}"


def num(s) -> float:
    return float(s)


@dataclass
class RunConfig:
    version: int
    steps: int
    seeds: list[int]
    checkpoints: str | list[int] = "pow2"
    d_max: int = 5
    tol: float = 0.01
    clustering_tol: float = 0.02
    global_tol: float = 0.1
    couple: bool = False
    format: str = "json"
    out: str | None = None
    parallelism: int = 1

    def validate(self) -> None:
        if self.version not in (1, 2):
            raise ValueError("version must be 1 or 2")
        if self.steps < 1:
            raise ValueError("steps must be at least 1")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if any(not 0 <= s < 2**64 for s in self.seeds):
            raise ValueError("seeds must be 64-bit unsigned integers")
        if self.d_max < 0:
            raise ValueError("d_max must be nonnegative")
        if self.couple and self.version != 1:
            raise ValueError("--couple applies to version 1 only")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.parallelism < 1:
            raise ValueError("parallelism must be positive")

    def echo(self) -> dict:
        out = asdict(self)
        for key in ("tol", "clustering_tol", "global_tol"):
            out[key] = fmt(out[key])
        out.pop("out")
        out.pop("format")
        out.pop("parallelism")
        return out


def _pairs(mapping: dict[int, int]) -> list[list[int]]:
    return [[int(k), int(v)] for k, v in sorted(mapping.items())]


def simulate_seed(config: RunConfig, seed: int) -> dict:
    """One replication; returns the per-seed block of the report."""
    points = resolve_checkpoints(config.steps, config.checkpoints)
    block: dict = {"seed": seed}
    if config.version == 1 and config.couple:
        res = run_coupled(config.steps, seed, points)
        graph = res.state.graph
        block["checkpoints"] = [
            {"steps": h.steps, "vertices": h.n_vertices, "degrees": _pairs(h.counts)}
            for h in res.degrees
        ]
        block["growth"] = [
            {"n": g.steps, "S_n": g.edges, "S_n_over_n": fmt(g.edges_per_step),
             "Z_n": g.red_vertices, "R_n": g.red_edges, "M_n": g.max_degree}
            for g in res.diagnostics
        ]
        block["black_equivalent"] = res.all_equivalent
    else:
        res = run(config.version, config.steps, seed, points)
        graph = res.state
        block["checkpoints"] = []
        for snap in res.snapshots:
            entry = {"steps": snap.steps, "vertices": snap.degrees.n_vertices,
                     "degrees": _pairs(snap.degrees.counts)}
            if snap.cliques is not None:
                entry["cliques"] = _pairs(snap.cliques)
            block["checkpoints"].append(entry)
        if config.version == 1:
            block["growth"] = [{"n": graph.steps, "S_n": graph.edge_count,
                                "S_n_over_n": fmt(graph.edge_count / graph.steps)}]
        else:
            block["growth"] = [{"n": graph.steps, "S_n": graph.edge_count(),
                                "S_n_over_n": fmt(graph.edge_count() / graph.steps)}]
    block["clustering"] = {"global": fmt(clustering_global(graph)),
                           "average": fmt(clustering_average(graph))}
    return block


def mean_stderr(samples) -> tuple[float, float]:
    x = np.asarray(samples, dtype=float)
    if x.size < 2:
        return float(x.mean()), math.nan
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def comparison_rows(means, stderrs, theory, tol: float) -> list[dict]:
    rows = []
    for d, (m, se, c) in enumerate(zip(means, stderrs, theory)):
        gap = abs(m - c)
        rows.append({"d": d, "empirical_mean": fmt(m), "empirical_stderr": fmt(se),
                     "theoretical": fmt(c), "gap": fmt(gap), "verdict": _verdict(gap <= tol)})
    return rows


def clustering_block(global_vals, average_vals, c0: float, c1: float,
                     clustering_tol: float, global_tol: float) -> dict:
    gm, gse = mean_stderr(global_vals)
    am, ase = mean_stderr(average_vals)
    target = 1.0 - c0 - c1
    return {
        "global_mean": fmt(gm), "global_stderr": fmt(gse), "global_target": fmt(1.0),
        "global_gap": fmt(abs(1.0 - gm)), "global_verdict": _verdict(abs(1.0 - gm) <= global_tol),
        "average_mean": fmt(am), "average_stderr": fmt(ase), "average_target": fmt(target),
        "average_gap": fmt(abs(am - target)),
        "average_verdict": _verdict(abs(am - target) <= clustering_tol),
    }


def simulate(config: RunConfig) -> dict:
    """Run every seed, aggregate, and compare against the quadrature values."""
    config.validate()
    if config.parallelism > 1 and len(config.seeds) > 1:
        with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
            blocks = list(pool.map(simulate_seed, [config] * len(config.seeds), config.seeds))
    else:
        blocks = [simulate_seed(config, s) for s in config.seeds]

    theory = [cd_quadrature(d) for d in range(max(config.d_max, 1) + 1)]
    props = []
    for b in blocks:
        final = b["checkpoints"][-1]
        counts = dict((d, c) for d, c in final["degrees"])
        props.append([counts.get(d, 0) / final["vertices"] for d in range(config.d_max + 1)])
    props = np.array(props)
    stats = [mean_stderr(props[:, d]) for d in range(config.d_max + 1)]
    rows = comparison_rows([m for m, _ in stats], [s for _, s in stats],
                           theory[: config.d_max + 1], config.tol)
    clus = clustering_block([num(b["clustering"]["global"]) for b in blocks],
                            [num(b["clustering"]["average"]) for b in blocks],
                            theory[0], theory[1], config.clustering_tol, config.global_tol)
    ok = all(r["verdict"] == "pass" for r in rows)
    if config.version == 1:
        ok = ok and clus["global_verdict"] == "pass" and clus["average_verdict"] == "pass"
    if config.couple:
        ok = ok and all(b["black_equivalent"] for b in blocks)
    return {
        "config": config.echo(),
        "seeds": blocks,
        "theory": {"method": "quadrature",
                   "values": [[d, fmt(c)] for d, c in enumerate(theory[: config.d_max + 1])]},
        "comparison": rows,
        "clustering": clus,
        "verdict": _verdict(ok),
    }


# -- serialisation -------------------------------------------------------------

def dumps(report: dict) -> str:
    return json.dumps(report, separators=(",", ":")) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


def table_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n",
                            extrasaction="ignore")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def read_table_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def comparison_csv(report: dict) -> str:
    return table_csv(report["comparison"], COMPARISON_COLUMNS)


@dataclass
class Comparison:
    rows: list[dict] = field(default_factory=list)
    clustering: dict | None = None
    verdict: str = "pass"

    def as_dict(self) -> dict:
        return {"comparison": self.rows, "clustering": self.clustering, "verdict": self.verdict}


def compare(report: dict, theory: dict, tol: float, clustering_tol: float = 0.02,
            global_tol: float = 0.1) -> Comparison:
    """Compare a simulation report with a theory table.

    Raises:
        ValueError: the theory table does not cover the report's degrees or
            has no exact column.
    """
    d_max = int(report["config"]["d_max"])
    method = next((m for m in ("quadrature", "fixed-point") if m in theory["methods"]), None)
    if method is None:
        raise ValueError("theory file has no exact column (quadrature or fixed-point)")
    by_d = {int(r["d"]): r for r in theory["rows"]}
    if int(theory["d_max"]) < d_max or any(d not in by_d for d in range(d_max + 1)):
        raise ValueError(f"theory covers d <= {theory['d_max']}, report needs d <= {d_max}")
    c = [num(by_d[d][method]) for d in range(d_max + 1)]
    emp = {int(r["d"]): r for r in report["comparison"]}
    if sorted(emp) != list(range(d_max + 1)):
        raise ValueError("report comparison rows do not match its d_max")
    rows = comparison_rows([num(emp[d]["empirical_mean"]) for d in range(d_max + 1)],
                           [num(emp[d]["empirical_stderr"]) for d in range(d_max + 1)], c, tol)
    ok = all(r["verdict"] == "pass" for r in rows)
    clus = None
    if int(report["config"]["version"]) == 1 and 1 in by_d:
        rc = report["clustering"]
        c0, c1 = num(by_d[0][method]), num(by_d[1][method])
        gm, am = num(rc["global_mean"]), num(rc["average_mean"])
        target = 1.0 - c0 - c1
        clus = {
            "global_mean": fmt(gm), "global_gap": fmt(abs(1.0 - gm)),
            "global_verdict": _verdict(abs(1.0 - gm) <= global_tol),
            "average_mean": fmt(am), "average_target": fmt(target),
            "average_gap": fmt(abs(am - target)),
            "average_verdict": _verdict(abs(am - target) <= clustering_tol),
        }
        ok = ok and clus["global_verdict"] == "pass" and clus["average_verdict"] == "pass"
    return Comparison(rows, clus, _verdict(ok))


def theory_table(d_max: int, tol: float, methods) -> dict:
    """c_d for d <= d_max by each requested method, with consistency columns.

    Raises:
        ConvergenceError, QuadratureError: a solver did not reach ``tol``.
    """
    methods = [m for m in METHODS if m in set(methods)]
    if not methods:
        raise ValueError("no methods requested")
    # one extra degree so the recursion residual is defined at d_max
    dists = {m: theoretical_distribution(m, d_max + 1, tol) for m in methods}
    exact = next((m for m in ("quadrature", "fixed-point") if m in dists), None)
    resid = recursion_residuals(dists[exact].values) if exact else None
    rows = []
    for d in range(d_max + 1):
        row = {"d": d}
        for m in methods:
            row[m] = fmt(dists[m].values[d])
        row["recursion_residual"] = fmt(resid[d]) if exact else "nan"
        row["note"] = "asymptotic, not exact" if methods == ["asymptotic"] else ""
        rows.append(row)
    out = {"d_max": d_max, "tol": fmt(tol), "methods": methods, "rows": rows}
    if "quadrature" in dists and "fixed-point" in dists:
        gap = np.abs(dists["quadrature"].values - dists["fixed-point"].values)[: d_max + 1]
        out["max_cross_method_gap"] = fmt(gap.max())
    if exact:
        out["normalization_residual"] = fmt(normalization_check(dists[exact].values, d_max))
    return out


def theory_csv(table: dict) -> str:
    columns = ["d", *table["methods"], "recursion_residual", "note"]
    return table_csv(table["rows"], columns)


def read_theory_csv(text: str) -> dict:
    rows = read_table_csv(text)
    if not rows:
        raise ValueError("empty theory table")
    methods = [m for m in METHODS if m in rows[0]]
    return {"d_max": max(int(r["d"]) for r in rows), "methods": methods, "rows": rows}
