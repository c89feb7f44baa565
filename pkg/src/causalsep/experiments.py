"""Random-instance experiment harness.

Reproduces the empirical protocols behind the library: generate random
DAGs, mark nodes unobserved, draw exposure/outcome sets, and tally how
often each identification criterion succeeds (or how large basis sets
get).  Results are plain dataclasses with a CSV rendering, one row per
configuration.

Reproducibility contract: every instance ``idx`` of a run draws from
``numpy``'s PCG64 stream seeded with ``SeedSequence((seed, idx))``.
Streams are therefore independent of scheduling and platform, and every
count column is byte-stable for a fixed seed.  Wall-clock columns are
measurements and naturally vary; pass ``timing=False`` to the CSV
renderer to blank them when byte-identical output matters.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Iterable, Optional

import numpy as np

from .basis import basis_stats
from .graph import MixedGraph
from .identify import LABEL_BC, LABEL_CBC, LABEL_CBC_PLUS, classify
from .mag import dag_to_mag, mag_adjustment
from .separation import SepQuery

__all__ = [
    "ExperimentConfig",
    "ExperimentRow",
    "mark_roles",
    "random_dag",
    "render_csv",
    "run_experiment",
]

_MODES = ("dag_ident", "mag_ident", "basis_sets")


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment cell.

    ``n`` nodes, expected neighbor count ``l`` (edge probability
    ``min(l/(n-1), 1)``), exposure/outcome size ``k``, per-node
    unobserved probability ``p_unobserved``, ``instances`` random
    draws, master ``seed``, and a ``mode`` selecting the protocol.
    ``mag_el_max_n`` optionally caps the node count for the projected-MAG
    column in ``mag_ident`` mode; larger graphs report a skipped cell.
    """

    n: int
    l: int
    k: int = 1
    p_unobserved: float = 0.0
    instances: int = 1000
    seed: int = 0
    mode: str = "dag_ident"
    mag_el_max_n: Optional[int] = None

    def __post_init__(self) -> None:
        if self.mode not in _MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.l <= 0:
            raise ValueError("l must be positive")
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.n < 2 * self.k:
            raise ValueError("n must be at least 2k")
        if not 0.0 <= self.p_unobserved <= 1.0:
            raise ValueError("p_unobserved must lie in [0, 1]")
        if self.instances < 1:
            raise ValueError("instances must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative 64-bit integer")


@dataclass(frozen=True)
class ExperimentRow:
    """Aggregated counts for one configuration.

    Identification counts are cumulative (every BC success is also a
    CBC and a CBC+ success), so ``bc <= cbc <= cbc_plus`` always.  In
    ``mag_ident`` mode ``mag_ee`` counts adjustment-identifiable
    instances in the DAG read as a MAG (candidates restricted to R) and
    ``mag_el`` the same after projecting out the unobserved nodes
    (``None`` when skipped by the node cap).  ``basis_sets`` mode fills
    the two total-conditioning-size fields instead.
    """

    config: ExperimentConfig
    bc: Optional[int] = None
    cbc: Optional[int] = None
    cbc_plus: Optional[int] = None
    mag_ee: Optional[int] = None
    mag_el: Optional[int] = None
    parental_total: Optional[int] = None
    sparse_total: Optional[int] = None
    t_mean_us: float = 0.0
    t_p99_us: float = 0.0


def _instance_rng(seed: int, idx: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, idx))))


def random_dag(n: int, l: float, rng: np.random.Generator) -> MixedGraph:
    """Random DAG on nodes V1..Vn: each forward pair i<j gets an edge
    independently with probability min(l/(n-1), 1), giving every node
    about ``l`` neighbors in expectation."""
    if n < 1:
        raise ValueError("n must be positive")
    if l <= 0:
        raise ValueError("l must be positive")
    names = [f"V{i}" for i in range(1, n + 1)]
    p = 1.0 if n == 1 else min(l / (n - 1), 1.0)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((names[i], "->", names[j]))
    return MixedGraph._trusted(names, edges)


def mark_roles(
    g: MixedGraph, k: int, p_unobserved: float, rng: np.random.Generator
) -> tuple[frozenset, frozenset, frozenset]:
    """Mark nodes unobserved and draw the query: sweep nodes in order,
    hiding each with probability ``p_unobserved`` but stopping as soon
    as only ``2k`` observed nodes remain; then sample disjoint X and Y
    of size ``k`` uniformly from the observed set R."""
    n = g.n
    if n < 2 * k:
        raise ValueError("graph too small for the requested k")
    observed = list(g.nodes)
    hidden: set = set()
    for v in g.nodes:
        if len(observed) - len(hidden) <= 2 * k:
            break
        if rng.random() < p_unobserved:
            hidden.add(v)
    r_list = [v for v in observed if v not in hidden]
    picks = rng.choice(len(r_list), size=2 * k, replace=False)
    x = frozenset(r_list[i] for i in picks[:k])
    y = frozenset(r_list[i] for i in picks[k:])
    return x, y, frozenset(r_list)


def _tally_ident(label: str, counts: dict) -> None:
    counts["bc"] += label == LABEL_BC
    counts["cbc"] += label in (LABEL_BC, LABEL_CBC)
    counts["cbc_plus"] += label in (LABEL_BC, LABEL_CBC, LABEL_CBC_PLUS)


def run_experiment(cfg: ExperimentConfig) -> ExperimentRow:
    """Run one configuration and aggregate its counts and runtimes.

    Instances are mutually independent (instance ``idx`` owns the RNG
    stream ``SeedSequence((seed, idx))``), so results do not depend on
    execution order.  Timings cover the per-instance computation only,
    not instance generation.
    """
    counts = {"bc": 0, "cbc": 0, "cbc_plus": 0, "mag_ee": 0, "mag_el": 0}
    totals = {"parental": 0, "sparse": 0}
    times = np.empty(cfg.instances, dtype=np.float64)
    skip_el = cfg.mag_el_max_n is not None and cfg.n > cfg.mag_el_max_n

    for idx in range(cfg.instances):
        rng = _instance_rng(cfg.seed, idx)
        g = random_dag(cfg.n, cfg.l, rng)
        if cfg.mode == "basis_sets":
            t0 = time.perf_counter()
            stats = basis_stats(g)
            times[idx] = time.perf_counter() - t0
            totals["parental"] += stats["parental_total"]
            totals["sparse"] += stats["sparse_total"]
            continue
        x, y, r = mark_roles(g, cfg.k, cfg.p_unobserved, rng)
        t0 = time.perf_counter()
        _tally_ident(classify(g, x, y, r=r), counts)
        if cfg.mode == "mag_ident":
            q = SepQuery.of(x, y, r=r)
            if mag_adjustment(g, "find", q=q) is not None:
                counts["mag_ee"] += 1
            if not skip_el:
                projected = dag_to_mag(g, g.node_set - r)
                if mag_adjustment(projected, "find", q=SepQuery.of(x, y)) is not None:
                    counts["mag_el"] += 1
        times[idx] = time.perf_counter() - t0

    t_mean = float(np.mean(times)) * 1e6
    t_p99 = float(np.percentile(times, 99.0)) * 1e6
    if cfg.mode == "basis_sets":
        return ExperimentRow(
            config=cfg,
            parental_total=totals["parental"],
            sparse_total=totals["sparse"],
            t_mean_us=t_mean,
            t_p99_us=t_p99,
        )
    row = ExperimentRow(
        config=cfg,
        bc=counts["bc"],
        cbc=counts["cbc"],
        cbc_plus=counts["cbc_plus"],
        t_mean_us=t_mean,
        t_p99_us=t_p99,
    )
    if cfg.mode == "mag_ident":
        row = replace(
            row,
            mag_ee=counts["mag_ee"],
            mag_el=None if skip_el else counts["mag_el"],
        )
    return row


def _fmt_cell(value, timing: bool = True) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.1f}" if timing else f"{value:g}"
    return str(value)


def render_csv(rows: Iterable[ExperimentRow], timing: bool = True) -> str:
    """CSV text for rows of a single mode, header included.

    ``timing=False`` blanks the two wall-clock columns with ``-`` so
    that output for a fixed seed is byte-identical across runs.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to render")
    modes = {row.config.mode for row in rows}
    if len(modes) > 1:
        raise ValueError("rows mix experiment modes")
    (mode,) = modes
    if mode == "basis_sets":
        header = (
            "n,l,instances,seed,parental_total,sparse_total,"
            "reduction_pct,t_mean_us,t_p99_us"
        )
    elif mode == "mag_ident":
        header = (
            "n,l,k,p_unobserved,instances,seed,bc,cbc,cbc_plus,"
            "mag_ee,mag_el,t_mean_us,t_p99_us"
        )
    else:
        header = "n,l,k,p_unobserved,instances,seed,bc,cbc,cbc_plus,t_mean_us,t_p99_us"
    lines = [header]
    for row in rows:
        cfg = row.config
        cells = [str(cfg.n), str(cfg.l)]
        if mode != "basis_sets":
            cells += [str(cfg.k), f"{cfg.p_unobserved:g}"]
        cells += [str(cfg.instances), str(cfg.seed)]
        if mode == "basis_sets":
            reduction = (
                0.0
                if not row.parental_total
                else 100.0 * (1.0 - row.sparse_total / row.parental_total)
            )
            cells += [str(row.parental_total), str(row.sparse_total), f"{reduction:.2f}"]
        else:
            cells += [str(row.bc), str(row.cbc), str(row.cbc_plus)]
            if mode == "mag_ident":
                cells += [_fmt_cell(row.mag_ee), _fmt_cell(row.mag_el)]
        if timing:
            cells += [f"{row.t_mean_us:.1f}", f"{row.t_p99_us:.1f}"]
        else:
            cells += ["-", "-"]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
