"""Compare the numba kernels against the pure-Python fallback.

The backend is fixed at import time by ``CAUSALSEP_KERNELS``, so this
script re-executes itself once per backend in a subprocess, times a set
of seeded workloads in each, and prints a side-by-side table.  Numba
compilation happens during an untimed warmup call so the steady-state
numbers compare kernel speed, not JIT latency; the warmup cost is
reported separately.

Usage: python benchmarks/compare_kernels.py [--repeat N] [--quick]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _workloads(quick: bool):
    """Yield (name, setup, run) triples; setup builds state, run is timed."""
    import numpy as np

    from causalsep import (
        ANY,
        SepQuery,
        find_adjustment,
        find_min_cost_sep,
        find_min_sep,
        list_sep,
        random_dag,
        test_sep,
    )

    scale = 0.2 if quick else 1.0

    def make(n, l, seed):
        rng = np.random.default_rng(seed)
        g = rng_dag = random_dag(n, l, rng)
        nodes = rng_dag.nodes
        picks = rng.choice(n, size=4, replace=False)
        x = frozenset({nodes[picks[0]], nodes[picks[1]]})
        y = frozenset({nodes[picks[2]], nodes[picks[3]]})
        return g, x, y

    n_big = max(1000, int(100_000 * scale))
    g_big, x_big, y_big = make(n_big, 5, 1)
    z_big = frozenset(v for v in g_big.nodes[: n_big // 10] if v not in x_big | y_big)
    yield (
        f"test_sep n={n_big} l=5",
        lambda: test_sep(g_big, x_big, y_big, z_big),
    )

    n_adj = max(1000, int(50_000 * scale))
    g_adj, x_adj, y_adj = make(n_adj, 5, 2)
    q_adj = SepQuery.of(x_adj, y_adj)
    yield (
        f"find_adjustment n={n_adj} l=5",
        lambda: find_adjustment(g_adj, q_adj, objective=ANY),
    )

    n_min = max(500, int(5_000 * scale))
    g_min, x_min, y_min = make(n_min, 4, 3)
    q_min = SepQuery.of(x_min, y_min)
    yield (
        f"find_min_sep n={n_min} l=4",
        lambda: find_min_sep(g_min, q_min),
    )

    n_cut = max(200, int(1_000 * scale))
    g_cut, x_cut, y_cut = make(n_cut, 8, 4)
    q_cut = SepQuery.of(x_cut, y_cut)
    yield (
        f"find_min_cost_sep n={n_cut} l=8",
        lambda: find_min_cost_sep(g_cut, q_cut),
    )

    g_enum, x_enum, y_enum = make(60, 3, 5)
    q_enum = SepQuery.of(x_enum, y_enum)

    def run_enum():
        out = []
        for z in list_sep(g_enum, q_enum):
            out.append(z)
            if len(out) >= 200:
                break
        return out

    yield ("list_sep first 200, n=60", run_enum)


def _run_worker(repeat: int, quick: bool) -> None:
    from causalsep import KERNEL_BACKEND

    results = {"backend": KERNEL_BACKEND, "cases": []}
    for name, fn in _workloads(quick):
        t0 = time.perf_counter()
        fn()  # warmup; includes JIT compilation under numba
        warmup_s = time.perf_counter() - t0
        best = min(_timed(fn) for _ in range(repeat))
        results["cases"].append({"name": name, "warmup_s": warmup_s, "best_s": best})
    json.dump(results, sys.stdout)


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def _spawn(backend: str, repeat: int, quick: bool) -> dict:
    env = dict(os.environ, CAUSALSEP_KERNELS=backend)
    cmd = [sys.executable, os.path.abspath(__file__), "--worker", "--repeat", str(repeat)]
    if quick:
        cmd.append("--quick")
    proc = subprocess.run(cmd, env=env, capture_output=True, text=True, check=False)
    if proc.returncode != 0:
        sys.stderr.write(proc.stderr)
        raise SystemExit(f"{backend} worker failed with code {proc.returncode}")
    return json.loads(proc.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timed repetitions per case (min is reported)")
    parser.add_argument("--quick", action="store_true",
                        help="shrink problem sizes ~5x for a fast sanity run")
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        _run_worker(args.repeat, args.quick)
        return

    numba = _spawn("numba", args.repeat, args.quick)
    python = _spawn("python", args.repeat, args.quick)

    if numba["backend"] != "numba":
        print("note: numba unavailable; both columns ran the python backend\n")

    width = max(len(c["name"]) for c in numba["cases"])
    header = (
        f"{'workload':<{width}}  {'numba':>10}  {'python':>10}  {'speedup':>8}"
    )
    print(header)
    print("-" * len(header))
    for ncase, pcase in zip(numba["cases"], python["cases"]):
        ratio = pcase["best_s"] / ncase["best_s"] if ncase["best_s"] > 0 else float("inf")
        print(
            f"{ncase['name']:<{width}}  {ncase['best_s'] * 1e3:>8.2f}ms  "
            f"{pcase['best_s'] * 1e3:>8.2f}ms  {ratio:>7.1f}x"
        )
    jit = sum(c["warmup_s"] - c["best_s"] for c in numba["cases"])
    print(f"\none-time numba warmup overhead across cases: {jit:.2f}s")


if __name__ == "__main__":
    main()
