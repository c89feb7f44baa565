"""Array kernels for graph reachability and min-cut.

Every kernel is written against flat CSR arrays so the same source runs
either under numba's ``@njit`` or as plain Python. The backend is chosen
once at import time from the ``CAUSALSEP_KERNELS`` environment variable:

* unset or ``"numba"``  -- compile with numba (falls back with a warning
  if numba is not importable),
* ``"python"``          -- skip compilation and run the pure-Python path.

``KERNEL_BACKEND`` records which backend is active.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

_requested = os.environ.get("CAUSALSEP_KERNELS", "numba").strip().lower()
if _requested not in ("numba", "python"):
    raise ValueError(
        f"CAUSALSEP_KERNELS must be 'numba' or 'python', got {_requested!r}"
    )

KERNEL_BACKEND = "python"
_njit = None
if _requested == "numba":
    try:
        from numba import njit as _njit

        KERNEL_BACKEND = "numba"
    except ImportError:  # pragma: no cover - exercised only without numba
        warnings.warn(
            "numba is not installed; falling back to pure-Python kernels "
            "(set CAUSALSEP_KERNELS=python to silence this warning)",
            RuntimeWarning,
            stacklevel=2,
        )


def _maybe_jit(fn):
    if KERNEL_BACKEND == "numba":
        return _njit(cache=True)(fn)
    return fn


# Sentinel capacity treated as infinite inside the flow kernel. Finite
# capacities are validated by callers to sum strictly below this value,
# so any augmenting path whose bottleneck reaches INF_CAP proves that no
# finite-cost cut exists.
INF_CAP = np.int64(1) << np.int64(60)


@_maybe_jit
def reach(indptr, indices, seeds, n):
    """Nodes reachable from ``seeds`` by following CSR arcs (seeds included).

    Returns a uint8 mask of length ``n``.
    """
    seen = np.zeros(n, dtype=np.uint8)
    queue = np.empty(n, dtype=np.int32)
    qt = 0
    for k in range(seeds.shape[0]):
        s = seeds[k]
        if seen[s] == 0:
            seen[s] = 1
            queue[qt] = s
            qt += 1
    qh = 0
    while qh < qt:
        u = queue[qh]
        qh += 1
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if seen[v] == 0:
                seen[v] = 1
                queue[qt] = v
                qt += 1
    return seen


@_maybe_jit
def walk_connected(indptr, indices, codes, xs, ymask, col_pass, noncol_pass, n):
    """Walk-status search for a walk from X to Y whose every inner node
    passes a mark-dependent test.

    ``codes[e]`` describes the mark pattern of the edge underlying CSR arc
    ``e`` from ``u`` to ``v``: bit 0 is set when the edge carries an
    arrowhead at ``u`` and bit 1 when it carries one at ``v``. Each node is
    visited in at most two states -- entered through an arrowhead or
    through a tail -- so the search is linear in the arc count.

    A walk continues through a node ``u`` onto the next edge iff ``u`` is
    a collider on the walk (arrowheads on both sides) and ``col_pass[u]``,
    or a non-collider and ``noncol_pass[u]``. Start nodes are entered
    through a tail; callers that want no condition at them must set both
    pass masks there. Returns True iff some Y node is reachable.
    """
    visited = np.zeros(2 * n, dtype=np.uint8)
    queue = np.empty(2 * n, dtype=np.int32)
    qt = 0
    for k in range(xs.shape[0]):
        x = xs[k]
        if ymask[x] == 1:
            return True
        s = 2 * x  # entered "through a tail": X nodes start every walk
        if visited[s] == 0:
            visited[s] = 1
            queue[qt] = s
            qt += 1
    qh = 0
    while qh < qt:
        s = queue[qh]
        qh += 1
        u = s >> 1
        in_arrow = s & 1
        for e in range(indptr[u], indptr[u + 1]):
            code = codes[e]
            if in_arrow == 1 and (code & 1) == 1:
                passes = col_pass[u] == 1  # collider at u
            else:
                passes = noncol_pass[u] == 1  # non-collider at u
            if passes:
                v = indices[e]
                t = (v << 1) | ((code >> 1) & 1)
                if visited[t] == 0:
                    if ymask[v] == 1:
                        return True
                    visited[t] = 1
                    queue[qt] = t
                    qt += 1
    return False


def sep_connected(indptr, indices, codes, xs, ymask, zmask, n):
    """True iff X and Y are m-connected given Z: a walk passes a collider
    iff it is in Z and a non-collider iff it is outside Z."""
    return walk_connected(indptr, indices, codes, xs, ymask, zmask, 1 - zmask, n)


@_maybe_jit
def min_vertex_cut_flow(indptr, indices, node_cap, srcs, dsts, n):
    """Minimum-weight vertex cut between node sets via Edmonds-Karp.

    The graph is the undirected CSR ``indptr/indices`` over ``n`` nodes;
    ``node_cap[i]`` is the int64 cost of cutting node ``i`` (``INF_CAP``
    marks uncuttable nodes). Every node i is split into i_in = 2i and
    i_out = 2i+1 joined by an arc of capacity ``node_cap[i]``; each
    undirected edge contributes infinite arcs between the out/in sides; a
    virtual source feeds every node in ``srcs`` and every node in ``dsts``
    drains into a virtual sink.

    Returns ``(status, cut_mask)`` where status 0 means a finite minimum
    cut was found and ``cut_mask`` flags its nodes, and status 1 means no
    finite cut exists (some source-destination path cannot be severed).
    """
    nv = 2 * n + 2
    source = 2 * n
    sink = 2 * n + 1
    narcs = n + indices.shape[0] + srcs.shape[0] + dsts.shape[0]
    arc_to = np.empty(2 * narcs, dtype=np.int32)
    arc_cap = np.empty(2 * narcs, dtype=np.int64)
    head = np.full(nv, -1, dtype=np.int32)
    nxt = np.empty(2 * narcs, dtype=np.int32)
    na = 0

    def _add(u, v, cap, arc_to, arc_cap, head, nxt, na):
        arc_to[na] = v
        arc_cap[na] = cap
        nxt[na] = head[u]
        head[u] = na
        arc_to[na + 1] = u
        arc_cap[na + 1] = 0
        nxt[na + 1] = head[v]
        head[v] = na + 1
        return na + 2

    for i in range(n):
        na = _add(2 * i, 2 * i + 1, node_cap[i], arc_to, arc_cap, head, nxt, na)
    for u in range(n):
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            na = _add(2 * u + 1, 2 * v, INF_CAP, arc_to, arc_cap, head, nxt, na)
    for k in range(srcs.shape[0]):
        na = _add(source, 2 * srcs[k], INF_CAP, arc_to, arc_cap, head, nxt, na)
    for k in range(dsts.shape[0]):
        na = _add(2 * dsts[k] + 1, sink, INF_CAP, arc_to, arc_cap, head, nxt, na)

    prev_arc = np.empty(nv, dtype=np.int32)
    queue = np.empty(nv, dtype=np.int32)
    while True:
        for i in range(nv):
            prev_arc[i] = -1
        prev_arc[source] = -2
        queue[0] = source
        qh = 0
        qt = 1
        found = False
        while qh < qt and not found:
            u = queue[qh]
            qh += 1
            a = head[u]
            while a != -1:
                if arc_cap[a] > 0:
                    v = arc_to[a]
                    if prev_arc[v] == -1:
                        prev_arc[v] = a
                        if v == sink:
                            found = True
                            break
                        queue[qt] = v
                        qt += 1
                a = nxt[a]
        if not found:
            break
        bottleneck = INF_CAP
        v = sink
        while v != source:
            a = prev_arc[v]
            if arc_cap[a] < bottleneck:
                bottleneck = arc_cap[a]
            v = arc_to[a ^ 1]
        if bottleneck >= INF_CAP:
            # An unseverable residual path: every node on it is uncuttable.
            return 1, np.zeros(n, dtype=np.uint8)
        v = sink
        while v != source:
            a = prev_arc[v]
            arc_cap[a] -= bottleneck
            arc_cap[a ^ 1] += bottleneck
            v = arc_to[a ^ 1]

    # Min cut = nodes whose in-side is residual-reachable from the source
    # but whose out-side is not.
    seen = np.zeros(nv, dtype=np.uint8)
    seen[source] = 1
    queue[0] = source
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        a = head[u]
        while a != -1:
            if arc_cap[a] > 0:
                v = arc_to[a]
                if seen[v] == 0:
                    seen[v] = 1
                    queue[qt] = v
                    qt += 1
            a = nxt[a]
    cut = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        if seen[2 * i] == 1 and seen[2 * i + 1] == 0:
            cut[i] = 1
    return 0, cut
