"""Adjustment in maximal ancestral graphs, plus the DAG/MAG projections.

A MAG stands for every DAG-with-latents that shares its ancestral
relationships, so an adjustment set must be valid in all of them at
once. That holds exactly when every proper causal path out of the
exposures starts with a *visible* edge — one whose directed orientation
is certified confounder-free by the surrounding graph — and, given that
amenability, validity reduces to the same back-door-graph separation
used for DAGs.

Undirected edges are rejected throughout: they encode selection, which
this module does not model. Maximality itself is assumed, not
re-verified on every call; run :func:`causalsep.validate` with ``"mag"``
on untrusted input.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .adjustment import (
    _check_candidate,
    _enumerate_via_pbd,
    _find_via_pbd,
    _test_via_pbd,
    pcp,
    proper_backdoor_graph,
)
from .graph import MixedGraph, closure, validate
from .separation import (
    ANY,
    _check_endpoints,
    _check_known,
    resolve_query,
)


def _require_mag(m: MixedGraph) -> None:
    if m.has_undirected:
        raise ValueError(
            "ancestral-graph adjustment accepts directed and bidirected "
            "edges only (undirected edges encode selection)"
        )
    viol = validate(m, "ag")
    if viol:
        raise ValueError(f"input is not an ancestral graph: {viol[0]}")


def _edge_visible(m: MixedGraph, x: str, d: str) -> bool:
    """Visibility of the directed edge x -> d, endpoints pre-checked.

    The edge is visible iff some node A outside d's neighbourhood sends
    an arrowhead into x directly or through a chain of bidirected edges
    whose inner nodes are all parents of d. Searched as reachability from
    x over bidirected edges within Pa(d), testing at each reached node
    whether an adjacent arrowhead-source escapes d's neighbourhood.
    """
    pa_d = m.parents(d)
    n_d = m.neighbors(d)
    seen = {x}
    stack = [x]
    while stack:
        v = stack.pop()
        if (m.parents(v) | m.spouses(v)) - n_d:
            return True
        for w in m.spouses(v):
            if w in pa_d and w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def edge_visible(m: MixedGraph, x: str, d: str) -> bool:
    """True iff the directed edge ``x -> d`` is visible: no DAG
    represented by ``m`` has an unobserved confounder between them."""
    _require_mag(m)
    if m.edge_between(x, d) != (x, "->", d):
        raise ValueError(f"no directed edge {x!r} -> {d!r} in the graph")
    return _edge_visible(m, x, d)


def _amenable(m: MixedGraph, x: frozenset, y: frozenset) -> bool:
    p = pcp(m, x, y)
    for d in sorted(p, key=m.index_of):
        for xi in sorted(x & m.parents(d), key=m.index_of):
            if not _edge_visible(m, xi, d):
                return False
    return True


def test_amenability(m: MixedGraph, x, y) -> bool:
    """True iff every proper causal path from ``x`` to ``y`` starts with
    a visible edge. Amenability is necessary for any adjustment set to
    exist in a MAG; it does not by itself guarantee one."""
    _require_mag(m)
    x, y = _check_endpoints(m, x, y)
    return _amenable(m, x, y)


def mag_adjustment(
    m: MixedGraph,
    task: str,
    x=None,
    y=None,
    z=None,
    q=None,
    minimality: str = "none",
    i=frozenset(),
    objective: str = ANY,
    cost=None,
    minimal: bool = False,
    strategy: str = "dense",
):
    """Adjustment tasks on a MAG: ``task`` is ``"test"`` (takes ``x``,
    ``y``, ``z`` and optionally ``minimality``/``i``), ``"find"`` (takes
    a query ``q`` and optionally ``objective``/``cost``) or
    ``"enumerate"`` (takes ``q`` and ``minimal``).

    When the graph is not adjustment-amenable for the query's exposures
    and outcomes, no adjustment set exists in some represented DAG, so
    tests return False, finds None, and enumerations are empty. Otherwise
    validity is m-separation in the proper back-door graph (which is
    itself a MAG) avoiding the forbidden descendants, delegated to the
    same machinery the DAG module uses.
    """
    _require_mag(m)
    if task == "test":
        if x is None or y is None or z is None:
            raise ValueError("task 'test' requires x, y and z")
        x, y = _check_endpoints(m, x, y)
        z, i = _check_candidate(m, x, y, z, i, minimality)
        if not _amenable(m, x, y):
            return False
        pbd = proper_backdoor_graph(m, x, y)
        return _test_via_pbd(pbd, m.node_set, x, y, z, minimality, i, strategy)
    if task == "find":
        if q is None:
            raise ValueError("task 'find' requires a query q")
        x, y, i, r = resolve_query(m, q)
        if not _amenable(m, x, y):
            return None
        pbd = proper_backdoor_graph(m, x, y)
        return _find_via_pbd(pbd.graph, pbd, x, y, i, r, objective, cost, strategy)
    if task == "enumerate":
        if q is None:
            raise ValueError("task 'enumerate' requires a query q")
        x, y, i, r = resolve_query(m, q)
        if not _amenable(m, x, y):
            return iter(())
        pbd = proper_backdoor_graph(m, x, y)
        return _enumerate_via_pbd(pbd, x, y, i, r, minimal)
    raise ValueError(f"unknown task {task!r}")


# -- projections ----------------------------------------------------------


def inducing_path_exists(g: MixedGraph, a: str, b: str, z=frozenset(), l=frozenset()) -> bool:
    """True iff ``g`` contains an inducing path between ``a`` and ``b``
    with respect to ``z`` and ``l``: a path whose every inner non-collider
    is in ``l`` and whose every collider is an ancestor of
    ``{a, b} ∪ z``. Such a path witnesses that no subset of ``V ∖ l``
    extending ``z`` can separate the pair.
    """
    ia = g.index_of(a)
    ib = g.index_of(b)
    if a == b:
        raise ValueError("endpoints must differ")
    z = _check_known(g, z, "Z")
    l = _check_known(g, l, "L")
    if (z | l) & {a, b}:
        raise ValueError(f"endpoint {a!r}/{b!r} may not appear in Z or L")
    if g.adjacent(a, b):
        return True
    col = g.closure_mask((g.index_of(v) for v in z | {a, b}), "ancestors")
    noncol = g.mask_of(l)
    col[ia] = 1
    noncol[ia] = 1  # no condition applies at an endpoint
    indptr, indices, codes = g.csr("incidence")
    xs = np.array([ia], dtype=np.int32)
    ymask = np.zeros(g.n, dtype=np.uint8)
    ymask[ib] = 1
    return bool(
        _kernels.walk_connected(indptr, indices, codes, xs, ymask, col, noncol, g.n)
    )


def dag_to_mag(g: MixedGraph, latent, selection=frozenset()) -> MixedGraph:
    """Project a DAG onto the MAG over its non-latent nodes.

    Two observed nodes are adjacent iff an inducing path with respect to
    ``latent`` joins them (no conditioning set over the observed nodes
    can separate such a pair); the edge carries an arrowhead at each
    endpoint that is not an ancestor of the other. With no latent nodes
    the projection is the graph itself.
    """
    if frozenset(selection):
        raise ValueError("selection variables are not supported")
    viol = validate(g, "dag")
    if viol:
        raise ValueError(f"input is not a DAG: {viol[0]}")
    latent = _check_known(g, latent, "L")
    if not latent:
        return g
    kept = [v for v in g.nodes if v not in latent]
    desc = {v: g.closure_mask([g.index_of(v)], "descendants") for v in kept}
    edges = []
    for j, v in enumerate(kept):
        for u in kept[:j]:
            if not (g.adjacent(u, v) or inducing_path_exists(g, u, v, l=latent)):
                continue
            u_anc_v = bool(desc[u][g.index_of(v)])
            v_anc_u = bool(desc[v][g.index_of(u)])
            if u_anc_v:
                edges.append((u, "->", v))
            elif v_anc_u:
                edges.append((v, "->", u))
            else:
                edges.append((u, "<->", v))
    return MixedGraph(kept, edges)


def canonical_dag(m: MixedGraph) -> tuple:
    """A DAG plus latent set whose projection is ``m``: directed edges
    are kept and every bidirected edge is replaced by a fresh latent
    common parent of its endpoints. Returns ``(dag, latents)``."""
    _require_mag(m)
    existing = set(m.nodes)
    edges = []
    latents = []
    counter = 1
    for u, kind, v in m.edges():
        if kind == "->":
            edges.append((u, kind, v))
            continue
        while f"L{counter}" in existing:
            counter += 1
        name = f"L{counter}"
        counter += 1
        existing.add(name)
        latents.append(name)
        edges.append((name, "->", u))
        edges.append((name, "->", v))
    return MixedGraph(tuple(m.nodes) + tuple(latents), edges), frozenset(latents)
