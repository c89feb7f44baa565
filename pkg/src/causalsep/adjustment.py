"""Covariate adjustment in directed acyclic graphs.

Whether a set Z is a valid adjustment for estimating the effect of X on
Y reduces to a separation problem: Z must avoid the descendants of
proper causal paths and must separate X from Y in the *proper back-door
graph*, the input graph with the first edge of every proper causal path
removed. All construction and enumeration tasks delegate to the
separation machinery on that derived graph, so there is a single
audited search core.

Callers are expected to pass acyclic directed graphs; edge kinds are
checked, acyclicity is not (run :func:`causalsep.validate` on untrusted
input).
"""

from __future__ import annotations

from dataclasses import dataclass

from .enumeration import list_min_sep, list_sep
from .graph import MixedGraph, closure, transform
from .separation import (
    ANY,
    I_MINIMAL,
    I_MINIMUM,
    STRONG_MINIMUM,
    SepQuery,
    _check_endpoints,
    _check_known,
    find_min_cost_sep,
    find_min_sep,
    resolve_query,
    test_min_sep,
    test_sep,
)

AdjQuery = SepQuery

_MINIMALITY = ("none", "i", "strong")


def _require_directed(g: MixedGraph) -> None:
    if not g.is_directed_only:
        raise ValueError("adjustment requires a graph with directed edges only")


def pcp(g: MixedGraph, x, y) -> frozenset:
    """Nodes on proper causal paths from ``x`` to ``y``.

    A proper causal path is a directed path from a node of ``x`` to a
    node of ``y`` that meets ``x`` only at its start. Computed as the
    nodes reachable from ``x`` once edges into ``x`` are dropped,
    intersected with the ancestors of ``y`` once edges out of ``x`` are
    dropped.
    """
    x, y = _check_endpoints(g, x, y)
    reach_out = closure(transform(g, remove_into=x), x, "descendants") - x
    feed_y = closure(transform(g, remove_out=x), y, "ancestors")
    return reach_out & feed_y


def dpcp(g: MixedGraph, x, y) -> frozenset:
    """Descendants of :func:`pcp` — the nodes no adjustment set may touch."""
    return closure(g, pcp(g, x, y), "descendants")


@dataclass(frozen=True)
class ProperBackdoorGraph:
    """A graph with the first edge of every proper causal path removed,
    along with the node sets the construction derives."""

    graph: MixedGraph
    pcp: frozenset
    dpcp: frozenset


def proper_backdoor_graph(
    g: MixedGraph, x, y, prune: str = "default"
) -> ProperBackdoorGraph:
    """Remove from ``g`` the first edge of every proper causal path.

    With ``prune="dpcp"`` every directed edge from ``x`` into the
    forbidden descendant set is removed instead of only the first edges;
    both variants give identical adjustment answers, but the pruned
    graph can be smaller downstream.
    """
    if prune not in ("default", "dpcp"):
        raise ValueError(f"unknown prune option {prune!r}")
    x, y = _check_endpoints(g, x, y)
    p = pcp(g, x, y)
    d = closure(g, p, "descendants")
    targets = p if prune == "default" else d
    kept = [
        (u, kind, v)
        for u, kind, v in g.edges()
        if not (kind == "->" and u in x and v in targets)
    ]
    return ProperBackdoorGraph(MixedGraph._trusted(g.nodes, kept), p, d)


def _check_candidate(g, x, y, z, i, minimality):
    z = _check_known(g, z, "Z")
    i = _check_known(g, i, "I")
    if z & (x | y):
        raise ValueError(f"adjustment node {sorted(z & (x | y))[0]!r} lies in X or Y")
    if minimality not in _MINIMALITY:
        raise ValueError(f"unknown minimality {minimality!r}")
    if minimality == "none" and i:
        raise ValueError("a context set only applies to minimality testing")
    if minimality == "strong" and i:
        raise ValueError("strong minimality admits no context set")
    return z, i


def _test_via_pbd(pbd, node_set, x, y, z, minimality, i, strategy) -> bool:
    if minimality == "none":
        return z.isdisjoint(pbd.dpcp) and test_sep(pbd.graph, x, y, z)
    return test_min_sep(
        pbd.graph,
        x,
        y,
        z,
        m=i if minimality == "i" else frozenset(),
        r=node_set - x - y - pbd.dpcp,
        strategy=strategy,
    )


def _guard_context(pbd, i) -> None:
    if i & pbd.dpcp:
        raise ValueError(
            f"context node {sorted(i & pbd.dpcp)[0]!r} is a descendant of a "
            "proper causal path; no valid adjustment set can contain it"
        )


def _find_via_pbd(g, pbd, x, y, i, r, objective, cost, strategy):
    if cost is not None and objective not in (I_MINIMUM, STRONG_MINIMUM):
        raise ValueError("node costs apply to the minimum-cost objectives only")
    _guard_context(pbd, i)
    rq = SepQuery(x, y, i, r - pbd.dpcp)
    if objective == ANY:
        z = (closure(g, x | y | i, "ancestors") & rq.r) - x - y
        return z if test_sep(pbd.graph, x, y, z) else None
    if objective == I_MINIMAL:
        return find_min_sep(pbd.graph, rq, strategy=strategy)
    if objective in (I_MINIMUM, STRONG_MINIMUM):
        return find_min_cost_sep(pbd.graph, rq, cost=cost, objective=objective)
    raise ValueError(f"unknown objective {objective!r}")


def _enumerate_via_pbd(pbd, x, y, i, r, minimal):
    _guard_context(pbd, i)
    rq = SepQuery(x, y, i, r - pbd.dpcp)
    return (list_min_sep if minimal else list_sep)(pbd.graph, rq)


def test_adjustment(
    g: MixedGraph,
    x,
    y,
    z,
    minimality: str = "none",
    i=frozenset(),
    strategy: str = "dense",
) -> bool:
    """True iff ``z`` is a valid adjustment set for the effect of ``x``
    on ``y``, i.e. ``z`` avoids the forbidden descendants and separates
    ``x`` from ``y`` in the proper back-door graph.

    ``minimality="i"`` additionally requires that no proper subset of
    ``z`` still containing ``i`` is itself a valid adjustment;
    ``"strong"`` requires that no proper subset at all is.
    """
    _require_directed(g)
    x, y = _check_endpoints(g, x, y)
    z, i = _check_candidate(g, x, y, z, i, minimality)
    pbd = proper_backdoor_graph(g, x, y)
    return _test_via_pbd(pbd, g.node_set, x, y, z, minimality, i, strategy)


def find_adjustment(
    g: MixedGraph,
    q: SepQuery,
    objective: str = ANY,
    cost=None,
    strategy: str = "dense",
) -> frozenset | None:
    """An adjustment set Z with ``i ⊆ Z ⊆ r``, or None when none exists.

    ``objective`` selects what to construct: ``ANY`` tests the canonical
    candidate (the restricted ancestors of ``x ∪ y ∪ i`` minus the
    forbidden descendants), which works iff any valid set does;
    ``I_MINIMAL`` prunes it to a set no element of which is removable;
    ``I_MINIMUM``/``STRONG_MINIMUM`` minimise total ``cost`` (unit
    weights when None) over the separators of the proper back-door
    graph. A context node inside the forbidden descendant set is an
    error rather than None: no valid adjustment may contain it, so the
    query itself is malformed.
    """
    _require_directed(g)
    x, y, i, r = resolve_query(g, q)
    pbd = proper_backdoor_graph(g, x, y)
    return _find_via_pbd(g, pbd, x, y, i, r, objective, cost, strategy)


def enumerate_adjustments(g: MixedGraph, q: SepQuery, minimal: bool = False):
    """Lazy stream of all (or all minimal) adjustment sets Z with
    ``i ⊆ Z ⊆ r``. Validation happens before the first element."""
    _require_directed(g)
    x, y, i, r = resolve_query(g, q)
    pbd = proper_backdoor_graph(g, x, y)
    return _enumerate_via_pbd(pbd, x, y, i, r, minimal)


def pearl_backdoor(g: MixedGraph, x, y, mode: str = "test", z=None, r=None):
    """The classic back-door criterion, kept for comparison.

    ``mode="test"`` checks a candidate ``z``: it must avoid all
    descendants of ``x`` and, for every pair of an exposure ``xi`` and
    an outcome node, block all paths between them once the edges leaving
    ``xi`` are removed. ``mode="find"`` returns a set within ``r``
    satisfying the criterion, or None; by construction it is the
    canonical adjustment candidate stripped of the descendants of ``x``,
    which works whenever any back-door set does.
    """
    _require_directed(g)
    x, y = _check_endpoints(g, x, y)
    de_x = closure(g, x, "descendants")
    if mode == "test":
        if z is None:
            raise ValueError("mode 'test' requires a candidate set Z")
        z = _check_known(g, z, "Z")
        if z & (x | y):
            raise ValueError(
                f"adjustment node {sorted(z & (x | y))[0]!r} lies in X or Y"
            )
        if z & de_x:
            return False
        for xi in sorted(x, key=g.index_of):
            gu = transform(g, remove_out=(xi,))
            if not test_sep(gu, frozenset((xi,)), y, z):
                return False
        return True
    if mode == "find":
        if z is not None:
            raise ValueError("mode 'find' takes no candidate set")
        if r is None:
            rset = g.node_set - x - y
        else:
            rset = _check_known(g, r, "R") - x - y
        z0 = (closure(g, x | y, "ancestors") & rset) - de_x
        return z0 if pearl_backdoor(g, x, y, mode="test", z=z0) else None
    raise ValueError(f"unknown mode {mode!r}")
