"""Separation tests and separator construction.

All operations read a query as "separate X from Y by a set Z with
I ⊆ Z ⊆ R": X and Y are the sets to be separated, I collects nodes that
must be conditioned on, and R restricts which nodes may be. Separation is
the walk-blocking criterion for mixed graphs: a walk is blocked by Z iff
it has a non-collider in Z or a collider outside Z; on DAGs this is
d-separation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import MixedGraph, augment, closure, induced_subgraph

ANY = "ANY"
I_MINIMAL = "I_MINIMAL"
I_MINIMUM = "I_MINIMUM"
STRONG_MINIMUM = "STRONG_MINIMUM"

COST_SCALE = 10**6
_MAX_TOTAL_SCALED = 1 << 58


@dataclass(frozen=True)
class SepQuery:
    """A separation request: find/test Z with ``i ⊆ Z ⊆ r`` separating
    ``x`` from ``y``. ``r=None`` means all nodes outside ``x ∪ y``."""

    x: frozenset
    y: frozenset
    i: frozenset = frozenset()
    r: frozenset | None = None

    @classmethod
    def of(cls, x, y, i=(), r=None) -> "SepQuery":
        return cls(
            frozenset(x),
            frozenset(y),
            frozenset(i),
            None if r is None else frozenset(r),
        )


def _check_known(g: MixedGraph, vs, what: str) -> frozenset:
    vs = frozenset(vs)
    for v in vs:
        try:
            g.index_of(v)
        except ValueError:
            raise ValueError(f"unknown node {v!r} in {what}") from None
    return vs


def _check_endpoints(g: MixedGraph, x, y) -> tuple:
    x = _check_known(g, x, "X")
    y = _check_known(g, y, "Y")
    if not x or not y:
        raise ValueError("X and Y must be non-empty")
    if x & y:
        raise ValueError(f"X and Y overlap on {sorted(x & y)[0]!r}")
    return x, y


def resolve_query(g: MixedGraph, q: SepQuery) -> tuple:
    """Validate ``q`` against ``g`` and return ``(x, y, i, r)`` with the
    restriction set already stripped of ``x ∪ y``."""
    x, y = _check_endpoints(g, q.x, q.y)
    i = _check_known(g, q.i, "I")
    if q.r is None:
        r = g.node_set - x - y
    else:
        r = _check_known(g, q.r, "R") - x - y
    if i & (x | y):
        raise ValueError(f"context node {sorted(i & (x | y))[0]!r} lies in X or Y")
    if not i <= r:
        raise ValueError(
            f"context node {sorted(i - r)[0]!r} is outside the restriction set"
        )
    return x, y, i, r


def test_sep(g: MixedGraph, x, y, z) -> bool:
    """True iff ``z`` separates ``x`` from ``y`` in ``g``.

    Walk-status search over the incidence structure: each node is entered
    either through an arrowhead or through a tail, giving at most two
    states per node, so the test is linear in the size of the graph.
    """
    x, y = _check_endpoints(g, x, y)
    z = _check_known(g, z, "Z")
    if z & (x | y):
        raise ValueError(f"conditioning node {sorted(z & (x | y))[0]!r} lies in X or Y")
    indptr, indices, codes = g.csr("incidence")
    xs = np.fromiter(sorted(g.index_of(v) for v in x), dtype=np.int32)
    return not _kernels.sep_connected(
        indptr, indices, codes, xs, g.mask_of(y), g.mask_of(z), g.n
    )


def find_sep(g: MixedGraph, q: SepQuery) -> frozenset | None:
    """Some separator Z with ``i ⊆ Z ⊆ r``, or None when none exists.

    Tests the canonical candidate ``Ant(x ∪ y ∪ i) ∩ r``; a separator
    within the constraints exists iff this one works, so None is a
    certificate of non-existence.
    """
    x, y, i, r = resolve_query(g, q)
    z = (closure(g, x | y | i, "anteriors") & r) - x - y
    return z if test_sep(g, x, y, z) else None


def _first_hits(ug: MixedGraph, sources, stop, removed=frozenset()) -> frozenset:
    """Stop-set nodes first reached from ``sources`` in the undirected
    graph ``ug``: a breadth-first flood that never expands a stop node
    and never enters a removed node. A stop node is returned iff some
    path from the sources reaches it through non-stop nodes only."""
    indptr, indices = ug.csr("skeleton")
    stop_m = ug.mask_of(stop)
    rem_m = ug.mask_of(removed)
    seen = bytearray(ug.n)
    queue: list[int] = []
    for v in sources:
        iv = ug.index_of(v)
        if not seen[iv]:
            seen[iv] = 1
            queue.append(iv)
    out: list[int] = []
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for e in range(indptr[u], indptr[u + 1]):
            w = int(indices[e])
            if seen[w] or rem_m[w]:
                continue
            seen[w] = 1
            if stop_m[w]:
                out.append(w)
                continue
            queue.append(w)
    return ug.id_set(out)


def test_min_sep(
    g: MixedGraph,
    x,
    y,
    z,
    m=frozenset(),
    r=None,
    strategy: str = "dense",
) -> bool:
    """True iff ``z`` separates ``x`` from ``y`` and no ``z' ⊂ z`` with
    ``m ⊆ z'`` still does. With ``m = ∅`` this is strong minimality; with
    the query's context set it is minimality relative to that context.

    The dense strategy tests reachability in the augmented anterior
    graph: after dropping ``m``, every node of ``z ∖ m`` must be directly
    reachable from both sides. The sparse strategy instead retests
    separation with each single node of ``z ∖ m`` removed, which by
    monotonicity of anterior-contained separators is sufficient.
    """
    x, y = _check_endpoints(g, x, y)
    z = _check_known(g, z, "Z")
    m = _check_known(g, m, "M")
    if not m <= z:
        raise ValueError("the protected set M must be contained in Z")
    if z & (x | y):
        raise ValueError(f"conditioning node {sorted(z & (x | y))[0]!r} lies in X or Y")
    if r is None:
        r = g.node_set - x - y
    else:
        r = _check_known(g, r, "R") - x - y
    if strategy not in ("dense", "sparse"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if not z <= r:
        return False
    ant = closure(g, x | y | m, "anteriors")
    if not z <= ant:
        return False
    if not test_sep(g, x, y, z):
        return False
    need = z - m
    if strategy == "sparse":
        for u in sorted(need, key=g.index_of):
            if test_sep(g, x, y, z - {u}):
                return False
        return True
    ga = augment(induced_subgraph(g, ant))
    if _first_hits(ga, x, need, removed=m) != need:
        return False
    return _first_hits(ga, y, need, removed=m) == need


def find_min_sep(g: MixedGraph, q: SepQuery, strategy: str = "dense") -> frozenset | None:
    """A separator Z with ``i ⊆ Z ⊆ r`` from which no node outside ``i``
    can be dropped, or None when no separator exists.

    The dense strategy prunes the canonical separator to the nodes
    directly reachable from X, then from Y, in the augmented anterior
    graph. The sparse strategy greedily removes nodes one at a time,
    retesting separation after each.
    """
    if strategy not in ("dense", "sparse"):
        raise ValueError(f"unknown strategy {strategy!r}")
    x, y, i, r = resolve_query(g, q)
    if strategy == "sparse":
        sub = induced_subgraph(g, closure(g, x | y | i, "anteriors"))
        z = (sub.node_set & r) - x - y
        if not test_sep(sub, x, y, z):
            return None
        z = set(z)
        for u in sorted(z - i, key=g.index_of):
            z.discard(u)
            if not test_sep(sub, x, y, frozenset(z)):
                z.add(u)
        return frozenset(z)
    ga = augment(induced_subgraph(g, closure(g, x | y | i, "anteriors")))
    z1 = (closure(g, x | y, "anteriors") & r) - x - y
    z2 = z1 & _first_hits(ga, x, z1, removed=i)
    z3 = z2 & _first_hits(ga, y, z2, removed=i)
    out = z3 | i
    return out if test_sep(g, x, y, out) else None


# -- weighted separators --------------------------------------------------


def _scaled_cost(value, node: str) -> int:
    """Fixed-point encode one cost value (micro-unit resolution)."""
    fv = float(value)
    if fv != fv:  # NaN
        raise ValueError(f"cost of node {node!r} is NaN")
    if fv < 0:
        raise ValueError(f"cost of node {node!r} is negative")
    if fv == float("inf"):
        return int(_kernels.INF_CAP)
    scaled = round(fv * COST_SCALE)
    if scaled >= _MAX_TOTAL_SCALED:
        raise ValueError(f"cost of node {node!r} is too large to encode")
    return scaled


def _cap_array(ug: MixedGraph, cost, uncuttable) -> np.ndarray:
    caps = np.empty(ug.n, dtype=np.int64)
    total = 0
    inf = int(_kernels.INF_CAP)
    for idx, v in enumerate(ug.nodes):
        if v in uncuttable:
            caps[idx] = inf
            continue
        value = 1.0 if cost is None else cost.get(v, 1.0)
        c = _scaled_cost(value, v)
        caps[idx] = c
        if c < inf:
            total += c
            if total >= _MAX_TOTAL_SCALED:
                raise ValueError("total separator cost overflows the cost encoding")
    return caps


def min_vertex_cut(ug: MixedGraph, source, sink, cost=None) -> frozenset | None:
    """A minimum-weight set of nodes whose removal disconnects ``source``
    from ``sink`` in the undirected graph ``ug``, or None when every
    source-sink connection runs through uncuttable (infinite-cost) nodes
    only. ``cost`` maps node ids to non-negative weights (missing ids
    weigh 1; ``inf`` marks a node uncuttable). Source and sink nodes are
    never cut.
    """
    for _, kind, _ in ug.edges():
        if kind != "--":
            raise ValueError("min_vertex_cut expects an undirected graph")
    source, sink = _check_endpoints(ug, source, sink)
    caps = _cap_array(ug, cost, source | sink)
    indptr, indices = ug.csr("skeleton")
    srcs = np.fromiter(sorted(ug.index_of(v) for v in source), dtype=np.int32)
    dsts = np.fromiter(sorted(ug.index_of(v) for v in sink), dtype=np.int32)
    status, mask = _kernels.min_vertex_cut_flow(indptr, indices, caps, srcs, dsts, ug.n)
    if status == 1:
        return None
    return ug.ids_from_mask(mask)


def _scaled_total(cost, vs) -> int:
    total = 0
    for v in sorted(vs):
        value = 1.0 if cost is None else cost.get(v, 1.0)
        total += _scaled_cost(value, v)
    return total


def find_min_cost_sep(
    g: MixedGraph,
    q: SepQuery,
    cost=None,
    objective: str = I_MINIMUM,
) -> frozenset | None:
    """A minimum-cost separator Z with ``i ⊆ Z ⊆ r``.

    With objective ``I_MINIMUM`` the cost of ``z ∖ i`` is minimised by a
    vertex cut between X and Y in the augmented anterior graph with ``i``
    removed. With ``STRONG_MINIMUM`` the result must additionally cost no
    more than the best separator free of the ``i`` constraint; when the
    constrained optimum is strictly worse, there is no strongly minimum
    separator through ``i`` and the result is None.
    """
    if objective not in (I_MINIMUM, STRONG_MINIMUM):
        raise ValueError(f"unknown objective {objective!r}")
    x, y, i, r = resolve_query(g, q)
    if cost is not None:
        for v in cost:
            g.index_of(v)

    def cut_with(committed: frozenset) -> frozenset | None:
        ant = closure(g, x | y | committed, "anteriors")
        ga = augment(induced_subgraph(g, ant))
        if committed:
            ga = induced_subgraph(ga, ga.node_set - committed)
        uncuttable = (x | y) | (ga.node_set - r)
        caps = _cap_array(ga, cost, uncuttable)
        indptr, indices = ga.csr("skeleton")
        srcs = np.fromiter(sorted(ga.index_of(v) for v in x), dtype=np.int32)
        dsts = np.fromiter(sorted(ga.index_of(v) for v in y), dtype=np.int32)
        status, mask = _kernels.min_vertex_cut_flow(
            indptr, indices, caps, srcs, dsts, ga.n
        )
        if status == 1:
            return None
        return ga.ids_from_mask(mask)

    cut = cut_with(i)
    if cut is None:
        return None
    out = cut | i
    if objective == I_MINIMUM:
        return out
    free = cut_with(frozenset())
    if free is None:
        return None
    if _scaled_total(cost, out) == _scaled_total(cost, free):
        return out
    return None
