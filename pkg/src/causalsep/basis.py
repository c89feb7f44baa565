"""Pairwise-independence basis sets for DAG consistency testing.

A DAG entails many conditional independences; testing all of them
against data is hopeless.  A *basis set* is a small family of pairwise
separation claims — one per nonadjacent pair — whose truth entails the
rest under the conditional-independence axioms (for dependence measures
such as partial correlation).  Two constructions are provided:

* the **parental** basis conditions each pair (X_i, X_j), with X_j the
  topologically later node, on Pa(X_j);
* the **sparse** basis instead asks for a minimal separator drawn only
  from nodes strictly closer to X_j (skeleton distance) than X_i is,
  which is always possible because Pa(X_j) qualifies.

Sparse separators are minimal, so on sparse graphs they are typically
much smaller than parent sets, reducing the order of the statistical
tests a model check has to run.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import MixedGraph

__all__ = ["BasisClaim", "basis_stats", "parental_basis", "sparse_basis"]


@dataclass(frozen=True)
class BasisClaim:
    """One testable claim: ``i`` is independent of ``j`` given ``z``.

    ``i`` precedes ``j`` in the topological order used to build the
    basis, the pair is nonadjacent, and ``z`` d-separates it.  ``kind``
    records which construction produced the claim.
    """

    i: str
    j: str
    z: tuple[str, ...]
    kind: str  # "parental" or "sparse"


def _topological_order(g: MixedGraph) -> list[str]:
    """Kahn's algorithm, breaking ties by node insertion index so the
    same graph always yields the same order."""
    if not g.is_directed_only:
        raise ValueError("basis sets are defined for directed graphs only")
    indeg = {v: len(g.parents(v)) for v in g.nodes}
    ready = [g.index_of(v) for v in g.nodes if indeg[v] == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        v = g.nodes[heapq.heappop(ready)]
        order.append(v)
        for w in g.children(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, g.index_of(w))
    if len(order) != len(g.nodes):
        raise ValueError("graph has a directed cycle")
    return order


def _skeleton_levels(sk: list[int], start: int) -> list[int]:
    """Breadth-first levels from ``start`` over skeleton-adjacency
    bitmasks: ``levels[d]`` holds the nodes at distance exactly ``d``."""
    visited = 1 << start
    frontier = visited
    levels = [visited]
    while frontier:
        nxt = 0
        f = frontier
        while f:
            lsb = f & -f
            nxt |= sk[lsb.bit_length() - 1]
            f ^= lsb
        nxt &= ~visited
        if not nxt:
            break
        levels.append(nxt)
        visited |= nxt
        frontier = nxt
    return levels


def _pool_min_sep(pa: list[int], anc: list[int], adj: list[int],
                  ii: int, jj: int, pool: int) -> int | None:
    """Minimal separator for the pair (ii, jj) within ``pool``, on
    bitmasks; ``None`` when the pool holds no separator.

    Mirrors the dense pruning of :func:`causalsep.separation.find_min_sep`
    node for node — restrict to the pair's ancestors, moralize, keep the
    candidates first reached from either endpoint — so for a pool query
    on a DAG the two produce the same set.
    """
    ant = anc[ii] | anc[jj]
    m = ant
    while m:
        lsb = m & -m
        c = lsb.bit_length() - 1
        m ^= lsb
        clique = (pa[c] & ant) | lsb
        cm = clique
        while cm:
            cl = cm & -cm
            adj[cl.bit_length() - 1] |= clique & ~cl
            cm ^= cl
    xb, yb = 1 << ii, 1 << jj
    z = ant & pool & ~xb & ~yb
    for source in (xb, yb):
        visited = source
        frontier = source
        hits = 0
        while frontier:
            nxt = 0
            f = frontier
            while f:
                lsb = f & -f
                nxt |= adj[lsb.bit_length() - 1]
                f ^= lsb
            nxt &= ~visited
            visited |= nxt
            hits |= nxt & z
            frontier = nxt & ~z
        z &= hits
    # the pruned set is a separator iff any set in the pool is: verify
    visited = xb
    frontier = xb
    while frontier:
        nxt = 0
        f = frontier
        while f:
            lsb = f & -f
            nxt |= adj[lsb.bit_length() - 1]
            f ^= lsb
        nxt &= ~visited & ~z
        if nxt & yb:
            z = None
            break
        visited |= nxt
        frontier = nxt
    m = ant
    while m:  # reset the shared scratch adjacency
        lsb = m & -m
        adj[lsb.bit_length() - 1] = 0
        m ^= lsb
    return z


def _pairs(g: MixedGraph, order: list[str]):
    for jdx, xj in enumerate(order):
        for xi in order[:jdx]:
            if not g.adjacent(xi, xj):
                yield xi, xj


def parental_basis(g: MixedGraph) -> list[BasisClaim]:
    """One claim per nonadjacent pair, conditioning on the later node's
    parents (the pairwise form of the canonical local-Markov basis)."""
    order = _topological_order(g)
    return [
        BasisClaim(i=xi, j=xj, z=tuple(sorted(g.parents(xj))), kind="parental")
        for xi, xj in _pairs(g, order)
    ]


def sparse_basis(g: MixedGraph) -> list[BasisClaim]:
    """One claim per nonadjacent pair, conditioning on a minimal
    separator among nodes strictly closer to the later node.

    For the pair (X_i, X_j) the candidate pool is
    ``{X_k : d(X_k, X_j) < d(X_i, X_j)}`` with ``d`` the skeleton
    shortest-path distance.  The pool contains Pa(X_j), so a separator
    always exists; minimality makes these claims the cheapest
    distance-respecting tests available.
    """
    order = _topological_order(g)
    ids = g.nodes
    n = g.n
    pa = [0] * n
    sk = [0] * n
    for v in ids:
        iv = g.index_of(v)
        for p in g.parents(v):
            ip = g.index_of(p)
            pa[iv] |= 1 << ip
            sk[iv] |= 1 << ip
            sk[ip] |= 1 << iv
    anc = [0] * n
    for v in order:  # reflexive ancestor masks, parents first
        iv = g.index_of(v)
        a = 1 << iv
        m = pa[iv]
        while m:
            lsb = m & -m
            a |= anc[lsb.bit_length() - 1]
            m ^= lsb
        anc[iv] = a
    claims: list[BasisClaim] = []
    pool_cache: dict[int, list[int]] = {}
    scratch = [0] * n
    for xi, xj in _pairs(g, order):
        ii, jj = g.index_of(xi), g.index_of(xj)
        pools = pool_cache.get(jj)
        if pools is None:
            # pools[d] = nodes at skeleton distance < d from X_j; the
            # last entry covers everything X_j can reach at all
            levels = _skeleton_levels(sk, jj)
            pools = [0]
            for lv in levels:
                pools.append(pools[-1] | lv)
            pool_cache[jj] = pools
        xb = 1 << ii
        pool = pools[-1]
        for d in range(2, len(pools) - 1):
            if pools[d + 1] & xb:  # X_i sits at distance exactly d
                pool = pools[d]
                break
        z = _pool_min_sep(pa, anc, scratch, ii, jj, pool)
        if z is None:  # unreachable: Pa(X_j) is always in the pool
            raise AssertionError(f"no separator for {xi!r}, {xj!r}")
        zs = []
        while z:
            lsb = z & -z
            zs.append(ids[lsb.bit_length() - 1])
            z ^= lsb
        claims.append(BasisClaim(i=xi, j=xj, z=tuple(sorted(zs)), kind="sparse"))
    return claims


def basis_stats(g: MixedGraph) -> dict:
    """Total conditioning sizes of both bases and the relative saving."""
    parental = parental_basis(g)
    sparse = sparse_basis(g)
    p_total = sum(len(c.z) for c in parental)
    s_total = sum(len(c.z) for c in sparse)
    reduction = 0.0 if p_total == 0 else 100.0 * (1.0 - s_total / p_total)
    return {
        "pairs": len(parental),
        "parental_total": p_total,
        "sparse_total": s_total,
        "reduction_pct": reduction,
    }
