"""Lazy streams of separators.

Both enumerators yield ``frozenset`` separators. They are generators:
nothing beyond the next element is computed until the caller asks, so a
consumer that stops after N elements pays for N elements only.
"""

from __future__ import annotations

from typing import Iterator

from .graph import MixedGraph, augment, closure, induced_subgraph, reduce_constraints
from .separation import SepQuery, resolve_query, test_sep


def list_sep(g: MixedGraph, q: SepQuery) -> Iterator[frozenset]:
    """All separators Z with ``i ⊆ Z ⊆ r``, without repetition.

    Backtracking over include/exclude decisions on candidate nodes in
    node order, pruned by the canonical-separator feasibility test, so
    the time between consecutive emissions stays polynomial. For each
    candidate the exclude branch is explored first, which orders the
    stream from sparse separators towards the full candidate set.
    """
    x, y, i0, r0 = resolve_query(g, q)

    def feasible(i: frozenset, r: frozenset) -> bool:
        z = (closure(g, x | y | i, "anteriors") & r) - x - y
        return test_sep(g, x, y, z)

    stack: list[tuple] = [(i0, r0)]
    while stack:
        i, r = stack.pop()
        if not feasible(i, r):
            continue
        if i == r:
            yield i
            continue
        v = min(r - i, key=g.index_of)
        stack.append((i | {v}, r))  # popped second: include branch
        stack.append((i, r - {v}))  # popped first: exclude branch
    return


def _min_cut_stream(ug: MixedGraph, s_nodes, t_nodes) -> Iterator[frozenset]:
    """All inclusion-minimal node sets separating ``s_nodes`` from
    ``t_nodes`` in the undirected graph ``ug``. Every non-terminal node
    is a legitimate separator member; the caller is responsible for
    having folded node constraints into the graph beforehand.

    Breadth-first walk over the lattice of minimal separators: start
    from the minimal separator closest to the S side, and from each
    separator step past one of its nodes towards T, re-normalising to
    the nearest minimal separator. Per emission the work is one flood
    per node, i.e. O(n * m).
    """
    n = ug.n
    adj = [0] * n
    for iu, _, iv in ug._edges:
        adj[iu] |= 1 << iv
        adj[iv] |= 1 << iu
    smask = 0
    for v in s_nodes:
        smask |= 1 << ug.index_of(v)
    tmask = 0
    for v in t_nodes:
        tmask |= 1 << ug.index_of(v)

    def nbhd(mask: int) -> int:
        out = 0
        m = mask
        while m:
            lsb = m & -m
            out |= adj[lsb.bit_length() - 1]
            m ^= lsb
        return out & ~mask

    def flood(seed: int, blocked: int) -> int:
        seen = seed
        frontier = seed
        while frontier:
            grow = 0
            m = frontier
            while m:
                lsb = m & -m
                grow |= adj[lsb.bit_length() - 1]
                m ^= lsb
            frontier = grow & ~seen & ~blocked
            seen |= frontier
        return seen

    def close(w: int) -> int:
        """The minimal separator nearest the S side among subsets of the
        separator ``w``: keep only the w-nodes touching the T-side
        component, then take the neighbourhood of the S-side component."""
        t_reach = flood(tmask, w)
        w1 = w & nbhd(t_reach)
        return nbhd(flood(smask, w1))

    def to_ids(mask: int) -> frozenset:
        out = []
        m = mask
        while m:
            lsb = m & -m
            out.append(ug.node_at(lsb.bit_length() - 1))
            m ^= lsb
        return frozenset(out)

    ns = nbhd(smask)
    if ns & tmask:
        return  # some S node is adjacent to a T node: nothing separates
    root = close(ns)
    seen_seps = {root}
    queue = [root]
    head = 0
    while head < len(queue):
        z = queue[head]
        head += 1
        yield to_ids(z)
        ct = flood(tmask, z)
        m = z
        while m:
            lsb = m & -m
            m ^= lsb
            if adj[lsb.bit_length() - 1] & tmask:
                continue  # nodes adjacent to T stay in every descendant
            w = (z & ~lsb) | (adj[lsb.bit_length() - 1] & ct)
            z2 = close(w)
            if z2 not in seen_seps:
                seen_seps.add(z2)
                queue.append(z2)
    return


def list_min_sep(g: MixedGraph, q: SepQuery) -> Iterator[frozenset]:
    """All separators Z with ``i ⊆ Z ⊆ r`` from which no node outside
    ``i`` can be dropped, without repetition.

    The query is folded into one undirected instance — augment the
    anterior-induced subgraph, delete the committed nodes, clique-bypass
    everything outside the candidate pool — after which the minimal
    separators of the instance are exactly the wanted sets minus ``i``.
    """
    x, y, i, r = resolve_query(g, q)
    ant = closure(g, x | y | i, "anteriors")
    ga = augment(induced_subgraph(g, ant))
    red = reduce_constraints(
        ga,
        anchors_x=x,
        anchors_y=y,
        i=i,
        unrestricted=ga.node_set - r - x - y,
    )
    for cut in _min_cut_stream(red, x, y):
        yield cut | i
    return
