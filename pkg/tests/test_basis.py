import pytest
from hypothesis import given, settings

import oracles
import strategies
from causalsep import (
    BasisClaim,
    MixedGraph,
    SepQuery,
    basis_stats,
    find_min_sep,
    parental_basis,
    sparse_basis,
    test_sep,
)


def _chain():
    return MixedGraph.from_edges(
        [("A", "->", "B"), ("B", "->", "C"), ("C", "->", "D")])


def test_parental_basis_chain_golden():
    assert parental_basis(_chain()) == [
        BasisClaim(i="A", j="C", z=("B",), kind="parental"),
        BasisClaim(i="A", j="D", z=("C",), kind="parental"),
        BasisClaim(i="B", j="D", z=("C",), kind="parental"),
    ]


def test_sparse_basis_chain_golden():
    g = _chain()
    claims = sparse_basis(g)
    assert [(c.i, c.j) for c in claims] == [("A", "C"), ("A", "D"), ("B", "D")]
    for c in claims:
        assert c.kind == "sparse"
        assert len(c.z) == 1
        assert test_sep(g, {c.i}, {c.j}, set(c.z))


def test_complete_dag_has_empty_basis():
    g = MixedGraph.from_edges(
        [("A", "->", "B"), ("A", "->", "C"), ("B", "->", "C")])
    assert parental_basis(g) == []
    assert sparse_basis(g) == []
    stats = basis_stats(g)
    assert stats == {
        "pairs": 0, "parental_total": 0, "sparse_total": 0,
        "reduction_pct": 0.0,
    }


def test_disconnected_pairs():
    # the parental basis conditions on Pa(j) even across components; the
    # sparse one notices the empty set already separates
    g = MixedGraph.from_edges([("A", "->", "B"), ("C", "->", "D")])
    parental = {(c.i, c.j): c.z for c in parental_basis(g)}
    assert parental == {
        ("A", "C"): (), ("B", "C"): (),
        ("A", "D"): ("C",), ("B", "D"): ("C",),
    }
    sparse = {(c.i, c.j): c.z for c in sparse_basis(g)}
    assert sparse == {
        ("A", "C"): (), ("B", "C"): (),
        ("A", "D"): (), ("B", "D"): (),
    }


def test_basis_stats_reports_savings():
    # a long chain feeding a many-parent sink: the parental claims for
    # the sink condition on all three parents, sparse ones on a single
    # chain node
    g = MixedGraph.from_edges([
        ("A1", "->", "A2"), ("A2", "->", "A3"), ("A3", "->", "A4"),
        ("A4", "->", "A5"), ("B", "->", "A5"), ("C", "->", "A5"),
    ])
    stats = basis_stats(g)
    assert set(stats) == {
        "pairs", "parental_total", "sparse_total", "reduction_pct"}
    assert stats["pairs"] == len(parental_basis(g))
    assert stats["sparse_total"] < stats["parental_total"]
    assert 0.0 < stats["reduction_pct"] < 100.0
    expected = 100.0 * (1.0 - stats["sparse_total"] / stats["parental_total"])
    assert stats["reduction_pct"] == pytest.approx(expected)


def test_basis_input_validation():
    cyc = MixedGraph.from_edges(
        [("A", "->", "B"), ("B", "->", "C"), ("C", "->", "A")])
    with pytest.raises(ValueError, match="directed cycle"):
        parental_basis(cyc)
    with pytest.raises(ValueError, match="directed cycle"):
        sparse_basis(cyc)
    mixed = MixedGraph.from_edges([("A", "->", "B"), ("C", "<->", "B")])
    with pytest.raises(ValueError, match="directed graphs only"):
        parental_basis(mixed)
    with pytest.raises(ValueError, match="directed graphs only"):
        basis_stats(mixed)


def _skeleton_distance(g, source):
    dist = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for v in g.neighbors(u):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


@given(strategies.dags(max_n=6))
@settings(max_examples=80, deadline=None)
def test_bases_cover_every_nonadjacent_pair_and_separate(g):
    parental = parental_basis(g)
    sparse = sparse_basis(g)
    assert [(c.i, c.j) for c in parental] == [(c.i, c.j) for c in sparse]
    seen = set()
    for c in parental + sparse:
        assert not g.adjacent(c.i, c.j)
        assert test_sep(g, {c.i}, {c.j}, set(c.z))
        if c.kind == "parental":
            assert c.z == tuple(sorted(g.parents(c.j)))
            seen.add(frozenset((c.i, c.j)))
    nonadjacent = {
        frozenset((u, v))
        for k, u in enumerate(g.nodes)
        for v in g.nodes[k + 1:]
        if not g.adjacent(u, v)
    }
    assert seen == nonadjacent


@given(strategies.dags(max_n=6))
@settings(max_examples=60, deadline=None)
def test_sparse_claims_respect_distance_and_are_minimal(g):
    for c in sparse_basis(g):
        dist = _skeleton_distance(g, c.j)
        d_ij = dist.get(c.i)
        pool = frozenset(
            v for v, d in dist.items()
            if d_ij is None or d < d_ij)
        assert set(c.z) <= pool - {c.i, c.j}
        family = oracles.sep_family(g, {c.i}, {c.j}, r=pool - {c.i, c.j})
        assert frozenset(c.z) in oracles.minimal_members(family)


@given(strategies.dags(max_n=7))
@settings(max_examples=60, deadline=None)
def test_sparse_claims_match_pool_restricted_min_separator(g):
    # the claims must coincide with the general-purpose minimal-separator
    # search restricted to the same distance pool
    for c in sparse_basis(g):
        dist = _skeleton_distance(g, c.j)
        d_ij = dist.get(c.i)
        pool = frozenset(
            v for v, d in dist.items()
            if d_ij is None or d < d_ij)
        ref = find_min_sep(g, SepQuery.of((c.i,), (c.j,), r=pool))
        assert frozenset(c.z) == ref
