import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

import golden_graphs as gg
import strategies
from causalsep import (
    MixedGraph,
    SepQuery,
    canonical_dag,
    dag_to_mag,
    edge_visible,
    inducing_path_exists,
    mag_adjustment,
    test_amenability,
    test_sep,
    validate,
)


def test_edge_visibility_suite():
    suite = gg.visibility_suite()
    assert not edge_visible(suite["m1"], "X", "V")
    assert edge_visible(suite["m2"], "X", "V")
    assert not edge_visible(suite["m3"], "X", "V")
    assert edge_visible(suite["m4"], "X", "V")
    assert edge_visible(suite["m5"], "X1", "V")
    with pytest.raises(ValueError, match="no directed edge"):
        edge_visible(suite["m1"], "V", "X")
    with pytest.raises(ValueError, match="no directed edge"):
        edge_visible(suite["m1"], "Z", "X")


def test_edge_visible_through_bidirected_chain():
    #  D <-> C <-> X -> V -> Y  with  C -> V : the arrowhead reaches X
    #  through the spouse C (a parent of V), and D escapes V's
    #  neighbourhood, so X -> V is visible without any direct parent of X
    m = MixedGraph.from_edges([
        ("D", "<->", "C"),
        ("C", "<->", "X"),
        ("C", "->", "V"),
        ("X", "->", "V"),
        ("V", "->", "Y"),
    ])
    assert validate(m, "mag") == []
    assert edge_visible(m, "X", "V")
    assert edge_visible(m, "C", "V")


def test_amenability_suite():
    suite = gg.visibility_suite()
    assert not test_amenability(suite["m1"], {"X"}, {"Y"})
    assert test_amenability(suite["m2"], {"X"}, {"Y"})
    assert not test_amenability(suite["m3"], {"X"}, {"Y"})
    assert test_amenability(suite["m4"], {"X"}, {"Y"})
    assert test_amenability(suite["m5"], {"X1", "X2"}, {"Y"})


def test_mag_adjustment_suite_goldens():
    suite = gg.visibility_suite()
    q = SepQuery.of({"X"}, {"Y"})

    # m1: inamenable, so nothing works
    assert mag_adjustment(suite["m1"], "test", x={"X"}, y={"Y"}, z={"Z"}) is False
    assert mag_adjustment(suite["m1"], "find", q=q) is None
    assert list(mag_adjustment(suite["m1"], "enumerate", q=q)) == []

    # m2: exactly one adjustment set, {Z}
    assert mag_adjustment(suite["m2"], "test", x={"X"}, y={"Y"}, z={"Z"})
    assert not mag_adjustment(suite["m2"], "test", x={"X"}, y={"Y"}, z=set())
    assert not mag_adjustment(suite["m2"], "test", x={"X"}, y={"Y"}, z={"V"})
    assert mag_adjustment(suite["m2"], "find", q=q) == {"Z"}
    assert list(mag_adjustment(suite["m2"], "enumerate", q=q)) == [
        frozenset({"Z"})]

    # m3: inamenable again despite having the same skeleton as m2 plus one edge
    assert mag_adjustment(suite["m3"], "find", q=q) is None

    # m4: the empty set is the only adjustment set (W is a spouse collider)
    assert mag_adjustment(suite["m4"], "test", x={"X"}, y={"Y"}, z=set())
    assert not mag_adjustment(suite["m4"], "test", x={"X"}, y={"Y"}, z={"W"})
    assert list(mag_adjustment(suite["m4"], "enumerate", q=q)) == [frozenset()]

    # m5: joint exposures
    q5 = SepQuery.of({"X1", "X2"}, {"Y"})
    assert mag_adjustment(suite["m5"], "find", q=q5) == {"Z"}
    assert list(mag_adjustment(suite["m5"], "enumerate", q=q5)) == [
        frozenset({"Z"})]


def test_mag_adjustment_minimality_and_i():
    m2 = gg.visibility_suite()["m2"]
    assert mag_adjustment(m2, "test", x={"X"}, y={"Y"}, z={"Z"},
                          minimality="strong")
    assert mag_adjustment(m2, "test", x={"X"}, y={"Y"}, z={"Z"},
                          minimality="i", i={"Z"})


def test_mag_adjustment_task_validation():
    m2 = gg.visibility_suite()["m2"]
    with pytest.raises(ValueError, match="requires x, y and z"):
        mag_adjustment(m2, "test", x={"X"}, y={"Y"})
    with pytest.raises(ValueError, match="requires a query"):
        mag_adjustment(m2, "find")
    with pytest.raises(ValueError, match="requires a query"):
        mag_adjustment(m2, "enumerate")
    with pytest.raises(ValueError, match="unknown task"):
        mag_adjustment(m2, "solve", q=SepQuery.of({"X"}, {"Y"}))


def test_mag_adjustment_rejects_non_mags():
    und = MixedGraph.from_edges([("A", "--", "B"), ("B", "->", "C")])
    with pytest.raises(ValueError, match="undirected"):
        mag_adjustment(und, "test", x={"A"}, y={"C"}, z=set())
    cyc = MixedGraph.from_edges(
        [("A", "->", "B"), ("B", "->", "C"), ("C", "->", "A")])
    with pytest.raises(ValueError, match="ancestral"):
        mag_adjustment(cyc, "test", x={"A"}, y={"C"}, z=set())


# -- inducing paths ---------------------------------------------------------


def test_inducing_path_over_latents():
    g = MixedGraph.from_edges([("U", "->", "X"), ("U", "->", "Y")])
    assert inducing_path_exists(g, "X", "Y", l={"U"})
    assert not inducing_path_exists(g, "X", "Y")


def test_inducing_path_collider_anchored_by_z():
    g = MixedGraph.from_edges([("X", "->", "C"), ("Y", "->", "C")])
    assert not inducing_path_exists(g, "X", "Y")
    assert inducing_path_exists(g, "X", "Y", z={"C"})


def test_inducing_path_adjacent_and_errors():
    g = MixedGraph.from_edges([("A", "->", "B"), ("B", "->", "C")])
    assert inducing_path_exists(g, "A", "B")
    with pytest.raises(ValueError, match="must differ"):
        inducing_path_exists(g, "A", "A")
    with pytest.raises(ValueError, match="may not appear"):
        inducing_path_exists(g, "A", "C", z={"A"})
    with pytest.raises(ValueError, match="may not appear"):
        inducing_path_exists(g, "A", "C", l={"C"})


# -- projection and its inverse ---------------------------------------------


def test_dag_to_mag_goldens():
    dag, latent, expected = gg.projection_example_dag()
    m = dag_to_mag(dag, latent)
    assert set(m.edges()) == expected
    assert validate(m, "mag") == []
    # the projected X -> W2 hides the confounding through W1
    assert not edge_visible(m, "X", "W2")

    dag2, latent2, expected2 = gg.unshielded_collider_projection()
    assert set(dag_to_mag(dag2, latent2).edges()) == expected2


def test_dag_to_mag_pure_confounding():
    g = MixedGraph.from_edges([("U", "->", "X"), ("U", "->", "Y")])
    m = dag_to_mag(g, {"U"})
    assert m == MixedGraph(["X", "Y"], [("X", "<->", "Y")])


def test_dag_to_mag_shortcuts_and_errors():
    g = gg.mediator_confounder_graph()
    assert dag_to_mag(g, frozenset()) is g
    with pytest.raises(ValueError, match="selection"):
        dag_to_mag(g, frozenset(), selection={"income"})
    cyc = MixedGraph.from_edges(
        [("A", "->", "B"), ("B", "->", "C"), ("C", "->", "A")])
    with pytest.raises(ValueError, match="not a DAG"):
        dag_to_mag(cyc, {"A"})
    with pytest.raises(ValueError, match="unknown node"):
        dag_to_mag(g, {"nope"})


def test_canonical_dag_golden():
    m = MixedGraph.from_edges([("X", "<->", "Y"), ("X", "->", "W")])
    dag, latents = canonical_dag(m)
    assert latents == {"L1"}
    assert set(dag.edges()) == {
        ("L1", "->", "X"), ("L1", "->", "Y"), ("X", "->", "W")}
    assert validate(dag, "dag") == []


def test_canonical_dag_avoids_name_collisions():
    m = MixedGraph.from_edges([("L1", "<->", "L3")])
    dag, latents = canonical_dag(m)
    assert latents == {"L2"}
    assert set(dag.edges()) == {("L2", "->", "L1"), ("L2", "->", "L3")}


@given(strategies.dags(max_n=6), st.integers(min_value=0, max_value=63))
@settings(max_examples=80, deadline=None)
def test_projection_round_trips_through_canonical_dag(g, bits):
    latent = frozenset(
        v for k, v in enumerate(g.nodes) if (bits >> k) & 1)
    m = dag_to_mag(g, latent)
    assert validate(m, "mag") == []
    dag, lat2 = canonical_dag(m)
    assert dag_to_mag(dag, lat2) == m


@given(strategies.dags(max_n=6), st.integers(min_value=0, max_value=63))
@settings(max_examples=60, deadline=None)
def test_projection_preserves_observed_separation(g, bits):
    latent = frozenset(
        v for k, v in enumerate(g.nodes) if (bits >> k) & 1)
    observed = [v for v in g.nodes if v not in latent]
    if len(observed) < 2:
        return
    m = dag_to_mag(g, latent)
    x, y = observed[0], observed[1]
    rest = observed[2:]
    for k in range(len(rest) + 1):
        for zs in itertools.combinations(rest, k):
            z = frozenset(zs)
            assert test_sep(m, {x}, {y}, z) == test_sep(g, {x}, {y}, z)


@given(strategies.dag_queries(max_n=6))
@settings(max_examples=50, deadline=None)
def test_proper_backdoor_graph_of_mag_stays_ancestral(query):
    from causalsep import proper_backdoor_graph

    g, x, y, r = query
    m = dag_to_mag(g, frozenset())
    if not test_amenability(m, x, y):
        return
    pbd = proper_backdoor_graph(m, x, y)
    assert validate(pbd.graph, "ag") == []
