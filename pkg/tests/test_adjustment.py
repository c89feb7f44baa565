import pytest
from hypothesis import given, settings

import golden_graphs as gg
import oracles
import strategies
from causalsep import (
    ANY,
    I_MINIMAL,
    I_MINIMUM,
    STRONG_MINIMUM,
    MixedGraph,
    SepQuery,
    dpcp,
    enumerate_adjustments,
    find_adjustment,
    pcp,
    pearl_backdoor,
    proper_backdoor_graph,
    test_adjustment,
)


X12 = frozenset({"X1", "X2"})


def test_pcp_and_dpcp_golden():
    g = gg.two_exposure_graph()
    assert pcp(g, X12, {"Y"}) == {"D1", "Y"}
    assert dpcp(g, X12, {"Y"}) == {"D1", "D2", "D3", "Y"}


def test_proper_backdoor_graph_edges():
    g = gg.two_exposure_graph()
    pbd = proper_backdoor_graph(g, X12, {"Y"})
    removed = set(g.edges()) - set(pbd.graph.edges())
    assert removed == {("X2", "->", "D1")}
    pruned = proper_backdoor_graph(g, X12, {"Y"}, prune="dpcp")
    assert set(g.edges()) - set(pruned.graph.edges()) == {
        ("X2", "->", "D1"), ("X2", "->", "D2"),
    }
    with pytest.raises(ValueError, match="prune"):
        proper_backdoor_graph(g, X12, {"Y"}, prune="all")


def test_adjustment_diabetes_example():
    g = gg.mediator_confounder_graph()
    x, y = {"education"}, {"diabetes"}
    assert not test_adjustment(g, x, y, set())
    assert not test_adjustment(g, x, y, {"mother_diabetes"})
    assert test_adjustment(g, x, y, {"mother_diabetes", "genetic_risk"})
    assert test_adjustment(g, x, y, {"income"})
    # minimality gradings
    assert test_adjustment(g, x, y, {"income"}, minimality="strong")
    assert test_adjustment(
        g, x, y, {"mother_diabetes", "genetic_risk"}, minimality="strong")
    assert not test_adjustment(
        g, x, y, {"income", "genetic_risk"}, minimality="i")


def test_adjustment_two_exposure_golden():
    g = gg.two_exposure_graph()
    assert test_adjustment(g, X12, {"Y"}, {"Z"})
    assert test_adjustment(g, X12, {"Y"}, {"Z", "V"})
    assert not test_adjustment(g, X12, {"Y"}, {"D1"})  # forbidden descendant
    assert not test_adjustment(g, X12, {"Y"}, set())
    assert test_adjustment(g, X12, {"Y"}, {"Z"}, minimality="strong")
    assert not test_adjustment(g, X12, {"Y"}, {"Z", "V"}, minimality="i")


def test_adjustment_where_backdoor_fails():
    # Z1 descends from X1 yet must be adjusted for (with Z2)
    g = gg.crossed_pairs_graph()
    x, y = X12, {"Y1", "Y2"}
    assert test_adjustment(g, x, y, {"Z1", "Z2"})
    assert not test_adjustment(g, x, y, set())
    assert pearl_backdoor(g, x, y, mode="find") is None


def test_enumerate_adjustments_golden():
    g = gg.two_exposure_graph()
    q = SepQuery.of(X12, {"Y"})
    got = list(enumerate_adjustments(g, q))
    assert got == [frozenset({"Z"}), frozenset({"Z", "V"})]
    assert list(enumerate_adjustments(g, q, minimal=True)) == [frozenset({"Z"})]


def test_find_adjustment_objectives():
    g = gg.two_exposure_graph()
    q = SepQuery.of(X12, {"Y"})
    assert find_adjustment(g, q) == {"Z"}
    assert find_adjustment(g, q, objective=I_MINIMAL) == {"Z"}
    assert find_adjustment(g, q, objective=I_MINIMUM) == {"Z"}
    assert find_adjustment(g, q, objective=STRONG_MINIMUM) == {"Z"}
    # with V forced in, {Z,V} is the only option
    q_v = SepQuery.of(X12, {"Y"}, i={"V"})
    assert find_adjustment(g, q_v) == {"Z", "V"}
    # a cost map can push the minimum around
    assert find_adjustment(
        g, q, objective=I_MINIMUM, cost={"Z": 10.0, "V": 0.1}) in (
            {"Z"}, {"Z", "V"})


def test_find_adjustment_none_cases():
    g = gg.front_door_graph()
    assert find_adjustment(g, SepQuery.of({"X"}, {"Y"}, r={"M"})) is None
    g2 = gg.no_adjustment_graph()
    assert find_adjustment(g2, SepQuery.of(X12, {"Y"})) is None
    assert list(enumerate_adjustments(g2, SepQuery.of(X12, {"Y"}))) == []


def test_find_adjustment_rejects_forbidden_i():
    g = gg.two_exposure_graph()
    with pytest.raises(ValueError, match="forbidden|descendant"):
        find_adjustment(g, SepQuery.of(X12, {"Y"}, i={"D1"}))


def test_adjustment_input_validation():
    g = gg.two_exposure_graph()
    with pytest.raises(ValueError, match="lies in X or Y"):
        test_adjustment(g, X12, {"Y"}, {"X1"})
    with pytest.raises(ValueError, match="unknown node"):
        test_adjustment(g, X12, {"Y"}, {"Q"})
    with pytest.raises(ValueError, match="minimality"):
        test_adjustment(g, X12, {"Y"}, {"Z"}, minimality="extreme")


@given(strategies.dag_queries(max_n=6))
@settings(max_examples=60, deadline=None)
def test_adjustment_matches_path_criterion(query):
    g, x, y, r = query
    pool = sorted(r - x - y)
    for bits in range(1 << min(len(pool), 6)):
        z = frozenset(v for k, v in enumerate(pool) if (bits >> k) & 1)
        assert test_adjustment(g, x, y, z) == oracles.adjustment_oracle(g, x, y, z)


@given(strategies.dag_queries(max_n=6))
@settings(max_examples=60, deadline=None)
def test_find_and_enumerate_match_brute(query):
    g, x, y, r = query
    family = oracles.adjustment_family(g, x, y, r=r)
    q = SepQuery.of(x, y, r=r)
    z = find_adjustment(g, q)
    assert (z is None) == (not family)
    if z is not None:
        assert z in family
    assert set(enumerate_adjustments(g, q)) == family
    assert set(enumerate_adjustments(g, q, minimal=True)) == (
        oracles.minimal_members(family))


# -- the classic back-door criterion ----------------------------------------


def test_pearl_backdoor_test_mode():
    g = gg.mediator_confounder_graph()
    x, y = {"education"}, {"diabetes"}
    assert pearl_backdoor(g, x, y, mode="test", z=frozenset({"income"}))
    assert not pearl_backdoor(g, x, y, mode="test", z=frozenset({"mother_diabetes"}))
    # descendants of X are never allowed
    g2 = gg.observed_confounder_triple()
    assert pearl_backdoor(g2, {"X"}, {"Y"}, mode="test", z=frozenset({"Z"}))
    g3 = MixedGraph.from_edges([("X", "->", "W"), ("X", "->", "Y"),
                                ("Z", "->", "X"), ("Z", "->", "Y")])
    assert not pearl_backdoor(g3, {"X"}, {"Y"}, mode="test",
                              z=frozenset({"Z", "W"}))


def test_pearl_backdoor_is_per_pair_for_joint_exposures():
    #  X1 -> X2, X2 -> Y, X1 -> Y: testing the pair (X2, Y) keeps X1's
    #  outgoing edges, so the trail X2 <- X1 -> Y stays open and the
    #  empty set fails -- although it passes with all X-edges removed
    g = MixedGraph.from_edges([
        ("X1", "->", "X2"), ("X2", "->", "Y"), ("X1", "->", "Y"),
    ])
    assert not pearl_backdoor(g, X12, {"Y"}, mode="test", z=frozenset())
    assert pearl_backdoor(g, X12, {"Y"}, mode="find") is None
    # the adjustment criterion is satisfiable here (empty set works)
    assert test_adjustment(g, X12, {"Y"}, set())


def test_pearl_backdoor_find_mode():
    g = gg.mediator_confounder_graph()
    z = pearl_backdoor(g, {"education"}, {"diabetes"}, mode="find")
    assert z is not None
    assert pearl_backdoor(g, {"education"}, {"diabetes"}, mode="test", z=z)
    # with the confounder unobservable no back-door set exists
    fd = gg.front_door_graph()
    assert pearl_backdoor(fd, {"X"}, {"Y"}, mode="find",
                          r=frozenset({"X", "Y", "M"})) is None


def test_pearl_backdoor_mode_validation():
    g = gg.observed_confounder_triple()
    with pytest.raises(ValueError, match="requires a candidate"):
        pearl_backdoor(g, {"X"}, {"Y"}, mode="test")
    with pytest.raises(ValueError, match="takes no candidate"):
        pearl_backdoor(g, {"X"}, {"Y"}, mode="find", z=frozenset({"Z"}))
    with pytest.raises(ValueError, match="mode"):
        pearl_backdoor(g, {"X"}, {"Y"}, mode="verify")


@given(strategies.dag_queries(max_n=6))
@settings(max_examples=40, deadline=None)
def test_backdoor_implies_adjustment(query):
    g, x, y, r = query
    pool = sorted(r - x - y)
    for bits in range(1 << min(len(pool), 5)):
        z = frozenset(v for k, v in enumerate(pool) if (bits >> k) & 1)
        if pearl_backdoor(g, x, y, mode="test", z=z):
            assert test_adjustment(g, x, y, z)
