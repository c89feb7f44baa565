import numpy as np
import pytest

from causalsep import (
    ExperimentConfig,
    ExperimentRow,
    mark_roles,
    random_dag,
    render_csv,
    run_experiment,
)


def _rng(seed=0):
    return np.random.Generator(np.random.PCG64(seed))


def test_random_dag_structure():
    g = random_dag(2, 1, _rng())  # p = min(1/1, 1) = 1: edge is certain
    assert list(g.edges()) == [("V1", "->", "V2")]
    g1 = random_dag(1, 3, _rng())
    assert g1.nodes == ("V1",) and g1.edge_count == 0
    with pytest.raises(ValueError, match="n must be positive"):
        random_dag(0, 1, _rng())
    with pytest.raises(ValueError, match="l must be positive"):
        random_dag(5, 0, _rng())


def test_random_dag_edge_density():
    # p = l/(n-1): about l*n/2 edges per draw
    rng = _rng(123)
    counts = [random_dag(30, 3, rng).edge_count for _ in range(200)]
    assert 40 < np.mean(counts) < 50


def test_mark_roles_extremes():
    g = random_dag(6, 2, _rng(1))
    x, y, r = mark_roles(g, 1, 0.0, _rng(2))
    assert r == frozenset(g.nodes)
    assert len(x) == len(y) == 1 and not x & y

    # p=1 hides greedily until only 2k nodes remain
    x1, y1, r1 = mark_roles(g, 1, 1.0, _rng(3))
    assert r1 == frozenset({"V5", "V6"})
    assert x1 | y1 == r1

    x2, y2, r2 = mark_roles(g, 3, 1.0, _rng(4))
    assert r2 == frozenset(g.nodes)
    assert x2 | y2 == r2 and len(x2) == len(y2) == 3

    with pytest.raises(ValueError, match="too small"):
        mark_roles(g, 4, 0.0, _rng(5))


def test_config_validation():
    good = dict(n=10, l=2, k=1)
    assert ExperimentConfig(**good).mode == "dag_ident"
    with pytest.raises(ValueError, match="unknown mode"):
        ExperimentConfig(**good, mode="pag_ident")
    with pytest.raises(ValueError, match="n must be positive"):
        ExperimentConfig(n=0, l=2)
    with pytest.raises(ValueError, match="l must be positive"):
        ExperimentConfig(n=10, l=0)
    with pytest.raises(ValueError, match="k must be positive"):
        ExperimentConfig(n=10, l=2, k=0)
    with pytest.raises(ValueError, match="at least 2k"):
        ExperimentConfig(n=5, l=2, k=3)
    with pytest.raises(ValueError, match="p_unobserved"):
        ExperimentConfig(n=10, l=2, p_unobserved=1.5)
    with pytest.raises(ValueError, match="instances"):
        ExperimentConfig(n=10, l=2, instances=0)
    with pytest.raises(ValueError, match="seed"):
        ExperimentConfig(n=10, l=2, seed=-1)


def test_run_experiment_is_deterministic():
    cfg = ExperimentConfig(n=8, l=2, k=1, instances=60, seed=3)
    a = run_experiment(cfg)
    b = run_experiment(cfg)
    assert (a.bc, a.cbc, a.cbc_plus) == (b.bc, b.cbc, b.cbc_plus)
    assert render_csv([a], timing=False) == render_csv([b], timing=False)


def test_counts_are_cumulative():
    row = run_experiment(
        ExperimentConfig(n=8, l=3, k=2, instances=80, seed=11))
    assert 0 <= row.bc <= row.cbc <= row.cbc_plus <= 80
    assert row.mag_ee is None and row.parental_total is None


def test_singleton_exposures_make_backdoor_complete():
    for seed in (0, 7):
        row = run_experiment(
            ExperimentConfig(n=9, l=2, k=1, instances=120, seed=seed,
                             p_unobserved=0.3))
        assert row.bc == row.cbc


def test_frozen_small_cell():
    row = run_experiment(
        ExperimentConfig(n=10, l=2, k=1, instances=200, seed=42))
    assert (row.bc, row.cbc, row.cbc_plus) == (172, 172, 200)


def test_mag_mode_counts():
    cfg = ExperimentConfig(n=8, l=2, k=1, instances=50, seed=5,
                           mode="mag_ident")
    row = run_experiment(cfg)
    # nothing unobserved: restricted-candidates and projected runs agree
    assert row.mag_ee == row.mag_el
    assert row.mag_ee <= row.cbc

    hidden = run_experiment(
        ExperimentConfig(n=8, l=2, k=1, instances=50, seed=5,
                         p_unobserved=0.5, mode="mag_ident"))
    assert hidden.mag_el <= hidden.mag_ee <= hidden.cbc


def test_mag_node_cap_blanks_the_projection_column():
    cfg = ExperimentConfig(n=8, l=2, k=1, instances=20, seed=5,
                           mode="mag_ident", mag_el_max_n=6)
    row = run_experiment(cfg)
    assert row.mag_el is None
    body = render_csv([row], timing=False).splitlines()[1]
    assert body.split(",")[10] == "-"


def test_csv_headers_and_layout():
    dag = run_experiment(ExperimentConfig(n=6, l=2, k=1, instances=10, seed=1))
    text = render_csv([dag])
    lines = text.splitlines()
    assert lines[0] == (
        "n,l,k,p_unobserved,instances,seed,bc,cbc,cbc_plus,t_mean_us,t_p99_us")
    cells = lines[1].split(",")
    assert cells[:6] == ["6", "2", "1", "0", "10", "1"]
    assert all("." in c for c in cells[-2:])  # timings rendered as floats
    assert text.endswith("\n")

    mag = run_experiment(
        ExperimentConfig(n=6, l=2, k=1, instances=10, seed=1, mode="mag_ident"))
    assert render_csv([mag]).splitlines()[0] == (
        "n,l,k,p_unobserved,instances,seed,bc,cbc,cbc_plus,"
        "mag_ee,mag_el,t_mean_us,t_p99_us")

    basis = run_experiment(
        ExperimentConfig(n=6, l=2, instances=10, seed=1, mode="basis_sets"))
    btext = render_csv([basis], timing=False)
    assert btext.splitlines()[0] == (
        "n,l,instances,seed,parental_total,sparse_total,"
        "reduction_pct,t_mean_us,t_p99_us")
    bcells = btext.splitlines()[1].split(",")
    assert bcells[-2:] == ["-", "-"]
    assert basis.parental_total >= basis.sparse_total >= 0
    reduction = float(bcells[6])
    assert reduction == pytest.approx(
        100.0 * (1.0 - basis.sparse_total / basis.parental_total), abs=0.01)


def test_render_csv_validation():
    with pytest.raises(ValueError, match="no rows"):
        render_csv([])
    dag = run_experiment(ExperimentConfig(n=6, l=2, k=1, instances=5, seed=1))
    basis = run_experiment(
        ExperimentConfig(n=6, l=2, instances=5, seed=1, mode="basis_sets"))
    with pytest.raises(ValueError, match="mix experiment modes"):
        render_csv([dag, basis])


def test_rows_are_plain_values():
    cfg = ExperimentConfig(n=6, l=2, k=1, instances=5, seed=1)
    row = ExperimentRow(config=cfg, bc=1, cbc=2, cbc_plus=3)
    assert row.t_mean_us == 0.0
    out = render_csv([row], timing=False)
    assert out.splitlines()[1] == "6,2,1,0,5,1,1,2,3,-,-"
