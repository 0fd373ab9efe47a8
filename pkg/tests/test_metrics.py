import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import connected_graphs, small_graphs
from netlang.errors import ConfigError, DisconnectedGraphError, InsufficientDataError
from netlang.generators import gen_complete, gen_regular_ring, gen_scale_free
from netlang.graph import Graph
from netlang.metrics import (
    CSV_COLUMNS,
    analyze,
    assortativity,
    betweenness,
    char_path_length,
    clustering_all,
    clustering_avg,
    clustering_node,
    degree_histogram,
    fit_power_law,
    fit_two_regime,
    log_binned,
    path_length_details,
    random_baselines,
    select_regime,
)

TOL = 1e-9


@settings(max_examples=150, deadline=None)
@given(connected_graphs())
def test_path_length_matches_floyd_warshall(g):
    assert char_path_length(g) == pytest.approx(oracles.mean_path_length(g), abs=TOL)


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_clustering_matches_brute_force(g):
    ref = oracles.clustering(g)
    np.testing.assert_allclose(clustering_all(g), ref, atol=TOL)
    for u in range(g.n):
        assert clustering_node(g, u) == pytest.approx(ref[u], abs=TOL)


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_betweenness_matches_path_enumeration(g):
    np.testing.assert_allclose(betweenness(g), oracles.betweenness(g), atol=TOL)


@settings(max_examples=80, deadline=None)
@given(connected_graphs(min_n=3), st.randoms(use_true_random=False))
def test_measures_invariant_under_relabeling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert clustering_avg(h) == pytest.approx(clustering_avg(g), abs=TOL)
    assert char_path_length(h) == pytest.approx(char_path_length(g), abs=TOL)
    bg, bh = betweenness(g), betweenness(h)
    for u in range(g.n):
        assert bh[perm[u]] == pytest.approx(bg[u], abs=TOL)


@settings(max_examples=80, deadline=None)
@given(small_graphs(min_n=3))
def test_assortativity_matches_pearson(g):
    r = assortativity(g)
    deg = g.degrees()
    xs = [deg[u] for u, v in g.edges()] + [deg[v] for u, v in g.edges()]
    ys = [deg[v] for u, v in g.edges()] + [deg[u] for u, v in g.edges()]
    if r is None:
        assert g.m < 2 or len(set(xs)) == 1
    else:
        assert -1 - TOL <= r <= 1 + TOL
        assert r == pytest.approx(oracles.pearson(xs, ys), abs=1e-9)


def test_complete_graph_values():
    g = gen_complete(10)
    assert clustering_avg(g) == 1.0
    assert char_path_length(g) == 1.0
    assert betweenness(g) == [0.0] * 10


def test_star_betweenness_and_assortativity():
    g = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    assert betweenness(g)[0] == 6.0  # C(4, 2) leaf pairs all pass the hub
    assert assortativity(g) == pytest.approx(-1.0)


def test_path_graph_length():
    # path on n nodes: mean distance (n + 1) / 3
    g = Graph.from_edges(10, [(i, i + 1) for i in range(9)])
    assert char_path_length(g) == pytest.approx(11 / 3)


def test_disconnected_uses_lcc_unless_strict():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    pl = path_length_details(g)
    assert pl.value == pytest.approx(4 / 3)
    assert pl.component_count == 3 and pl.lcc_fraction == pytest.approx(0.5)
    with pytest.raises(DisconnectedGraphError, match="graph has 3 components"):
        char_path_length(g, strict=True)
    with pytest.raises(DisconnectedGraphError):
        betweenness(g, strict=True)


def test_sampled_path_length_close_to_exact():
    g = gen_regular_ring(600, 10)
    exact = char_path_length(g)
    pl = path_length_details(g, sample_sources=100, seed=3)
    assert not pl.exact and pl.sources == 100
    # ring is vertex-transitive, so any source gives the exact mean
    assert pl.value == pytest.approx(exact, abs=1e-12)


def test_random_baselines_formula():
    c, l = random_baselines(1000, 10)
    assert c == 0.01
    assert l == pytest.approx(3.0)
    with pytest.raises(ConfigError):
        random_baselines(1000, 1)


def test_log_binned_integer_aligned():
    hist = {k: 1 for k in range(1, 101)}
    pos, dens = log_binned(hist, 1)
    np.testing.assert_allclose(dens, 1.0)
    assert pos[0] == 1.0 and np.all(np.diff(pos) > 0)


def test_fit_exact_power_law_exponent():
    hist = {k: 1e6 * k ** -2.5 for k in range(1, 2001)}
    fit = fit_power_law(hist, 1)
    assert fit.exponent == pytest.approx(2.5, abs=0.05)
    assert fit.r_squared > 0.999


def test_two_regime_recovers_breakpoint():
    hist = {k: 1e9 * (k ** -1.5 if k < 50 else 50 ** 1.5 * k ** -3.0) for k in range(1, 3001)}
    two = fit_two_regime(hist, 1)
    assert two.exponent_low == pytest.approx(1.5, abs=0.15)
    assert two.exponent_high == pytest.approx(3.0, abs=0.2)
    assert 25 < two.breakpoint < 100
    assert select_regime(hist).regime == "two_regime"
    single = {k: 1e9 * k ** -2.0 for k in range(1, 3001)}
    assert select_regime(single).regime == "single"


def test_ba_degree_distribution_is_single_regime():
    hist = degree_histogram(gen_scale_free(10_000, 3, 3, seed=1))
    assert select_regime(hist).regime == "single"


def test_fit_needs_support():
    with pytest.raises(InsufficientDataError, match="need at least 3"):
        fit_power_law({3: 10, 4: 2}, 1)


def test_ba_exponent_in_band():
    g = gen_scale_free(10_000, 3, 3, seed=11)
    fit = fit_power_law(degree_histogram(g))
    assert 2.4 <= fit.exponent <= 3.4


def test_report_row_shape():
    rep = analyze(gen_complete(10))
    header = rep.csv_header().split(",")
    row = rep.csv_row().split(",")
    assert tuple(header) == CSV_COLUMNS and len(row) == len(header)
    assert row[4] == "1" and row[5] == "1"
    assert "clustering C" in rep.to_text()


def test_report_for_disconnected_input_notes_lcc():
    rep = analyze(Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)]))
    assert rep.component_count == 2
    assert any("largest" in s for s in rep.notes)
    assert not math.isnan(rep.char_path_length)
