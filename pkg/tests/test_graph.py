import pytest
from hypothesis import given
from hypothesis import strategies as st

from netlang.graph import Graph, components, density, is_connected, largest_component
from conftest import small_graphs


def test_add_edge_rejects_loops_and_duplicates():
    g = Graph(3)
    assert g.add_edge(0, 1)
    assert not g.add_edge(1, 0)
    assert not g.add_edge(2, 2)
    assert g.m == 1
    with pytest.raises(IndexError):
        g.add_edge(0, 3)


def test_remove_edge():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert g.remove_edge(1, 0)
    assert not g.remove_edge(1, 0)
    assert g.m == 1 and not g.has_edge(0, 1)
    g.check_invariants()


def test_neighbors_sorted_and_edges_lexicographic():
    g = Graph.from_edges(5, [(4, 0), (2, 0), (3, 1), (0, 1)])
    assert g.neighbors(0) == [1, 2, 4]
    assert list(g.edges()) == [(0, 1), (0, 2), (0, 4), (1, 3)]
    assert g.edge_array().tolist() == [[0, 1], [0, 2], [0, 4], [1, 3]]


def test_add_node_invalidates_cache():
    g = Graph.from_edges(2, [(0, 1)])
    assert g.neighbors(0) == [1]
    v = g.add_node()
    g.add_edge(v, 0)
    assert g.neighbors(0) == [1, 2]


def test_density_and_connectivity_edge_cases():
    assert density(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])) == 1.0
    with pytest.raises(ValueError):
        density(Graph(1))
    with pytest.raises(ValueError):
        is_connected(Graph(0))
    assert is_connected(Graph(1))
    assert not is_connected(Graph(2))


def test_components_and_lcc_tie_break():
    g = Graph.from_edges(6, [(4, 5), (0, 1)])
    assert components(g) == [[0, 1], [2], [3], [4, 5]]
    assert largest_component(g) == {0, 1}


def test_subgraph_reindexes():
    g = Graph.from_edges(5, [(1, 3), (3, 4), (0, 2)])
    sub, orig = g.subgraph([4, 3, 1])
    assert orig == [1, 3, 4]
    assert list(sub.edges()) == [(0, 1), (1, 2)]


def test_csr_symmetric():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    a = g.to_csr()
    assert (a != a.T).nnz == 0
    assert a.sum() == 2 * g.m


@given(small_graphs())
def test_invariants_hold(g):
    g.check_invariants()
    assert sum(g.degrees()) == 2 * g.m
    assert sum(len(c) for c in components(g)) == g.n


@given(small_graphs(min_n=2), st.randoms(use_true_random=False))
def test_relabel_preserves_degree_multiset(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert h.m == g.m
    assert sorted(h.degrees()) == sorted(g.degrees())
    inv = [0] * g.n
    for u, p in enumerate(perm):
        inv[p] = u
    assert h.relabel(inv) == g
