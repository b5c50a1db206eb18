import itertools

import pytest

from quasichord.graphs import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    minimal_wheel,
    path_graph,
    prism_graph,
)
from quasichord.graphs import UnsupportedSizeError
from quasichord.width import (
    _elim_cost,
    decomposition_from_order,
    has_k4_minor,
    has_k4_subgraph,
    is_partial_k_tree,
    is_series_parallel,
    k4_branch_sets_bruteforce,
    treewidth,
    verify_k4_branch_sets,
)


# ---------------------------------------------------------------------------
# treewidth
# ---------------------------------------------------------------------------


def test_treewidth_examples():
    assert treewidth(complete_graph(5))[0] == 4
    assert treewidth(cycle_graph(6))[0] == 2
    assert treewidth(minimal_wheel())[0] == 3
    assert treewidth(complete_bipartite(3, 3))[0] == 3
    assert treewidth(prism_graph(1, 1, 1))[0] == 3
    assert treewidth(path_graph(4))[0] == 1


def test_treewidth_input_bounds():
    from quasichord.graphs import Graph

    with pytest.raises(ValueError):
        treewidth(Graph(0, []))
    with pytest.raises(UnsupportedSizeError):
        treewidth(path_graph(19))


def test_decomposition_validates_and_matches_width(corpus6):
    for g in corpus6:
        width, decomp = treewidth(g)
        decomp.validate(g)
        assert max(len(bag) for bag in decomp.bags) - 1 == width


def tw_naive(g):
    """Minimum over all elimination orders of the max elimination cost."""
    best = g.n
    for perm in itertools.permutations(range(g.n)):
        mx = 0
        s = 0
        pruned = False
        for v in perm:
            c = _elim_cost(g.adj, s, v)
            if c > mx:
                mx = c
                if mx >= best:
                    pruned = True
                    break
            s |= 1 << v
        if not pruned:
            best = mx
    return best


def test_treewidth_matches_factorial_oracle(corpus7):
    for g in corpus7:
        assert treewidth(g)[0] == tw_naive(g)


def test_is_partial_k_tree():
    assert is_partial_k_tree(path_graph(5), 1)
    assert not is_partial_k_tree(minimal_wheel(), 2)
    assert is_partial_k_tree(minimal_wheel(), 3)
    assert not is_partial_k_tree(complete_graph(4), 2)


def test_decomposition_from_order_peo_of_chordal():
    # eliminating a chordal graph along a PEO gives width = clique number - 1
    g = complete_graph(4).add_vertex(0b0011)  # K4 plus a vertex on an edge
    width, decomp = treewidth(g)
    assert width == 3
    order = list(range(g.n))
    decomposition_from_order(g, order).validate(g)


# ---------------------------------------------------------------------------
# series-parallel / K4 minors
# ---------------------------------------------------------------------------


def test_series_parallel_examples():
    assert is_series_parallel(cycle_graph(5))
    assert is_series_parallel(path_graph(4))
    assert not is_series_parallel(complete_graph(4))
    assert not is_series_parallel(complete_bipartite(3, 3))
    assert not is_series_parallel(prism_graph(1, 1, 1))


def test_k4_minor_witnesses():
    found, sets = has_k4_minor(complete_bipartite(3, 3))
    assert found and verify_k4_branch_sets(complete_bipartite(3, 3), sets)
    found, sets = has_k4_minor(prism_graph(2, 1, 1))
    assert found and verify_k4_branch_sets(prism_graph(2, 1, 1), sets)
    assert has_k4_minor(path_graph(6)) == (False, None)
    assert has_k4_minor(cycle_graph(8))[0] is False


def test_k4_subgraph():
    assert has_k4_subgraph(complete_graph(4))
    assert has_k4_subgraph(complete_graph(6))
    assert not has_k4_subgraph(complete_bipartite(3, 3))
    assert not has_k4_subgraph(minimal_wheel())


def test_verify_branch_sets_rejects_garbage():
    g = complete_bipartite(3, 3)
    # non-disjoint sets
    assert not verify_k4_branch_sets(g, [{0}, {0}, {1}, {2}])
    # disconnected branch set
    assert not verify_k4_branch_sets(g, [{0, 1}, {2}, {3}, {4}])


def test_three_k4_minor_implementations_agree(corpus7):
    for g in corpus7:
        sp = is_series_parallel(g)
        assert sp == (treewidth(g)[0] <= 2)
        found, sets = has_k4_minor(g)
        assert sp == (not found)
        if found:
            assert verify_k4_branch_sets(g, sets)
        brute = k4_branch_sets_bruteforce(g)
        assert found == (brute is not None)
        if brute is not None:
            assert verify_k4_branch_sets(g, brute)
