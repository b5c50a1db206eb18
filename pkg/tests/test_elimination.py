import itertools
import random

import pytest

from quasichord.graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    minimal_wheel,
    path_graph,
)
from quasichord.elimination import (
    all_mcs_orders,
    fill_in,
    find_blended,
    is_blended,
    is_chordal,
    maximal_cliques,
    mcs_order,
    supergraph_from_blended,
    verify_restricted_supergraph,
)


# ---------------------------------------------------------------------------
# fill-in
# ---------------------------------------------------------------------------


def test_fill_in_c4():
    # C4 = 0-1-2-3-0; eliminating 0 first makes its two neighbors adjacent
    c4 = cycle_graph(4)
    res = fill_in(c4, [0, 1, 2, 3])
    assert res.fill_graph.has_edge(1, 3)
    assert res.higher_nbrs[0] == frozenset({1, 3})
    assert res.higher_nbrs[1] == frozenset({2, 3})
    assert res.higher_nbrs[2] == frozenset({3})
    assert res.higher_nbrs[3] == frozenset()


def test_fill_in_c5_always_two_fill_edges():
    c5 = cycle_graph(5)
    base = sum(bin(m).count("1") for m in c5.adj) // 2
    for perm in itertools.permutations(range(5)):
        res = fill_in(c5, list(perm))
        filled = sum(bin(m).count("1") for m in res.fill_graph.adj) // 2
        assert filled - base == 2


def test_fill_in_rejects_non_permutation():
    with pytest.raises(ValueError):
        fill_in(cycle_graph(4), [0, 1, 2])
    with pytest.raises(ValueError):
        fill_in(cycle_graph(4), [0, 0, 1, 2])


def test_fill_graph_is_chordal(corpus6):
    # G_pi is chordal for every graph and every order
    rng = random.Random(11)
    for g in corpus6:
        order = list(range(g.n))
        rng.shuffle(order)
        assert is_chordal(fill_in(g, order).fill_graph)


# ---------------------------------------------------------------------------
# MCS / chordality
# ---------------------------------------------------------------------------


def chordal_naive(g):
    """Chordal iff some order has zero fill."""
    base = sum(bin(m).count("1") for m in g.adj) // 2
    for perm in itertools.permutations(range(g.n)):
        res = fill_in(g, list(perm))
        if sum(bin(m).count("1") for m in res.fill_graph.adj) // 2 == base:
            return True
    return False


def test_is_chordal_examples():
    assert is_chordal(complete_graph(4))
    assert is_chordal(path_graph(5))
    assert not is_chordal(cycle_graph(4))
    assert not is_chordal(cycle_graph(6))
    assert not is_chordal(complete_bipartite(2, 3))


def test_is_chordal_matches_factorial_oracle(corpus6):
    for g in corpus6:
        assert (is_chordal(g) is not None) == chordal_naive(g)


def test_mcs_order_is_permutation(corpus6):
    for g in corpus6:
        order = mcs_order(g)
        assert sorted(order) == list(range(g.n))


def test_all_mcs_orders_are_peos_of_chordal():
    g = complete_graph(3).add_vertex(0b011).add_vertex(0b0110)
    assert is_chordal(g) is not None
    base = sum(bin(m).count("1") for m in g.adj) // 2
    orders = all_mcs_orders(g, cap=64)
    assert orders
    for order in orders:
        res = fill_in(g, order)
        assert sum(bin(m).count("1") for m in res.fill_graph.adj) // 2 == base


def test_all_mcs_orders_respects_cap():
    assert len(all_mcs_orders(complete_graph(6), cap=10)) == 10


# ---------------------------------------------------------------------------
# blended orderings
# ---------------------------------------------------------------------------


def test_minimal_wheel_has_no_2_blended_order():
    assert find_blended(minimal_wheel(), 2) is None


def test_minimal_wheel_near_miss_order_rejected():
    # (3, 0, 1, 2, 4): eliminating 0 leaves higher neighbors {1, 2, 4},
    # a triangle, but {0, 1, 2, 4} is not complete, and the fill edge 1-2
    # would close a new K4 in the fill graph
    assert not is_blended(minimal_wheel(), [3, 0, 1, 2, 4], 2)


def test_chordal_iff_1_blended(corpus6):
    for g in corpus6:
        assert (find_blended(g, 1) is not None) == (is_chordal(g) is not None)


def test_blended_k0():
    # chordal graphs are k-blended for every k: closed higher neighborhoods
    # along a perfect elimination ordering are already complete
    assert find_blended(path_graph(4), 0) is not None
    assert find_blended(cycle_graph(4), 0) is None
    assert find_blended(cycle_graph(4), 1) is None


def blended_naive(g, k):
    for perm in itertools.permutations(range(g.n)):
        if is_blended(g, list(perm), k):
            return list(perm)
    return None


def test_find_blended_matches_factorial_oracle(corpus6):
    for g in corpus6:
        for k in range(4):
            got = find_blended(g, k)
            want = blended_naive(g, k)
            assert (got is None) == (want is None)
            if got is not None:
                assert is_blended(g, got, k)


def test_supergraph_from_blended_is_restricted():
    c6 = cycle_graph(6)
    order = find_blended(c6, 2)
    assert order is not None
    h = supergraph_from_blended(c6, order, 2)
    assert is_chordal(h)
    assert verify_restricted_supergraph(c6, h, 3)


# ---------------------------------------------------------------------------
# cliques / restricted supergraph verifier
# ---------------------------------------------------------------------------


def max_cliques_naive(g):
    out = set()
    for r in range(1, g.n + 1):
        for verts in itertools.combinations(range(g.n), r):
            mask = sum(1 << v for v in verts)
            if not g.is_clique_mask(mask):
                continue
            # maximal iff no vertex outside is adjacent to all of them
            if not any(
                all(g.has_edge(u, w) for w in verts)
                for u in range(g.n)
                if not mask >> u & 1
            ):
                out.add(frozenset(verts))
    return out


def test_maximal_cliques_matches_naive(corpus6):
    for g in corpus6:
        assert {frozenset(c) for c in maximal_cliques(g)} == max_cliques_naive(g)


def test_verify_restricted_supergraph_edges():
    c4 = cycle_graph(4)
    chord = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert verify_restricted_supergraph(c4, chord, 3)
    # K4 completion adds a 4-clique not present in C4
    assert not verify_restricted_supergraph(c4, complete_graph(4), 3)
    # not a supergraph
    assert not verify_restricted_supergraph(c4, path_graph(4), 3)
    # not chordal: H = G = C4
    assert not verify_restricted_supergraph(c4, c4, 3)
