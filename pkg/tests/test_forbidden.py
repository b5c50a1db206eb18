import itertools

import pytest

from quasichord.graphs import (
    Graph,
    canonical_form,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    enumerate_connected,
    find_induced_embedding,
    minimal_wheel,
    prism_graph,
    universal_wheel,
    verify_embedding,
)
from quasichord.forbidden import (
    built_from_closure,
    condition1_witness,
    f_witness,
    find_wheel,
    generate_family,
    lemma32_witness,
    replay_trace,
    vertex_partition,
    what4_closure,
    wheel_seed_closure,
)
from quasichord.width import (
    has_k4_minor,
    has_k4_subgraph,
    is_series_parallel,
)
from quasichord.decomposition import find_clique_cutset


# Regression constants: sizes of vertex-partition closures, cross-checked
# below against a naive closure without trace/dedup bookkeeping.
WHAT4_CLOSURE_SIZES = {5: 1, 6: 4, 7: 10, 8: 21}


# ---------------------------------------------------------------------------
# vertex partitions
# ---------------------------------------------------------------------------


def test_vertex_partition_shape():
    # split the center of a star; x keeps the split vertex's id, y is new
    star = Graph.from_edges(4, [(3, 0), (3, 1), (3, 2)])
    g = vertex_partition(star, 3, (0,), (1, 2))
    assert g.n == 5
    assert g.has_edge(3, 4)  # x-y edge
    assert sorted(g.neighbors(3)) == [0, 4]
    assert sorted(g.neighbors(4)) == [1, 2, 3]


def test_vertex_partition_rejects_bad_sides():
    star = Graph.from_edges(4, [(3, 0), (3, 1), (3, 2)])
    with pytest.raises(ValueError):
        vertex_partition(star, 3, (), (0, 1, 2))  # empty side
    with pytest.raises(ValueError):
        vertex_partition(star, 3, (0, 1), (1, 2))  # overlap
    with pytest.raises(ValueError):
        vertex_partition(star, 3, (0,), (1,))  # does not cover N(v)


def test_partition_edge_in_no_triangle():
    # x and y split N(v), so the new edge xy lies in no triangle
    for g in enumerate_connected(5):
        for v in range(g.n):
            nbrs = sorted(g.neighbors(v))
            if len(nbrs) < 2:
                continue
            child = vertex_partition(g, v, (nbrs[0],), tuple(nbrs[1:]))
            assert not child.adj[v] & child.adj[g.n] & ~(1 << v) & ~(1 << g.n)


# ---------------------------------------------------------------------------
# family generation
# ---------------------------------------------------------------------------


def test_generate_wheels():
    wheels = generate_family("wheel", 6).graphs()
    # n=5: hub meets 3 or 4 of C4; n=6: hub meets 3, 4, or 5 of C5
    assert canonical_form(minimal_wheel()) in {canonical_form(g) for g in wheels}
    assert canonical_form(universal_wheel(6)) in {canonical_form(g) for g in wheels}
    assert all(g.n in (5, 6) for g in wheels)


def test_generate_prisms():
    prisms = generate_family("prism", 8).graphs()
    forms = {canonical_form(g) for g in prisms}
    assert canonical_form(prism_graph(1, 1, 1)) in forms
    assert canonical_form(prism_graph(3, 1, 1)) in forms
    assert canonical_form(prism_graph(2, 2, 1)) in forms


def test_generate_k33():
    (g,) = generate_family("k33", 6).graphs()
    assert canonical_form(g) == canonical_form(complete_bipartite(3, 3))
    assert not generate_family("k33", 5).graphs()


def test_generate_rejects_unknown():
    with pytest.raises(ValueError):
        generate_family("moebius", 8)


# ---------------------------------------------------------------------------
# closures
# ---------------------------------------------------------------------------


def closure_naive(seed, max_n):
    """Canonical forms of everything reachable by nonempty bipartitions."""
    seen = {canonical_form(seed)}
    frontier = [seed]
    while frontier:
        nxt = []
        for g in frontier:
            if g.n >= max_n:
                continue
            for v in range(g.n):
                nbrs = sorted(g.neighbors(v))
                for r in range(1, len(nbrs)):
                    for side_a in itertools.combinations(nbrs, r):
                        side_b = tuple(u for u in nbrs if u not in side_a)
                        child = vertex_partition(g, v, side_a, side_b)
                        form = canonical_form(child)
                        if form not in seen:
                            seen.add(form)
                            nxt.append(child)
        frontier = nxt
    return seen


def test_what4_closure_is_trivial_at_5():
    catalog = what4_closure(5)
    assert len(catalog) == 1
    (g,) = catalog.graphs()
    assert canonical_form(g) == canonical_form(minimal_wheel())


def test_what4_closure_regression_sizes():
    for max_n, size in WHAT4_CLOSURE_SIZES.items():
        assert len(what4_closure(max_n)) == size


def test_what4_closure_matches_naive():
    for max_n in (6, 7, 8):
        got = {canonical_form(g) for g in what4_closure(max_n).graphs()}
        assert got == closure_naive(minimal_wheel(), max_n)


def test_w5_closure_contains_k33_and_prism():
    forms = {
        canonical_form(g)
        for g in built_from_closure([("W5", universal_wheel(5))], 6).graphs()
    }
    assert canonical_form(complete_bipartite(3, 3)) in forms
    assert canonical_form(prism_graph(1, 1, 1)) in forms


def test_closure_traces_replay(corpus6):
    for member in what4_closure(8).members:
        rebuilt = replay_trace(minimal_wheel(), member.trace)
        assert canonical_form(rebuilt) == canonical_form(member.graph)


def test_closure_members_grow_strictly():
    for member in what4_closure(8).members:
        assert member.graph.n == 5 + len(member.trace)


# ---------------------------------------------------------------------------
# wheels and family witnesses
# ---------------------------------------------------------------------------


def test_find_wheel_examples():
    rim, hub = find_wheel(universal_wheel(7))
    assert len(rim) == 6
    assert find_wheel(cycle_graph(6)) is None
    assert find_wheel(complete_graph(4)) is None
    rim, hub = find_wheel(minimal_wheel())
    assert len(rim) == 4 and hub == 4


def wheel_catalog_hit(g):
    for member in generate_family("wheel", g.n).members:
        if find_induced_embedding(member.graph, g) is not None:
            return True
    return False


def test_find_wheel_agrees_with_catalog_path(corpus7):
    for g in corpus7:
        assert (find_wheel(g) is not None) == wheel_catalog_hit(g)


def test_f_witness_examples():
    member, emb, prov = f_witness(minimal_wheel())
    assert prov.kind == "wheel" and verify_embedding(member, minimal_wheel(), emb)
    assert f_witness(cycle_graph(6)) is None
    assert f_witness(complete_graph(5)) is None
    member, emb, prov = f_witness(complete_bipartite(3, 3))
    assert verify_embedding(member, complete_bipartite(3, 3), emb)


def test_f_witness_embeddings_verify(corpus6):
    for g in corpus6:
        hit = f_witness(g)
        if hit is not None:
            member, emb, _ = hit
            assert verify_embedding(member, g, emb)


def test_condition1_witness_examples():
    # K33 is built from W5 in one hub partition
    member, emb, prov = condition1_witness(complete_bipartite(3, 3))
    assert member.n == 6 and len(prov.trace) == 1
    assert verify_embedding(member, complete_bipartite(3, 3), emb)
    assert condition1_witness(complete_graph(5)) is None
    assert condition1_witness(cycle_graph(7)) is None


def test_wheel_seed_closure_size_regression():
    assert len(wheel_seed_closure(7)) == 32


# ---------------------------------------------------------------------------
# the K4-minor-no-K4-subgraph extractor
# ---------------------------------------------------------------------------


def test_lemma32_on_k33():
    g = complete_bipartite(3, 3)
    s = lemma32_witness(g)
    sub = g.induced(sorted(s))
    assert has_k4_minor(sub)[0] and not has_k4_subgraph(sub)


def test_lemma32_preconditions_spot():
    # qualifying graphs: not series-parallel, not complete, no clique cutset
    for g in (minimal_wheel(), prism_graph(1, 1, 1), universal_wheel(6)):
        assert not is_series_parallel(g)
        assert find_clique_cutset(g) is None
        s = lemma32_witness(g)
        sub = g.induced(sorted(s))
        assert has_k4_minor(sub)[0] and not has_k4_subgraph(sub)


def test_k4_minor_without_built_k4_forces_prism_wheel_or_k33(corpus7):
    # a graph with a K4 minor either contains something built from K4, or an
    # induced prism, wheel, or K33
    k4_closure = built_from_closure([("K4", complete_graph(4))], 7)
    for g in corpus7:
        if not has_k4_minor(g)[0]:
            continue
        if any(
            find_induced_embedding(m, g) is not None
            for m in k4_closure.graphs()
            if m.n <= g.n
        ):
            continue
        hit = f_witness(g)
        assert hit is not None, canonical_form(g)
        member, emb, prov = hit
        assert prov.kind in ("wheel", "k33", "prism"), prov.kind
