"""The characterization predicates and their machine-checkable certificates.

Six conditions for the base equivalence (C1, C2, Calpha, CA, CB, C3) and
three parameterized ones (CAk, CBk, C3k). Each check returns a Verdict; every
certificate can be re-checked from primitives via verify_certificate.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .graphs import verify_embedding
from .width import has_k4_subgraph, is_partial_k_tree, is_series_parallel
from .elimination import (
    find_blended,
    is_blended,
    is_chordal,
    supergraph_from_blended,
    verify_restricted_supergraph,
)
from .decomposition import decompose, find_clique_cutset, reassemble
from .forbidden import (
    condition1_witness,
    f_witness,
    find_wheel,
    replay_trace,
    minimal_wheel,
    universal_wheel,
)
from .graphs import are_isomorphic, complete_bipartite

CHECK2_MAX_N = 12

BASE_CONDITIONS = ("C1", "C2", "Calpha", "CA", "CB", "C3")
PARAM_CONDITIONS = ("CAk", "CBk", "C3k")


@dataclass(frozen=True)
class Verdict:
    condition: str
    answer: bool
    certificate: dict  # condition-specific; {"kind": "exhaustion"} when none
    cost: float        # elapsed seconds


def _verdict(condition, answer, certificate, started):
    return Verdict(
        condition=condition,
        answer=answer,
        certificate=certificate,
        cost=time.perf_counter() - started,
    )


def _member_certificate(member_graph, embedding, provenance):
    return {
        "kind": "family_member",
        "member": member_graph,
        "embedding": tuple(embedding),
        "provenance": provenance,
    }


def check_1(g):
    """No induced subgraph equal to or built from the minimal wheel or a
    universal wheel."""
    started = time.perf_counter()
    found = condition1_witness(g)
    if found is None:
        return _verdict("C1", True, {"kind": "exhaustion"}, started)
    member, embedding, provenance = found
    return _verdict("C1", False, _member_certificate(member, embedding, provenance), started)


def check_2(g):
    """Every induced subgraph is series-parallel or contains a K4 subgraph."""
    started = time.perf_counter()
    n = g.n
    if n > CHECK2_MAX_N:
        raise ValueError("check_2 subset scan capped at n <= %d" % CHECK2_MAX_N)
    k4_masks = []
    for quad in itertools.combinations(range(n), 4):
        mask = sum(1 << v for v in quad)
        if g.is_clique_mask(mask):
            k4_masks.append(mask)
    for size in range(4, n + 1):
        for combo in itertools.combinations(range(n), size):
            mask = sum(1 << v for v in combo)
            if any(km & mask == km for km in k4_masks):
                continue  # contains a K4 subgraph; condition holds here
            if not is_series_parallel(g.induced_mask(mask)):
                cert = {"kind": "bad_subset", "vertices": frozenset(combo)}
                return _verdict("C2", False, cert, started)
    return _verdict("C2", True, {"kind": "exhaustion"}, started)


def check_alpha(g):
    """No induced wheel, prism, K33, or graph built from the minimal wheel."""
    started = time.perf_counter()
    found = f_witness(g)
    if found is None:
        return _verdict("Calpha", True, {"kind": "exhaustion"}, started)
    member, embedding, provenance = found
    return _verdict(
        "Calpha", False, _member_certificate(member, embedding, provenance), started)


def _atom_labels(atom_graph, k):
    """(label or None) for the parameterized clique-sum condition."""
    if atom_graph.is_complete():
        return "clique"
    if is_partial_k_tree(atom_graph, k):
        return "partial_k_tree"
    return None


def _atom_labels_base(atom_graph):
    if is_chordal(atom_graph) is not None:
        return "chordal"
    if is_series_parallel(atom_graph):
        return "series_parallel"
    return None


def _check_cliquesum(g, condition, label_fn, k, started):
    tree = decompose(g)
    labels = []
    for idx, atom in enumerate(tree.atoms):
        label = label_fn(atom.graph)
        if label is None:
            cert = {"kind": "stuck_atom", "tree": tree, "atom_index": idx, "k": k}
            return _verdict(condition, False, cert, started)
        labels.append(label)
    cert = {"kind": "decomposition", "tree": tree, "labels": tuple(labels), "k": k}
    return _verdict(condition, True, cert, started)


def check_A(g):
    """Clique-sum of chordal and series-parallel graphs."""
    started = time.perf_counter()
    return _check_cliquesum(g, "CA", _atom_labels_base, None, started)


def check_Ak(g, k):
    """Clique-sum of cliques and partial k-trees."""
    started = time.perf_counter()
    return _check_cliquesum(g, "CAk", lambda a: _atom_labels(a, k), k, started)


def check_B(g):
    """Mixed elimination ordering, read as 2-blended."""
    return _check_blended(g, "CB", 2)


def check_Bk(g, k):
    return _check_blended(g, "CBk", k)


def _check_blended(g, condition, k):
    started = time.perf_counter()
    order = find_blended(g, k)
    if order is None:
        return _verdict(condition, False, {"kind": "exhaustion"}, started)
    cert = {"kind": "blended_ordering", "order": order, "k": k}
    return _verdict(condition, True, cert, started)


def check_3(g):
    """Chordal supergraph adding no K4 beyond g (the k = 2 instance)."""
    return _check_supergraph(g, "C3", 2)


def check_3k(g, k):
    return _check_supergraph(g, "C3k", k)


def _check_supergraph(g, condition, k):
    started = time.perf_counter()
    order = find_blended(g, k)
    if order is None:
        return _verdict(condition, False, {"kind": "exhaustion"}, started)
    h = supergraph_from_blended(g, order, k)
    cert = {"kind": "restricted_supergraph", "supergraph": h, "k": k}
    return _verdict(condition, True, cert, started)


# ---------------------------------------------------------------------------
# certificate verification
# ---------------------------------------------------------------------------

def _verify_member_provenance(member, provenance):
    """Re-check that the claimed family member really is one."""
    kind = provenance.kind
    if kind in ("wheel", "universal_wheel", "what4"):
        return find_wheel(member) is not None
    if kind == "k33":
        return are_isomorphic(member, complete_bipartite(3, 3))
    if kind == "prism":
        # two triangles joined by disjoint paths: degree sequence 3,3,3,3,2...
        degs = sorted(member.degree(v) for v in range(member.n))
        return degs[-6:] == [3] * 6 and all(d == 2 for d in degs[:-6])
    if kind == "built":
        seeds = {"what4": minimal_wheel()}
        for n in range(5, member.n + 1):
            seeds["W%d" % n] = universal_wheel(n)
        if provenance.seed not in seeds:
            return False
        replayed = replay_trace(seeds[provenance.seed], provenance.trace)
        return replayed == member
    return False


def verify_certificate(g, verdict):
    """Re-check a Verdict's certificate against g using primitives only."""
    cert = verdict.certificate
    kind = cert.get("kind")
    if kind == "exhaustion":
        return True
    if kind == "family_member":
        member = cert["member"]
        if not verify_embedding(member, g, cert["embedding"]):
            return False
        return _verify_member_provenance(member, cert["provenance"])
    if kind == "bad_subset":
        sub = g.induced(sorted(cert["vertices"]))
        return not is_series_parallel(sub) and not has_k4_subgraph(sub)
    if kind == "decomposition":
        tree = cert["tree"]
        if not are_isomorphic(reassemble(tree), g):
            return False
        for atom, label in zip(tree.atoms, cert["labels"]):
            if not _atom_label_holds(atom.graph, label, cert["k"]):
                return False
            if not _atom_is_induced(g, atom):
                return False
        return True
    if kind == "stuck_atom":
        tree = cert["tree"]
        atom = tree.atoms[cert["atom_index"]]
        if not _atom_is_induced(g, atom):
            return False
        if atom.graph.n > 2 and find_clique_cutset(atom.graph) is not None:
            return False
        if cert["k"] is None:
            return _atom_labels_base(atom.graph) is None
        return _atom_labels(atom.graph, cert["k"]) is None
    if kind == "blended_ordering":
        return is_blended(g, cert["order"], cert["k"])
    if kind == "restricted_supergraph":
        return verify_restricted_supergraph(g, cert["supergraph"], cert["k"] + 1)
    return False


def _atom_label_holds(atom_graph, label, k):
    if label == "chordal":
        return is_chordal(atom_graph) is not None
    if label == "series_parallel":
        return is_series_parallel(atom_graph)
    if label == "clique":
        return atom_graph.is_complete()
    if label == "partial_k_tree":
        return k is not None and is_partial_k_tree(atom_graph, k)
    return False


def _atom_is_induced(g, atom):
    return g.induced(atom.injection) == atom.graph
