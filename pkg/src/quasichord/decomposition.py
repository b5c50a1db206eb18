"""Clique cutsets, clique-sum decomposition into atoms, reassembly, and
merging of per-atom chordal supergraphs.

Atoms carry injections of their vertex ids into the original graph, so a
decomposition can be reassembled (or have its atoms replaced by supergraphs)
without positional bookkeeping at the call site.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import Graph, _bits, encode_graph6, popcount
from .elimination import ContractError, maximal_cliques, verify_restricted_supergraph

ATOM_FLOOR = 2  # atoms this small are never split further


@dataclass(frozen=True)
class Atom:
    graph: Graph
    injection: tuple  # atom vertex i lives at injection[i] in the original


@dataclass(frozen=True)
class DecompositionTree:
    n_original: int
    atoms: tuple  # of Atom
    links: tuple  # of (parent_index, child_index, frozenset of original vertices)

    def atom_vertex_sets(self):
        return [frozenset(a.injection) for a in self.atoms]

    def serialize(self):
        """Human-readable indented text: atom graph6 plus glue vertex lists."""
        children = {}
        for p, c, glue in self.links:
            children.setdefault(p, []).append((c, glue))
        linked = {c for _, c, _ in self.links}
        lines = []

        def emit(idx, depth, glue):
            atom = self.atoms[idx]
            tag = "atom %d: %s  vertices=%s" % (
                idx, encode_graph6(atom.graph), list(atom.injection))
            if glue is not None:
                tag += "  glue=%s" % sorted(glue)
            lines.append("  " * depth + tag)
            for c, g in sorted(children.get(idx, [])):
                emit(c, depth + 1, g)

        for idx in range(len(self.atoms)):
            if idx not in linked:
                emit(idx, 0, None)
        return "\n".join(lines)


def _clique_in_atom(atom, glue):
    """Check glue (original ids) is a clique of the atom; returns atom mask."""
    inv = {orig: i for i, orig in enumerate(atom.injection)}
    mask = 0
    for v in glue:
        if v not in inv:
            return None
        mask |= 1 << inv[v]
    if not atom.graph.is_clique_mask(mask):
        return None
    return mask


def find_clique_cutset(g):
    """Smallest (then lexicographically least) clique whose removal increases
    the component count, with the components of g minus the clique; or None."""
    n = g.n
    base_components = len(g.component_masks())
    for size in range(1, n):
        for combo in itertools.combinations(range(n), size):
            mask = sum(1 << v for v in combo)
            if not g.is_clique_mask(mask):
                continue
            comps = g.component_masks(g.full_mask() & ~mask)
            if len(comps) > base_components:
                return (
                    frozenset(combo),
                    [frozenset(_bits(c)) for c in comps],
                )
    return None


def decompose(g):
    """Recursive clique-cutset decomposition of g into cutset-free atoms."""
    atoms = []
    links = []

    def add_subtree(graph, injection):
        """Decompose `graph` (vertices mapped by `injection`), append its atoms,
        and return the index of an atom containing any required glue later."""
        if graph.n > ATOM_FLOOR and not graph.is_connected():
            comp_masks = graph.component_masks()
            idxs = []
            for cm in comp_masks:
                verts = sorted(_bits(cm))
                sub = graph.induced(verts)
                idxs.append(add_subtree(sub, tuple(injection[v] for v in verts)))
            for other in idxs[1:]:
                links.append((idxs[0], other, frozenset()))
            return idxs[0]
        found = None if graph.n <= ATOM_FLOOR else find_clique_cutset(graph)
        if found is None:
            atoms.append(Atom(graph=graph, injection=tuple(injection)))
            return len(atoms) - 1
        cutset, comps = found
        glue = frozenset(injection[v] for v in cutset)
        idxs = []
        for comp in comps:
            verts = sorted(set(cutset) | set(comp))
            sub = graph.induced(verts)
            idxs.append(add_subtree(sub, tuple(injection[v] for v in verts)))
        # every piece contains the glue clique; link later pieces to the first
        anchors = []
        for idx in idxs:
            anchors.append(_find_atom_with(atoms, idx, glue))
        for a in anchors[1:]:
            links.append((anchors[0], a, glue))
        return anchors[0]

    if g.n:
        add_subtree(g, tuple(range(g.n)))
    return DecompositionTree(n_original=g.n, atoms=tuple(atoms), links=tuple(links))


def _find_atom_with(atoms, hint_index, glue):
    """Index of an atom containing all glue vertices; a clique survives whole
    into some atom of any clique-cutset decomposition."""
    if glue <= set(atoms[hint_index].injection):
        return hint_index
    for idx, atom in enumerate(atoms):
        if glue <= set(atom.injection):
            return idx
    raise AssertionError("no atom contains glue clique %s" % sorted(glue))


def _assemble(tree, graphs):
    """Union the given per-atom graphs (on atom vertex ids) along injections."""
    vertices = set()
    for atom in tree.atoms:
        vertices |= set(atom.injection)
    verts = sorted(vertices)
    index = {v: i for i, v in enumerate(verts)}
    edges = set()
    for atom, graph in zip(tree.atoms, graphs):
        if graph.n != atom.graph.n:
            raise ContractError("replacement graph has wrong vertex count")
        for u, v in graph.edges():
            a, b = index[atom.injection[u]], index[atom.injection[v]]
            edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(len(verts), sorted(edges))


def _check_glues(tree, graphs=None):
    for p, c, glue in tree.links:
        for idx in (p, c):
            atom = tree.atoms[idx]
            mask = _clique_in_atom(atom, glue)
            if mask is None:
                raise ContractError(
                    "glue %s is not a clique of atom %d" % (sorted(glue), idx))
            if graphs is not None:
                if not graphs[idx].is_clique_mask(mask):
                    raise ContractError(
                        "glue %s is not a clique of the supergraph of atom %d"
                        % (sorted(glue), idx))


def reassemble(tree):
    """Identify glue vertices and rebuild the clique-sum of the atoms."""
    _check_glues(tree)
    return _assemble(tree, [a.graph for a in tree.atoms])


def merge_supergraphs(tree, atom_supergraphs):
    """Reassemble with each atom replaced by a chordal supergraph of itself.

    New cliques cannot straddle a glue separator, so if each supergraph adds
    no (m+1)-clique beyond its atom, neither does the merge.
    """
    atom_supergraphs = list(atom_supergraphs)
    if len(atom_supergraphs) != len(tree.atoms):
        raise ContractError("need one supergraph per atom")
    for atom, sup in zip(tree.atoms, atom_supergraphs):
        if sup.n != atom.graph.n:
            raise ContractError("supergraph vertex count differs from atom")
        for v in range(sup.n):
            if atom.graph.adj[v] & ~sup.adj[v]:
                raise ContractError("supergraph drops an atom edge")
    _check_glues(tree, atom_supergraphs)
    return _assemble(tree, atom_supergraphs)


def _clique_tree(h):
    """Clique tree of a chordal graph h: maximal cliques plus a max-weight
    spanning tree on intersection sizes (zero-weight links join components)."""
    cliques = maximal_cliques(h)
    masks = [sum(1 << v for v in c) for c in cliques]
    m = len(cliques)
    if m == 0:
        return [], []
    cand = []
    for i in range(m):
        for j in range(i + 1, m):
            cand.append((-popcount(masks[i] & masks[j]), i, j))
    cand.sort()
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for w, i, j in cand:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
        if len(edges) == m - 1:
            break
    return cliques, edges


def extract_decomposition_from_supergraph(g, h, k):
    """Turn a (k+1)-clique chordal supergraph into a clique-sum decomposition
    whose atoms are cliques of g or partial k-trees.

    The clique tree of h is reused as a tree decomposition of g; tree edges
    whose separator is not a clique of g get contracted, and the surviving
    separators become the glue cliques.
    """
    if not verify_restricted_supergraph(g, h, k + 1):
        raise ContractError("h is not a (k+1)-clique chordal supergraph of g")
    if g.n == 0:
        return DecompositionTree(n_original=0, atoms=(), links=())
    cliques, tree_edges = _clique_tree(h)
    m = len(cliques)
    group = list(range(m))

    def find(x):
        while group[x] != group[group[x]]:
            group[x] = group[group[x]]
        while group[x] != x:
            x = group[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            group[ra] = rb

    kept = []
    for i, j in tree_edges:
        sep = set(cliques[i]) & set(cliques[j])
        sep_mask = sum(1 << v for v in sep)
        if g.is_clique_mask(sep_mask):
            kept.append((i, j, frozenset(sep)))
        else:
            union(i, j)

    groups = {}
    for i in range(m):
        groups.setdefault(find(i), set()).update(cliques[i])
    group_ids = sorted(groups)
    atom_index = {gid: idx for idx, gid in enumerate(group_ids)}
    atoms = []
    for gid in group_ids:
        verts = sorted(groups[gid])
        atoms.append(Atom(graph=g.induced(verts), injection=tuple(verts)))
    links = []
    for i, j, sep in kept:
        a, b = atom_index[find(i)], atom_index[find(j)]
        if a != b:
            links.append((a, b, sep))
    return DecompositionTree(n_original=g.n, atoms=tuple(atoms), links=tuple(links))
