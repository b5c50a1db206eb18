"""Exact treewidth, tree decompositions, series-parallel recognition, and
K4-minor testing with branch-set certificates.

Everything here is exponential-time by design; size guards keep the inputs at
the desk scale the exhaustive harness runs at.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import Graph, UnsupportedSizeError, _bits, popcount

TREEWIDTH_MAX_N = 18


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: tuple  # frozenset of decomposed-graph vertices per tree vertex

    @property
    def width(self):
        return max(len(b) for b in self.bags) - 1

    def validate(self, g):
        """Raise ValueError unless this is a valid decomposition of g."""
        if self.tree.n != len(self.bags) or self.tree.n == 0:
            raise ValueError("tree/bag mismatch")
        if self.tree.num_edges != self.tree.n - 1 or not self.tree.is_connected():
            raise ValueError("decomposition tree is not a tree")
        covered = set()
        for bag in self.bags:
            covered |= bag
        if covered != set(range(g.n)) and g.n > 0:
            raise ValueError("bags do not cover the vertex set")
        for u, v in g.edges():
            if not any(u in bag and v in bag for bag in self.bags):
                raise ValueError("edge (%d,%d) not covered by a bag" % (u, v))
        for x in range(g.n):
            nodes = [t for t, bag in enumerate(self.bags) if x in bag]
            mask = sum(1 << t for t in nodes)
            if self.tree.component_mask(nodes[0], mask) != mask:
                raise ValueError("bags containing %d do not induce a subtree" % x)
        return True


def _elim_cost(adj, s_mask, v):
    """|{u outside S+v : u adjacent to v or connected to v through S}|."""
    comp = adj[v] & s_mask
    if comp:
        frontier = comp
        while frontier:
            nxt = 0
            for w in _bits(frontier):
                nxt |= adj[w]
            frontier = nxt & s_mask & ~comp
            comp |= frontier
    reach = adj[v]
    for w in _bits(comp):
        reach |= adj[w]
    return popcount(reach & ~s_mask & ~(1 << v))


def _elim_neighborhood(adj, s_mask, v):
    """Mask version of the cost above: the would-be higher neighborhood."""
    comp = adj[v] & s_mask
    if comp:
        frontier = comp
        while frontier:
            nxt = 0
            for w in _bits(frontier):
                nxt |= adj[w]
            frontier = nxt & s_mask & ~comp
            comp |= frontier
    reach = adj[v]
    for w in _bits(comp):
        reach |= adj[w]
    return reach & ~s_mask & ~(1 << v)


def treewidth(g):
    """Exact treewidth and a witnessing decomposition, via the subset DP over
    eliminated-vertex states. Returns (width, TreeDecomposition)."""
    n = g.n
    if n == 0:
        raise ValueError("treewidth of the empty graph is undefined")
    if n > TREEWIDTH_MAX_N:
        raise UnsupportedSizeError("exact treewidth capped at n <= %d" % TREEWIDTH_MAX_N)
    adj = g.adj
    size = 1 << n
    best = [0] * size
    for s in sorted(range(1, size), key=popcount):
        cur = None
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            prev = s ^ low
            cand = best[prev]
            cost = _elim_cost(adj, prev, v)
            if cost > cand:
                cand = cost
            if cur is None or cand < cur:
                cur = cand
        best[s] = cur
    width = best[size - 1]

    # reconstruct an elimination order achieving the optimum (last chosen first)
    order_rev = []
    s = size - 1
    while s:
        for v in _bits(s):
            prev = s ^ (1 << v)
            if max(best[prev], _elim_cost(adj, prev, v)) == best[s]:
                order_rev.append(v)
                s = prev
                break
    order = tuple(reversed(order_rev))
    decomp = decomposition_from_order(g, order)
    assert decomp.width == width
    return width, decomp


def decomposition_from_order(g, order):
    """Tree decomposition whose bags are {v} + higher fill neighborhood of v."""
    n = g.n
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    eliminated = 0
    higher = [0] * n
    for v in order:
        higher[v] = _elim_neighborhood(g.adj, eliminated, v)
        eliminated |= 1 << v
    bags = tuple(frozenset([v]) | frozenset(_bits(higher[v])) for v in range(n))
    tree_edges = []
    roots = []
    for v in range(n):
        if higher[v]:
            parent = min(_bits(higher[v]), key=lambda u: pos[u])
            tree_edges.append((v, parent))
        else:
            roots.append(v)
    for a, b in zip(roots, roots[1:]):
        tree_edges.append((a, b))
    tree = Graph.from_edges(n, tree_edges)
    return TreeDecomposition(tree=tree, bags=bags)


def is_partial_k_tree(g, k):
    """treewidth(g) <= k, with early exit instead of a full DP sweep."""
    n = g.n
    if n <= k + 1:
        return True
    if k < 0:
        return False
    adj = g.adj
    full = (1 << n) - 1
    frontier = {0}
    seen = {0}
    while frontier:
        nxt = set()
        for s in frontier:
            rest = full & ~s
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                t = s | low
                if t in seen:
                    continue
                if _elim_cost(adj, s, v) <= k:
                    if t == full:
                        return True
                    seen.add(t)
                    nxt.add(t)
        frontier = nxt
    return False


# ---------------------------------------------------------------------------
# Series-parallel recognition (multigraph reduction) and K4 minors
# ---------------------------------------------------------------------------

def _reduce_multigraph(g):
    """Run the degree-<=2 reduction on a multigraph scratch copy.

    Returns (vertex set, simple adjacency dict, branch dict) of the stuck
    remainder; empty vertex set means no K4 minor. Branch sets track which
    original vertices each surviving vertex has absorbed.
    """
    mult = {v: {} for v in range(g.n)}
    for u, v in g.edges():
        mult[u][v] = 1
        mult[v][u] = 1
    branch = {v: {v} for v in range(g.n)}

    changed = True
    while changed:
        changed = False
        # parallel edges collapse to one; they never help a K4 minor
        for v in list(mult):
            for u in mult[v]:
                if mult[v][u] > 1:
                    mult[v][u] = 1
                    changed = True
        for v in list(mult):
            deg = len(mult[v])
            if deg <= 1:
                for u in mult[v]:
                    del mult[u][v]
                del mult[v]
                del branch[v]
                changed = True
            elif deg == 2:
                u, w = mult[v]
                del mult[u][v]
                del mult[w][v]
                del mult[v]
                mult[u][w] = mult[u].get(w, 0) + 1
                mult[w][u] = mult[w].get(u, 0) + 1
                branch[u] |= branch.pop(v)
                changed = True
    return mult, branch


def is_series_parallel(g):
    """True iff g has no K4 minor (degree-<=2 multigraph reduction)."""
    mult, _ = _reduce_multigraph(g)
    return not mult


def _k4_subdivision(g):
    """Branch sets of a K4 minor found as a K4 subdivision, or None.

    Valid as a complete search because K4 is cubic, so minor containment and
    topological containment coincide.
    """
    n = g.n
    full = (1 << n) - 1
    for quad in itertools.combinations(range(n), 4):
        pairs = list(itertools.combinations(quad, 2))
        qmask = sum(1 << v for v in quad)
        paths = []

        def route(idx, used):
            if idx == len(pairs):
                return True
            a, b = pairs[idx]
            # DFS over induced paths from a to b avoiding used interiors
            target_adj = g.adj[b]

            def dfs(cur, interior, path):
                if g.adj[cur] >> b & 1:
                    paths.append(list(path) + [b])
                    if route(idx + 1, used | interior):
                        return True
                    paths.pop()
                cand = g.adj[cur] & full & ~used & ~interior & ~qmask
                for w in _bits(cand):
                    if dfs(w, interior | (1 << w), path + [w]):
                        return True
                return False

            return dfs(a, 0, [a])

        if route(0, 0):
            branch = {v: {v} for v in quad}
            for path in paths:
                a, b = path[0], path[-1]
                for w in path[1:-1]:
                    branch[a].add(w)
            return tuple(frozenset(branch[v]) for v in quad)
    return None


def has_k4_minor(g):
    """(bool, branch sets or None); branch sets are four disjoint connected
    vertex sets pairwise joined by edges."""
    mult, _ = _reduce_multigraph(g)
    if not mult:
        return False, None
    witness = _k4_subdivision(g)
    assert witness is not None, "reduction says K4 minor exists; subdivision search must find one"
    return True, witness


def has_k4_subgraph(g):
    """True iff four pairwise-adjacent vertices exist (subgraph == induced
    subgraph for complete patterns)."""
    for v in range(g.n):
        for u in _bits(g.adj[v] >> (v + 1) << (v + 1)):
            common = g.adj[v] & g.adj[u] >> (u + 1) << (u + 1)
            for w in _bits(common):
                if g.adj[w] & common >> (w + 1) << (w + 1):
                    return True
    return False


def verify_k4_branch_sets(g, sets):
    """Check a has_k4_minor certificate against g."""
    if len(sets) != 4:
        return False
    masks = [sum(1 << v for v in s) for s in sets]
    for i, m in enumerate(masks):
        if m == 0:
            return False
        v = (m & -m).bit_length() - 1
        if g.component_mask(v, m) != m:
            return False
        for mj in masks[i + 1:]:
            if m & mj:
                return False
            joined = False
            for w in _bits(m):
                if g.adj[w] & mj:
                    joined = True
                    break
            if not joined:
                return False
    return True


def k4_branch_sets_bruteforce(g, max_n=10):
    """Independent oracle: search four disjoint connected, pairwise-joined
    vertex sets directly over connected subset masks."""
    n = g.n
    if n > max_n:
        raise UnsupportedSizeError("brute-force branch-set search capped at n <= %d" % max_n)
    conn = []
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        if g.component_mask(v, mask) == mask:
            conn.append(mask)
    adj_of = {}
    for mask in conn:
        a = 0
        for w in _bits(mask):
            a |= g.adj[w]
        adj_of[mask] = a & ~mask

    def joined(a, b):
        return bool(adj_of[a] & b)

    for i, a in enumerate(conn):
        for j in range(i + 1, len(conn)):
            b = conn[j]
            if a & b or not joined(a, b):
                continue
            for k in range(j + 1, len(conn)):
                c = conn[k]
                if c & (a | b) or not joined(a, c) or not joined(b, c):
                    continue
                for m in range(k + 1, len(conn)):
                    d = conn[m]
                    if d & (a | b | c):
                        continue
                    if joined(a, d) and joined(b, d) and joined(c, d):
                        return tuple(
                            frozenset(_bits(x)) for x in (a, b, c, d)
                        )
    return None
