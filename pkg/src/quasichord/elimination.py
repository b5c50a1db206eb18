"""Fill-in graphs, chordality, and blended elimination orderings.

A k-blended ordering is one where every vertex's higher neighborhood in the
fill-in graph is either complete in the *original* graph or has at most k
members. Chordal graphs are exactly the 1-blended (and 0-blended) case.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, UnsupportedSizeError, _bits, popcount
from .width import _elim_neighborhood

FIND_BLENDED_MAX_N = 20


class ContractError(ValueError):
    """A documented precondition of an operation was violated."""


@dataclass(frozen=True)
class FillInResult:
    fill_graph: Graph
    higher_nbrs: tuple  # frozenset per vertex id
    order: tuple


def _check_permutation(g, order):
    if sorted(order) != list(range(g.n)):
        raise ValueError("ordering %r is not a permutation of 0..%d" % (order, g.n - 1))


def fill_in(g, order):
    """The iterative fill-in construction: process vertices in order, completing
    each one's later neighborhood."""
    order = tuple(order)
    _check_permutation(g, order)
    n = g.n
    adj = list(g.adj)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    later = [0] * n
    for v in range(n):
        later[v] = sum(1 << u for u in range(n) if pos[u] > pos[v])
    for v in order:
        nb = adj[v] & later[v]
        for w in _bits(nb):
            adj[w] |= nb & ~(1 << w)
    fill = Graph(n, adj)
    higher = tuple(frozenset(_bits(adj[v] & later[v])) for v in range(n))
    return FillInResult(fill_graph=fill, higher_nbrs=higher, order=order)


def mcs_order(g, rng=None):
    """Maximum cardinality search; returns a candidate perfect elimination
    ordering (reversed visit order). Ties broken by smallest id, or randomly
    when an rng is supplied."""
    n = g.n
    weight = [0] * n
    visited = 0
    visit_seq = []
    for _ in range(n):
        best = -1
        cands = []
        for v in range(n):
            if visited >> v & 1:
                continue
            if weight[v] > best:
                best = weight[v]
                cands = [v]
            elif weight[v] == best:
                cands.append(v)
        v = cands[0] if rng is None else rng.choice(cands)
        visit_seq.append(v)
        visited |= 1 << v
        for u in _bits(g.adj[v] & ~visited):
            weight[u] += 1
    return tuple(reversed(visit_seq))


def all_mcs_orders(g, cap=64):
    """Every ordering MCS can produce under some tie-breaking, up to `cap`."""
    n = g.n
    out = []

    def rec(visited, weight, seq):
        if len(out) >= cap:
            return
        if len(seq) == n:
            out.append(tuple(reversed(seq)))
            return
        best = max(weight[v] for v in range(n) if not visited >> v & 1)
        for v in range(n):
            if visited >> v & 1 or weight[v] != best:
                continue
            new_weight = list(weight)
            for u in _bits(g.adj[v] & ~(visited | (1 << v))):
                new_weight[u] += 1
            rec(visited | (1 << v), new_weight, seq + [v])

    rec(0, [0] * n, [])
    return out


def is_chordal(g):
    """A perfect elimination ordering of g, or None. MCS ordering verified by
    fill_in producing zero fill edges."""
    order = mcs_order(g)
    result = fill_in(g, order)
    if result.fill_graph == g:
        return order
    return None


def _complete_in(g, mask):
    for v in _bits(mask):
        if g.adj[v] & mask != mask & ~(1 << v):
            return False
    return True


def is_blended(g, order, k):
    """True iff for every vertex, {v} + its higher neighborhood in the fill
    graph is complete in g, or the neighborhood has size <= k.

    Completeness is demanded of the closed set in the *original* graph: the
    open reading would hand the minimal wheel a 2-blended ordering whose fill
    graph gains a fresh K4, collapsing the equivalence this package exists to
    verify.
    """
    result = fill_in(g, order)
    for v in range(g.n):
        nb = result.higher_nbrs[v]
        if len(nb) <= k:
            continue
        mask = sum(1 << u for u in nb) | (1 << v)
        if not _complete_in(g, mask):
            return False
    return True


def find_blended(g, k):
    """Lexicographically least k-blended ordering, or None.

    DFS over eliminated-vertex prefixes; the per-step neighborhood of v given
    predecessor set S is {u outside S+v : u adjacent to v or connected to v
    through S}, which matches the fill-in higher neighborhood.
    """
    n = g.n
    if n == 0:
        return ()
    if n > FIND_BLENDED_MAX_N:
        raise UnsupportedSizeError("find_blended capped at n <= %d" % FIND_BLENDED_MAX_N)
    adj = g.adj
    full = (1 << n) - 1
    dead = set()

    def step_ok(s_mask, v):
        nb = _elim_neighborhood(adj, s_mask, v)
        if popcount(nb) <= k:
            return True
        return _complete_in(g, nb | (1 << v))

    order = []

    def dfs(s_mask):
        if s_mask == full:
            return True
        if s_mask in dead:
            return False
        for v in range(n):
            bit = 1 << v
            if s_mask & bit:
                continue
            if step_ok(s_mask, v) and dfs(s_mask | bit):
                order.append(v)
                return True
        dead.add(s_mask)
        return False

    if dfs(0):
        return tuple(reversed(order))
    return None


def supergraph_from_blended(g, order, k):
    """The fill graph of a k-blended ordering: a chordal supergraph adding no
    (k+2)-clique beyond g."""
    if not is_blended(g, order, k):
        raise ContractError("ordering is not %d-blended for this graph" % k)
    return fill_in(g, order).fill_graph


def maximal_cliques(g):
    """Bron-Kerbosch with pivoting; deterministic output order."""
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = max(_bits(pivot_pool), key=lambda u: popcount(g.adj[u] & p))
        for v in _bits(p & ~g.adj[pivot]):
            bit = 1 << v
            bk(r | bit, p & g.adj[v], x & g.adj[v])
            p &= ~bit
            x |= bit

    if g.n:
        bk(0, g.full_mask(), 0)
    return sorted(tuple(_bits(m)) for m in out)


def verify_restricted_supergraph(g, h, m):
    """True iff h is an m-clique chordal supergraph of g: same vertices, edges
    a superset, chordal, and no (m+1)-clique of h outside g. It suffices to
    demand that each maximal clique of h with >= m+1 vertices be a clique of g."""
    if g.n != h.n:
        raise ValueError("vertex sets differ (%d vs %d vertices)" % (g.n, h.n))
    for v in range(g.n):
        if g.adj[v] & ~h.adj[v]:
            return False
    if is_chordal(h) is None:
        return False
    for clique in maximal_cliques(h):
        if len(clique) >= m + 1:
            mask = sum(1 << v for v in clique)
            if not g.is_clique_mask(mask):
                return False
    return True
