"""The forbidden family: wheels, prisms, K_{3,3}, and everything built from
the minimal wheel by vertex partitions; plus the constructive extractor that
turns "not series-parallel, not a clique, no cut-clique" into an induced
subgraph with a K4 minor but no K4 subgraph.
"""

from __future__ import annotations

import itertools
import json
import os
from collections import deque
from dataclasses import dataclass, field

from .graphs import (
    Graph,
    _bits,
    canonical_form,
    complete_bipartite,
    cycle_graph,
    decode_graph6,
    encode_graph6,
    find_induced_embedding,
    minimal_wheel,
    universal_wheel,
    prism_graph,
    popcount,
)
from .decomposition import find_clique_cutset
from .width import has_k4_minor, has_k4_subgraph, is_series_parallel

FAMILY_NAMES = ("wheel", "universal_wheel", "prism", "k33", "what4")


@dataclass(frozen=True)
class FamilyMember:
    graph: Graph
    kind: str               # wheel | universal_wheel | prism | k33 | built
    seed: str = ""          # seed label for built members
    trace: tuple = ()       # ((vertex, A_tuple, B_tuple), ...) replayable steps


@dataclass
class FamilyCatalog:
    members: list = field(default_factory=list)
    _forms: set = field(default_factory=set)

    def add(self, member):
        cf = canonical_form(member.graph)
        if cf in self._forms:
            return False
        self._forms.add(cf)
        self.members.append(member)
        return True

    def graphs(self):
        return [m.graph for m in self.members]

    def __len__(self):
        return len(self.members)


def vertex_partition(g, v, side_a, side_b):
    """Replace v by adjacent x, y with N(x) = A + {y}, N(y) = B + {x}.

    (A, B) must be a partition of N(v) into two nonempty sides. x keeps id v;
    y becomes the new vertex n. Grows |V| and |E| by one each.
    """
    side_a = frozenset(side_a)
    side_b = frozenset(side_b)
    nbrs = frozenset(g.neighbors(v))
    if not side_a or not side_b or side_a & side_b or (side_a | side_b) != nbrs:
        raise ValueError("(A, B) is not a partition of N(%d)" % v)
    n = g.n
    adj = list(g.adj)
    # strip v's edges to B, rebuild them on the new vertex y
    for u in side_b:
        adj[u] &= ~(1 << v)
        adj[u] |= 1 << n
    adj[v] = sum(1 << u for u in side_a) | (1 << n)
    adj.append(sum(1 << u for u in side_b) | (1 << v))
    return Graph(n + 1, adj)


def replay_trace(seed_graph, trace):
    g = seed_graph
    for v, side_a, side_b in trace:
        g = vertex_partition(g, v, side_a, side_b)
    return g


def generate_family(family, max_n):
    """All members of the named family on <= max_n vertices, deduped."""
    if family not in FAMILY_NAMES:
        raise ValueError("unknown family %r" % family)
    if max_n > 12:
        raise ValueError("family generation capped at max_n <= 12")
    catalog = FamilyCatalog()
    if family == "what4":
        if max_n >= 5:
            catalog.add(FamilyMember(graph=minimal_wheel(), kind="what4"))
    elif family == "k33":
        if max_n >= 6:
            catalog.add(FamilyMember(graph=complete_bipartite(3, 3), kind="k33"))
    elif family == "universal_wheel":
        for n in range(5, max_n + 1):
            catalog.add(FamilyMember(graph=universal_wheel(n), kind="universal_wheel"))
    elif family == "wheel":
        for rim in range(4, max_n):
            base = cycle_graph(rim)
            for hub_mask in range(1, 1 << rim):
                if popcount(hub_mask) < 3:
                    continue
                catalog.add(FamilyMember(graph=base.add_vertex(hub_mask), kind="wheel"))
    elif family == "prism":
        for a, b, c in itertools.combinations_with_replacement(range(1, max_n - 3), 3):
            if 6 + (a - 1) + (b - 1) + (c - 1) <= max_n:
                catalog.add(FamilyMember(graph=prism_graph(a, b, c), kind="prism"))
    return catalog


# ---------------------------------------------------------------------------
# built-from closures
# ---------------------------------------------------------------------------

_closure_cache = {}


def _cache_dir():
    return os.environ.get("QUASICHORD_CACHE_DIR")


def _closure_key(seeds, max_n):
    forms = tuple(sorted(canonical_form(g) for _, g in seeds))
    return (forms, max_n)


def _disk_path(key):
    base = _cache_dir()
    if base is None:
        return None
    import hashlib

    digest = hashlib.sha256(repr(key).encode()).hexdigest()[:24]
    return os.path.join(base, "closure-%s.json" % digest)


def built_from_closure(seeds, max_n):
    """Breadth-first closure of the seeds under vertex partitions, pruned at
    max_n vertices. Each member carries a replayable trace from its seed.

    seeds: list of (label, Graph). Seeds themselves are members ("equal to or
    built from").
    """
    if max_n > 12:
        raise ValueError("closure generation capped at max_n <= 12")
    seeds = list(seeds)
    key = _closure_key(seeds, max_n)
    if key in _closure_cache:
        return _closure_cache[key]
    path = _disk_path(key)
    if path and os.path.exists(path):
        catalog = _load_closure(path, seeds)
        _closure_cache[key] = catalog
        return catalog

    catalog = FamilyCatalog()
    queue = deque()
    for label, g in seeds:
        member = FamilyMember(graph=g, kind="built", seed=label, trace=())
        if g.n <= max_n and catalog.add(member):
            queue.append(member)
    while queue:
        member = queue.popleft()
        g = member.graph
        if g.n >= max_n:
            continue
        for v in range(g.n):
            nbrs = sorted(g.neighbors(v))
            deg = len(nbrs)
            # both sides must be nonempty, so skip the two trivial masks
            for amask in range(1, (1 << deg) - 1):
                side_a = tuple(nbrs[i] for i in range(deg) if amask >> i & 1)
                side_b = tuple(nbrs[i] for i in range(deg) if not amask >> i & 1)
                child = vertex_partition(g, v, side_a, side_b)
                new = FamilyMember(
                    graph=child,
                    kind="built",
                    seed=member.seed,
                    trace=member.trace + ((v, side_a, side_b),),
                )
                if catalog.add(new):
                    queue.append(new)
    _closure_cache[key] = catalog
    if path:
        _store_closure(path, catalog)
    return catalog


def _store_closure(path, catalog):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    payload = [
        {
            "g6": encode_graph6(m.graph),
            "seed": m.seed,
            "trace": [[v, list(a), list(b)] for v, a, b in m.trace],
        }
        for m in catalog.members
    ]
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def _load_closure(path, seeds):
    with open(path) as fh:
        payload = json.load(fh)
    catalog = FamilyCatalog()
    for rec in payload:
        catalog.add(
            FamilyMember(
                graph=decode_graph6(rec["g6"]),
                kind="built",
                seed=rec["seed"],
                trace=tuple((v, tuple(a), tuple(b)) for v, a, b in rec["trace"]),
            )
        )
    return catalog


def what4_closure(max_n):
    return built_from_closure([("what4", minimal_wheel())], max_n)


def wheel_seed_closure(max_n):
    """Closure of the minimal wheel and all universal wheels up to max_n."""
    seeds = [("what4", minimal_wheel())]
    for n in range(5, max_n + 1):
        seeds.append(("W%d" % n, universal_wheel(n)))
    return built_from_closure(seeds, max_n)


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def find_wheel(g):
    """(rim tuple, hub) for an induced cycle of length >= 4 plus a vertex with
    >= 3 neighbors on it, or None. Cycles enumerated by DFS with the smallest
    cycle vertex as canonical start."""
    n = g.n
    for start in range(n):
        higher = ~((1 << (start + 1)) - 1)

        def dfs(path, path_mask):
            last = path[-1]
            if len(path) >= 4 and g.adj[last] >> start & 1:
                # induced: only consecutive path vertices may be adjacent
                ok = True
                for i, u in enumerate(path):
                    allowed = 0
                    if i > 0:
                        allowed |= 1 << path[i - 1]
                    if i < len(path) - 1:
                        allowed |= 1 << path[i + 1]
                    if i == 0:
                        allowed |= 1 << path[-1]
                    if i == len(path) - 1:
                        allowed |= 1 << path[0]
                    if g.adj[u] & path_mask & ~allowed:
                        ok = False
                        break
                if ok:
                    for hub in range(n):
                        if path_mask >> hub & 1:
                            continue
                        if popcount(g.adj[hub] & path_mask) >= 3:
                            return tuple(path), hub
            for w in _bits(g.adj[last] & higher & ~path_mask):
                # keep the path induced as it grows (no chords to earlier
                # vertices except the immediate predecessor / closing edge)
                chord = g.adj[w] & path_mask & ~(1 << last)
                if chord & ~(1 << start):
                    continue
                found = dfs(path + [w], path_mask | (1 << w))
                if found:
                    return found
            return None

        found = dfs([start], 1 << start)
        if found:
            return found
    return None


def f_witness(g):
    """Induced member of the family (K33, wheels, prisms, built-from closure
    of the minimal wheel), as (member, embedding, provenance); None iff free."""
    wheel = find_wheel(g)
    if wheel is not None:
        rim, hub = wheel
        verts = sorted(set(rim) | {hub})
        member = g.induced(verts)
        embedding = tuple(verts)
        return member, embedding, FamilyMember(graph=member, kind="wheel")
    k33 = complete_bipartite(3, 3)
    emb = find_induced_embedding(k33, g)
    if emb is not None:
        return k33, emb, FamilyMember(graph=k33, kind="k33")
    for member in generate_family("prism", min(g.n, 12)).members:
        emb = find_induced_embedding(member.graph, g)
        if emb is not None:
            return member.graph, emb, member
    for member in what4_closure(min(g.n, 12)).members:
        emb = find_induced_embedding(member.graph, g)
        if emb is not None:
            return member.graph, emb, member
    return None


def condition1_witness(g):
    """Induced subgraph equal to or built from the minimal wheel or a
    universal wheel, as (member, embedding, trace); None iff none exists."""
    catalog = wheel_seed_closure(min(g.n, 12))
    for member in sorted(catalog.members, key=lambda m: m.graph.n):
        emb = find_induced_embedding(member.graph, g)
        if emb is not None:
            return member.graph, emb, member
    return None


def _max_clique(g):
    """Lexicographically least maximum clique, as a sorted tuple."""
    best = ()
    n = g.n

    def grow(clique, cand_mask):
        nonlocal best
        if len(clique) + popcount(cand_mask) <= len(best):
            return
        if not cand_mask:
            if len(clique) > len(best):
                best = tuple(clique)
            return
        for v in _bits(cand_mask):
            grow(clique + [v], cand_mask & g.adj[v] & ~((1 << (v + 1)) - 1))
        if len(clique) > len(best):
            best = tuple(clique)

    grow([], (1 << n) - 1)
    return best


def _shortest_path(g, allowed_mask, sources, targets):
    """Deterministic BFS shortest path inside allowed_mask from any source to
    any target; returns the vertex list or None."""
    prev = {}
    queue = deque()
    for s in sorted(sources):
        if allowed_mask >> s & 1 and s not in prev:
            prev[s] = None
            queue.append(s)
    target_set = set(targets)
    while queue:
        v = queue.popleft()
        if v in target_set:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return list(reversed(path))
        for u in sorted(_bits(g.adj[v] & allowed_mask)):
            if u not in prev:
                prev[u] = v
                queue.append(u)
    return None


def lemma32_witness(g):
    """For a connected graph that is not series-parallel, not a clique, and
    has no clique cutset: a vertex set S whose induced subgraph has a K4 minor
    but no K4 subgraph. None when the preconditions fail."""
    if is_series_parallel(g) or g.is_complete():
        return None
    if find_clique_cutset(g) is not None:
        return None
    if not g.is_connected():
        # the construction works per component; find any qualifying one
        for comp in g.component_masks():
            verts = sorted(_bits(comp))
            sub = g.induced(verts)
            inner = lemma32_witness(sub)
            if inner is not None:
                return frozenset(verts[v] for v in inner)
        return None

    for s in _lemma32_candidates(g):
        sub = g.induced(sorted(s))
        if has_k4_minor(sub)[0] and not has_k4_subgraph(sub):
            return frozenset(s)
    raise AssertionError("no witness found despite satisfied preconditions")


def _lemma32_candidates(g):
    """Candidate vertex sets per the three proof cases, best choices first.

    The proof leaves several choices "arbitrary"; candidates are streamed in a
    deterministic order (shortest paths first) and the caller keeps the first
    one that verifies.
    """
    clique = _max_clique(g)
    k_mask = sum(1 << v for v in clique)
    outside = g.full_mask() & ~k_mask

    if len(clique) <= 2:
        # Case 1: no K4 subgraph anywhere, and g itself is not series-parallel
        yield frozenset(range(g.n))
        return

    # Case 2: two clique vertices with no common neighbor outside the clique
    case2 = []
    for v1, v2 in itertools.combinations(clique, 2):
        if g.adj[v1] & g.adj[v2] & outside:
            continue
        u1s = sorted(_bits(g.adj[v1] & outside))
        u2s = sorted(_bits(g.adj[v2] & outside))
        p = _shortest_path(g, outside, u1s, u2s)
        if p is None:
            continue
        case2.append((len(p), v1, v2, p))
    for _, v1, v2, p in sorted(case2, key=lambda t: t[:3]):
        for v3 in clique:
            if v3 in (v1, v2):
                continue
            u3s = sorted(_bits(g.adj[v3] & outside))
            p_prime = _shortest_path(g, outside, u3s, p)
            if p_prime is None:
                continue
            yield frozenset({v1, v2, v3} | set(p) | set(p_prime))
    if case2:
        return

    # Case 3: every pair has a common outside neighbor; shrink the clique to a
    # minimal subset with no common outside neighbor
    subset = list(clique)

    def common(vs):
        mask = outside
        for v in vs:
            mask &= g.adj[v]
        return mask

    while len(subset) > 3:
        for w in subset:
            rest = [x for x in subset if x != w]
            if not common(rest):
                subset = rest
                break
        else:
            break

    cands = []
    for a, b, c in itertools.permutations(subset, 3):
        if a > c:
            continue  # the witness is symmetric in a, c
        allowed = outside | (1 << b)
        for d in sorted(_bits(g.adj[a] & g.adj[c] & outside)):
            p = _shortest_path(g, allowed, [b], [d])
            if p is None:
                continue
            # prefer d not adjacent to b: that is what forces K4-freeness
            cands.append((g.adj[b] >> d & 1, len(p), a, b, c, d, tuple(p)))
    for _, _, a, b, c, d, p in sorted(cands):
        yield frozenset({a, c} | set(p))
