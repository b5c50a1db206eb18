"""Bitset-backed simple graphs: graph6 I/O, canonical forms, induced-subgraph
embedding, and exhaustive enumeration of small connected graphs.

Vertices are always 0..n-1. Adjacency is stored as one int bitmask per vertex,
which keeps neighborhood intersections cheap for the exponential searches in
the rest of the package. Hard cap n <= 64.
"""

from __future__ import annotations

from functools import lru_cache

MAX_VERTICES = 64


class Graph6Error(ValueError):
    """Malformed graph6 record; carries the byte offset of the fault."""

    def __init__(self, message, offset):
        super().__init__("%s (byte offset %d)" % (message, offset))
        self.offset = offset


class UnsupportedSizeError(ValueError):
    """Input exceeds the size an exact algorithm is meant for."""


def _bits(mask):
    """Yield set bit positions of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return mask.bit_count()


class Graph:
    """Immutable simple undirected graph on vertex ids 0..n-1."""

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n, adj):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError("vertex count %r outside 0..%d" % (n, MAX_VERTICES))
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError("adjacency has %d rows for %d vertices" % (len(adj), n))
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise ValueError("vertex %d adjacent to out-of-range vertex" % v)
            if row >> v & 1:
                raise ValueError("self-loop at vertex %d" % v)
            for u in _bits(row):
                if not adj[u] >> v & 1:
                    raise ValueError("asymmetric adjacency between %d and %d" % (u, v))
        self.n = n
        self.adj = adj
        self._hash = hash((n, adj))

    @classmethod
    def from_edges(cls, n, edges):
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop at vertex %d" % u)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge (%d, %d) out of range for n=%d" % (u, v, n))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    # -- basic queries -------------------------------------------------

    def has_edge(self, u, v):
        return bool(self.adj[u] >> v & 1)

    def degree(self, v):
        return popcount(self.adj[v])

    def neighbors(self, v):
        return list(_bits(self.adj[v]))

    def edges(self):
        for v in range(self.n):
            for u in _bits(self.adj[v] >> (v + 1) << (v + 1)):
                yield (v, u)

    @property
    def num_edges(self):
        return sum(popcount(row) for row in self.adj) // 2

    def full_mask(self):
        return (1 << self.n) - 1

    # -- derived graphs ------------------------------------------------

    def relabel(self, perm):
        """New graph where old vertex v becomes perm[v]."""
        adj = [0] * self.n
        for v, row in enumerate(self.adj):
            new_row = 0
            for u in _bits(row):
                new_row |= 1 << perm[u]
            adj[perm[v]] = new_row
        return Graph(self.n, adj)

    def induced(self, vertices):
        """Induced subgraph on `vertices`, relabeled 0..k-1 by ascending original id."""
        vs = sorted(set(vertices))
        if vs and not (0 <= vs[0] and vs[-1] < self.n):
            raise ValueError("vertex set not contained in 0..%d" % (self.n - 1))
        index = {v: i for i, v in enumerate(vs)}
        adj = [0] * len(vs)
        for v in vs:
            row = 0
            for u in _bits(self.adj[v]):
                if u in index:
                    row |= 1 << index[u]
            adj[index[v]] = row
        return Graph(len(vs), adj)

    def induced_mask(self, mask):
        return self.induced(_bits(mask))

    def add_edges(self, edges):
        adj = list(self.adj)
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop at vertex %d" % u)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.n, adj)

    def add_vertex(self, neighbor_mask):
        adj = [row | ((neighbor_mask >> v & 1) << self.n) for v, row in enumerate(self.adj)]
        adj.append(neighbor_mask)
        return Graph(self.n + 1, adj)

    # -- connectivity --------------------------------------------------

    def component_mask(self, v, allowed=None):
        """Bitmask of the component of v inside `allowed` (default: all vertices)."""
        if allowed is None:
            allowed = self.full_mask()
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for w in _bits(frontier):
                nxt |= self.adj[w]
            frontier = nxt & allowed & ~comp
            comp |= frontier
        return comp

    def component_masks(self, allowed=None):
        if allowed is None:
            allowed = self.full_mask()
        comps = []
        rest = allowed
        while rest:
            v = (rest & -rest).bit_length() - 1
            comp = self.component_mask(v, allowed)
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self):
        if self.n == 0:
            return True
        return self.component_mask(0) == self.full_mask()

    def is_clique_mask(self, mask):
        for v in _bits(mask):
            if self.adj[v] & mask != mask & ~(1 << v):
                return False
        return True

    def is_complete(self):
        return self.is_clique_mask(self.full_mask())

    # -- dunder --------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Graph(%r)" % encode_graph6(self)


# ---------------------------------------------------------------------------
# graph6 codec
# ---------------------------------------------------------------------------

def decode_graph6(text):
    """Decode a single graph6 record (one line, n <= 64)."""
    line = text.rstrip("\n")
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise Graph6Error("empty record", 0)
    data = line.encode("ascii", errors="replace")
    for off, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error("byte %r outside graph6 range" % chr(b), off)
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("8-byte vertex count implies n > 64", 1)
        if len(data) < 4:
            raise Graph6Error("truncated extended vertex count", len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        n = data[0] - 63
        pos = 1
    if n > MAX_VERTICES:
        raise Graph6Error("vertex count %d exceeds %d" % (n, MAX_VERTICES), 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise Graph6Error("truncated bit field", len(data))
    if len(data) - pos > nbytes:
        raise Graph6Error("trailing bytes after bit field", pos + nbytes)
    bits = 0
    for b in data[pos:]:
        bits = (bits << 6) | (b - 63)
    pad = 6 * nbytes - nbits
    if bits & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", len(data) - 1)
    bits >>= pad
    adj = [0] * n
    shift = nbits
    for j in range(1, n):
        for i in range(j):
            shift -= 1
            if bits >> shift & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, adj)


def encode_graph6(g):
    """Encode a Graph as a one-line graph6 string (no trailing newline)."""
    n = g.n
    if n <= 62:
        head = [n + 63]
    else:
        head = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    bits = 0
    nbits = 0
    for j in range(1, n):
        for i in range(j):
            bits = (bits << 1) | (g.adj[i] >> j & 1)
            nbits += 1
    pad = (6 - nbits % 6) % 6
    bits <<= pad
    nbits += pad
    body = []
    for k in range(nbits - 6, -6, -6):
        body.append(((bits >> k) & 63) + 63)
    return bytes(head + body).decode("ascii")


def read_graph6_lines(lines):
    """Yield (lineno, graph-or-Graph6Error) for each nonempty line."""
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield lineno, decode_graph6(line)
        except Graph6Error as exc:
            yield lineno, exc


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------

def _refine_cells(g):
    """Equitable-ish ordered partition by iterated neighbor-color signatures.

    Cell order depends only on the signatures, never on vertex labels, so
    restricting the canonical search to cell-respecting permutations is sound.
    """
    n = g.n
    colors = [0] * n
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(colors[u] for u in _bits(g.adj[v]))
            sigs.append((colors[v], tuple(nb)))
        distinct = sorted(set(sigs))
        mapping = {s: i for i, s in enumerate(distinct)}
        new_colors = [mapping[s] for s in sigs]
        if new_colors == colors:
            break
        colors = new_colors
    cells = {}
    for v in range(n):
        cells.setdefault(colors[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def _canonical_positions(g):
    """Permutation old->position minimizing the column-major adjacency string."""
    n = g.n
    if n <= 1:
        return list(range(n))
    adj = g.adj
    cells = _refine_cells(g)
    cell_of = [0] * n
    for i, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = i
    cell_sizes = [len(c) for c in cells]

    best_cols = None
    best_assign = None

    # position p gets a vertex from the cell that positions consume in order
    cell_for_pos = []
    for i, size in enumerate(cell_sizes):
        cell_for_pos.extend([i] * size)

    def rec(pos, assign, colbits, remaining):
        nonlocal best_cols, best_assign
        if pos == n:
            cols = tuple(c for _, c in assign)
            if best_cols is None or cols < best_cols:
                best_cols = cols
                best_assign = [v for v, _ in assign]
            return
        ci = cell_for_pos[pos]
        cands = [v for v in cells[ci] if remaining >> v & 1]
        mincol = min(colbits[v] for v in cands)
        # prune against the best known string at this position
        if best_cols is not None:
            prefix = tuple(c for _, c in assign) + (mincol,)
            if prefix > best_cols[: pos + 1]:
                return
        tried = []
        for v in cands:
            if colbits[v] != mincol:
                continue
            skip = False
            for w in tried:
                both = (1 << v) | (1 << w)
                if adj[v] & ~both == adj[w] & ~both:
                    skip = True  # transposing v,w is an automorphism
                    break
            if skip:
                continue
            tried.append(v)
            new_colbits = list(colbits)
            for u in _bits(remaining & ~(1 << v)):
                new_colbits[u] = (new_colbits[u] << 1) | (adj[u] >> v & 1)
            rec(pos + 1, assign + [(v, mincol)], new_colbits, remaining & ~(1 << v))

    rec(0, [], [0] * n, (1 << n) - 1)
    positions = [0] * n
    for p, v in enumerate(best_assign):
        positions[v] = p
    return positions


def canonical_relabel(g):
    return g.relabel(_canonical_positions(g))


def canonical_form(g):
    """Total-order-comparable bytes; equal exactly for isomorphic graphs."""
    return encode_graph6(canonical_relabel(g)).encode("ascii")


def are_isomorphic(g, h):
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# Induced-subgraph embedding
# ---------------------------------------------------------------------------

def find_induced_embedding(pattern, host):
    """Injective map (tuple indexed by pattern vertex) whose image induces the
    pattern in the host, or None. Backtracking with degree/adjacency pruning."""
    pn, hn = pattern.n, host.n
    if pn > hn:
        return None
    if pn == 0:
        return ()
    pdeg = [pattern.degree(v) for v in range(pn)]
    hdeg = [host.degree(v) for v in range(hn)]
    pd_sorted = sorted(pdeg, reverse=True)
    hd_sorted = sorted(hdeg, reverse=True)
    if any(p > h for p, h in zip(pd_sorted, hd_sorted)):
        return None  # no injection can satisfy the degree lower bounds
    # candidate mask per pattern degree threshold
    degmask = {}
    for d in set(pdeg):
        degmask[d] = sum(1 << v for v in range(hn) if hdeg[v] >= d)

    # order pattern vertices: max degree first, then most-assigned-neighbors
    order = []
    placed = 0
    while len(order) < pn:
        best_v, best_key = None, None
        for v in range(pn):
            if placed >> v & 1:
                continue
            key = (popcount(pattern.adj[v] & placed), pdeg[v], -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        order.append(best_v)
        placed |= 1 << best_v

    assign = [-1] * pn
    hfull = (1 << hn) - 1

    def extend(idx, used):
        if idx == pn:
            return True
        u = order[idx]
        cand = degmask[pdeg[u]] & ~used
        for w in order[:idx]:
            hw = assign[w]
            if pattern.adj[u] >> w & 1:
                cand &= host.adj[hw]
            else:
                cand &= ~host.adj[hw]
            if not cand:
                return False
        for hv in _bits(cand & hfull):
            assign[u] = hv
            if extend(idx + 1, used | (1 << hv)):
                return True
        assign[u] = -1
        return False

    if extend(0, 0):
        return tuple(assign)
    return None


def verify_embedding(pattern, host, mapping):
    """Check that `mapping` is injective and its image induces the pattern."""
    if len(mapping) != pattern.n or len(set(mapping)) != pattern.n:
        return False
    if any(not 0 <= h < host.n for h in mapping):
        return False
    for u in range(pattern.n):
        for v in range(u + 1, pattern.n):
            if pattern.has_edge(u, v) != host.has_edge(mapping[u], mapping[v]):
                return False
    return True


# ---------------------------------------------------------------------------
# Enumeration of small connected graphs
# ---------------------------------------------------------------------------

ENUM_MAX_N = 8


@lru_cache(maxsize=None)
def _connected_graphs(n):
    if n == 1:
        return (Graph(1, [0]),)
    seen = set()
    for parent in _connected_graphs(n - 1):
        for mask in range(1, 1 << (n - 1)):
            child = parent.add_vertex(mask)
            seen.add(canonical_form(child))
    return tuple(decode_graph6(cf.decode("ascii")) for cf in sorted(seen))


def enumerate_connected(n):
    """One canonical representative per isomorphism class of connected graphs
    on n vertices, in deterministic (canonical graph6) order."""
    if not 1 <= n <= ENUM_MAX_N:
        raise UnsupportedSizeError(
            "built-in enumeration supports 1 <= n <= %d; ingest larger graphs "
            "from a graph6 corpus file" % ENUM_MAX_N
        )
    return iter(_connected_graphs(n))


def connected_corpus(max_n):
    """All connected representatives with 1..max_n vertices, small first."""
    for n in range(1, max_n + 1):
        yield from enumerate_connected(n)


# ---------------------------------------------------------------------------
# Named small graphs (used across the package and its tests)
# ---------------------------------------------------------------------------

def complete_graph(n):
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def cycle_graph(n):
    if n < 3:
        raise ValueError("cycle needs >= 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(p, q):
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def universal_wheel(n):
    """W_n: rim C_{n-1} plus a hub adjacent to every rim vertex."""
    if n < 5:
        raise ValueError("universal wheel needs rim length >= 4")
    rim = cycle_graph(n - 1)
    return rim.add_vertex(rim.full_mask())


def minimal_wheel():
    """The 4-rim wheel whose hub has exactly three rim neighbors."""
    return cycle_graph(4).add_vertex(0b0111)


def prism_graph(a=1, b=1, c=1):
    """Two triangles joined by three disjoint paths of a, b, c edges."""
    if min(a, b, c) < 1:
        raise ValueError("path lengths must be >= 1")
    edges = [(0, 1), (1, 2), (2, 0)]
    n = 3
    bottoms = []
    for length in (a, b, c):
        bottoms.append(None)
        prev = len(bottoms) - 1  # corresponding top vertex index
        cur = prev
        for _ in range(length - 1):
            edges.append((cur, n))
            cur = n
            n += 1
        bottoms[-1] = cur
    top_count = n
    # the second triangle
    tri = [top_count, top_count + 1, top_count + 2]
    for i, length in enumerate((a, b, c)):
        edges.append((bottoms[i], tri[i]))
    edges += [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])]
    return Graph.from_edges(top_count + 3, edges)
