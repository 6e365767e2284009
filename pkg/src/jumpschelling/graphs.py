"""Undirected simple graphs on dense integer nodes with CSR adjacency."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Graphs at or below this edge count keep a Python edge set for O(1)
# membership tests; larger ones fall back to per-row binary search.
_EDGE_SET_LIMIT = 250_000

# Chunk size (in neighbor entries) for vectorized BFS gathers, keeps peak
# memory flat on graphs with ~1e8 edges.
_GATHER_CHUNK = 5_000_000


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; nodes are 0..n-1, adjacency rows sorted."""

    n: int
    offsets: np.ndarray
    nbrs: np.ndarray
    _edge_set: frozenset | None = field(default=None, repr=False, compare=False)

    # -- construction -------------------------------------------------

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        """Build from an iterable of (u, v) pairs; loops and duplicates are rejected."""
        if n < 1:
            raise ValueError("graph needs at least one node")
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop edge ({u},{v}) rejected")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u},{v}) rejected")
            seen.add(key)
        deg = np.zeros(n, dtype=np.int64)
        for u, v in seen:
            deg[u] += 1
            deg[v] += 1
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=offsets[1:])
        nbrs = np.zeros(offsets[-1], dtype=np.int32)
        fill = offsets[:-1].copy()
        for u, v in seen:
            nbrs[fill[u]] = v
            fill[u] += 1
            nbrs[fill[v]] = u
            fill[v] += 1
        for u in range(n):
            nbrs[offsets[u]:offsets[u + 1]].sort()
        edge_set = frozenset(seen) if len(seen) <= _EDGE_SET_LIMIT else None
        return Graph(n, offsets, nbrs, edge_set)

    @staticmethod
    def from_csr(n: int, offsets: np.ndarray, nbrs: np.ndarray,
                 validate: bool = True) -> "Graph":
        """Adopt prebuilt CSR arrays (rows must be sorted, symmetric, loop-free)."""
        offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        nbrs = np.ascontiguousarray(nbrs, dtype=np.int32)
        if len(offsets) != n + 1 or offsets[0] != 0 or offsets[-1] != len(nbrs):
            raise ValueError("malformed CSR offsets")
        if validate:
            _validate_csr(n, offsets, nbrs)
        edge_set = None
        if len(nbrs) // 2 <= _EDGE_SET_LIMIT:
            edge_set = frozenset(
                (u, int(v))
                for u in range(n)
                for v in nbrs[offsets[u]:offsets[u + 1]]
                if u < v
            )
        return Graph(n, offsets, nbrs, edge_set)

    # -- basic queries -------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.nbrs) // 2

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def min_degree(self) -> int:
        return int(self.degrees().min()) if self.n else 0

    def is_regular(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if len(degs) == 0:
            return True
        if d is None:
            d = int(degs[0])
        return bool((degs == d).all())

    def neighbors(self, v: int) -> np.ndarray:
        return self.nbrs[self.offsets[v]:self.offsets[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        if self._edge_set is not None:
            key = (u, v) if u < v else (v, u)
            return key in self._edge_set
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    def edges(self):
        """Yield each edge once as (u, v) with u < v."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < int(v):
                    yield (u, int(v))

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return bool(self._reach_count(0) == self.n)

    def _reach_count(self, root: int) -> int:
        visited = np.zeros(self.n, dtype=bool)
        visited[root] = True
        frontier = np.array([root], dtype=np.int64)
        count = 1
        while frontier.size:
            nxt_parts = []
            for chunk in _gather_rows(self.offsets, self.nbrs, frontier):
                fresh = chunk[~visited[chunk]]
                if fresh.size:
                    visited[fresh] = True
                    nxt_parts.append(np.unique(fresh))
            if not nxt_parts:
                break
            frontier = np.unique(np.concatenate(nxt_parts))
            count = int(visited.sum())
        return int(visited.sum())

    def bfs_layers(self, roots) -> np.ndarray:
        """Distance of every node to the root set (-1 when unreachable)."""
        dist = np.full(self.n, -1, dtype=np.int64)
        frontier = np.array(sorted(set(int(r) for r in roots)), dtype=np.int64)
        dist[frontier] = 0
        level = 0
        while frontier.size:
            level += 1
            nxt_parts = []
            for chunk in _gather_rows(self.offsets, self.nbrs, frontier):
                fresh = chunk[dist[chunk] < 0]
                if fresh.size:
                    dist[fresh] = level
                    nxt_parts.append(np.unique(fresh))
            frontier = (np.unique(np.concatenate(nxt_parts))
                        if nxt_parts else np.array([], dtype=np.int64))
        return dist

    def two_coloring(self) -> tuple[list[int], list[int]] | None:
        """Bipartition classes, or None if an odd cycle exists."""
        dist = self.bfs_layers([0])
        if (dist < 0).any():
            raise ValueError("two_coloring requires a connected graph")
        side = dist % 2
        for u, v in self.edges():
            if side[u] == side[v]:
                return None
        part0 = [v for v in range(self.n) if side[v] == 0]
        part1 = [v for v in range(self.n) if side[v] == 1]
        return part0, part1

    def without_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ValueError(f"edge ({u},{v}) not present")
        key = (u, v) if u < v else (v, u)
        return Graph.from_edges(self.n, (e for e in self.edges() if e != key))


def _validate_csr(n, offsets, nbrs):
    for u in range(n):
        row = nbrs[offsets[u]:offsets[u + 1]]
        if len(row) == 0:
            continue
        if (np.diff(row) <= 0).any():
            raise ValueError(f"row {u} not strictly sorted")
        if row[0] < 0 or row[-1] >= n or (row == u).any():
            raise ValueError(f"row {u} has out-of-range or loop entries")
    # symmetry: the multiset of (u,v) must equal the multiset of (v,u)
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(offsets))
    fwd = src * n + nbrs
    rev = nbrs.astype(np.int64) * n + src
    if not np.array_equal(np.sort(fwd), np.sort(rev)):
        raise ValueError("adjacency not symmetric")


def _gather_rows(offsets, nbrs, nodes):
    """Yield the concatenated neighbor lists of `nodes` in bounded chunks."""
    counts = offsets[nodes + 1] - offsets[nodes]
    bounds = np.cumsum(counts)
    start = 0
    while start < len(nodes):
        stop = int(np.searchsorted(bounds, (bounds[start - 1] if start else 0)
                                   + _GATHER_CHUNK)) + 1
        stop = min(max(stop, start + 1), len(nodes))
        sel = nodes[start:stop]
        cnt = counts[start:stop]
        total = int(cnt.sum())
        if total:
            idx = np.repeat(offsets[sel], cnt) + _segment_ranges(cnt, total)
            yield nbrs[idx]
        start = stop


def _segment_ranges(counts, total):
    # [0..c0-1, 0..c1-1, ...] without a Python loop
    ends = np.cumsum(counts)
    starts = ends - counts
    return np.arange(total, dtype=np.int64) - np.repeat(starts, counts)


# -- builders ----------------------------------------------------------


def build_ring(n: int) -> Graph:
    """Cycle on n >= 3 nodes."""
    if n < 3:
        raise ValueError("ring needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def build_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def build_star(leaves: int) -> Graph:
    """Center node 0 adjacent to `leaves` degree-one nodes."""
    if leaves < 1:
        raise ValueError("star needs at least one leaf")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def build_clique(n: int) -> Graph:
    if n < 1:
        raise ValueError("clique needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def build_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one node")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def build_circulant(n: int, offsets) -> Graph:
    """Circulant graph: i ~ (i + o) mod n for each offset o."""
    offs = sorted(set(int(o) for o in offsets))
    if not offs or offs[0] < 1 or offs[-1] > n // 2:
        raise ValueError("offsets must lie in 1..n//2")
    edges = set()
    for o in offs:
        for i in range(n):
            j = (i + o) % n
            edges.add((min(i, j), max(i, j)))
    return Graph.from_edges(n, edges)


def build_from_edge_list(n: int, edges) -> Graph:
    return Graph.from_edges(n, edges)


def parse_edge_list_text(text: str) -> Graph:
    """Parse the "n m" header plus one "u v" line per edge."""
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty edge-list text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("header must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph.from_edges(n, edges)


def format_edge_list_text(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- independent sets --------------------------------------------------

DEFAULT_MIS_CAP = 64


def independence_number(g: Graph, cap: int = DEFAULT_MIS_CAP) -> int:
    """Exact maximum independent set size (branch and bound)."""
    return len(maximum_independent_set(g, cap))


def maximum_independent_set(g: Graph, cap: int = DEFAULT_MIS_CAP) -> list[int]:
    """One maximum independent set, found by branch and bound.

    Bounds come from greedy clique covers; nodes are bitmask encoded, so
    the solver refuses graphs larger than `cap` (default 64).
    """
    if g.n > cap:
        raise ValueError(f"graph has {g.n} nodes, exceeding the {cap}-node cap")
    adj = [0] * g.n
    for u in range(g.n):
        for v in g.neighbors(u):
            adj[u] |= 1 << int(v)
    full = (1 << g.n) - 1

    best_size = 0
    best_mask = 0

    def clique_cover_bound(cand: int) -> int:
        cliques = 0
        rest = cand
        while rest:
            v = (rest & -rest).bit_length() - 1
            clique = 1 << v
            rest &= rest - 1
            grow = rest
            while grow:
                u = (grow & -grow).bit_length() - 1
                grow &= grow - 1
                if adj[u] & clique == clique:
                    clique |= 1 << u
                    rest &= ~(1 << u)
            cliques += 1
        return cliques

    def expand(cand: int, cur_mask: int, cur_size: int):
        nonlocal best_size, best_mask
        if cand == 0:
            if cur_size > best_size:
                best_size, best_mask = cur_size, cur_mask
            return
        if cur_size + clique_cover_bound(cand) <= best_size:
            return
        # branch on the candidate with most candidate neighbors
        v, vdeg = -1, -1
        rest = cand
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            d = bin(adj[u] & cand).count("1")
            if d > vdeg:
                v, vdeg = u, d
        bit = 1 << v
        expand(cand & ~(adj[v] | bit), cur_mask | bit, cur_size + 1)
        expand(cand & ~bit, cur_mask, cur_size)

    expand(full, 0, 0)
    return [v for v in range(g.n) if best_mask >> v & 1]


def is_independent_set(g: Graph, nodes) -> bool:
    nodes = list(nodes)
    return all(not g.has_edge(u, v)
               for i, u in enumerate(nodes) for v in nodes[i + 1:])


def is_max_deg_independent_set(g: Graph, nodes) -> bool:
    """Independent, and every member's degree weakly dominates every outsider's."""
    nodes = set(int(v) for v in nodes)
    if not nodes or not is_independent_set(g, nodes):
        return False
    inside_min = min(g.degree(v) for v in nodes)
    outside = [v for v in range(g.n) if v not in nodes]
    return all(g.degree(v) <= inside_min for v in outside)


def max_deg_independent_set(g: Graph, cap: int = DEFAULT_MIS_CAP) -> tuple[int, list[int]]:
    """Largest independent set whose degrees dominate all outside degrees.

    Sweep over candidate minimum inside degrees t: nodes of degree > t are
    forced inside (so they must be independent), and the set is completed
    with a maximum independent subset of the degree-t nodes that have no
    forced neighbor.  Always >= 1 (a single maximum-degree node works).
    """
    degs = g.degrees()
    best: list[int] = []
    for t in sorted(set(int(d) for d in degs)):
        forced = [v for v in range(g.n) if degs[v] > t]
        if not is_independent_set(g, forced):
            continue
        forced_set = set(forced)
        pool = [v for v in range(g.n)
                if degs[v] == t and not any(int(u) in forced_set
                                            for u in g.neighbors(v))]
        sub = _induced_subgraph(g, pool)
        extra = maximum_independent_set(sub, cap) if pool else []
        candidate = forced + [pool[i] for i in extra]
        if len(candidate) > len(best) and is_max_deg_independent_set(g, candidate):
            best = sorted(candidate)
    if not best:
        raise AssertionError("sweep found no valid set, which cannot happen")
    return len(best), best


def _induced_subgraph(g: Graph, nodes: list[int]) -> Graph:
    index = {v: i for i, v in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in g.edges()
             if u in index and v in index]
    return Graph.from_edges(max(len(nodes), 1), edges)


# -- regular completions ----------------------------------------------


def regular_completion(z: int, d: int) -> Graph:
    """Connected d-regular circulant on z nodes (needs d*z even, z >= d+1)."""
    if z < d + 1:
        raise ValueError("need z >= d + 1")
    if (d * z) % 2 != 0:
        raise ValueError("need d * z even")
    if d < 1:
        raise ValueError("need d >= 1")
    offs = list(range(1, d // 2 + 1))
    if d % 2 == 1:
        offs.append(z // 2)
    g = build_circulant(z, offs)
    if not g.is_regular(d):
        raise AssertionError("circulant completion is not regular")
    if not g.is_connected():
        raise ValueError(f"no connected completion for z={z}, d={d} via circulant offsets")
    return g


def regular_minus_edge(z: int, d: int) -> tuple[Graph, int, int]:
    """d-regular circulant on z nodes minus one edge; returns (graph, a, b)."""
    if d < 2:
        raise ValueError("need d >= 2 so the graph stays connected minus an edge")
    g = regular_completion(z, d)
    a, b = 0, 1
    gg = g.without_edge(a, b)
    if not gg.is_connected():
        raise AssertionError("completion minus one edge disconnected")
    return gg, a, b


def regular_embed(g: Graph, d: int) -> Graph:
    """Embed g as an induced subgraph of a connected d-regular supergraph.

    New nodes are appended after g's nodes and receive all new edges, so
    the original adjacency is untouched.
    """
    if d < g.max_degree():
        raise ValueError("target degree below the maximum degree")
    deficiency = [d - g.degree(v) for v in range(g.n)]
    total = sum(deficiency)
    if total == 0:
        return g
    p = max(d + 1, -(-total // d))
    while True:
        if (d * (g.n + p)) % 2 != 0:
            p += 1
            continue
        result = _try_embed(g, d, p, deficiency)
        if result is not None:
            return result
        p += 1
        if p > g.n * (d + 2) + 2 * d + 4:
            raise AssertionError("regular embedding search failed")


def _try_embed(g: Graph, d: int, p: int, deficiency) -> Graph | None:
    pad = list(range(g.n, g.n + p))
    recv = {q: 0 for q in pad}
    links = {q: set() for q in pad}
    new_edges = []
    cursor = 0
    for v in range(g.n):
        for _ in range(deficiency[v]):
            placed = False
            for step in range(p):
                q = pad[(cursor + step) % p]
                if recv[q] < d and v not in links[q]:
                    links[q].add(v)
                    recv[q] += 1
                    new_edges.append((v, q))
                    cursor = (cursor + step + 1) % p
                    placed = True
                    break
            if not placed:
                return None
    residual = [(d - recv[q], q) for q in pad]
    if sum(r for r, _ in residual) % 2 != 0:
        return None
    pad_edges = _havel_hakimi(residual)
    if pad_edges is None:
        return None
    h = Graph.from_edges(g.n + p, list(g.edges()) + new_edges + pad_edges)
    h = _repair_connectivity(h, g.n, d)
    if h is None or not h.is_regular(d) or not h.is_connected():
        return None
    for u, v in g.edges():
        if not h.has_edge(u, v):
            return None
    return h


def _havel_hakimi(residual) -> list[tuple[int, int]] | None:
    """Simple graph on the given (degree, node) pairs, or None if impossible."""
    seq = [[r, q] for r, q in residual if r > 0]
    edges = []
    while seq:
        seq.sort(reverse=True)
        r, q = seq[0]
        rest = seq[1:]
        if r > len(rest):
            return None
        for item in rest[:r]:
            edges.append((q, item[1]))
            item[0] -= 1
            if item[0] < 0:
                return None
        seq = [item for item in rest if item[0] > 0]
    return edges


def _repair_connectivity(h: Graph, original_n: int, d: int) -> Graph | None:
    """Join stray components with degree-preserving pad-edge swaps."""
    for _ in range(h.n):
        dist = h.bfs_layers([0])
        if (dist >= 0).all():
            return h
        inside = np.flatnonzero(dist >= 0)
        outside = np.flatnonzero(dist < 0)
        swap = _find_swap(h, inside, outside, original_n)
        if swap is None:
            return None
        (a, b), (c, e) = swap
        edges = set()
        for u, v in h.edges():
            edges.add((u, v))
        edges.discard((min(a, b), max(a, b)))
        edges.discard((min(c, e), max(c, e)))
        edges.add((min(a, c), max(a, c)))
        edges.add((min(b, e), max(b, e)))
        h = Graph.from_edges(h.n, edges)
    return None


def _find_swap(h, inside, outside, original_n):
    # candidate pad-pad edges on both sides of the cut, avoiding multi-edges
    def pad_edges(nodes):
        out = []
        for u in nodes:
            if u < original_n:
                continue
            for v in h.neighbors(u):
                v = int(v)
                if v >= original_n and u < v:
                    out.append((int(u), v))
        return out

    for a, b in pad_edges(inside):
        for c, e in pad_edges(outside):
            if not h.has_edge(a, c) and not h.has_edge(b, e) and a != c and b != e:
                return (a, b), (c, e)
    return None
