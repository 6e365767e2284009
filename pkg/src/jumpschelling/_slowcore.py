"""Pure fallback for the enumeration and best-response kernels.

Mirrors the compiled `_fastcore` signatures exactly; `_core` picks one at
import time.  Scores are compared by integer cross multiplication, never
floats, so both backends return identical results.
"""

from __future__ import annotations

import numpy as np

EMPTY = 0
RED = 1
BLUE = 2

_CHUNK = 20_000_000  # neighbor entries per vectorized pass


def profile_counts(offsets, nbrs, colors):
    """Closed-neighborhood (same, occupied) counts per node, self included.

    Entries on empty nodes are zero.
    """
    n = len(offsets) - 1
    same = np.zeros(n, dtype=np.int64)
    occ = np.zeros(n, dtype=np.int64)
    colors = np.asarray(colors, dtype=np.uint8)
    lo = 0
    while lo < n:
        hi = lo + 1
        while hi < n and offsets[hi + 1] - offsets[lo] <= _CHUNK:
            hi += 1
        seg = colors[nbrs[offsets[lo]:offsets[hi]]]
        local = (offsets[lo:hi + 1] - offsets[lo]).astype(np.int64)
        red_cs = np.concatenate(([0], np.cumsum(seg == RED, dtype=np.int64)))
        blue_cs = np.concatenate(([0], np.cumsum(seg == BLUE, dtype=np.int64)))
        red_row = red_cs[local[1:]] - red_cs[local[:-1]]
        blue_row = blue_cs[local[1:]] - blue_cs[local[:-1]]
        mine = colors[lo:hi]
        same_row = np.where(mine == RED, red_row, blue_row)
        same[lo:hi] = np.where(mine != EMPTY, same_row + 1, 0)
        occ[lo:hi] = np.where(mine != EMPTY, red_row + blue_row + 1, 0)
        lo = hi
    return same, occ


def _score_pair(x, y, s, t):
    """Score of fraction s/t as an exact (num, den) pair with den > 0."""
    if s * y <= x * t:
        return s, t
    return x * (t - s), (y - x) * t


def _score_gt(x, y, s1, t1, s2, t2):
    """score(s1/t1) > score(s2/t2), by cross multiplication."""
    a, b = _score_pair(x, y, s1, t1)
    c, d = _score_pair(x, y, s2, t2)
    return a * d > c * b


def _row(offsets, nbrs, v):
    return nbrs[offsets[v]:offsets[v + 1]]


def _has_edge_sorted(row, w):
    i = int(np.searchsorted(row, w))
    return i < len(row) and int(row[i]) == w


def first_improving_jump(offsets, nbrs, colors, lam_num, lam_den):
    """Lexicographically first improving (origin, target), or None at rest."""
    colors = np.asarray(colors, dtype=np.uint8)
    same, occ = profile_counts(offsets, nbrs, colors)
    # open-neighborhood occupied counts, per prospective landing node
    reds_near = np.zeros(len(colors), dtype=np.int64)
    blues_near = np.zeros(len(colors), dtype=np.int64)
    for v in np.flatnonzero(colors != EMPTY):
        v = int(v)
        if colors[v] == RED:
            reds_near[_row(offsets, nbrs, v)] += 1
        else:
            blues_near[_row(offsets, nbrs, v)] += 1
    empties = [int(v) for v in np.flatnonzero(colors == EMPTY)]
    occupied = [int(v) for v in np.flatnonzero(colors != EMPTY)]
    for u in occupied:
        c = int(colors[u])
        su, tu = int(same[u]), int(occ[u])
        urow = _row(offsets, nbrs, u)
        for w in empties:
            adj = 1 if _has_edge_sorted(urow, w) else 0
            mine = reds_near[w] if c == RED else blues_near[w]
            sw = int(mine) + 1 - adj
            tw = int(reds_near[w] + blues_near[w]) + 1 - adj
            if _score_gt(lam_num, lam_den, sw, tw, su, tu):
                return u, w
    return None


def _adj_lists(offsets, nbrs, n):
    return [[int(w) for w in nbrs[offsets[v]:offsets[v + 1]]] for v in range(n)]


def scan_profiles(offsets, nbrs, red_init, n_red_combos, blue_count,
                  lam_num, lam_den, util_lcm, collect_cap):
    """Sweep placements in lexicographic order and aggregate.

    Red node combinations advance from `red_init` for `n_red_combos` steps;
    for each, every blue combination over the remaining nodes is visited.
    Utilities use the linear curve and are accumulated as integers scaled
    by lam_num * (lam_den - lam_num) * util_lcm (skipped when util_lcm == 0).
    """
    n = len(offsets) - 1
    adj = _adj_lists(offsets, nbrs, n)
    x, y = lam_num, lam_den
    red = list(int(v) for v in red_init)
    r = len(red)
    b = blue_count

    ldiv = None
    if util_lcm:
        maxdeg = max((len(a) for a in adj), default=0)
        ldiv = [0] * (maxdeg + 2)
        for t in range(1, maxdeg + 2):
            ldiv[t] = util_lcm // t

    agg = {
        "profiles": 0,
        "ne_count": 0,
        "max_doi": -1, "max_doi_witness": None,
        "ne_min_doi": None, "ne_min_doi_witness": None,
        "ne_max_doi": None, "ne_max_doi_witness": None,
        "max_util": None, "max_util_witness": None,
        "ne_min_util": None, "ne_min_util_witness": None,
        "ne_max_util": None, "ne_max_util_witness": None,
        "ne_profiles": [] if collect_cap >= 0 else None,
        "ne_truncated": False,
    }

    colors = bytearray(n)
    for v in red:
        colors[v] = RED

    for _ in range(n_red_combos):
        rem = [v for v in range(n) if colors[v] != RED]
        m = len(rem)
        bidx = list(range(b))
        while True:
            for i in bidx:
                colors[rem[i]] = BLUE
            _visit(agg, adj, colors, x, y, util_lcm, ldiv, collect_cap)
            for i in bidx:
                colors[rem[i]] = EMPTY
            # next blue combination over rem
            j = b - 1
            while j >= 0 and bidx[j] == m - b + j:
                j -= 1
            if j < 0:
                break
            bidx[j] += 1
            for t in range(j + 1, b):
                bidx[t] = bidx[j] + t - j
        # next red combination over 0..n-1
        for v in red:
            colors[v] = EMPTY
        j = r - 1
        while j >= 0 and red[j] == n - r + j:
            j -= 1
        if j < 0:
            break
        red[j] += 1
        for t in range(j + 1, r):
            red[t] = red[j] + t - j
        for v in red:
            colors[v] = RED
    return agg


def _visit(agg, adj, colors, x, y, util_lcm, ldiv, collect_cap):
    n = len(adj)
    reds_near = [0] * n
    blues_near = [0] * n
    occupied = []
    empties = []
    for v in range(n):
        c = colors[v]
        if c == EMPTY:
            empties.append(v)
            continue
        occupied.append(v)
        if c == RED:
            for w in adj[v]:
                reds_near[w] += 1
        else:
            for w in adj[v]:
                blues_near[w] += 1

    doi = 0
    util = 0
    for u in occupied:
        c = colors[u]
        mine = reds_near[u] if c == RED else blues_near[u]
        su = mine + 1
        tu = reds_near[u] + blues_near[u] + 1
        if su < tu:
            doi += 1
        if util_lcm:
            if su * y <= x * tu:
                util += (y - x) * y * su * ldiv[tu]
            else:
                util += x * y * (tu - su) * ldiv[tu]

    is_ne = True
    for u in occupied:
        c = colors[u]
        mine = reds_near[u] if c == RED else blues_near[u]
        su = mine + 1
        tu = reds_near[u] + blues_near[u] + 1
        row = adj[u]
        for w in empties:
            adjacent = 1 if _bisect_member(row, w) else 0
            mw = reds_near[w] if c == RED else blues_near[w]
            sw = mw + 1 - adjacent
            tw = reds_near[w] + blues_near[w] + 1 - adjacent
            if _score_gt(x, y, sw, tw, su, tu):
                is_ne = False
                break
        if not is_ne:
            break

    agg["profiles"] += 1
    if doi > agg["max_doi"]:
        agg["max_doi"] = doi
        agg["max_doi_witness"] = bytes(colors)
    if util_lcm and (agg["max_util"] is None or util > agg["max_util"]):
        agg["max_util"] = util
        agg["max_util_witness"] = bytes(colors)
    if is_ne:
        agg["ne_count"] += 1
        if agg["ne_min_doi"] is None or doi < agg["ne_min_doi"]:
            agg["ne_min_doi"] = doi
            agg["ne_min_doi_witness"] = bytes(colors)
        if agg["ne_max_doi"] is None or doi > agg["ne_max_doi"]:
            agg["ne_max_doi"] = doi
            agg["ne_max_doi_witness"] = bytes(colors)
        if util_lcm:
            if agg["ne_min_util"] is None or util < agg["ne_min_util"]:
                agg["ne_min_util"] = util
                agg["ne_min_util_witness"] = bytes(colors)
            if agg["ne_max_util"] is None or util > agg["ne_max_util"]:
                agg["ne_max_util"] = util
                agg["ne_max_util_witness"] = bytes(colors)
        if collect_cap >= 0:
            if len(agg["ne_profiles"]) < collect_cap:
                agg["ne_profiles"].append(bytes(colors))
            else:
                agg["ne_truncated"] = True


def _bisect_member(row, w):
    lo, hi = 0, len(row)
    while lo < hi:
        mid = (lo + hi) // 2
        if row[mid] < w:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(row) and row[lo] == w
