# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled enumeration and best-response kernels.

Same contract as `_slowcore`; exact integer arithmetic only.  Callers are
responsible for keeping cross products inside 64 bits (peak denominator
times closed neighborhood size below 2**31).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF C_EMPTY = 0
DEF C_RED = 1
DEF C_BLUE = 2


cdef inline bint _score_gt(long long x, long long y,
                           long long s1, long long t1,
                           long long s2, long long t2) nogil:
    cdef long long a, b, c, d
    if s1 * y <= x * t1:
        a = s1
        b = t1
    else:
        a = x * (t1 - s1)
        b = (y - x) * t1
    if s2 * y <= x * t2:
        c = s2
        d = t2
    else:
        c = x * (t2 - s2)
        d = (y - x) * t2
    return a * d > c * b


def profile_counts(const long long[:] offsets, const int[:] nbrs,
                   const unsigned char[:] colors):
    """Closed-neighborhood (same, occupied) counts per node; zero on empties."""
    cdef Py_ssize_t n = offsets.shape[0] - 1
    same_arr = np.zeros(n, dtype=np.int64)
    occ_arr = np.zeros(n, dtype=np.int64)
    cdef long long[:] same = same_arr
    cdef long long[:] occ = occ_arr
    cdef Py_ssize_t v
    cdef long long i
    cdef int c, cv
    cdef long long r_cnt, o_cnt
    for v in range(n):
        cv = colors[v]
        if cv == C_EMPTY:
            continue
        r_cnt = 0
        o_cnt = 0
        for i in range(offsets[v], offsets[v + 1]):
            c = colors[nbrs[i]]
            if c != C_EMPTY:
                o_cnt += 1
                if c == cv:
                    r_cnt += 1
        same[v] = r_cnt + 1
        occ[v] = o_cnt + 1
    return same_arr, occ_arr


def first_improving_jump(const long long[:] offsets, const int[:] nbrs,
                         const unsigned char[:] colors,
                         long long lam_num, long long lam_den):
    """Lexicographically first improving (origin, target), or None at rest."""
    cdef Py_ssize_t n = offsets.shape[0] - 1
    reds_arr = np.zeros(n, dtype=np.int64)
    blues_arr = np.zeros(n, dtype=np.int64)
    cdef long long[:] reds_near = reds_arr
    cdef long long[:] blues_near = blues_arr
    cdef Py_ssize_t v, u, w
    cdef long long i
    cdef int c
    for v in range(n):
        c = colors[v]
        if c == C_RED:
            for i in range(offsets[v], offsets[v + 1]):
                reds_near[nbrs[i]] += 1
        elif c == C_BLUE:
            for i in range(offsets[v], offsets[v + 1]):
                blues_near[nbrs[i]] += 1
    cdef long long su, tu, sw, tw, adj, mine
    cdef long long lo, hi, mid
    cdef bint found
    for u in range(n):
        c = colors[u]
        if c == C_EMPTY:
            continue
        mine = reds_near[u] if c == C_RED else blues_near[u]
        su = mine + 1
        tu = reds_near[u] + blues_near[u] + 1
        for w in range(n):
            if colors[w] != C_EMPTY:
                continue
            # adjacency test: binary search for w in u's row
            lo = offsets[u]
            hi = offsets[u + 1]
            found = False
            while lo < hi:
                mid = (lo + hi) >> 1
                if nbrs[mid] < w:
                    lo = mid + 1
                elif nbrs[mid] > w:
                    hi = mid
                else:
                    found = True
                    break
            adj = 1 if found else 0
            mine = reds_near[w] if c == C_RED else blues_near[w]
            sw = mine + 1 - adj
            tw = reds_near[w] + blues_near[w] + 1 - adj
            if _score_gt(lam_num, lam_den, sw, tw, su, tu):
                return int(u), int(w)
    return None


def scan_profiles(const long long[:] offsets, const int[:] nbrs,
                  red_init, long long n_red_combos, int blue_count,
                  long long lam_num, long long lam_den,
                  long long util_lcm, long long collect_cap):
    """Sweep placements lexicographically from `red_init` and aggregate.

    Blue combinations run over the nodes not holding a red, in index order.
    Utilities use the linear curve, scaled by
    lam_num * (lam_den - lam_num) * util_lcm; util_lcm == 0 skips them.
    """
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef int r = len(red_init)
    cdef int b = blue_count
    cdef long long x = lam_num
    cdef long long y = lam_den

    colors_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] colors = colors_arr
    reds_arr = np.zeros(n, dtype=np.int64)
    blues_arr = np.zeros(n, dtype=np.int64)
    cdef long long[:] reds_near = reds_arr
    cdef long long[:] blues_near = blues_arr
    red_arr = np.array(list(red_init), dtype=np.int64)
    cdef long long[:] red = red_arr
    rem_arr = np.zeros(n, dtype=np.int64)
    cdef long long[:] rem = rem_arr
    bidx_arr = np.zeros(max(b, 1), dtype=np.int64)
    cdef long long[:] bidx = bidx_arr

    # utility scale table: util_lcm // t for every possible occupied count
    cdef Py_ssize_t maxdeg = 0, v2
    for v2 in range(n):
        if offsets[v2 + 1] - offsets[v2] > maxdeg:
            maxdeg = offsets[v2 + 1] - offsets[v2]
    ldiv_arr = np.zeros(maxdeg + 2, dtype=np.int64)
    cdef long long[:] ldiv = ldiv_arr
    cdef Py_ssize_t t2
    if util_lcm:
        for t2 in range(1, maxdeg + 2):
            ldiv[t2] = util_lcm // t2

    cdef long long profiles = 0, ne_count = 0
    cdef long long max_doi = -1
    cdef long long ne_min_doi = -1, ne_max_doi = -1
    cdef long long max_util = -1, ne_min_util = -1, ne_max_util = -1
    max_doi_witness = None
    ne_min_doi_witness = None
    ne_max_doi_witness = None
    max_util_witness = None
    ne_min_util_witness = None
    ne_max_util_witness = None
    ne_profiles = [] if collect_cap >= 0 else None
    cdef bint ne_truncated = False
    cdef bint have_ne = False, have_util = util_lcm != 0

    cdef long long combo_i
    cdef Py_ssize_t v, u, w, i, j, k, m
    cdef int c
    cdef long long su, tu, sw, tw, adj, mine, doi, util
    cdef long long lo, hi, mid
    cdef bint found, is_ne, more_blue

    for v in range(r):
        colors[red[v]] = C_RED

    for combo_i in range(n_red_combos):
        # nodes without a red agent, ascending
        m = 0
        for v in range(n):
            if colors[v] != C_RED:
                rem[m] = v
                m += 1
        for i in range(b):
            bidx[i] = i
        while True:
            for i in range(b):
                colors[rem[bidx[i]]] = C_BLUE

            # per-node open-neighborhood occupied counts
            for v in range(n):
                reds_near[v] = 0
                blues_near[v] = 0
            for v in range(n):
                c = colors[v]
                if c == C_RED:
                    for i in range(offsets[v], offsets[v + 1]):
                        reds_near[nbrs[i]] += 1
                elif c == C_BLUE:
                    for i in range(offsets[v], offsets[v + 1]):
                        blues_near[nbrs[i]] += 1

            doi = 0
            util = 0
            for u in range(n):
                c = colors[u]
                if c == C_EMPTY:
                    continue
                mine = reds_near[u] if c == C_RED else blues_near[u]
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
            for u in range(n):
                c = colors[u]
                if c == C_EMPTY:
                    continue
                mine = reds_near[u] if c == C_RED else blues_near[u]
                su = mine + 1
                tu = reds_near[u] + blues_near[u] + 1
                for w in range(n):
                    if colors[w] != C_EMPTY:
                        continue
                    lo = offsets[u]
                    hi = offsets[u + 1]
                    found = False
                    while lo < hi:
                        mid = (lo + hi) >> 1
                        if nbrs[mid] < w:
                            lo = mid + 1
                        elif nbrs[mid] > w:
                            hi = mid
                        else:
                            found = True
                            break
                    adj = 1 if found else 0
                    mine = reds_near[w] if c == C_RED else blues_near[w]
                    sw = mine + 1 - adj
                    tw = reds_near[w] + blues_near[w] + 1 - adj
                    if _score_gt(x, y, sw, tw, su, tu):
                        is_ne = False
                        break
                if not is_ne:
                    break

            profiles += 1
            if doi > max_doi:
                max_doi = doi
                max_doi_witness = colors_arr.tobytes()
            if util_lcm and (max_util < 0 or util > max_util):
                max_util = util
                max_util_witness = colors_arr.tobytes()
            if is_ne:
                ne_count += 1
                if not have_ne or doi < ne_min_doi:
                    ne_min_doi = doi
                    ne_min_doi_witness = colors_arr.tobytes()
                if not have_ne or doi > ne_max_doi:
                    ne_max_doi = doi
                    ne_max_doi_witness = colors_arr.tobytes()
                if util_lcm:
                    if not have_ne or util < ne_min_util:
                        ne_min_util = util
                        ne_min_util_witness = colors_arr.tobytes()
                    if not have_ne or util > ne_max_util:
                        ne_max_util = util
                        ne_max_util_witness = colors_arr.tobytes()
                have_ne = True
                if collect_cap >= 0:
                    if len(ne_profiles) < collect_cap:
                        ne_profiles.append(colors_arr.tobytes())
                    else:
                        ne_truncated = True

            for i in range(b):
                colors[rem[bidx[i]]] = C_EMPTY
            more_blue = False
            j = b - 1
            while j >= 0:
                if bidx[j] != m - b + j:
                    more_blue = True
                    break
                j -= 1
            if not more_blue:
                break
            bidx[j] += 1
            for k in range(j + 1, b):
                bidx[k] = bidx[j] + k - j

        for v in range(r):
            colors[red[v]] = C_EMPTY
        j = r - 1
        while j >= 0:
            if red[j] != n - r + j:
                break
            j -= 1
        if j < 0:
            break
        red[j] += 1
        for k in range(j + 1, r):
            red[k] = red[j] + k - j
        for v in range(r):
            colors[red[v]] = C_RED

    return {
        "profiles": profiles,
        "ne_count": ne_count,
        "max_doi": max_doi,
        "max_doi_witness": max_doi_witness,
        "ne_min_doi": None if not have_ne else ne_min_doi,
        "ne_min_doi_witness": ne_min_doi_witness,
        "ne_max_doi": None if not have_ne else ne_max_doi,
        "ne_max_doi_witness": ne_max_doi_witness,
        "max_util": None if not util_lcm else max_util,
        "max_util_witness": max_util_witness,
        "ne_min_util": None if not (have_ne and util_lcm) else ne_min_util,
        "ne_min_util_witness": ne_min_util_witness,
        "ne_max_util": None if not (have_ne and util_lcm) else ne_max_util,
        "ne_max_util_witness": ne_max_util_witness,
        "ne_profiles": ne_profiles,
        "ne_truncated": ne_truncated,
    }
