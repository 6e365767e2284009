"""Shared reference implementations for the test suite.

Everything here recomputes model quantities from first principles with
Fraction arithmetic and plain adjacency walks, deliberately avoiding the
package's integer kernels, so kernel results can be checked against an
independent oracle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

from jumpschelling.graphs import Graph
from jumpschelling.model import BLUE, EMPTY, RED


def closed_counts(g: Graph, colors, v) -> tuple[int, int]:
    """(same, occupied) over v's closed neighborhood, by direct recount."""
    mine = colors[v]
    same, occ = 1, 1
    for w in g.neighbors(v):
        if colors[w] == EMPTY:
            continue
        occ += 1
        if colors[w] == mine:
            same += 1
    return same, occ


def score_ref(peak, same: int, occ: int) -> Fraction:
    lam = Fraction(peak.num, peak.den)
    f = Fraction(same, occ)
    if f <= lam:
        return f
    return lam * (1 - f) / (1 - lam)


def node_score(peak, g: Graph, colors, v) -> Fraction:
    same, occ = closed_counts(g, colors, v)
    return score_ref(peak, same, occ)


def landing_score(peak, g: Graph, colors, u, w) -> Fraction:
    """Score u's agent would get on empty node w, u's node vacated."""
    mine = colors[u]
    same, occ = 1, 1
    for t in g.neighbors(w):
        if t == u or colors[t] == EMPTY:
            continue
        occ += 1
        if colors[t] == mine:
            same += 1
    return score_ref(peak, same, occ)


def improving_jumps_ref(spec, colors) -> list[tuple[int, int]]:
    """Every improving (origin, target) pair, lexicographic order."""
    g = spec.graph
    out = []
    empties = [w for w in range(g.n) if colors[w] == EMPTY]
    for u in range(g.n):
        if colors[u] == EMPTY:
            continue
        before = node_score(spec.peak, g, colors, u)
        for w in empties:
            if landing_score(spec.peak, g, colors, u, w) > before:
                out.append((u, w))
    return out


def is_ne_ref(spec, colors) -> bool:
    return not improving_jumps_ref(spec, colors)


def doi_ref(spec, colors) -> int:
    g = spec.graph
    total = 0
    for v in range(g.n):
        if colors[v] == EMPTY:
            continue
        same, occ = closed_counts(g, colors, v)
        if same != occ:
            total += 1
    return total


def all_profiles_ref(spec):
    """Every two-cohort placement, red combinations outer, both lex."""
    n = spec.graph.n
    for reds in itertools.combinations(range(n), spec.red):
        rest = [v for v in range(n) if v not in reds]
        for blues in itertools.combinations(rest, spec.blue):
            colors = np.full(n, EMPTY, dtype=np.int8)
            colors[list(reds)] = RED
            colors[list(blues)] = BLUE
            yield colors


def sweep_ref(spec) -> dict:
    """Reference exhaustive sweep: max DoI plus the NE list with DoI range."""
    best = -1
    ne = []
    ne_dois = []
    for colors in all_profiles_ref(spec):
        d = doi_ref(spec, colors)
        best = max(best, d)
        if is_ne_ref(spec, colors):
            ne.append(colors.copy())
            ne_dois.append(d)
    return {
        "max_doi": best,
        "ne": ne,
        "ne_min_doi": min(ne_dois) if ne_dois else None,
        "ne_max_doi": max(ne_dois) if ne_dois else None,
    }


def random_connected_graph(rng, n: int, extra: float = 0.3) -> Graph:
    """Random spanning tree plus a sprinkle of extra edges."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a = order[i]
        b = order[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < extra:
                edges.add((a, b))
    return Graph.from_edges(n, sorted(edges))


@pytest.fixture
def rng():
    import random

    return random.Random(20240817)
