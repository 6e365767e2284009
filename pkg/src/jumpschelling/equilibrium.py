"""Equilibrium checking, exhaustive search, and guaranteed constructions.

A profile is stable when no agent has a strictly score-improving jump to an
empty node.  The constructors place agents by explicit combinatorial rules
and re-verify the result before returning it, so a caller can trust any
profile they hand back.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import _core
from .dynamics import FirstImprove, Converged, Jump, _make_jump, run
from .graphs import is_independent_set, max_deg_independent_set
from .model import BLUE, EMPTY, RED, GameSpec, make_profile, score


class ContractViolation(RuntimeError):
    """A construction produced a profile that failed its own stability check."""


class NeReport:
    """Outcome of a stability check; witness is the first deviating jump."""

    __slots__ = ("is_ne", "witness")

    def __init__(self, is_ne: bool, witness: Optional[Jump]):
        self.is_ne = is_ne
        self.witness = witness

    def __bool__(self):
        return self.is_ne

    def __repr__(self):
        return f"NeReport(is_ne={self.is_ne}, witness={self.witness})"


def check_ne(spec: GameSpec, colors: np.ndarray) -> NeReport:
    """Stability check; on failure reports the lexicographically first jump."""
    hit = _core.first_improving_jump(spec.graph, colors, spec.peak)
    if hit is None:
        return NeReport(True, None)
    return NeReport(False, _make_jump(spec, colors, hit[0], hit[1]))


def enumerate_profiles(spec: GameSpec,
                       budget: Optional[int] = None) -> Iterator[np.ndarray]:
    """Yield every occupancy profile, red positions major, blue minor.

    Raises BudgetExceeded up front when the count is over budget.
    """
    n = spec.n
    total = _core.profile_total(n, spec.red, spec.blue)
    limit = _core.resolve_budget(budget)
    if total > limit:
        raise _core.BudgetExceeded(total, limit)
    nodes = range(n)
    for reds in combinations(nodes, spec.red):
        red_set = set(reds)
        rest = [v for v in nodes if v not in red_set]
        for blues in combinations(rest, spec.blue):
            yield make_profile(n, reds, blues)


def find_all_ne(spec: GameSpec, budget: Optional[int] = None,
                jobs: int = 1) -> list[np.ndarray]:
    """Every stable profile, in enumeration order."""
    total = _core.profile_total(spec.n, spec.red, spec.blue)
    agg = _core.scan(spec.graph, spec.red, spec.blue, spec.peak,
                     collect_cap=total, jobs=jobs, budget=budget)
    if agg["ne_truncated"]:
        raise RuntimeError("equilibrium collection truncated")
    return [np.frombuffer(raw, dtype=np.uint8).copy()
            for raw in agg["ne_profiles"]]


def _checked(spec: GameSpec, colors: np.ndarray, label: str) -> np.ndarray:
    report = check_ne(spec, colors)
    if not report.is_ne:
        raise ContractViolation(
            f"{label}: produced profile admits jump "
            f"{report.witness.origin}->{report.witness.target}")
    return colors


def _fill_lowest(flags: np.ndarray, colors: np.ndarray, color: int, count: int):
    """Color the `count` lowest-index nodes that are still free."""
    placed = 0
    for v in range(len(colors)):
        if placed == count:
            return
        if flags[v] and colors[v] == EMPTY:
            colors[v] = color
            placed += 1
    if placed != count:
        raise ContractViolation(f"needed {count} free nodes, found {placed}")


def construct_ne_independent_set(spec: GameSpec,
                                 independent_set: Iterable[int]) -> np.ndarray:
    """Stable profile from an independent set of size blue + empty.

    Reds take every node outside the set.  Blues take the set nodes whose
    isolated landing score 1/(deg+1) is largest, lowest index first, which
    leaves the least attractive set nodes empty.
    """
    nodes = sorted(int(v) for v in independent_set)
    g = spec.graph
    if len(set(nodes)) != len(nodes):
        raise ValueError("independent set has repeated nodes")
    if not is_independent_set(g, nodes):
        raise ValueError("given nodes are not an independent set")
    if len(nodes) != spec.blue + spec.empty:
        raise ValueError(
            f"need an independent set of size {spec.blue + spec.empty}, "
            f"got {len(nodes)}")
    deg = g.degrees()
    ranked = sorted(nodes,
                    key=lambda v: (score(spec.peak, 1, int(deg[v]) + 1), -v),
                    reverse=True)
    blues = ranked[:spec.blue]
    inside = set(nodes)
    reds = [v for v in range(spec.n) if v not in inside]
    colors = make_profile(spec.n, reds, blues)
    return _checked(spec, colors, "independent-set construction")


def construct_ne_max_deg_is(spec: GameSpec) -> np.ndarray:
    """Stable profile built around an independent set of maximum-degree nodes.

    Needs peak >= 1/2, empty count within the max-degree independence
    number, and enough surplus reds to blanket the set's neighborhoods.
    """
    g = spec.graph
    if 2 * spec.peak.num < spec.peak.den:
        raise ValueError("construction needs peak >= 1/2")
    delta = g.max_degree()
    if spec.empty * delta > spec.red - spec.blue:
        raise ValueError("not enough surplus reds: need empty*maxdeg <= red-blue")
    size, witness = max_deg_independent_set(g)
    if spec.empty > size:
        raise ValueError(
            f"empty count {spec.empty} exceeds max-degree independence "
            f"number {size}")
    deg = g.degrees()
    holes = sorted(witness, key=lambda v: (-int(deg[v]), v))[:spec.empty]

    colors = np.zeros(spec.n, dtype=np.uint8)
    ring = set()
    for v in holes:
        for w in g.neighbors(v):
            ring.add(int(w))
    for v in ring:
        colors[v] = RED

    layer_of = g.bfs_layers(holes)
    even = [v for v in range(spec.n)
            if layer_of[v] >= 2 and layer_of[v] % 2 == 0]
    odd = [v for v in range(spec.n)
           if layer_of[v] >= 3 and layer_of[v] % 2 == 1]
    pool = even if len(even) >= spec.blue else odd
    if len(pool) < spec.blue:
        raise ContractViolation("no residue class can host every blue")
    for v in pool[:spec.blue]:
        colors[v] = BLUE
    free = np.ones(spec.n, dtype=bool)
    for v in holes:
        free[v] = False
    _fill_lowest(free, colors, RED, spec.red - len(ring))
    return _checked(spec, colors, "max-degree-set construction")


def construct_ne_leaves(spec: GameSpec) -> np.ndarray:
    """Stable profile hiding every blue on its own degree-1 node.

    Needs peak >= 1/2 and at least `blue` leaves.  Each chosen leaf's
    support neighbor turns red, so no blue ever borders an empty node.
    """
    g = spec.graph
    if 2 * spec.peak.num < spec.peak.den:
        raise ValueError("construction needs peak >= 1/2")
    deg = g.degrees()
    leaves = [v for v in range(spec.n) if deg[v] == 1]
    if len(leaves) < spec.blue:
        raise ValueError(
            f"need {spec.blue} degree-1 nodes, graph has {len(leaves)}")
    blues = leaves[:spec.blue]
    colors = np.zeros(spec.n, dtype=np.uint8)
    for v in blues:
        colors[v] = BLUE
    supports = {int(g.neighbors(v)[0]) for v in blues}
    if len(supports) > spec.red:
        raise ValueError("not enough reds to cover the chosen leaves")
    for v in supports:
        colors[v] = RED
    free = np.ones(spec.n, dtype=bool)
    _fill_lowest(free, colors, RED, spec.red - len(supports))
    return _checked(spec, colors, "leaf construction")


def construct_ne_regular_e1(spec: GameSpec) -> np.ndarray:
    """Stable profile on a regular graph with a single empty node.

    Needs peak >= 1/2 and at least degree-many reds.  Starts from a hole
    whose whole boundary is red and lets first-improving dynamics finish;
    that run is guaranteed to settle.
    """
    g = spec.graph
    if not g.is_regular():
        raise ValueError("construction needs a regular graph")
    if 2 * spec.peak.num < spec.peak.den:
        raise ValueError("construction needs peak >= 1/2")
    if spec.empty != 1:
        raise ValueError("construction needs exactly one empty node")
    delta = g.max_degree()
    if spec.red < delta:
        raise ValueError(f"need at least {delta} reds")
    colors = np.zeros(spec.n, dtype=np.uint8)
    boundary = [int(w) for w in g.neighbors(0)]
    for v in boundary:
        colors[v] = RED
    free = np.ones(spec.n, dtype=bool)
    free[0] = False
    _fill_lowest(free, colors, RED, spec.red - len(boundary))
    _fill_lowest(free, colors, BLUE, spec.blue)
    outcome = run(spec, colors, FirstImprove())
    if not isinstance(outcome, Converged):
        raise ContractViolation(
            f"dynamics did not settle: {type(outcome).__name__}")
    return _checked(spec, outcome.final, "regular single-hole construction")


def construct_ne_bipartite(spec: GameSpec) -> np.ndarray:
    """Stable profile on a bipartite graph via its larger side."""
    parts = spec.graph.two_coloring()
    if parts is None:
        raise ValueError("graph is not bipartite")
    zeros, ones = parts
    big = sorted(zeros if len(zeros) >= len(ones) else ones)
    need = spec.blue + spec.empty
    if len(big) < need:
        raise ValueError(
            f"larger side has {len(big)} nodes, need {need}; "
            "the red cohort must fill at least half the graph")
    return construct_ne_independent_set(spec, big[:need])
