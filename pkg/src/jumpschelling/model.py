"""Game model: rational peak, single-peaked utility curves, placements.

All arithmetic is exact.  Scores are fractions.Fraction values; anything
performance critical compares fractions by integer cross multiplication
inside the enumeration cores instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

import numpy as np

from .graphs import Graph

EMPTY = 0
RED = 1
BLUE = 2

_COLOR_NAMES = {RED: "red", BLUE: "blue", EMPTY: "empty"}


def color_name(c: int) -> str:
    return _COLOR_NAMES[c]


@dataclass(frozen=True)
class Peak:
    """Preferred same-color neighborhood fraction, a rational in (0, 1)."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0 or not (0 < self.num < self.den):
            raise ValueError(f"peak {self.num}/{self.den} not in (0, 1)")
        g = gcd(self.num, self.den)
        object.__setattr__(self, "num", self.num // g)
        object.__setattr__(self, "den", self.den // g)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    @staticmethod
    def parse(text: str) -> "Peak":
        """Parse "x/y".  Decimal inputs are rejected, not rounded."""
        text = text.strip()
        if "/" not in text:
            raise ValueError(
                f"peak must be written as a fraction x/y, got {text!r}")
        a, b = text.split("/", 1)
        try:
            return Peak(int(a), int(b))
        except ValueError as exc:
            raise ValueError(f"bad peak {text!r}: {exc}") from None


def score(peak: Peak, same: int, occ: int) -> Fraction:
    """Map the neighborhood fraction same/occ onto the rising side of the peak.

    Fractions at or below the peak keep their value; fractions above it are
    reflected to the left-side value with equal utility.  The result is
    order-isomorphic to utility for every admissible curve, so all decision
    logic can compare scores directly.
    """
    if not (0 < same <= occ):
        raise ValueError(f"bad neighborhood counts same={same} occ={occ}")
    x, y = peak.num, peak.den
    if same * y <= x * occ:
        return Fraction(same, occ)
    return Fraction(x * (occ - same), (y - x) * occ)


def score_fraction(peak: Peak, frac: Fraction) -> Fraction:
    return score(peak, frac.numerator, frac.denominator)


@dataclass(frozen=True)
class UtilityCurve:
    """Single-peaked utility, given by its strictly increasing left branch.

    `left` maps a score in [0, peak] to a utility in [0, 1] with
    left(0) = 0 and left(peak) = 1.
    """

    name: str
    left: Callable[[Fraction, Fraction], Fraction]


def linear_curve() -> UtilityCurve:
    return UtilityCurve("linear", lambda s, lam: s / lam)


def square_curve() -> UtilityCurve:
    """Square of the linear branch; same ordering, different welfare numbers."""
    return UtilityCurve("square", lambda s, lam: (s / lam) ** 2)


LINEAR = linear_curve()


def utility(curve: UtilityCurve, peak: Peak, same: int, occ: int) -> Fraction:
    return curve.left(score(peak, same, occ), peak.value)


@dataclass(frozen=True)
class GameSpec:
    """Graph plus cohort sizes, the shared peak, and the utility curve.

    The curve never affects jump decisions (scores decide those); it only
    matters for cardinal welfare sums.
    """

    graph: Graph
    red: int
    blue: int
    peak: Peak
    curve: UtilityCurve = LINEAR

    def __post_init__(self):
        if self.red < 1:
            raise ValueError("need at least one red agent")
        if not (1 <= self.blue <= self.red):
            raise ValueError("need 1 <= blue <= red")
        if self.empty < 1:
            raise ValueError("need at least one empty node")
        if not self.graph.is_connected():
            raise ValueError("graph must be connected")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def agents(self) -> int:
        return self.red + self.blue

    @property
    def empty(self) -> int:
        return self.graph.n - self.red - self.blue

    @property
    def balanced(self) -> bool:
        return self.red == self.blue


# -- placements --------------------------------------------------------


def make_profile(n: int, reds, blues) -> np.ndarray:
    """Colors array: EMPTY/RED/BLUE per node, from disjoint node lists."""
    colors = np.zeros(n, dtype=np.uint8)
    reds = [int(v) for v in reds]
    blues = [int(v) for v in blues]
    for v in reds + blues:
        if not (0 <= v < n):
            raise ValueError(f"node {v} out of range")
    if len(set(reds)) != len(reds) or len(set(blues)) != len(blues):
        raise ValueError("repeated node in placement")
    if set(reds) & set(blues):
        raise ValueError("red and blue placements overlap")
    colors[reds] = RED
    colors[blues] = BLUE
    return colors


def profile_nodes(colors: np.ndarray, color: int) -> list[int]:
    return [int(v) for v in np.flatnonzero(colors == color)]


def validate_profile(spec: GameSpec, colors: np.ndarray):
    if len(colors) != spec.n:
        raise ValueError("colors length does not match the graph")
    if int((colors == RED).sum()) != spec.red:
        raise ValueError("wrong number of red agents")
    if int((colors == BLUE).sum()) != spec.blue:
        raise ValueError("wrong number of blue agents")


def fraction_at(g: Graph, colors: np.ndarray, v: int) -> tuple[int, int]:
    """Closed-neighborhood counts (same, occupied) for the agent on v."""
    c = int(colors[v])
    if c == EMPTY:
        raise ValueError(f"node {v} is empty")
    row = g.neighbors(v)
    row_colors = colors[row]
    same = int((row_colors == c).sum()) + 1
    occ = int((row_colors != EMPTY).sum()) + 1
    return same, occ


def landing_fraction(g: Graph, colors: np.ndarray, u: int, w: int) -> tuple[int, int]:
    """Counts the agent on u would see after jumping to the empty node w.

    The vacated origin no longer holds the agent, so u is excluded from
    w's neighborhood tally.
    """
    c = int(colors[u])
    if c == EMPTY:
        raise ValueError(f"node {u} is empty")
    if int(colors[w]) != EMPTY:
        raise ValueError(f"node {w} is occupied")
    same, occ = 1, 1
    for x in g.neighbors(w):
        x = int(x)
        if x == u:
            continue
        cx = int(colors[x])
        if cx != EMPTY:
            occ += 1
            if cx == c:
                same += 1
    return same, occ


def is_segregated(g: Graph, colors: np.ndarray, v: int) -> bool:
    same, occ = fraction_at(g, colors, v)
    return same == occ


def agent_score(peak: Peak, g: Graph, colors: np.ndarray, v: int) -> Fraction:
    return score(peak, *fraction_at(g, colors, v))


def agent_utility(curve: UtilityCurve, peak: Peak, g: Graph,
                  colors: np.ndarray, v: int) -> Fraction:
    return utility(curve, peak, *fraction_at(g, colors, v))


def apply_jump(colors: np.ndarray, u: int, w: int) -> np.ndarray:
    if int(colors[u]) == EMPTY or int(colors[w]) != EMPTY:
        raise ValueError(f"jump {u}->{w} needs an agent origin and empty target")
    out = colors.copy()
    out[w] = out[u]
    out[u] = EMPTY
    return out


def improving_jump(peak: Peak, g: Graph, colors: np.ndarray,
                   u: int, w: int) -> bool:
    """True when the agent on u strictly gains by moving to the empty w."""
    before = score(peak, *fraction_at(g, colors, u))
    after = score(peak, *landing_fraction(g, colors, u, w))
    return after > before


# -- spec-level conveniences -------------------------------------------


def neighborhood_counts(spec: GameSpec, colors: np.ndarray, v: int) -> tuple[int, int]:
    return fraction_at(spec.graph, colors, v)


def fraction_same(spec: GameSpec, colors: np.ndarray, v: int) -> Fraction:
    same, occ = fraction_at(spec.graph, colors, v)
    return Fraction(same, occ)


def utility_of(spec: GameSpec, colors: np.ndarray, v: int) -> Fraction:
    return agent_utility(spec.curve, spec.peak, spec.graph, colors, v)
