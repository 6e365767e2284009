"""Welfare metrics: degree of integration, utilitarian welfare, price ratios.

The degree of integration (DoI) of a profile counts agents that see at
least one neighbor of the other color.  Price of anarchy divides the best
achievable welfare by the worst stable one; price of stability divides it
by the best stable one.  A zero denominator yields the UNBOUNDED marker
rather than an exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from . import _core
from .model import EMPTY, GameSpec, agent_utility


class _Unbounded:
    """Singleton marker for a price ratio with zero denominator."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"


UNBOUNDED = _Unbounded()

Ratio = Union[Fraction, _Unbounded]


def doi(spec: GameSpec, colors: np.ndarray) -> int:
    """Number of agents adjacent to at least one opposite-color agent."""
    same, occ = _core.profile_counts(spec.graph, colors)
    return int((same != occ).sum())


def doi_upper_bound(spec: GameSpec) -> int:
    """Every integrated agent touches a blue ball of size maxdeg + 1."""
    return min((spec.graph.max_degree() + 1) * spec.blue, spec.agents)


def utilitarian_welfare(spec: GameSpec, colors: np.ndarray) -> Fraction:
    """Sum of agent utilities; defined for the linear curve only."""
    if spec.curve.name != "linear":
        raise ValueError(
            f"utilitarian welfare needs the linear curve, got {spec.curve.name!r}")
    total = Fraction(0)
    for v in np.flatnonzero(colors != EMPTY):
        total += agent_utility(spec.curve, spec.peak, spec.graph, colors, int(v))
    return total


def _ratio(opt, worst) -> Optional[Ratio]:
    if worst is None:
        return None
    if worst == 0:
        return UNBOUNDED
    return Fraction(opt) / Fraction(worst)


def _wit(raw: Optional[bytes]) -> Optional[np.ndarray]:
    if raw is None:
        return None
    return np.frombuffer(raw, dtype=np.uint8).copy()


@dataclass(frozen=True)
class WelfareReport:
    profiles: int
    opt_doi: int
    opt_witness: np.ndarray
    ne_exists: bool
    ne_count: int
    worst_ne_doi: Optional[int]
    best_ne_doi: Optional[int]
    worst_ne_witness: Optional[np.ndarray]
    best_ne_witness: Optional[np.ndarray]
    poa: Optional[Ratio]
    pos: Optional[Ratio]


def max_doi(spec: GameSpec, budget: Optional[int] = None,
            jobs: int = 1) -> tuple[int, np.ndarray]:
    """Best achievable DoI and one profile reaching it."""
    agg = _core.scan(spec.graph, spec.red, spec.blue, spec.peak,
                     jobs=jobs, budget=budget)
    return agg["max_doi"], _wit(agg["max_doi_witness"])


def analyze(spec: GameSpec, budget: Optional[int] = None,
            jobs: int = 1) -> WelfareReport:
    """Exhaustive DoI landscape: optimum, stable extremes, price ratios."""
    agg = _core.scan(spec.graph, spec.red, spec.blue, spec.peak,
                     jobs=jobs, budget=budget)
    ne_exists = agg["ne_count"] > 0
    return WelfareReport(
        profiles=agg["profiles"],
        opt_doi=agg["max_doi"],
        opt_witness=_wit(agg["max_doi_witness"]),
        ne_exists=ne_exists,
        ne_count=agg["ne_count"],
        worst_ne_doi=agg["ne_min_doi"],
        best_ne_doi=agg["ne_max_doi"],
        worst_ne_witness=_wit(agg["ne_min_doi_witness"]),
        best_ne_witness=_wit(agg["ne_max_doi_witness"]),
        poa=_ratio(agg["max_doi"], agg["ne_min_doi"]) if ne_exists else None,
        pos=_ratio(agg["max_doi"], agg["ne_max_doi"]) if ne_exists else None,
    )


@dataclass(frozen=True)
class UtilitarianReport:
    profiles: int
    opt_util: Fraction
    opt_util_witness: np.ndarray
    ne_exists: bool
    ne_count: int
    worst_ne_util: Optional[Fraction]
    best_ne_util: Optional[Fraction]
    poa_util: Optional[Ratio]
    opt_doi: int
    worst_ne_doi: Optional[int]
    poa_doi: Optional[Ratio]
    m_peak: Fraction
    transfer_bound: Optional[Ratio]
    bound_holds: Optional[bool]


def m_peak(spec: GameSpec) -> Fraction:
    """max(peak, 1 - peak), the stretch factor between the two price notions."""
    lam = Fraction(spec.peak.num, spec.peak.den)
    return max(lam, 1 - lam)


def analyze_utilitarian(spec: GameSpec, budget: Optional[int] = None,
                        jobs: int = 1) -> UtilitarianReport:
    """One sweep for both welfare notions, plus the transfer-bound check.

    The bound says the utilitarian price of anarchy is at most the DoI one
    times max(peak, 1-peak) * (maxdeg + 1).
    """
    if spec.curve.name != "linear":
        raise ValueError(
            f"utilitarian analysis needs the linear curve, got {spec.curve.name!r}")
    x, y = spec.peak.num, spec.peak.den
    delta = spec.graph.max_degree()
    lcm = math.lcm(*range(1, delta + 2))
    scale = x * (y - x) * lcm

    # compiled kernel accumulates scaled utilities in 64-bit integers
    if (_core.backend_name() == "compiled"
            and spec.agents * y * y * lcm >= 2 ** 62):
        agg = _pure_util_scan(spec, budget)
    else:
        agg = _core.scan(spec.graph, spec.red, spec.blue, spec.peak,
                         util_lcm=lcm, jobs=jobs, budget=budget)

    def unscale(v):
        return None if v is None else Fraction(v, scale)

    ne_exists = agg["ne_count"] > 0
    opt_util = unscale(agg["max_util"])
    worst_util = unscale(agg["ne_min_util"])
    poa_doi = _ratio(agg["max_doi"], agg["ne_min_doi"]) if ne_exists else None
    poa_util = _ratio(opt_util, worst_util) if ne_exists else None
    m = m_peak(spec)
    if poa_doi is None:
        bound = None
        holds = None
    elif poa_doi is UNBOUNDED:
        bound = UNBOUNDED
        holds = True
    else:
        bound = poa_doi * m * (delta + 1)
        holds = poa_util is not UNBOUNDED and poa_util <= bound
    return UtilitarianReport(
        profiles=agg["profiles"],
        opt_util=opt_util,
        opt_util_witness=_wit(agg["max_util_witness"]),
        ne_exists=ne_exists,
        ne_count=agg["ne_count"],
        worst_ne_util=worst_util,
        best_ne_util=unscale(agg["ne_max_util"]),
        poa_util=poa_util,
        opt_doi=agg["max_doi"],
        worst_ne_doi=agg["ne_min_doi"],
        poa_doi=poa_doi,
        m_peak=m,
        transfer_bound=bound,
        bound_holds=holds,
    )


def _pure_util_scan(spec: GameSpec, budget: Optional[int]) -> dict:
    """Fraction-exact fallback for games whose scaled sums overflow int64."""
    from .equilibrium import check_ne, enumerate_profiles

    x, y = spec.peak.num, spec.peak.den
    delta = spec.graph.max_degree()
    lcm = math.lcm(*range(1, delta + 2))
    scale = x * (y - x) * lcm
    agg = {
        "profiles": 0, "ne_count": 0,
        "max_doi": -1, "max_doi_witness": None,
        "ne_min_doi": None, "ne_min_doi_witness": None,
        "ne_max_doi": None, "ne_max_doi_witness": None,
        "max_util": None, "max_util_witness": None,
        "ne_min_util": None, "ne_min_util_witness": None,
        "ne_max_util": None, "ne_max_util_witness": None,
    }
    for colors in enumerate_profiles(spec, budget):
        d = doi(spec, colors)
        u = int(utilitarian_welfare(spec, colors) * scale)
        stable = check_ne(spec, colors).is_ne
        agg["profiles"] += 1
        if d > agg["max_doi"]:
            agg["max_doi"], agg["max_doi_witness"] = d, colors.tobytes()
        if agg["max_util"] is None or u > agg["max_util"]:
            agg["max_util"], agg["max_util_witness"] = u, colors.tobytes()
        if stable:
            agg["ne_count"] += 1
            if agg["ne_min_doi"] is None or d < agg["ne_min_doi"]:
                agg["ne_min_doi"], agg["ne_min_doi_witness"] = d, colors.tobytes()
            if agg["ne_max_doi"] is None or d > agg["ne_max_doi"]:
                agg["ne_max_doi"], agg["ne_max_doi_witness"] = d, colors.tobytes()
            if agg["ne_min_util"] is None or u < agg["ne_min_util"]:
                agg["ne_min_util"], agg["ne_min_util_witness"] = u, colors.tobytes()
            if agg["ne_max_util"] is None or u > agg["ne_max_util"]:
                agg["ne_max_util"], agg["ne_max_util_witness"] = u, colors.tobytes()
    return agg
