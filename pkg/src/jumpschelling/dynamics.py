"""Improving-response dynamics: schedulers, cycle detection, scripted replays.

A run applies one improving jump per step.  Decisions compare scores, so the
utility curve never influences the trajectory.  Cycle detection is exact:
occupancy states are remembered as byte strings and revisits re-checked by
full comparison.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import _core
from .model import (
    EMPTY,
    GameSpec,
    apply_jump,
    color_name,
    fraction_at,
    landing_fraction,
    score,
)


class ScriptError(ValueError):
    """A scripted move is malformed or not improving."""


@dataclass(frozen=True)
class Jump:
    origin: int
    target: int
    color: int
    score_before: Fraction
    score_after: Fraction


@dataclass
class Trace:
    """Jump log of a run plus the starting integration level."""

    initial_doi: int
    rows: list[tuple[int, Jump, int]] = field(default_factory=list)

    def append(self, step: int, jump: Jump, doi_after: int):
        self.rows.append((step, jump, doi_after))

    def __len__(self):
        return len(self.rows)


@dataclass(frozen=True)
class Converged:
    final: np.ndarray
    steps: int
    trace: Trace


@dataclass(frozen=True)
class CycleDetected:
    first_repeat_index: int
    cycle_length: int
    trace: Trace


@dataclass(frozen=True)
class BudgetExhausted:
    last: np.ndarray
    trace: Trace


RunOutcome = Union[Converged, CycleDetected, BudgetExhausted]


def _doi(g, colors: np.ndarray) -> int:
    same, occ = _core.profile_counts(g, colors)
    # empty nodes report 0/0, so the mismatch test alone counts integrated agents
    return int((same != occ).sum())


def _make_jump(spec: GameSpec, colors: np.ndarray, u: int, w: int) -> Jump:
    before = score(spec.peak, *fraction_at(spec.graph, colors, u))
    after = score(spec.peak, *landing_fraction(spec.graph, colors, u, w))
    return Jump(u, w, int(colors[u]), before, after)


def improving_jumps(spec: GameSpec, colors: np.ndarray) -> list[Jump]:
    """All strictly improving (origin, target) pairs, lexicographic."""
    g = spec.graph
    out = []
    occupied = [int(v) for v in np.flatnonzero(colors != EMPTY)]
    empties = [int(v) for v in np.flatnonzero(colors == EMPTY)]
    for u in occupied:
        before = score(spec.peak, *fraction_at(g, colors, u))
        for w in empties:
            after = score(spec.peak, *landing_fraction(g, colors, u, w))
            if after > before:
                out.append(Jump(u, w, int(colors[u]), before, after))
    return out


# -- scheduler policies ------------------------------------------------


class FirstImprove:
    """Lexicographically first improving jump."""

    def choose(self, spec: GameSpec, colors: np.ndarray, step: int) -> Optional[Jump]:
        hit = _core.first_improving_jump(spec.graph, colors, spec.peak)
        if hit is None:
            return None
        return _make_jump(spec, colors, hit[0], hit[1])


class BestImprove:
    """Largest landing score; ties broken lexicographically by (origin, target)."""

    def choose(self, spec: GameSpec, colors: np.ndarray, step: int) -> Optional[Jump]:
        options = improving_jumps(spec, colors)
        if not options:
            return None
        return max(options, key=lambda j: j.score_after)


class Random:
    """Uniform choice among improving jumps; reproducible per seed."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def choose(self, spec: GameSpec, colors: np.ndarray, step: int) -> Optional[Jump]:
        options = improving_jumps(spec, colors)
        if not options:
            return None
        return self._rng.choice(options)


class Scripted:
    """Replay a fixed (origin, target) sequence; movers named by source node."""

    def __init__(self, jumps: Sequence[tuple[int, int]]):
        self.jumps = [(int(u), int(w)) for u, w in jumps]

    def choose(self, spec: GameSpec, colors: np.ndarray, step: int) -> Optional[Jump]:
        if step >= len(self.jumps):
            return None
        u, w = self.jumps[step]
        if int(colors[u]) == EMPTY:
            raise ScriptError(f"step {step}: no agent on node {u}")
        if int(colors[w]) != EMPTY:
            raise ScriptError(f"step {step}: target node {w} is occupied")
        jump = _make_jump(spec, colors, u, w)
        if not jump.score_after > jump.score_before:
            raise ScriptError(
                f"step {step}: jump {u}->{w} is not improving "
                f"({jump.score_before} -> {jump.score_after})")
        return jump


def default_max_steps(spec: GameSpec) -> int:
    return 10 * spec.agents * spec.n


def run(spec: GameSpec, colors0: np.ndarray, policy,
        max_steps: Optional[int] = None) -> RunOutcome:
    """Iterate policy-chosen improving jumps until rest, revisit, or budget.

    Each round first asks whether any improving jump exists at all (if not,
    the profile is stable and the run converged), then lets the policy pick
    one.  A revisited occupancy after a jump proves an improving cycle.
    """
    if max_steps is None:
        max_steps = default_max_steps(spec)
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    g = spec.graph
    colors = colors0.copy()
    trace = Trace(initial_doi=_doi(g, colors))
    seen: dict[bytes, int] = {colors.tobytes(): 0}
    step = 0
    while True:
        if _core.first_improving_jump(g, colors, spec.peak) is None:
            return Converged(colors, step, trace)
        if step >= max_steps:
            return BudgetExhausted(colors, trace)
        jump = policy.choose(spec, colors, step)
        if jump is None:
            # A script ran out before reaching an equilibrium.
            return BudgetExhausted(colors, trace)
        colors = apply_jump(colors, jump.origin, jump.target)
        step += 1
        trace.append(step - 1, jump, _doi(g, colors))
        key = colors.tobytes()
        if key in seen:
            first = seen[key]
            return CycleDetected(first, step - first, trace)
        seen[key] = step


def verify_irc(spec: GameSpec, colors0: np.ndarray,
               jumps: Sequence[tuple[int, int]]) -> bool:
    """True iff the nonempty script is improving throughout and closes a cycle."""
    if len(jumps) == 0:
        return False
    colors = colors0.copy()
    for k, (u, w) in enumerate(jumps):
        u, w = int(u), int(w)
        if int(colors[u]) == EMPTY or int(colors[w]) != EMPTY:
            raise ScriptError(f"step {k}: jump {u}->{w} malformed")
        before = score(spec.peak, *fraction_at(spec.graph, colors, u))
        after = score(spec.peak, *landing_fraction(spec.graph, colors, u, w))
        if not after > before:
            return False
        colors = apply_jump(colors, u, w)
    return bool(np.array_equal(colors, colors0))


def assert_doi_monotone(spec: GameSpec, trace: Trace) -> bool:
    """True iff DoI rises strictly at every logged step."""
    prev = trace.initial_doi
    for _, _, doi_after in trace.rows:
        if doi_after <= prev:
            return False
        prev = doi_after
    return True


def write_trace_csv(trace: Trace, path: str):
    with open(path, "w", newline="") as fh:
        _write_trace(trace, fh)


def _write_trace(trace: Trace, fh):
    writer = csv.writer(fh)
    writer.writerow(["step", "from", "to", "color",
                     "score_before", "score_after", "doi"])
    for step, jump, doi_after in trace.rows:
        writer.writerow([
            step, jump.origin, jump.target, color_name(jump.color),
            _rat(jump.score_before), _rat(jump.score_after), doi_after,
        ])


def _rat(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"
