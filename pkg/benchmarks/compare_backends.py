#!/usr/bin/env python3
"""Time the compiled sweep kernel against the pure-Python fallback.

Both backends are run on identical inputs and must return identical
aggregates; the table reports wall time and the speedup factor.  The
dispatch layer normally picks the compiled kernel on its own, so this is
the place to check what the fallback actually costs.

Usage:
    python3 benchmarks/compare_backends.py [--full] [--jobs N] [--repeat K]
"""

import argparse
import time
from math import comb

from jumpschelling import _core, _slowcore, backend_name
from jumpschelling.constructions import FACTORIES
from jumpschelling.graphs import build_circulant, build_ring
from jumpschelling.model import GameSpec, Peak


def default_cases():
    cases = [
        ("ring 10, 5+3", GameSpec(build_ring(10), 5, 3, Peak(1, 2))),
        ("ring 12, 6+4", GameSpec(build_ring(12), 6, 4, Peak(1, 2))),
        ("circulant 12 {1,2}, 6+4",
         GameSpec(build_circulant(12, [1, 2]), 6, 4, Peak(1, 3))),
        ("ring 14, 7+4", GameSpec(build_ring(14), 7, 4, Peak(1, 2))),
        ("anarchy gadget, degree 4", FACTORIES["poa-general"]().spec),
    ]
    return cases


def full_cases():
    return [("low-peak cycle gadget", FACTORIES["low-peak-irc"]().spec)]


def time_call(fn, repeat):
    best, result = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def bench(label, spec, jobs, repeat):
    g, peak = spec.graph, spec.peak
    total = comb(g.n, spec.red) * comb(g.n - spec.red, spec.blue)

    t_fast, fast = time_call(
        lambda: _core.scan(g, spec.red, spec.blue, peak, budget=total), repeat)
    t_pure, pure = time_call(
        lambda: _slowcore.scan_profiles(g.offsets, g.nbrs,
                                        list(range(spec.red)),
                                        comb(g.n, spec.red), spec.blue,
                                        peak.num, peak.den, 0, -1), repeat)
    if fast != pure:
        raise SystemExit(f"{label}: backends disagree")

    row = [label, f"{total:,}", f"{t_fast * 1e3:9.1f}", f"{t_pure * 1e3:9.1f}",
           f"{t_pure / t_fast:6.1f}x"]
    if jobs > 1:
        t_par, par = time_call(
            lambda: _core.scan(g, spec.red, spec.blue, peak, jobs=jobs,
                               budget=total), repeat)
        if par != pure:
            raise SystemExit(f"{label}: parallel sweep disagrees")
        row.append(f"{t_par * 1e3:9.1f}")
    print("  ".join(f"{cell:<26}" if i == 0 else cell
                    for i, cell in enumerate(row)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--full", action="store_true",
                    help="add the multi-million-profile case")
    ap.add_argument("--jobs", type=int, default=1,
                    help="also time the compiled sweep with this many workers")
    ap.add_argument("--repeat", type=int, default=3,
                    help="repetitions per cell, best-of (default 3)")
    args = ap.parse_args()

    print(f"dispatch backend: {backend_name()}")
    header = ["case", "profiles", "fast (ms)", "pure (ms)", "ratio"]
    if args.jobs > 1:
        header.append(f"fast x{args.jobs} (ms)")
    print("  ".join(f"{cell:<26}" if i == 0 else cell
                    for i, cell in enumerate(header)))
    cases = default_cases() + (full_cases() if args.full else [])
    for label, spec in cases:
        bench(label, spec, args.jobs, args.repeat)


if __name__ == "__main__":
    main()
