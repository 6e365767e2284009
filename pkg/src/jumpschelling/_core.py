"""Backend selection plus shared enumeration plumbing.

The compiled kernel is used when importable; set SCHELLING_PURE=1 to force
the pure fallback.  Enumeration sweeps respect a profile budget
(SCHELLING_BUDGET, default 10**7) and can be split across processes.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from math import comb

from . import _slowcore

DEFAULT_BUDGET = 10_000_000

_FORCE_PURE = os.environ.get("SCHELLING_PURE", "").lower() in ("1", "true", "yes")

if not _FORCE_PURE:
    try:
        from . import _fastcore as _backend
        _BACKEND_NAME = "compiled"
    except ImportError:
        _backend = _slowcore
        _BACKEND_NAME = "pure"
else:
    _backend = _slowcore
    _BACKEND_NAME = "pure"


def backend_name() -> str:
    return _BACKEND_NAME


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive sweep would visit more profiles than allowed."""

    def __init__(self, total: int, budget: int):
        super().__init__(
            f"enumeration needs {total} profiles, budget is {budget}"
        )
        self.total = total
        self.budget = budget


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("SCHELLING_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def profile_total(n: int, red: int, blue: int) -> int:
    return comb(n, red) * comb(n - red, blue)


# -- lexicographic combinations ---------------------------------------


def combination_unrank(n: int, k: int, rank: int) -> list[int]:
    """The rank-th k-subset of 0..n-1 in lexicographic order."""
    if not (0 <= rank < comb(n, k)):
        raise ValueError("rank out of range")
    combo = []
    x = 0
    for i in range(k):
        while True:
            c = comb(n - x - 1, k - i - 1)
            if rank < c:
                combo.append(x)
                x += 1
                break
            rank -= c
            x += 1
    return combo


# -- kernel wrappers ---------------------------------------------------


def profile_counts(g, colors):
    return _backend.profile_counts(g.offsets, g.nbrs, colors)


def _int64_safe(peak, g) -> bool:
    # cross products in the compiled kernel stay under 2**63 when
    # den * (max closed neighborhood) fits in 31 bits
    return peak.den * (g.max_degree() + 1) < 2 ** 31


def first_improving_jump(g, colors, peak):
    core = _backend if _int64_safe(peak, g) else _slowcore
    return core.first_improving_jump(g.offsets, g.nbrs, colors,
                                     peak.num, peak.den)


def _scan_chunk(args):
    offsets, nbrs, red_init, n_red, blue, num, den, util_lcm, cap = args
    return _backend.scan_profiles(offsets, nbrs, red_init, n_red, blue,
                                  num, den, util_lcm, cap)


def scan(g, red: int, blue: int, peak, util_lcm: int = 0,
         collect_cap: int = -1, jobs: int = 1,
         budget: int | None = None) -> dict:
    """Aggregate statistics over every placement of the two cohorts.

    Raises BudgetExceeded before doing any work when the sweep is too big.
    With jobs > 1 the red-combination rank range is split across worker
    processes; results are merged so ties resolve exactly as a single
    sequential sweep would.
    """
    n = g.n
    total_red = comb(n, red)
    total = total_red * comb(n - red, blue)
    limit = resolve_budget(budget)
    if total > limit:
        raise BudgetExceeded(total, limit)
    core = _backend if _int64_safe(peak, g) else _slowcore

    # huge peak denominators must stay on the arbitrary-precision path
    if jobs <= 1 or total_red < jobs * 4 or core is _slowcore:
        return core.scan_profiles(g.offsets, g.nbrs, list(range(red)),
                                  total_red, blue, peak.num, peak.den,
                                  util_lcm, collect_cap)

    bounds = [total_red * i // jobs for i in range(jobs + 1)]
    tasks = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi > lo:
            tasks.append((g.offsets, g.nbrs, combination_unrank(n, red, lo),
                          hi - lo, blue, peak.num, peak.den, util_lcm,
                          collect_cap))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_scan_chunk, tasks))
    return _merge_scans(parts, collect_cap)


def _merge_scans(parts: list[dict], collect_cap: int) -> dict:
    out = parts[0]
    for p in parts[1:]:
        out["profiles"] += p["profiles"]
        out["ne_count"] += p["ne_count"]
        for key, better in (
            ("max_doi", _gt), ("ne_min_doi", _lt), ("ne_max_doi", _gt),
            ("max_util", _gt), ("ne_min_util", _lt), ("ne_max_util", _gt),
        ):
            if p[key] is None:
                continue
            if out[key] is None or better(p[key], out[key]):
                out[key] = p[key]
                out[key + "_witness"] = p[key + "_witness"]
        if collect_cap >= 0:
            room = collect_cap - len(out["ne_profiles"])
            out["ne_profiles"].extend(p["ne_profiles"][:room])
            if p["ne_truncated"] or len(p["ne_profiles"]) > room:
                out["ne_truncated"] = True
    return out


def _gt(a, b):
    return a > b


def _lt(a, b):
    return a < b
