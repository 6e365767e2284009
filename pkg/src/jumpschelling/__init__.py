"""Exact engine for jump games with single-peaked neighborhood preferences.

Two cohorts of agents occupy distinct nodes of a connected graph and jump
to empty nodes whenever that strictly improves them; preferences peak at a
shared rational fraction of same-color neighbors.  The package simulates
these dynamics, checks and constructs stable placements, measures
integration exactly by exhaustive enumeration, and compiles boolean
formulas into games whose equilibria encode solutions.

A compiled scan kernel is used when available; a pure NumPy fallback is
selected automatically (or forced via SCHELLING_PURE=1).
"""

from ._core import BudgetExceeded, backend_name, resolve_budget
from .dynamics import (BestImprove, BudgetExhausted, Converged, CycleDetected,
                       FirstImprove, Jump, Random, ScriptError, Scripted,
                       Trace, assert_doi_monotone, default_max_steps,
                       improving_jumps, run, verify_irc, write_trace_csv)
from .equilibrium import (ContractViolation, NeReport, check_ne,
                          construct_ne_bipartite, construct_ne_independent_set,
                          construct_ne_leaves, construct_ne_max_deg_is,
                          construct_ne_regular_e1, enumerate_profiles,
                          find_all_ne)
from .graphs import (Graph, build_circulant, build_clique,
                     build_complete_bipartite, build_path, build_ring,
                     build_star, regular_minus_edge)
from .io import (Instance, export_dot, frac_from_json, frac_json,
                 instance_to_json, parse_instance, read_instance,
                 write_instance)
from .model import (BLUE, EMPTY, LINEAR, RED, GameSpec, Peak, UtilityCurve,
                    agent_score, agent_utility, apply_jump, color_name,
                    fraction_at, is_segregated, landing_fraction,
                    linear_curve, make_profile, score, score_fraction,
                    square_curve, utility, validate_profile)
from .welfare import (UNBOUNDED, UtilitarianReport, WelfareReport, analyze,
                      analyze_utilitarian, doi, doi_upper_bound, max_doi,
                      utilitarian_welfare)

__version__ = "0.1.0"

__all__ = [
    "BLUE", "EMPTY", "LINEAR", "RED", "UNBOUNDED",
    "BestImprove", "BudgetExceeded", "BudgetExhausted", "ContractViolation",
    "Converged", "CycleDetected", "FirstImprove", "GameSpec", "Graph",
    "Instance", "Jump", "NeReport", "Peak", "Random", "ScriptError",
    "Scripted", "Trace", "UtilitarianReport", "UtilityCurve", "WelfareReport",
    "agent_score", "agent_utility", "analyze", "analyze_utilitarian",
    "apply_jump", "assert_doi_monotone", "backend_name", "build_circulant",
    "build_clique", "build_complete_bipartite", "build_path", "build_ring",
    "build_star", "check_ne", "color_name", "construct_ne_bipartite",
    "construct_ne_independent_set", "construct_ne_leaves",
    "construct_ne_max_deg_is", "construct_ne_regular_e1",
    "default_max_steps", "doi", "doi_upper_bound", "enumerate_profiles",
    "export_dot", "find_all_ne", "frac_from_json", "frac_json",
    "fraction_at", "improving_jumps", "instance_to_json", "is_segregated",
    "landing_fraction", "linear_curve", "make_profile", "max_doi",
    "parse_instance", "read_instance", "regular_minus_edge",
    "resolve_budget", "run", "score", "score_fraction", "square_curve",
    "utilitarian_welfare", "utility", "validate_profile", "verify_irc",
    "write_instance", "write_trace_csv",
]
