"""Command-line front end.

Exit codes: 0 when the requested check or run succeeds, 1 when a
verification fails or a run ends inconclusively, 2 on usage errors.
Results go to stdout as JSON; diagnostics go to stderr.  Exact rationals
are emitted as {"num": p, "den": q}, never as floats.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import _core, constructions, reductions
from .dynamics import (BestImprove, Converged, CycleDetected, FirstImprove,
                       Random, ScriptError, Scripted, run, write_trace_csv)
from .equilibrium import check_ne, find_all_ne
from .graphs import (build_circulant, build_clique, build_complete_bipartite,
                     build_path, build_ring, build_star)
from .io import (Instance, export_dot, frac_json, instance_to_json,
                 read_instance, write_instance)
from .model import BLUE, RED, GameSpec, Peak, color_name, make_profile
from .welfare import analyze, analyze_utilitarian, doi


class CliError(Exception):
    """Bad arguments or unreadable input; maps to exit code 2."""


def _peak_arg(text: str) -> Peak:
    try:
        return Peak.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _placement_json(colors: np.ndarray) -> dict:
    return {"red": [int(v) for v in np.flatnonzero(colors == RED)],
            "blue": [int(v) for v in np.flatnonzero(colors == BLUE)]}


def _load_instance(args) -> Instance:
    try:
        inst = read_instance(args.instance)
    except OSError as exc:
        raise CliError(f"cannot read {args.instance}: {exc}")
    except ValueError as exc:
        raise CliError(str(exc))
    if getattr(args, "peak", None) is not None:
        spec = inst.spec
        inst = Instance(GameSpec(spec.graph, spec.red, spec.blue, args.peak,
                                 spec.curve), inst.colors, inst.roles)
    return inst


def _need_placement(inst: Instance) -> np.ndarray:
    if inst.colors is None:
        raise CliError("instance has no placement block")
    return inst.colors


def _emit(payload: dict):
    print(json.dumps(payload, indent=2))


def _parse_nodes(text: str) -> list:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise CliError(f"expected a list of integers, got {text!r}")


# -- build -------------------------------------------------------------


def _cmd_build(args) -> int:
    fam = args.family
    if fam == "ring":
        g = build_ring(_one_size(args))
    elif fam == "path":
        g = build_path(_one_size(args))
    elif fam == "star":
        g = build_star(_one_size(args))
    elif fam == "clique":
        g = build_clique(_one_size(args))
    elif fam == "complete-bipartite":
        if args.parts is None:
            raise CliError("complete-bipartite needs --parts A B")
        g = build_complete_bipartite(*args.parts)
    elif fam == "circulant":
        if args.offsets is None:
            raise CliError("circulant needs --offsets")
        g = build_circulant(_one_size(args), _parse_nodes(args.offsets))
    else:
        raise CliError(f"unknown family {fam!r}")

    spec = GameSpec(g, args.red, args.blue, args.peak)
    colors = None
    if args.reds is not None or args.blues is not None:
        if args.reds is None or args.blues is None:
            raise CliError("give both --reds and --blues or neither")
        reds, blues = _parse_nodes(args.reds), _parse_nodes(args.blues)
        if len(reds) != spec.red or len(blues) != spec.blue:
            raise CliError(
                f"placement sizes {len(reds)}/{len(blues)} do not match "
                f"cohorts {spec.red}/{spec.blue}")
        colors = make_profile(spec.n, reds, blues)
    payload = instance_to_json(spec, colors)
    if args.out:
        write_instance(args.out, spec, colors)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        _emit(payload)
    return 0


def _one_size(args) -> int:
    if args.nodes is None:
        raise CliError(f"{args.family} needs --nodes")
    return args.nodes


# -- dynamics ----------------------------------------------------------


def _make_policy(args):
    if args.policy == "first":
        return FirstImprove()
    if args.policy == "best":
        return BestImprove()
    if args.policy == "random":
        return Random(args.seed)
    if args.policy == "script":
        if not args.script:
            raise CliError("script policy needs --script FILE")
        try:
            with open(args.script) as fh:
                moves = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read script: {exc}")
        if (not isinstance(moves, list)
                or any(not isinstance(mv, list) or len(mv) != 2
                       for mv in moves)):
            raise CliError("script must be a JSON list of [from, to] pairs")
        return Scripted([(mv[0], mv[1]) for mv in moves])
    raise CliError(f"unknown policy {args.policy!r}")


def _cmd_dynamics(args) -> int:
    inst = _load_instance(args)
    colors0 = _need_placement(inst)
    policy = _make_policy(args)
    try:
        outcome = run(inst.spec, colors0, policy, max_steps=args.max_steps)
    except ScriptError as exc:
        print(f"script failed: {exc}", file=sys.stderr)
        return 1

    trace = outcome.trace
    payload = {
        "policy": args.policy,
        "steps": len(trace),
        "doi_initial": trace.initial_doi,
        "doi_final": trace.rows[-1][2] if trace.rows else trace.initial_doi,
    }
    if args.policy == "random":
        payload["seed"] = args.seed
    if isinstance(outcome, Converged):
        payload["outcome"] = "converged"
        payload["final"] = _placement_json(outcome.final)
        code = 0
    elif isinstance(outcome, CycleDetected):
        payload["outcome"] = "cycle"
        payload["first_repeat_index"] = outcome.first_repeat_index
        payload["cycle_length"] = outcome.cycle_length
        code = 0
    else:
        payload["outcome"] = "budget"
        payload["final"] = _placement_json(outcome.last)
        code = 1
    if args.trace:
        write_trace_csv(trace, args.trace)
        print(f"wrote {args.trace}", file=sys.stderr)
    _emit(payload)
    return code


# -- equilibrium queries -----------------------------------------------


def _cmd_check_ne(args) -> int:
    inst = _load_instance(args)
    colors = _need_placement(inst)
    report = check_ne(inst.spec, colors)
    payload = {"is_ne": report.is_ne, "witness": None}
    if report.witness is not None:
        j = report.witness
        payload["witness"] = {
            "from": j.origin, "to": j.target,
            "color": color_name(j.color),
            "score_before": frac_json(j.score_before),
            "score_after": frac_json(j.score_after),
        }
    _emit(payload)
    return 0 if report.is_ne else 1


def _cmd_enumerate(args) -> int:
    inst = _load_instance(args)
    hits = find_all_ne(inst.spec, budget=args.budget, jobs=args.jobs)
    for colors in hits:
        row = _placement_json(colors)
        row["doi"] = doi(inst.spec, colors)
        print(json.dumps(row))
    print(f"{len(hits)} stable profiles", file=sys.stderr)
    return 0


def _cmd_analyze(args) -> int:
    inst = _load_instance(args)
    report = analyze(inst.spec, budget=args.budget, jobs=args.jobs)
    payload = {
        "profiles": report.profiles,
        "opt_doi": report.opt_doi,
        "opt_placement": _placement_json(report.opt_witness),
        "ne_exists": report.ne_exists,
        "ne_count": report.ne_count,
        "worst_ne_doi": report.worst_ne_doi,
        "best_ne_doi": report.best_ne_doi,
        "poa": frac_json(report.poa),
        "pos": frac_json(report.pos),
    }
    if report.worst_ne_witness is not None:
        payload["worst_ne_placement"] = _placement_json(report.worst_ne_witness)
    if report.best_ne_witness is not None:
        payload["best_ne_placement"] = _placement_json(report.best_ne_witness)
    if args.utilitarian:
        rep = analyze_utilitarian(inst.spec, budget=args.budget,
                                  jobs=args.jobs)
        payload["utilitarian"] = {
            "opt_util": frac_json(rep.opt_util),
            "worst_ne_util": frac_json(rep.worst_ne_util),
            "best_ne_util": frac_json(rep.best_ne_util),
            "poa_util": frac_json(rep.poa_util),
            "poa_doi": frac_json(rep.poa_doi),
            "m_peak": frac_json(rep.m_peak),
            "transfer_bound": frac_json(rep.transfer_bound),
            "bound_holds": rep.bound_holds,
        }
    _emit(payload)
    return 0


# -- gadget construction -----------------------------------------------

_FACTORY_FLAGS = {
    "ring-irc": ("variant",),
    "poa-general": ("delta",),
    "poa-regular": ("delta", "z"),
    "poa-balanced": ("blues",),
    "pos-tree": ("reds",),
    "pos-balanced": ("blues",),
    "poa-utilitarian": ("blues",),
}


def _cmd_construct(args) -> int:
    factory = constructions.FACTORIES[args.name]
    kwargs = {}
    for flag in _FACTORY_FLAGS.get(args.name, ()):
        value = getattr(args, flag)
        if value is not None:
            kwargs[flag] = value
    for flag in ("variant", "delta", "z", "blues", "reds"):
        if getattr(args, flag) is not None \
                and flag not in _FACTORY_FLAGS.get(args.name, ()):
            raise CliError(f"--{flag} does not apply to {args.name}")
    try:
        built = factory(**kwargs)
    except ValueError as exc:
        raise CliError(str(exc))

    spec = built.spec
    payload = {
        "name": built.name,
        "nodes": spec.n,
        "red": spec.red,
        "blue": spec.blue,
        "peak": {"num": spec.peak.num, "den": spec.peak.den},
        "derived": built.derived,
        "profiles": {key: _placement_json(colors)
                     for key, colors in built.profiles.items()},
    }
    if built.notes:
        payload["notes"] = built.notes

    code = 0
    if args.verify:
        checks = constructions.verify(built, budget=args.budget,
                                      jobs=args.jobs)
        payload["checks"] = [{"claim": c.claim, "ok": c.ok, "detail": c.detail}
                             for c in checks]
        for c in checks:
            mark = "ok" if c.ok else "FAIL"
            print(f"[{mark}] {c.claim}: {c.detail}", file=sys.stderr)
        if not all(c.ok for c in checks):
            code = 1

    if args.out:
        start = built.profiles.get("start")
        if start is None and built.profiles:
            start = next(iter(built.profiles.values()))
        write_instance(args.out, spec, start)
        sidecar = _sidecar_path(args.out)
        with open(sidecar, "w") as fh:
            json.dump({"name": built.name,
                       "expected": built.expected,
                       "profiles": payload["profiles"],
                       "notes": built.notes}, fh, indent=2)
            fh.write("\n")
        print(f"wrote {args.out} and {sidecar}", file=sys.stderr)
    _emit(payload)
    return code


def _sidecar_path(out: str) -> str:
    stem = out[:-5] if out.endswith(".json") else out
    return stem + ".expected.json"


# -- formula compilation -----------------------------------------------


def _read_cnf(path: str) -> reductions.CnfFormula:
    try:
        with open(path) as fh:
            return reductions.parse_dimacs(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    except ValueError as exc:
        raise CliError(f"bad CNF: {exc}")


def _read_assignment(path: str, num_vars: int) -> list:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read assignment: {exc}")
    if not isinstance(raw, list) or len(raw) != num_vars \
            or any(b not in (0, 1, True, False) for b in raw):
        raise CliError(f"assignment must be a JSON list of {num_vars} bits")
    return [bool(b) for b in raw]


def _cmd_reduce(args) -> int:
    f = _read_cnf(args.cnf)
    try:
        if args.flavor == "half":
            inst = reductions.compile_half(f)
        elif args.flavor == "general":
            if args.peak is None:
                raise CliError("general flavor needs --peak")
            inst = reductions.compile_general(f, args.peak)
        else:
            inst = reductions.compile_maxsat(f)
    except ValueError as exc:
        raise CliError(str(exc))

    spec = inst.spec
    params = dict(inst.params)
    for key in ("ladder", "anchor_score"):
        if key in params:
            value = params[key]
            if key == "ladder":
                params[key] = [{"num": p, "den": q} for p, q in value]
            else:
                params[key] = {"num": value[0], "den": value[1]}
    payload = {
        "flavor": inst.kind,
        "variables": f.num_vars,
        "clauses": f.num_clauses,
        "nodes": spec.n,
        "red": spec.red,
        "blue": spec.blue,
        "peak": {"num": spec.peak.num, "den": spec.peak.den},
        "params": params,
    }

    code = 0
    if args.check_assignment:
        assign = _read_assignment(args.check_assignment, f.num_vars)
        if inst.kind == "maxsat":
            sat = reductions.satisfied_count(f, assign)
            profile = reductions.assignment_to_profile(inst, assign)
            payload["assignment_check"] = {
                "satisfied": sat,
                "doi": doi(spec, profile),
                "threshold_equivalent": reductions.maxsat_threshold(inst, sat),
            }
        else:
            profile = reductions.assignment_to_profile(inst, assign)
            report = check_ne(spec, profile)
            script = reductions.ird_witness(inst, assign)
            outcome = run(spec, inst.sigma0, Scripted(script),
                          max_steps=len(script) + 1)
            replay_ok = (isinstance(outcome, Converged)
                         and bool((outcome.final == profile).all()))
            payload["assignment_check"] = {
                "is_ne": report.is_ne,
                "replay_converges": replay_ok,
                "replay_steps": len(outcome.trace),
            }
            if not (report.is_ne and replay_ok):
                code = 1

    if args.out:
        write_instance(args.out, spec, inst.sigma0)
        print(f"wrote {args.out}", file=sys.stderr)
    _emit(payload)
    return code


# -- dot export --------------------------------------------------------


def _cmd_export_dot(args) -> int:
    inst = _load_instance(args)
    text = export_dot(inst.spec, inst.colors)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


# -- parser ------------------------------------------------------------


def _add_instance_flags(p, with_peak=True):
    p.add_argument("--instance", required=True, help="instance JSON file")
    if with_peak:
        p.add_argument("--peak", type=_peak_arg, default=None,
                       help="override the instance peak (X/Y)")


def _add_budget_flags(p):
    p.add_argument("--budget", type=int, default=None,
                   help="profile enumeration cap")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel enumeration workers")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="jumpschelling",
        description="Exact tooling for jump games with single-peaked "
                    "neighborhood preferences.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write an instance file for a graph family")
    p.add_argument("--family", required=True,
                   choices=["ring", "path", "star", "clique",
                            "complete-bipartite", "circulant"])
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--parts", type=int, nargs=2, default=None,
                   metavar=("A", "B"))
    p.add_argument("--offsets", default=None,
                   help="circulant offsets, e.g. '1,2'")
    p.add_argument("--red", type=int, required=True)
    p.add_argument("--blue", type=int, required=True)
    p.add_argument("--peak", type=_peak_arg, required=True)
    p.add_argument("--reds", default=None, help="red node list, e.g. '0,2'")
    p.add_argument("--blues", default=None, help="blue node list")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("dynamics", help="run improving-response dynamics")
    _add_instance_flags(p)
    p.add_argument("--policy", choices=["first", "best", "random", "script"],
                   default="first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--script", default=None,
                   help="JSON list of [from, to] moves for --policy script")
    p.add_argument("--trace", default=None, help="write the jump log as CSV")
    p.set_defaults(func=_cmd_dynamics)

    p = sub.add_parser("check-ne", help="test the placement for stability")
    _add_instance_flags(p)
    p.set_defaults(func=_cmd_check_ne)

    p = sub.add_parser("enumerate", help="stream every stable profile")
    _add_instance_flags(p)
    _add_budget_flags(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("analyze",
                       help="exhaustive optimum and equilibrium prices")
    _add_instance_flags(p)
    _add_budget_flags(p)
    p.add_argument("--utilitarian", action="store_true",
                   help="also analyze summed utility welfare")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("construct", help="build a named gadget")
    p.add_argument("name", choices=sorted(constructions.FACTORIES))
    p.add_argument("--verify", action="store_true",
                   help="re-check the gadget's frozen claims")
    p.add_argument("--out", default=None,
                   help="write instance JSON plus expected-values sidecar")
    p.add_argument("--variant", default=None, help="ring-irc: ring or path")
    p.add_argument("--delta", type=int, default=None, help="degree parameter")
    p.add_argument("--z", type=int, default=None,
                   help="poa-regular: right block size")
    p.add_argument("--blues", type=int, default=None, help="blue cohort size")
    p.add_argument("--reds", type=int, default=None, help="red cohort size")
    _add_budget_flags(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("reduce", help="compile a CNF formula into a game")
    p.add_argument("flavor", choices=["half", "general", "maxsat"])
    p.add_argument("--cnf", required=True, help="DIMACS CNF file")
    p.add_argument("--peak", type=_peak_arg, default=None,
                   help="target peak for the general flavor")
    p.add_argument("--check-assignment", default=None,
                   help="JSON bit list; check the profile it encodes")
    p.add_argument("--out", default=None, help="write the compiled instance")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("export-dot", help="emit Graphviz DOT")
    _add_instance_flags(p, with_peak=False)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_export_dot)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _core.BudgetExceeded as exc:
        print(f"refusing: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
