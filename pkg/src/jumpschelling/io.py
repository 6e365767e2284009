"""Instance files, rational-safe JSON, and DOT export.

An instance file is JSON with a graph block, cohort sizes, the peak, and
optionally a fixed placement and a node-role table.  Rationals are always
{"num", "den"} objects; floats never appear.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .graphs import Graph
from .model import BLUE, EMPTY, RED, GameSpec, Peak, make_profile
from .welfare import UNBOUNDED, _Unbounded


@dataclass(frozen=True)
class Instance:
    spec: GameSpec
    colors: Optional[np.ndarray]
    roles: Optional[dict]


def frac_json(value) -> Union[dict, str, None]:
    """Serialize a ratio; UNBOUNDED becomes the string "unbounded"."""
    if value is None:
        return None
    if isinstance(value, _Unbounded):
        return "unbounded"
    f = Fraction(value)
    return {"num": f.numerator, "den": f.denominator}


def frac_from_json(obj) -> Union[Fraction, _Unbounded, None]:
    if obj is None:
        return None
    if obj == "unbounded":
        return UNBOUNDED
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise ValueError(f"rational must be {{num, den}}, got {obj!r}")
    return Fraction(obj["num"], obj["den"])


def _need(obj: dict, field: str, kind, where: str):
    if field not in obj:
        raise ValueError(f"{where}: missing field {field!r}")
    value = obj[field]
    if kind is int and isinstance(value, bool):
        raise ValueError(f"{where}.{field}: expected integer, got boolean")
    if not isinstance(value, kind):
        raise ValueError(
            f"{where}.{field}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def parse_instance(obj: dict) -> Instance:
    """Build a validated Instance from decoded JSON."""
    if not isinstance(obj, dict):
        raise ValueError("instance: top level must be an object")
    gobj = _need(obj, "graph", dict, "instance")
    n = _need(gobj, "n", int, "instance.graph")
    edges = _need(gobj, "edges", list, "instance.graph")
    pairs = []
    for i, e in enumerate(edges):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(v, int) for v in e)):
            raise ValueError(
                f"instance.graph.edges[{i}]: expected [u, v] integers, got {e!r}")
        pairs.append((e[0], e[1]))
    graph = Graph.from_edges(n, pairs)

    red = _need(obj, "red", int, "instance")
    blue = _need(obj, "blue", int, "instance")
    pobj = _need(obj, "peak", dict, "instance")
    num = _need(pobj, "num", int, "instance.peak")
    den = _need(pobj, "den", int, "instance.peak")
    try:
        peak = Peak(num, den)
    except ValueError as exc:
        raise ValueError(f"instance.peak: {exc}") from None
    try:
        spec = GameSpec(graph, red, blue, peak)
    except ValueError as exc:
        raise ValueError(f"instance: {exc}") from None

    colors = None
    if obj.get("placement") is not None:
        pl = _need(obj, "placement", dict, "instance")
        reds = _need(pl, "red", list, "instance.placement")
        blues = _need(pl, "blue", list, "instance.placement")
        if len(reds) != red or len(blues) != blue:
            raise ValueError(
                f"instance.placement: got {len(reds)} reds and {len(blues)} "
                f"blues, spec says {red} and {blue}")
        try:
            colors = make_profile(n, reds, blues)
        except (ValueError, IndexError) as exc:
            raise ValueError(f"instance.placement: {exc}") from None

    roles = obj.get("roles")
    if roles is not None and not isinstance(roles, dict):
        raise ValueError("instance.roles: must be an object")
    return Instance(spec, colors, roles)


def instance_to_json(spec: GameSpec, colors: Optional[np.ndarray] = None,
                     roles: Optional[dict] = None) -> dict:
    obj = {
        "graph": {
            "n": spec.n,
            "edges": [[int(u), int(v)] for u, v in spec.graph.edges()],
        },
        "red": spec.red,
        "blue": spec.blue,
        "peak": {"num": spec.peak.num, "den": spec.peak.den},
    }
    if colors is not None:
        obj["placement"] = {
            "red": [int(v) for v in np.flatnonzero(colors == RED)],
            "blue": [int(v) for v in np.flatnonzero(colors == BLUE)],
        }
    if roles is not None:
        obj["roles"] = roles
    return obj


def read_instance(path: str) -> Instance:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from None
    return parse_instance(obj)


def write_instance(path: str, spec: GameSpec,
                   colors: Optional[np.ndarray] = None,
                   roles: Optional[dict] = None):
    with open(path, "w") as fh:
        json.dump(instance_to_json(spec, colors, roles), fh, indent=2)
        fh.write("\n")


_FILL = {EMPTY: "white", RED: "red", BLUE: "lightblue"}


def export_dot(spec: GameSpec, colors: Optional[np.ndarray] = None) -> str:
    """Graphviz text; occupied nodes are filled red or light blue."""
    lines = ["graph game {", "  node [style=filled];"]
    for v in range(spec.n):
        fill = _FILL[EMPTY if colors is None else int(colors[v])]
        lines.append(f'  {v} [fillcolor="{fill}"];')
    for u, v in spec.graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
