"""Compile boolean formulas into games whose equilibria encode solutions.

Three flavors:

* compile_half: peak 1/2.  A large balanced clique anchors both cohorts at
  exactly the peak; literal, clause, and parking nodes hang off it through
  rationed attachments, so stable profiles are forced to pick one literal
  per variable and satisfy every clause twice over.
* compile_general: any admissible peak x/y.  Same skeleton, but the anchor
  is a pair of circulant blocks sized so that every anchored agent sits at
  exactly x/y; block size is the least q clearing parity, attachment
  capacity, and score-separation constraints.
* compile_maxsat: one clique per variable, one node per clause, a single
  hole.  The best achievable integration equals a fixed offset plus the
  maximum number of simultaneously satisfiable clauses.

All attachments consume distinct anchor nodes, at most one external edge
per anchor node.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .graphs import Graph
from .model import BLUE, EMPTY, RED, GameSpec, Peak, score


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("formula needs at least one variable")
        if not self.clauses:
            raise ValueError("formula needs at least one clause")
        for ci, clause in enumerate(self.clauses):
            if not clause:
                raise ValueError(f"clause {ci} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {ci}: bad literal {lit}")
            if len(set(clause)) != len(clause):
                raise ValueError(f"clause {ci}: repeated literal")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def formula(num_vars: int, clauses: Sequence[Sequence[int]]) -> CnfFormula:
    return CnfFormula(num_vars, tuple(tuple(c) for c in clauses))


def parse_dimacs(text: str) -> CnfFormula:
    """Standard DIMACS CNF: a p-line, then zero-terminated clauses."""
    num_vars = None
    clauses = []
    current = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if num_vars is None:
        raise ValueError("missing 'p cnf' line")
    return CnfFormula(num_vars, tuple(clauses))


def _true_literals(clause, assign) -> int:
    return sum(1 for lit in clause
               if (assign[abs(lit) - 1] if lit > 0 else not assign[abs(lit) - 1]))


def satisfied_count(f: CnfFormula, assign: Sequence[bool]) -> int:
    """Clauses with at least one true literal under the assignment."""
    if len(assign) != f.num_vars:
        raise ValueError(f"assignment needs {f.num_vars} values")
    return sum(1 for c in f.clauses if _true_literals(c, assign) >= 1)


def double4sat_oracle(f: CnfFormula) -> Optional[list]:
    """Assignment making at least two literals true in every 4-literal clause."""
    if any(len(c) != 4 for c in f.clauses):
        raise ValueError("oracle needs exactly four literals per clause")
    if f.num_vars > 24:
        raise ValueError("oracle is exhaustive; 24 variables max")
    for bits in product([False, True], repeat=f.num_vars):
        if all(_true_literals(c, bits) >= 2 for c in f.clauses):
            return list(bits)
    return None


def maxsat_oracle(f: CnfFormula) -> tuple:
    """Maximum number of satisfiable clauses, with a witness assignment."""
    if f.num_vars > 24:
        raise ValueError("oracle is exhaustive; 24 variables max")
    best, wit = -1, None
    for bits in product([False, True], repeat=f.num_vars):
        got = sum(1 for c in f.clauses if _true_literals(c, bits) >= 1)
        if got > best:
            best, wit = got, list(bits)
    return best, wit


@dataclass(frozen=True)
class ReductionInstance:
    kind: str
    spec: GameSpec
    sigma0: Optional[np.ndarray]
    roles: dict
    params: dict
    source: CnfFormula


# -- peak 1/2 ----------------------------------------------------------

_XR, _XB = 11, 5      # anchor attachments per literal node
_CR, _CB = 10, 5      # per clause node
_YB = 3               # per parking node (blue side only)


def compile_half(f: CnfFormula) -> ReductionInstance:
    """Game at peak 1/2 whose stable profiles encode twice-satisfying
    assignments of a 4-literal-per-clause formula."""
    if any(len(c) != 4 for c in f.clauses):
        raise ValueError("compilation needs exactly four literals per clause")
    k, m = f.num_vars, f.num_clauses
    z = 22 * k + 10 * m + 3 * m * k
    n = 2 * z + 2 * k + m + m * k

    def x_node(lit: int) -> int:
        j = abs(lit) - 1
        return 2 * z + 2 * j + (0 if lit > 0 else 1)

    c_node = [2 * z + 2 * k + i for i in range(m)]
    y_node = [[2 * z + 2 * k + m + i * k + j for j in range(k)]
              for i in range(m)]

    edges = []
    for u in range(2 * z):
        for v in range(u + 1, 2 * z):
            edges.append((u, v))

    next_r, next_b = 0, z

    def take_r(count):
        nonlocal next_r
        got = list(range(next_r, next_r + count))
        next_r += count
        return got

    def take_b(count):
        nonlocal next_b
        got = list(range(next_b, next_b + count))
        next_b += count
        return got

    for j in range(k):
        pos, neg = x_node(j + 1), x_node(-(j + 1))
        edges.append((pos, neg))
        for v in (pos, neg):
            edges += [(v, w) for w in take_r(_XR) + take_b(_XB)]
    for i, clause in enumerate(f.clauses):
        edges += [(c_node[i], c_node[t]) for t in range(i)]
        edges += [(c_node[i], w) for w in take_r(_CR) + take_b(_CB)]
        edges += [(c_node[i], x_node(lit)) for lit in clause]
    for i in range(m):
        for j in range(k):
            edges += [(y_node[i][j], c_node[i])]
            edges += [(y_node[i][j], w) for w in take_b(_YB)]

    if next_r > z or next_b > 2 * z:
        raise AssertionError("anchor attachment budget exceeded")

    g = Graph.from_edges(n, edges)
    spec = GameSpec(g, z + k, z, Peak(1, 2))
    colors = np.zeros(n, dtype=np.uint8)
    colors[:z] = RED
    colors[z:2 * z] = BLUE
    for v in y_node[0]:
        colors[v] = RED

    roles = {
        "anchor_red": [0, z],
        "anchor_blue": [z, 2 * z],
        "x": [[x_node(j + 1), x_node(-(j + 1))] for j in range(k)],
        "c": c_node,
        "y": y_node,
    }
    params = {
        "z": z, "k": k, "m": m,
        # landing scores, best to worst: parking beside a filled clause
        # node, clause node, literal node, parking beside an empty one
        "ladder": [[2, 5], [5, 16], [5, 17], [1, 4]],
    }
    return ReductionInstance("half", spec, colors, roles, params, f)


# -- general peak ------------------------------------------------------


def _representation(peak: Peak) -> tuple:
    """Integer pair for the peak clearing the two degenerate identities."""
    x, y = peak.num, peak.den
    while (x * (6 * y - 2) == y * (3 * y + 1)
           or x * (6 * y - 1) == y * (3 * y + 1)):
        x, y = 2 * x, 2 * y
    return x, y


def _circulant_deltas(block: int, degree: int) -> np.ndarray:
    """Offsets of a degree-regular circulant on `block` nodes."""
    if degree >= block:
        raise ValueError("degree must be below block size")
    if (degree * block) % 2 != 0:
        raise ValueError("degree * block must be even")
    offs = list(range(1, degree // 2 + 1))
    deltas = set()
    for o in offs:
        deltas.add(o % block)
        deltas.add((-o) % block)
    if degree % 2 == 1:
        deltas.add(block // 2)
    out = np.array(sorted(deltas), dtype=np.int64)
    if len(out) != degree:
        raise AssertionError("delta set has wrong size")
    return out


def _score_frac(peak_x: int, peak_y: int, s: int, t: int) -> Fraction:
    if s * peak_y <= peak_x * t:
        return Fraction(s, t)
    return Fraction(peak_x * (t - s), (peak_y - peak_x) * t)


def _landing_candidates(x, y, s, k, m):
    """(same, occupied) pairs reachable by a jump off the anchor."""
    ax_r, tot_x = 3 * s * x + 1, s * (3 * y - 1) + 1
    ac_r, tot_c = 3 * s * x, s * (3 * y - 1)
    ay_r, tot_y = 3 * x - 3, 3 * y - 3
    pairs = []
    for base_same, base_tot, slack in (
            (ax_r, tot_x, 1 + m),        # literal node: partner + clauses
            (ac_r, tot_c, 4 + k + m),    # clause node: literals, clique, parking
            (ay_r, tot_y, 1),            # parking node: its clause node
            (tot_x - ax_r, tot_x, 1 + m),   # same landings, blue cohort
            (tot_c - ac_r, tot_c, 4 + k + m),
            (tot_y - ay_r, tot_y, 1)):
        for w in range(slack + 1):
            for extra_same in range(w + 1):
                pairs.append((base_same + 1 + extra_same, base_tot + 1 + w))
    return pairs


def compile_general(f: CnfFormula, peak: Peak) -> ReductionInstance:
    """Game at an arbitrary interior peak with the same encoding force.

    The anchor is two circulant blocks of qy nodes each; q is the least
    multiplier passing parity, one-external-edge capacity, and the
    requirement that anchored agents outscore every possible landing.
    """
    if any(len(c) != 4 for c in f.clauses):
        raise ValueError("compilation needs exactly four literals per clause")
    x, y = _representation(peak)
    k, m = f.num_vars, f.num_clauses
    s = 6 * y * k

    ax_r, ax_b = 3 * s * x + 1, s * (3 * y - 1) - 3 * s * x
    ac_r, ac_b = 3 * s * x, s * (3 * y - 1) - 3 * s * x
    ay_r, ay_b = 3 * x - 3, 3 * (y - x)
    ext_r = ax_r * 2 * k + ac_r * m + ay_r * m * k
    ext_b = ax_b * 2 * k + ac_b * m + ay_b * m * k
    total_ext = ext_r + ext_b

    q = total_ext + 1
    while True:
        Q = q * y
        if ((q * x - 1) * Q % 2 == 0 and Q >= max(ext_r, ext_b)
                and _anchor_outscores(x, y, q, s, k, m)):
            break
        q += 1
    return _build_general(f, x, y, q, s, ext_r, ext_b)


def _anchor_outscores(x, y, q, s, k, m) -> bool:
    anchor = Fraction(q * x, q * y + 1)
    for same, tot in _landing_candidates(x, y, s, k, m):
        if _score_frac(x, y, same, tot) >= anchor:
            return False
    return True


def _build_general(f, x, y, q, s, ext_r, ext_b) -> ReductionInstance:
    k, m = f.num_vars, f.num_clauses
    Q = q * y
    n = 2 * Q + 2 * k + m + m * k
    ax_r, ax_b = 3 * s * x + 1, s * (3 * y - 1) - 3 * s * x
    ac_r, ac_b = 3 * s * x, s * (3 * y - 1) - 3 * s * x
    ay_r, ay_b = 3 * x - 3, 3 * (y - x)

    def x_node(lit: int) -> int:
        j = abs(lit) - 1
        return 2 * Q + 2 * j + (0 if lit > 0 else 1)

    c_node = [2 * Q + 2 * k + i for i in range(m)]
    y_node = [[2 * Q + 2 * k + m + i * k + j for j in range(k)]
              for i in range(m)]
    outside = ([v for j in range(k)
                for v in (x_node(j + 1), x_node(-(j + 1)))]
               + c_node + [v for row in y_node for v in row])

    # sequential anchor allocation: consumers in node order, contiguous runs
    r_counts = [ax_r] * (2 * k) + [ac_r] * m + [ay_r] * (m * k)
    b_counts = [ax_b] * (2 * k) + [ac_b] * m + [ay_b] * (m * k)
    partner_r = np.repeat(np.array(outside, dtype=np.int64),
                          np.array(r_counts, dtype=np.int64))
    partner_b = np.repeat(np.array(outside, dtype=np.int64),
                          np.array(b_counts, dtype=np.int64))
    r_starts = np.concatenate(([0], np.cumsum(r_counts)))[:-1]
    b_starts = np.concatenate(([0], np.cumsum(b_counts)))[:-1]
    assert len(partner_r) == ext_r and len(partner_b) == ext_b

    occurrences = [0] * (2 * k)
    for clause in f.clauses:
        for lit in clause:
            idx = 2 * (abs(lit) - 1) + (0 if lit > 0 else 1)
            occurrences[idx] += 1

    deg = np.empty(n, dtype=np.int64)
    deg[:Q] = Q - 1
    deg[:ext_r] += 1
    deg[Q:2 * Q] = Q - 1
    deg[Q:Q + ext_b] += 1
    for j in range(2 * k):
        deg[2 * Q + j] = (ax_r + ax_b) + 1 + occurrences[j]
    for i in range(m):
        deg[c_node[i]] = (ac_r + ac_b) + (m - 1) + len(f.clauses[i]) + k
    for row in y_node:
        for v in row:
            deg[v] = (ay_r + ay_b) + 1

    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=offsets[1:])
    nbrs = np.empty(offsets[-1], dtype=np.int32)

    deltas = _circulant_deltas(Q, q * x - 1)
    cross = np.arange(Q - q * x, dtype=np.int64)
    _fill_anchor_rows(nbrs, offsets, Q, deltas, cross, n,
                      base=0, cross_base=Q, cross_sign=+1,
                      partners=partner_r)
    _fill_anchor_rows(nbrs, offsets, Q, deltas, cross, n,
                      base=Q, cross_base=0, cross_sign=-1,
                      partners=partner_b)

    consumer_rows = {}
    for t, v in enumerate(outside):
        consumer_rows[v] = (
            list(range(r_starts[t], r_starts[t] + r_counts[t]))
            + [Q + w for w in range(b_starts[t], b_starts[t] + b_counts[t])])
    for j in range(k):
        pos, neg = x_node(j + 1), x_node(-(j + 1))
        consumer_rows[pos].append(neg)
        consumer_rows[neg].append(pos)
    for i, clause in enumerate(f.clauses):
        for t in range(m):
            if t != i:
                consumer_rows[c_node[i]].append(c_node[t])
        for lit in clause:
            consumer_rows[c_node[i]].append(x_node(lit))
            consumer_rows[x_node(lit)].append(c_node[i])
        for v in y_node[i]:
            consumer_rows[v].append(c_node[i])
            consumer_rows[c_node[i]].append(v)
    for v, row in consumer_rows.items():
        row = np.array(sorted(row), dtype=np.int32)
        if len(row) != deg[v]:
            raise AssertionError(f"degree mismatch on node {v}")
        nbrs[offsets[v]:offsets[v + 1]] = row

    # full CSR validation is quadratic-ish in edge volume; keep it for
    # small builds and trust the audit helpers on the big ones
    g = Graph.from_csr(n, offsets, nbrs, validate=n <= 4096)
    spec = GameSpec(g, Q + k, Q, Peak(x, y))
    colors = np.zeros(n, dtype=np.uint8)
    colors[:Q] = RED
    colors[Q:2 * Q] = BLUE
    for v in y_node[0]:
        colors[v] = RED

    roles = {
        "anchor_red": [0, Q], "anchor_blue": [Q, 2 * Q],
        "x": [[x_node(j + 1), x_node(-(j + 1))] for j in range(k)],
        "c": c_node,
        "y": y_node,
    }
    def sc(s_, t_):
        return _score_frac(x, y, s_, t_)

    params = {
        "q": q, "s": s, "x": x, "y": y, "k": k, "m": m,
        "block": Q,
        "ext_red": ext_r, "ext_blue": ext_b,
        "anchor_score": [q * x, Q + 1],
        # landing scores, best to worst, by the stated formulas
        "ladder": [_as_pair(sc(3 * x, 3 * y - 1)),
                   _as_pair(sc(3 * s * x + 1, s * (3 * y - 1) + 1)),
                   _as_pair(sc(3 * s * x + 2, s * (3 * y - 1) + 2)),
                   _as_pair(sc(3 * x, 3 * y - 2))],
    }
    return ReductionInstance("general", spec, colors, roles, params, f)


def _as_pair(fr: Fraction) -> list:
    return [fr.numerator, fr.denominator]


# entries per work chunk when materializing anchor rows; small enough to
# keep the per-chunk matrix a few dozen MB, large enough to amortize sorts
_CHUNK_ENTRIES = 2 ** 22


def _fill_anchor_rows(nbrs, offsets, Q, deltas, cross, sentinel,
                      base, cross_base, cross_sign, partners):
    """Write the sorted neighbor rows of one anchor block, chunked."""
    n_ext = len(partners)
    chunk = max(1, _CHUNK_ENTRIES // max(Q, 1))
    lo = 0
    while lo < Q:
        hi = min(lo + chunk, Q)
        if lo < n_ext < hi:
            hi = n_ext          # keep each chunk on one side of the split
        rows = np.arange(lo, hi, dtype=np.int64)
        inner = (rows[:, None] + deltas[None, :]) % Q + base
        link = (rows[:, None] + cross_sign * cross[None, :]) % Q + cross_base
        if lo < n_ext:
            extra = partners[lo:hi, None]
        else:
            extra = np.full((hi - lo, 1), sentinel, dtype=np.int64)
        block = np.concatenate([inner, link, extra], axis=1)
        block.sort(axis=1)
        width = Q if lo < n_ext else Q - 1
        flat = block[:, :width].astype(np.int32).ravel()
        start = offsets[base + lo]
        nbrs[start:start + flat.size] = flat
        lo = hi


# -- satisfaction counting ---------------------------------------------


def compile_maxsat(f: CnfFormula) -> ReductionInstance:
    """Single-hole game whose best integration counts satisfied clauses.

    Best integration = (m+4)*k + (max satisfiable clauses) for a 3-CNF
    with k variables and m clauses.
    """
    if any(len(c) > 3 for c in f.clauses):
        raise ValueError("compilation needs at most three literals per clause")
    k, m = f.num_vars, f.num_clauses
    size = m + 4
    n = size * k + m + 1

    def x_node(lit: int) -> int:
        j = abs(lit) - 1
        return size * j + (0 if lit > 0 else 1)

    def clique(j) -> list:
        return list(range(size * j, size * (j + 1)))

    c_node = [size * k + i for i in range(m)]
    v_node = size * k + m

    edges = []
    for j in range(k):
        nodes = clique(j)
        edges += [(a, b) for t, a in enumerate(nodes) for b in nodes[t + 1:]]
    for i, clause in enumerate(f.clauses):
        for lit in sorted(set(clause), key=abs):
            edges.append((c_node[i], x_node(lit)))
    edges.append((v_node, c_node[0]))

    g = Graph.from_edges(n, edges)
    if not g.is_connected():
        raise ValueError("formula's incidence structure is disconnected")
    spec = GameSpec(g, (m + 3) * k + m, k, Peak(1, 2))

    roles = {
        "clique": [clique(j) for j in range(k)],
        "x": [[x_node(j + 1), x_node(-(j + 1))] for j in range(k)],
        "c": c_node,
        "extra": v_node,
    }
    params = {"k": k, "m": m, "doi_offset": size * k}
    return ReductionInstance("maxsat", spec, None, roles, params, f)


def maxsat_threshold(inst: ReductionInstance, want_satisfied: int) -> int:
    """Integration level equivalent to satisfying `want_satisfied` clauses."""
    if inst.kind != "maxsat":
        raise ValueError("threshold applies to satisfaction-counting games")
    return inst.params["doi_offset"] + want_satisfied


# -- profiles and replays ----------------------------------------------


def assignment_to_profile(inst: ReductionInstance,
                          assign: Sequence[bool]) -> np.ndarray:
    """Occupancy encoding an assignment, per compilation flavor."""
    f = inst.source
    if len(assign) != f.num_vars:
        raise ValueError(f"assignment needs {f.num_vars} values")
    n = inst.spec.n
    colors = np.zeros(n, dtype=np.uint8)
    if inst.kind in ("half", "general"):
        lo, hi = ((0, inst.params["z"]) if inst.kind == "half"
                  else (0, inst.params["block"]))
        colors[lo:hi] = RED
        colors[hi:2 * hi] = BLUE
        for j, bit in enumerate(assign):
            colors[inst.roles["x"][j][0 if bit else 1]] = RED
        return colors
    for j, bit in enumerate(assign):
        nodes = inst.roles["clique"][j]
        blue_at = inst.roles["x"][j][0 if bit else 1]
        for v in nodes:
            colors[v] = BLUE if v == blue_at else RED
    for v in inst.roles["c"]:
        colors[v] = RED
    return colors


def ird_witness(inst: ReductionInstance,
                assign: Sequence[bool]) -> list:
    """Jump script from the parked start to the assignment profile."""
    if inst.kind not in ("half", "general"):
        raise ValueError("witness applies to equilibrium compilations")
    if len(assign) != inst.source.num_vars:
        raise ValueError("assignment size mismatch")
    parked = inst.roles["y"][0]
    return [(parked[j], inst.roles["x"][j][0 if bit else 1])
            for j, bit in enumerate(assign)]


def blocker_witnesses(inst: ReductionInstance,
                      assign: Sequence[bool]) -> dict:
    """Profiles violating each stability precondition, for refutation.

    Keys: "agent_on_clause" (an agent parked on a clause node),
    "pair_occupied" (both literals of one variable occupied),
    "agent_on_parking" (an agent still on a parking node; the start
    profile itself).  Each admits an improving jump.
    """
    if inst.kind not in ("half", "general"):
        raise ValueError("witnesses apply to equilibrium compilations")
    base = assignment_to_profile(inst, assign)
    clause0 = inst.source.clauses[0]
    true_in_clause = [lit for lit in clause0
                      if (assign[abs(lit) - 1] if lit > 0
                          else not assign[abs(lit) - 1])]
    if len(true_in_clause) < 3:
        raise ValueError("need a first clause with three true literals")

    lit = true_in_clause[0]
    on_c = base.copy()
    on_c[_lit_node(inst, lit)] = EMPTY
    on_c[inst.roles["c"][0]] = RED

    if inst.source.num_vars < 2:
        raise ValueError("need at least two variables")
    v0_occupied = inst.roles["x"][0][0 if assign[0] else 1]
    v0_partner = inst.roles["x"][0][1 if assign[0] else 0]
    v1_occupied = inst.roles["x"][1][0 if assign[1] else 1]
    paired = base.copy()
    paired[v1_occupied] = EMPTY
    paired[v0_partner] = RED

    return {
        "agent_on_clause": on_c,
        "pair_occupied": paired,
        "agent_on_parking": inst.sigma0.copy(),
    }


def _lit_node(inst: ReductionInstance, lit: int) -> int:
    return inst.roles["x"][abs(lit) - 1][0 if lit > 0 else 1]


# -- structure audit ---------------------------------------------------


def audit_structure(inst: ReductionInstance) -> dict:
    """Degree-level re-derivation of the compiled layout.

    Returns {check_name: bool}; all True means the graph matches the
    construction's stated shape exactly.
    """
    if inst.kind != "general":
        raise ValueError("audit applies to the general compilation")
    p = inst.params
    q, s, x, y, k, m = p["q"], p["s"], p["x"], p["y"], p["k"], p["m"]
    Q = p["block"]
    g = inst.spec.graph
    deg = g.degrees()
    out = {}

    out["node_count"] = g.n == 2 * Q + 2 * k + m + m * k
    out["block_size"] = Q == q * y

    anchor = deg[:2 * Q]
    plain = int((anchor == Q - 1).sum())
    linked = int((anchor == Q).sum())
    out["anchor_degrees"] = plain + linked == 2 * Q
    out["anchor_externals"] = linked == p["ext_red"] + p["ext_blue"]

    ax = (3 * s * x + 1) + (s * (3 * y - 1) - 3 * s * x)
    occurrences = [0] * (2 * k)
    for clause in inst.source.clauses:
        for lit in clause:
            occurrences[2 * (abs(lit) - 1) + (0 if lit > 0 else 1)] += 1
    ok = True
    for j in range(2 * k):
        ok = ok and deg[2 * Q + j] == ax + 1 + occurrences[j]
    out["literal_degrees"] = ok

    ac = s * (3 * y - 1)
    ok = True
    for i, c in enumerate(inst.roles["c"]):
        ok = ok and deg[c] == ac + (m - 1) + len(inst.source.clauses[i]) + k
    out["clause_degrees"] = ok

    ay = (3 * x - 3) + 3 * (y - x) + 1
    ok = all(int(deg[v]) == ay for row in inst.roles["y"] for v in row)
    out["parking_degrees"] = ok

    # one external edge per anchor node, laid out as a prefix
    out["red_external_prefix"] = bool(
        (deg[:p["ext_red"]] == Q).all()
        and (deg[p["ext_red"]:Q] == Q - 1).all())
    out["blue_external_prefix"] = bool(
        (deg[Q:Q + p["ext_blue"]] == Q).all()
        and (deg[Q + p["ext_blue"]:2 * Q] == Q - 1).all())

    out["parity"] = ((q * x - 1) * Q) % 2 == 0
    out["capacity"] = Q >= max(p["ext_red"], p["ext_blue"])
    out["q_exceeds_externals"] = q > p["ext_red"] + p["ext_blue"]

    probe = sorted(np.random.default_rng(0).choice(Q, size=min(Q, 8),
                                                   replace=False).tolist())
    ok = True
    deltas = set(_circulant_deltas(Q, q * x - 1).tolist())
    for i in probe:
        inner = {int(w) for w in g.neighbors(i) if w < Q}
        want = {(i + d) % Q for d in deltas}
        ok = ok and inner == want
    out["red_block_circulant"] = ok
    return out
