"""CNF model for "graph G has a plane straight-line drawing on order type S".

Variables: M(v,p) maps vertex v to point p, A(p,q) marks the segment
between points p and q (p < q) as used by the drawing.  Clauses:

  (a) every vertex gets at least one point,
  (b) no vertex gets two points,
  (c) no point hosts two vertices,
  (d) an edge uv mapped to points p,q activates segment pq,
  (e) for each pair of crossing segments, at most one is active.

When the graph has fewer vertices than the point set, the mapping is
injective but not surjective.  A satisfying assignment is decoded to a
vertex-to-point map and re-checked geometrically before it is reported;
the verification is independent of the CNF machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .chirotope import AbstractOrderType, segments_cross
from .errors import SolverTimeout, TooManyVertices, WitnessInvalid
from .graphs import Graph
from .sat import BudgetExceeded, SatSolver


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[list[int]]
    var_map: dict  # semantic key -> DIMACS id; ("M",v,p) and ("A",p,q)
    n_vertices: int
    n_points: int


def crossing_pairs(ot: AbstractOrderType) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """All pairs of point segments that cross, as ((p,q),(r,s)) with p<q, r<s."""
    segs = list(combinations(range(ot.n), 2))
    out = []
    for x in range(len(segs)):
        p, q = segs[x]
        for y in range(x + 1, len(segs)):
            r, s = segs[y]
            if p in (r, s) or q in (r, s):
                continue
            if segments_cross(ot, p, q, r, s):
                out.append(((p, q), (r, s)))
    return out


def encode_embedding(g: Graph, ot: AbstractOrderType, pin_first: bool = False) -> CnfFormula:
    """Build the CNF instance; pin_first fixes vertex 0 to point 0 as an
    optional symmetry breaker (sound when n_vertices == n_points)."""
    nv, np_ = g.n, ot.n
    if nv > np_:
        raise TooManyVertices(f"{nv} vertices cannot map into {np_} points")
    var_map: dict = {}
    for v in range(nv):
        for p in range(np_):
            var_map[("M", v, p)] = 1 + v * np_ + p
    base = nv * np_
    for t, (p, q) in enumerate(combinations(range(np_), 2)):
        var_map[("A", p, q)] = 1 + base + t
    num_vars = base + np_ * (np_ - 1) // 2

    M = lambda v, p: var_map[("M", v, p)]
    A = lambda p, q: var_map[("A", p, q)] if p < q else var_map[("A", q, p)]

    clauses: list[list[int]] = []
    for v in range(nv):
        clauses.append([M(v, p) for p in range(np_)])
        for p, q in combinations(range(np_), 2):
            clauses.append([-M(v, p), -M(v, q)])
    for p in range(np_):
        for u, v in combinations(range(nv), 2):
            clauses.append([-M(u, p), -M(v, p)])
    for u, v in sorted(g.edges):
        for p in range(np_):
            for q in range(np_):
                if p != q:
                    clauses.append([-M(u, p), -M(v, q), A(p, q)])
    for (p, q), (r, s) in crossing_pairs(ot):
        clauses.append([-A(p, q), -A(r, s)])
    if pin_first and nv == np_:
        clauses.append([M(0, 0)])
    return CnfFormula(num_vars, clauses, var_map, nv, np_)


def verify_witness(g: Graph, ot: AbstractOrderType, witness: dict[int, int]):
    """Independent geometric check of a vertex-to-point map.

    Returns None when the induced drawing is plane, otherwise a tuple
    describing the problem: ("not_total", v), ("collision", u, v) or
    ("crossing", edge1, edge2).
    """
    for v in range(g.n):
        if v not in witness or not 0 <= witness[v] < ot.n:
            return ("not_total", v)
    placed: dict[int, int] = {}
    for v in range(g.n):
        p = witness[v]
        if p in placed:
            return ("collision", placed[p], v)
        placed[p] = v
    edges = sorted(g.edges)
    for e1, e2 in combinations(edges, 2):
        pts = {witness[e1[0]], witness[e1[1]], witness[e2[0]], witness[e2[1]]}
        if len(pts) < 4:
            continue
        if segments_cross(
            ot, witness[e1[0]], witness[e1[1]], witness[e2[0]], witness[e2[1]]
        ):
            return ("crossing", e1, e2)
    return None


def decide_embeddable(
    g: Graph,
    ot: AbstractOrderType,
    conflict_budget: Optional[int] = None,
    pin_first: bool = False,
) -> Optional[dict[int, int]]:
    """Vertex-to-point witness if g draws plane straight-line on ot, else None."""
    formula = encode_embedding(g, ot, pin_first=pin_first)
    solver = SatSolver(formula.num_vars)
    for c in formula.clauses:
        solver.add_clause(c)
    try:
        model = solver.solve(conflict_budget=conflict_budget)
    except BudgetExceeded as exc:
        raise SolverTimeout(
            f"embedding undecided after {exc.conflicts} conflicts",
            context=(g, ot),
        ) from None
    if model is None:
        return None
    witness = {}
    for v in range(g.n):
        for p in range(ot.n):
            if model[formula.var_map[("M", v, p)]]:
                witness[v] = p
                break
    problem = verify_witness(g, ot, witness)
    if problem is not None:
        raise WitnessInvalid(f"solver model fails geometric check: {problem}")
    return witness


def export_dimacs(formula: CnfFormula, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"p cnf {formula.num_vars} {len(formula.clauses)}\n")
        for c in formula.clauses:
            fh.write(" ".join(str(l) for l in c) + " 0\n")
