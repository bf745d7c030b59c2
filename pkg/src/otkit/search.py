"""Phased search for universal point sets.

The pipeline: structural prefilters on the candidate order types, a
universality test that aborts on the first failing graph (with a priority
counter so graphs that fail often are tried first), a full order-type x
graph embeddability matrix ("stat matrix"), and minimum hitting-set
extraction to pull a small conflict collection out of that matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .chirotope import AbstractOrderType, extreme_points, point_in_triangle
from .embedding import decide_embeddable
from .errors import Infeasible, SolverTimeout, WrongSize
from .graphs import Graph


# ---------------------------------------------------------------------------
# stat matrix


@dataclass
class StatMatrix:
    """Embeddability bits: rows are order types, columns are graphs, both in
    input order.  bits[i][j] == 1 iff graph j embeds on order type i."""

    bits: list[list[int]]

    @property
    def n_rows(self) -> int:
        return len(self.bits)

    @property
    def n_cols(self) -> int:
        return len(self.bits[0]) if self.bits else 0

    def bit(self, i: int, j: int) -> int:
        return self.bits[i][j]

    def to_lines(self) -> list[str]:
        return ["".join(str(b) for b in row) for row in self.bits]

    @classmethod
    def from_lines(cls, lines) -> "StatMatrix":
        bits = []
        for line in lines:
            line = line.strip()
            if not line:
                continue
            if set(line) - {"0", "1"}:
                raise ValueError(f"stat line contains characters other than 0/1: {line!r}")
            bits.append([int(ch) for ch in line])
        if bits and any(len(row) != len(bits[0]) for row in bits):
            raise ValueError("stat lines have differing lengths")
        return cls(bits)


def write_stat(m: StatMatrix, path) -> None:
    with open(path, "w") as fh:
        for line in m.to_lines():
            fh.write(line + "\n")


def read_stat(path) -> StatMatrix:
    with open(path) as fh:
        return StatMatrix.from_lines(fh)


@dataclass
class ConflictCollection:
    """A hitting set over a stat matrix: the selected graph ids plus, for
    each row, one selected graph that fails on that row."""

    graph_ids: list[int]
    certificate: list[int]

    def __len__(self) -> int:
        return len(self.graph_ids)


# ---------------------------------------------------------------------------
# phase 1: structural prefilters


def has_nested_triangle_structure(ot: AbstractOrderType) -> bool:
    """Triangular hull, and some interior point q together with two hull
    points a, b spans a triangle containing every other interior point."""
    hull = sorted(extreme_points(ot))
    if len(hull) != 3:
        return False
    interior = [p for p in range(ot.n) if p not in hull]
    for q in interior:
        rest = [p for p in interior if p != q]
        for a, b in combinations(hull, 2):
            if all(point_in_triangle(ot, p, q, a, b) for p in rest):
                return True
    return not interior


def filter_phase1(
    ots: Sequence[AbstractOrderType],
    filter_graph: Optional[Graph] = None,
    conflict_budget: Optional[int] = None,
) -> list[AbstractOrderType]:
    """Survivors of the structural prefilter on 11-point candidates.

    Keeps an order type iff the nested-triangle hull condition holds and the
    filter graph (by default conflict graph #12 of the bundled G collection,
    which any 11-universal set must host) is embeddable.  The cheap geometric
    condition runs first.
    """
    for ot in ots:
        if ot.n != 11:
            raise WrongSize(f"phase-1 filter expects 11 points, got {ot.n}")
    if filter_graph is None:
        from .data import conflict_graphs

        filter_graph = conflict_graphs("g")[11]
    out = []
    for ot in ots:
        if not has_nested_triangle_structure(ot):
            continue
        if decide_embeddable(filter_graph, ot, conflict_budget=conflict_budget) is None:
            continue
        out.append(ot)
    return out


# ---------------------------------------------------------------------------
# phase 2: universality testing


def test_universal(
    ot: AbstractOrderType,
    graphs: Sequence[Graph],
    queue_state: Optional[list[int]] = None,
    conflict_budget: Optional[int] = None,
) -> Optional[int]:
    """None if every graph embeds on ot, else the input index of the first
    failing graph.

    Graphs are tried in order of past failures (queue_state, a shared
    per-graph failure tally), most failures first, ties by input order; the
    counter only reorders the work, never the verdict.  The tally for a
    failing graph is bumped before returning.
    """
    if queue_state is not None and len(queue_state) != len(graphs):
        raise ValueError("queue_state length must match the graph list")
    order = sorted(
        range(len(graphs)),
        key=lambda j: (-(queue_state[j] if queue_state else 0), j),
    )
    for j in order:
        try:
            w = decide_embeddable(graphs[j], ot, conflict_budget=conflict_budget)
        except SolverTimeout as exc:
            exc.context = (ot, j)
            raise
        if w is None:
            if queue_state is not None:
                queue_state[j] += 1
            return j
    return None


# ---------------------------------------------------------------------------
# phase 3: stat matrix and hitting sets


def build_stat(
    ots: Sequence[AbstractOrderType],
    graphs: Sequence[Graph],
    conflict_budget: Optional[int] = None,
) -> StatMatrix:
    """Full embeddability matrix; the graph order is never changed, so the
    j-th column always means the j-th input graph."""
    bits = []
    for i, ot in enumerate(ots):
        row = []
        for j, g in enumerate(graphs):
            try:
                w = decide_embeddable(g, ot, conflict_budget=conflict_budget)
            except SolverTimeout as exc:
                exc.context = (i, j)
                raise
            row.append(0 if w is None else 1)
        bits.append(row)
    return StatMatrix(bits)


def _zero_sets(m: StatMatrix) -> list[frozenset[int]]:
    rows = []
    for i, row in enumerate(m.bits):
        zs = frozenset(j for j, b in enumerate(row) if b == 0)
        if not zs:
            raise Infeasible(f"row {i} embeds every graph", row=i)
        rows.append(zs)
    return rows


def _certificate(m: StatMatrix, chosen: list[int]) -> list[int]:
    chosen_set = set(chosen)
    cert = []
    for row in m.bits:
        cert.append(next(j for j in sorted(chosen_set) if row[j] == 0))
    return cert


def _greedy_cover(rows: list[frozenset[int]], n_cols: int) -> list[int]:
    uncovered = set(range(len(rows)))
    chosen: list[int] = []
    while uncovered:
        best, best_gain = 0, -1
        for j in range(n_cols):
            gain = sum(1 for i in uncovered if j in rows[i])
            if gain > best_gain:
                best, best_gain = j, gain
        chosen.append(best)
        uncovered = {i for i in uncovered if best not in rows[i]}
    return sorted(chosen)


def _disjoint_lower_bound(rows: list[frozenset[int]], uncovered) -> int:
    """Greedy packing of pairwise-disjoint rows; each needs its own graph."""
    used: set[int] = set()
    lb = 0
    for i in sorted(uncovered, key=lambda i: len(rows[i])):
        if rows[i].isdisjoint(used):
            used |= rows[i]
            lb += 1
    return lb


def min_hitting_set(m: StatMatrix, mode: str = "exact") -> ConflictCollection:
    """Graphs hitting every row's failure set.

    greedy: standard max-coverage heuristic (feasible, not necessarily
    minimum).  exact: branch and bound seeded with the greedy cover, lower
    bounded by disjoint-row packing, branching on the most constrained row.
    """
    rows = _zero_sets(m)
    if mode == "greedy":
        chosen = _greedy_cover(rows, m.n_cols)
        return ConflictCollection(chosen, _certificate(m, chosen))
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")

    best = _greedy_cover(rows, m.n_cols)

    def search(uncovered: frozenset[int], chosen: list[int]) -> None:
        nonlocal best
        if not uncovered:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        if len(chosen) + _disjoint_lower_bound(rows, uncovered) >= len(best):
            return
        pivot = min(uncovered, key=lambda i: len(rows[i]))
        for j in sorted(rows[pivot]):
            rest = frozenset(i for i in uncovered if j not in rows[i])
            chosen.append(j)
            search(rest, chosen)
            chosen.pop()

    search(frozenset(range(len(rows))), [])
    return ConflictCollection(best, _certificate(m, best))


def export_lp(m: StatMatrix, path) -> None:
    """Write the hitting set as an integer program in LP format: binary
    variable x_j per graph, one >=1 constraint per row over its zero bits."""
    rows = _zero_sets(m)
    names = [f"x{j}" for j in range(m.n_cols)]
    with open(path, "w") as fh:
        fh.write("Minimize\n obj: " + " + ".join(names) + "\n")
        fh.write("Subject To\n")
        for i, zs in enumerate(rows):
            fh.write(f" r{i}: " + " + ".join(names[j] for j in sorted(zs)) + " >= 1\n")
        fh.write("Binary\n " + " ".join(names) + "\n")
        fh.write("End\n")


# ---------------------------------------------------------------------------
# final cross-check


def verify_conflict_collection(
    graphs: Sequence[Graph],
    ots: Sequence[AbstractOrderType],
    conflict_budget: Optional[int] = None,
) -> Optional[AbstractOrderType]:
    """None if no order type hosts every graph simultaneously (the graphs
    form a conflict collection over ots); otherwise the first order type
    that embeds them all."""
    counters = [0] * len(graphs)
    for ot in ots:
        if test_universal(ot, graphs, counters, conflict_budget=conflict_budget) is None:
            return ot
    return None
