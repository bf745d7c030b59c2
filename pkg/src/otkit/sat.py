"""Small complete SAT solver: CDCL with two watched literals.

Literals follow the DIMACS convention (nonzero ints, negative = negated).
Correctness, not speed records, is the goal; heavy instances can always be
exported to DIMACS and fed to an external solver instead.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


class SatSolver:
    def __init__(self, num_vars: int):
        self.num_vars = num_vars
        self.clauses: list[list[int]] = []
        self.watches: dict[int, list[int]] = {}
        self.assign: dict[int, bool] = {}
        self.level: dict[int, int] = {}
        self.reason: dict[int, Optional[int]] = {}
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.activity = [0.0] * (num_vars + 1)
        self.act_inc = 1.0
        self.phase = [False] * (num_vars + 1)
        self.empty_clause = False

    # -- clause management ---------------------------------------------------

    def add_clause(self, lits: Iterable[int]) -> None:
        c = sorted(set(lits))
        if any(-l in c for l in c):
            return  # tautology
        if not c:
            self.empty_clause = True
            return
        if len(c) == 1:
            # queued as a level-0 decision inside solve()
            self.clauses.append(c)
            return
        self._attach(c)

    def _attach(self, c: list[int]) -> int:
        idx = len(self.clauses)
        self.clauses.append(c)
        self.watches.setdefault(c[0], []).append(idx)
        self.watches.setdefault(c[1], []).append(idx)
        return idx

    # -- assignment ----------------------------------------------------------

    def _value(self, lit: int) -> Optional[bool]:
        v = self.assign.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def _enqueue(self, lit: int, reason: Optional[int]) -> bool:
        val = self._value(lit)
        if val is not None:
            return val
        var = abs(lit)
        self.assign[var] = lit > 0
        self.phase[var] = lit > 0
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)
        return True

    def _propagate(self, head: int) -> tuple[Optional[int], int]:
        """Unit propagation from trail position `head`; returns (conflict
        clause index or None, new head)."""
        while head < len(self.trail):
            lit = self.trail[head]
            head += 1
            false_lit = -lit
            watchlist = self.watches.get(false_lit, [])
            i = 0
            while i < len(watchlist):
                ci = watchlist[i]
                c = self.clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                # c[1] is the false watch now
                if self._value(c[0]) is True:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(c)):
                    if self._value(c[k]) is not False:
                        c[1], c[k] = c[k], c[1]
                        self.watches.setdefault(c[1], []).append(ci)
                        watchlist[i] = watchlist[-1]
                        watchlist.pop()
                        moved = True
                        break
                if moved:
                    continue
                if self._value(c[0]) is False:
                    return ci, head  # conflict
                self._enqueue(c[0], ci)
                i += 1
        return None, head

    # -- conflict analysis ---------------------------------------------------

    def _bump(self, var: int) -> None:
        self.activity[var] += self.act_inc
        if self.activity[var] > 1e100:
            for v in range(len(self.activity)):
                self.activity[v] *= 1e-100
            self.act_inc *= 1e-100

    def _analyze(self, conflict: int) -> tuple[list[int], int]:
        """1-UIP learned clause and backjump level."""
        cur_level = len(self.trail_lim)
        seen = set()
        learned: list[int] = []
        counter = 0
        lits = list(self.clauses[conflict])
        pos = len(self.trail) - 1
        uip = None
        while True:
            for lit in lits:
                var = abs(lit)
                if var in seen or self.level[var] == 0:
                    continue
                seen.add(var)
                self._bump(var)
                if self.level[var] == cur_level:
                    counter += 1
                else:
                    learned.append(lit)
            while abs(self.trail[pos]) not in seen:
                pos -= 1
            uip = self.trail[pos]
            seen.discard(abs(uip))
            counter -= 1
            if counter == 0:
                break
            reason = self.reason[abs(uip)]
            lits = [l for l in self.clauses[reason] if l != uip]
            pos -= 1
        learned = [-uip] + learned
        if len(learned) == 1:
            return learned, 0
        # second watch must sit at the backjump level
        w = max(range(1, len(learned)), key=lambda t: self.level[abs(learned[t])])
        learned[1], learned[w] = learned[w], learned[1]
        back = self.level[abs(learned[1])]
        return learned, back

    def _cancel_until(self, lvl: int) -> None:
        while len(self.trail_lim) > lvl:
            bound = self.trail_lim.pop()
            while len(self.trail) > bound:
                lit = self.trail.pop()
                var = abs(lit)
                del self.assign[var]
                del self.level[var]
                del self.reason[var]

    def _decide(self) -> Optional[int]:
        best = None
        best_act = -1.0
        for var in range(1, self.num_vars + 1):
            if var not in self.assign and self.activity[var] > best_act:
                best = var
                best_act = self.activity[var]
        if best is None:
            return None
        return best if self.phase[best] else -best

    # -- main loop -----------------------------------------------------------

    def solve(self, conflict_budget: Optional[int] = None) -> Optional[list[bool]]:
        """Returns an assignment (index 1..num_vars) on SAT, None on UNSAT.
        Raises BudgetExceeded when the conflict budget runs out."""
        if self.empty_clause:
            return None
        units = [c[0] for c in self.clauses if len(c) == 1]
        for lit in units:
            if not self._enqueue(lit, None):
                return None
        head = 0
        conflicts = 0
        while True:
            conflict, head = self._propagate(head)
            if conflict is not None:
                conflicts += 1
                if conflict_budget is not None and conflicts > conflict_budget:
                    raise BudgetExceeded(conflicts)
                if not self.trail_lim:
                    return None
                learned, back = self._analyze(conflict)
                self._cancel_until(back)
                head = len(self.trail)
                if len(learned) == 1:
                    if not self._enqueue(learned[0], None):
                        return None
                else:
                    ci = self._attach(learned)
                    self._enqueue(learned[0], ci)
                self.act_inc *= 1.05
                continue
            lit = self._decide()
            if lit is None:
                model = [False] * (self.num_vars + 1)
                for var, val in self.assign.items():
                    model[var] = val
                return model
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, None)


class BudgetExceeded(Exception):
    def __init__(self, conflicts: int):
        super().__init__(f"conflict budget exhausted after {conflicts} conflicts")
        self.conflicts = conflicts


def solve_clauses(
    num_vars: int, clauses: Sequence[Sequence[int]], conflict_budget: Optional[int] = None
) -> Optional[list[bool]]:
    solver = SatSolver(num_vars)
    for c in clauses:
        solver.add_clause(c)
    return solver.solve(conflict_budget=conflict_budget)
