"""Admissibility, optimal solutions and the four decision problems.

Optimal solutions are found by depth-first branch and bound over the
hypotheses.  A node fixes some hypotheses as included or excluded; it is cut
when the cost of the included ones already exceeds the incumbent (valid for
monotone costs), or when the model bounds of the program with the included
hypotheses as facts and the undecided ones as optional facts already violate
an observation.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterable, Optional

from .cost import EPS, eval_cost, get_cost
from .grounder import ground, optimize_ground
from .kernel import (Atom, CapacityError, PapError, PapInstance, SolveResult,
                     SolveStats, sorted_atoms)
from .stable import (DEFAULT_NODE_CAP, iter_stable_models, literal_constraints,
                     model_bounds)

DEFAULT_EXHAUSTIVE_CAP = 20


@dataclass
class SearchNode:
    included: frozenset
    excluded: frozenset
    lower_bound: float


class _Stop(Exception):
    pass


class Solver:
    """A PAP instance grounded once and ready for repeated queries."""

    def __init__(self, p: PapInstance, node_cap: int = DEFAULT_NODE_CAP,
                 bound_pruning: bool = True, envelope_pruning: bool = True,
                 exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP):
        self.p = p
        self.cost = get_cost(p.cost_id)
        self.node_cap = node_cap
        self.bound_pruning = bound_pruning and self.cost.monotone
        self.envelope_pruning = envelope_pruning
        self.exhaustive_cap = exhaustive_cap
        self.g = optimize_ground(ground(p.program, p.hypotheses))
        self.gamma = p.gamma
        self.hyp_ids = [self.g.id_of(h) for h in p.hypotheses]
        split = literal_constraints(self.g, p.observations)
        self.satisfiable_obs = split is not None
        self.must_true, self.must_false = split if split else (set(), set())
        self.order = sorted(range(len(p.hypotheses)),
                            key=lambda k: (-p.penalties[k], self.hyp_ids[k]))
        self.stats = SolveStats()
        self._optimum = None

    # helpers

    def _index(self, h: Atom) -> int:
        try:
            return self.p.hypotheses.index(h)
        except ValueError:
            raise PapError("%s is not a hypothesis" % h) from None

    def cost_of(self, s: Iterable[Atom]) -> float:
        return eval_cost(self.cost, self.gamma, s)

    def _admissible_ids(self, ids) -> bool:
        self.stats.admissibility_checks += 1
        if not self.satisfiable_obs:
            return False
        for _ in iter_stable_models(self.g, ids, self.must_true, self.must_false,
                                    node_cap=self.node_cap):
            return True
        return False

    def _tick(self):
        self.stats.nodes_explored += 1
        if self.stats.nodes_explored > self.node_cap:
            raise CapacityError("search exceeded %d nodes" % self.node_cap)

    def _envelope_fails(self, included_ids, undecided_ids) -> bool:
        lower, upper = model_bounds(self.g, included_ids, undecided_ids)
        return bool(self.must_false & lower) or not self.must_true <= upper

    # queries

    def is_admissible(self, s: Iterable[Atom]) -> bool:
        return self._admissible_ids([self.hyp_ids[self._index(h)] for h in s])

    def search(self, forced_in=(), forced_out=(), want_all=False,
               ceiling: Optional[float] = None, first=False, on_node=None):
        """Branch and bound.  Returns ``(best_cost, [(cost, subset-indices)])``.

        With ``first`` the search stops at the first admissible set whose cost
        is within ``ceiling``.  ``on_node`` receives a ``SearchNode`` (over
        hypothesis indices) for every node visited.
        """
        forced_in = list(forced_in)
        skip = set(forced_in) | set(forced_out)
        order = [k for k in self.order if k not in skip]
        found = []
        best = [math.inf]
        included = list(forced_in)
        p = self.p

        def lower_bound():
            return self.cost_of(p.hypotheses[k] for k in included)

        def visit(depth):
            self._tick()
            if on_node is not None:
                decided = set(order[:depth])
                on_node(SearchNode(frozenset(included),
                                   frozenset(set(forced_out) | (decided - set(included))),
                                   lower_bound()))
            if not self.satisfiable_obs:
                return
            if self.bound_pruning:
                lb = lower_bound()
                if ceiling is not None and lb > ceiling + EPS:
                    return
                if best[0] < math.inf:
                    if lb > best[0] + EPS or (not want_all and lb >= best[0] - EPS):
                        return
            if self.envelope_pruning:
                inc = [self.hyp_ids[k] for k in included]
                und = [self.hyp_ids[k] for k in order[depth:]]
                if self._envelope_fails(inc, und):
                    return
            if depth == len(order):
                if not self._admissible_ids([self.hyp_ids[k] for k in included]):
                    return
                c = lower_bound()
                if ceiling is not None and c > ceiling + EPS:
                    return
                if first:
                    found.append((c, tuple(sorted(included))))
                    raise _Stop
                if c < best[0] - EPS or (c < best[0] and not want_all):
                    best[0] = c
                    if want_all:
                        found[:] = [f for f in found if f[0] <= c + EPS]
                    else:
                        found[:] = []
                    found.append((c, tuple(sorted(included))))
                elif want_all and c <= best[0] + EPS:
                    best[0] = min(best[0], c)
                    found.append((c, tuple(sorted(included))))
                return
            k = order[depth]
            branches = (True, False) if best[0] < math.inf else (False, True)
            for take in branches:
                if take:
                    included.append(k)
                    visit(depth + 1)
                    included.pop()
                else:
                    visit(depth + 1)

        try:
            visit(0)
        except _Stop:
            pass
        if not found:
            return None, []
        c = min(f[0] for f in found)
        return c, [f for f in found if f[0] <= c + EPS]

    def solve(self, want_all: bool = False) -> SolveResult:
        t0 = time.perf_counter()
        c, found = self.search(want_all=want_all)
        if want_all or self._optimum is None:
            self._optimum = (c,)
        sols = sorted({sorted_atoms(self.p.hypotheses[k] for k in s) for _, s in found},
                      key=lambda s: [a.sort_key() for a in s])
        if not want_all:
            sols = sols[:1]
        self.stats.elapsed_time += time.perf_counter() - t0
        return SolveResult(bool(found), c, sols, self.stats)

    def optimal_cost(self) -> Optional[float]:
        if self._optimum is None:
            self._optimum = (self.search()[0],)
        return self._optimum[0]

    def is_consistent(self) -> bool:
        return bool(self.search(first=True)[1])

    def is_optimal(self, s: Iterable[Atom]) -> bool:
        s = list(s)
        for h in s:
            self._index(h)
        if not self.is_admissible(s):
            return False
        return self.cost_of(s) <= self.optimal_cost() + EPS

    def is_relevant(self, h: Atom) -> bool:
        k = self._index(h)
        c = self.optimal_cost()
        if c is None:
            return False
        return bool(self.search(forced_in=[k], ceiling=c, first=True)[1])

    def is_necessary(self, h: Atom) -> bool:
        k = self._index(h)
        c = self.optimal_cost()
        if c is None:
            return True
        return not self.search(forced_out=[k], ceiling=c, first=True)[1]

    def admissible_solutions(self) -> list:
        n = len(self.p.hypotheses)
        if n > self.exhaustive_cap:
            raise CapacityError("%d hypotheses exceed the exhaustive cap of %d; use solve instead"
                                % (n, self.exhaustive_cap))
        out = []
        included = []
        order = list(range(n))

        def visit(depth):
            self._tick()
            if not self.satisfiable_obs:
                return
            if self.envelope_pruning:
                inc = [self.hyp_ids[k] for k in included]
                und = [self.hyp_ids[k] for k in order[depth:]]
                if self._envelope_fails(inc, und):
                    return
            if depth == n:
                if self._admissible_ids([self.hyp_ids[k] for k in included]):
                    out.append(sorted_atoms(self.p.hypotheses[k] for k in included))
                return
            included.append(order[depth])
            visit(depth + 1)
            included.pop()
            visit(depth + 1)

        visit(0)
        return sorted(out, key=lambda s: [a.sort_key() for a in s])


def is_admissible(p: PapInstance, s: Iterable[Atom], **opts) -> bool:
    return Solver(p, **opts).is_admissible(s)


def admissible_solutions(p: PapInstance, **opts) -> list:
    return Solver(p, **opts).admissible_solutions()


def solve(p: PapInstance, want_all: bool = False, **opts) -> SolveResult:
    return Solver(p, **opts).solve(want_all)


def is_consistent(p: PapInstance, **opts) -> bool:
    return Solver(p, **opts).is_consistent()


def is_optimal(p: PapInstance, s: Iterable[Atom], **opts) -> bool:
    return Solver(p, **opts).is_optimal(s)


def is_relevant(p: PapInstance, h: Atom, **opts) -> bool:
    return Solver(p, **opts).is_relevant(h)


def is_necessary(p: PapInstance, h: Atom, **opts) -> bool:
    return Solver(p, **opts).is_necessary(h)
