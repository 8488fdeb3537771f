"""Brute-force reference implementations for differential testing.

Deliberately slow and simple.  Nothing here calls into the stable-model
engine or the solver; the ground program comes from the grounder and the
rest is recomputed from the definitions.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .grounder import GroundProgram, ground
from .kernel import CapacityError, PapInstance, sorted_atoms

EXHAUSTIVE_ATOM_CAP = 24
GUESS_ATOM_CAP = 20
HYPOTHESIS_CAP = 16
TSP_MAX_N = 8

_EPS = 1e-9


def _reduct(g: GroundProgram, facts, interp):
    rules = [(f, ()) for f in facts]
    for r in g.rules:
        if all(b not in interp for b in r.neg):
            rules.append((r.head, r.pos))
    return rules


def _lm(rules):
    model = set()
    while True:
        new = {h for h, body in rules if h not in model and all(b in model for b in body)}
        if not new:
            return frozenset(model)
        model |= new


def _stable(g, facts, interp) -> bool:
    return _lm(_reduct(g, facts, interp)) == interp


def oracle_stable_models(g: GroundProgram, active_facts=(), exhaustive: bool = False) -> set:
    """All stable models of ``g`` plus ``active_facts``.

    ``exhaustive`` tests every subset of the atom table (at most 24 atoms).
    Otherwise the negative part of a candidate is guessed, its reduct closed,
    and the result checked for stability; every stable model arises this way
    since the reduct only depends on the negated atoms.  Guesses range from
    the atoms derivable by negation-free rules alone (true in every model) to
    those derivable with negation ignored (the only ones any model can hold).
    """
    facts = frozenset(g.facts) | frozenset(active_facts)
    if exhaustive:
        n = len(g.atoms)
        if n > EXHAUSTIVE_ATOM_CAP:
            raise CapacityError("oracle: %d atoms exceed cap %d" % (n, EXHAUSTIVE_ATOM_CAP))
        out = set()
        for bits in range(1 << n):
            interp = frozenset(i for i in range(n) if bits >> i & 1)
            if _stable(g, facts, interp):
                out.add(interp)
        return out
    negs = {b for r in g.rules for b in r.neg}
    base = [(f, ()) for f in facts]
    certain = _lm(base + [(r.head, r.pos) for r in g.rules if not r.neg])
    possible = _lm(base + [(r.head, r.pos) for r in g.rules])
    fixed = negs & certain
    free = sorted((negs & possible) - certain)
    if len(free) > GUESS_ATOM_CAP:
        raise CapacityError("oracle: %d undetermined negated atoms exceed cap %d"
                            % (len(free), GUESS_ATOM_CAP))
    out = set()
    for bits in range(1 << len(free)):
        guess = fixed | {a for k, a in enumerate(free) if bits >> k & 1}
        m = _lm(_reduct(g, facts, guess))
        if m & negs == guess and _stable(g, facts, m):
            out.add(m)
    return out


_COSTS = {
    "sum": lambda v: math.fsum(v),
    "count": lambda v: float(len(v)),
    "prob": lambda v: 1.0 - math.prod(v),
    "max": lambda v: max(v, default=0.0),
}


@dataclass
class OracleResult:
    adm: set           # frozensets of Atom
    opt: set
    optimal_cost: object  # float or None
    costs: dict        # frozenset -> cost, for admissible sets
    hypotheses: tuple

    @property
    def consistent(self) -> bool:
        return bool(self.adm)

    def relevant(self) -> set:
        return set().union(*self.opt) if self.opt else set()

    def necessary(self) -> set:
        if not self.opt:
            return set(self.hypotheses)
        return set.intersection(*(set(s) for s in self.opt))

    def sorted_opt(self) -> list:
        return sorted((sorted_atoms(s) for s in self.opt), key=lambda s: [a.sort_key() for a in s])


def _literal_holds(g: GroundProgram, model, lit) -> bool:
    i = g.id_of(lit.atom)
    present = i is not None and i in model
    return present != lit.negated


def oracle_pap(p: PapInstance, exhaustive: bool = False) -> OracleResult:
    """Enumerate every subset of H, test admissibility, minimise the cost."""
    n = len(p.hypotheses)
    if n > HYPOTHESIS_CAP:
        raise CapacityError("oracle: %d hypotheses exceed cap %d" % (n, HYPOTHESIS_CAP))
    g = ground(p.program, p.hypotheses)
    agg = _COSTS[p.cost_id]
    hyp_ids = [g.id_of(h) for h in p.hypotheses]
    adm = {}
    for bits in range(1 << n):
        chosen = [k for k in range(n) if bits >> k & 1]
        models = oracle_stable_models(g, [hyp_ids[k] for k in chosen], exhaustive)
        if any(all(_literal_holds(g, m, o) for o in p.observations) for m in models):
            s = frozenset(p.hypotheses[k] for k in chosen)
            adm[s] = agg([p.penalties[k] for k in chosen])
    if not adm:
        return OracleResult(set(), set(), None, {}, p.hypotheses)
    best = min(adm.values())
    opt = {s for s, c in adm.items() if c <= best + _EPS}
    return OracleResult(set(adm), opt, best, adm, p.hypotheses)


def tour_weight(w, tour) -> int:
    n = len(tour)
    return sum(w[tour[i] - 1][tour[(i + 1) % n] - 1] for i in range(n))


def tour_arcs(tour) -> frozenset:
    n = len(tour)
    return frozenset((tour[i], tour[(i + 1) % n]) for i in range(n))


def oracle_tsp(w):
    """Minimum tour weight and all optimal tours over cities ``1..n``.

    Tours are permutations starting at city 1, so each cyclic tour appears
    exactly once.
    """
    n = len(w)
    if not 2 <= n <= TSP_MAX_N:
        raise ValueError("oracle_tsp needs 2 <= n <= %d, got %d" % (TSP_MAX_N, n))
    best = None
    tours = set()
    for rest in itertools.permutations(range(2, n + 1)):
        tour = (1,) + rest
        c = tour_weight(w, tour)
        if best is None or c < best:
            best, tours = c, {tour}
        elif c == best:
            tours.add(tour)
    return best, tours
