"""Stable models of ground normal programs.

The search branches on atoms that occur under ``not``.  Once those are fixed
the reduct is fixed, so every stable model is determined by its intersection
with them.  Each node propagates a lower and an upper bound on all stable
models below it (an alternating fixpoint in the style of well-founded
semantics); a fully decided node yields its lower bound, which is then
confirmed with ``is_stable``.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable, Optional

from .grounder import GroundProgram, GroundRule
from .kernel import CapacityError, Literal

DEFAULT_NODE_CAP = 1 << 20


@dataclass(frozen=True)
class ReductProgram:
    rules: tuple  # GroundRule with empty ``neg``

    def __len__(self):
        return len(self.rules)


def reduct(g: GroundProgram, active_facts: Iterable[int], i: Iterable[int]) -> ReductProgram:
    i = set(i)
    out = [GroundRule(f) for f in sorted(set(g.facts) | set(active_facts))]
    out += [GroundRule(r.head, r.pos) for r in g.rules if not any(b in i for b in r.neg)]
    return ReductProgram(tuple(out))


def least_model(p: ReductProgram) -> frozenset:
    """Fixpoint of the immediate consequence operator, counter based."""
    waiting = {}
    missing = []
    true = set()
    queue = []
    for k, r in enumerate(p.rules):
        if r.neg:
            raise ValueError("least_model needs a positive program")
        missing.append(len(r.pos))
        for b in r.pos:
            waiting.setdefault(b, []).append(k)
        if not r.pos and r.head not in true:
            true.add(r.head)
            queue.append(r.head)
    while queue:
        a = queue.pop()
        for k in waiting.get(a, ()):
            missing[k] -= 1
            if missing[k] == 0:
                h = p.rules[k].head
                if h not in true:
                    true.add(h)
                    queue.append(h)
    return frozenset(true)


def is_stable(g: GroundProgram, active_facts: Iterable[int], i: Iterable[int]) -> bool:
    i = frozenset(i)
    return least_model(reduct(g, active_facts, i)) == i


class _Engine:
    """Per-program indices, built once and cached."""

    def __init__(self, g: GroundProgram):
        self.g = g
        self.heads = [r.head for r in g.rules]
        self.pos = [r.pos for r in g.rules]
        self.neg = [r.neg for r in g.rules]
        self.watch = {}
        for k, r in enumerate(g.rules):
            for b in r.pos:
                self.watch.setdefault(b, []).append(k)
        self.neg_atoms = sorted({b for r in g.rules for b in r.neg})
        self.positive_rules = [k for k, r in enumerate(g.rules) if not r.neg]
        self._stratified = None

    def closure(self, rules, seeds) -> set:
        """Least model of the rules indexed by ``rules`` plus ``seeds`` as facts."""
        missing = {}
        true = set(seeds)
        queue = list(true)
        for k in rules:
            n = len(self.pos[k])
            if n == 0:
                h = self.heads[k]
                if h not in true:
                    true.add(h)
                    queue.append(h)
            else:
                missing[k] = n
        while queue:
            a = queue.pop()
            for k in self.watch.get(a, ()):
                n = missing.get(k)
                if n is None:
                    continue
                n -= 1
                missing[k] = n
                if n == 0:
                    h = self.heads[k]
                    if h not in true:
                        true.add(h)
                        queue.append(h)
        return true

    def bounds(self, true_seeds, maybe_seeds=(), assumed_true=(), assumed_false=()):
        """Lower and upper bound on every stable model of the program plus
        ``true_seeds`` plus any subset of ``maybe_seeds`` that agrees with the
        assumptions.  Returns None when the assumptions are contradictory."""
        assumed_true = set(assumed_true)
        assumed_false = set(assumed_false)
        all_seeds = set(true_seeds) | set(maybe_seeds)
        rng = range(len(self.heads))
        lower = set()
        upper = None
        while True:
            known_true = lower | assumed_true
            new_upper = self.closure(
                (k for k in rng if not any(b in known_true for b in self.neg[k])), all_seeds)
            if upper is not None and new_upper == upper:
                break
            upper = new_upper
            new_lower = self.closure(
                (k for k in rng
                 if all(b not in upper or b in assumed_false for b in self.neg[k])),
                true_seeds)
            if new_lower == lower:
                break
            lower = new_lower
        if not assumed_true <= upper or assumed_false & lower:
            return None
        return lower, upper

    @property
    def stratified(self) -> Optional[list]:
        if self._stratified is None:
            self._stratified = _strata(self.g) or False
        return self._stratified or None


_ENGINES = weakref.WeakKeyDictionary()


def _engine(g: GroundProgram) -> _Engine:
    e = _ENGINES.get(g)
    if e is None:
        e = _ENGINES[g] = _Engine(g)
    return e


def _strata(g: GroundProgram):
    """Stratum number per predicate, or None if negation lies on a cycle."""
    preds = sorted({a.signature for a in g.atoms})
    level = {p: 0 for p in preds}
    edges = []
    for r in g.rules:
        h = g.atoms[r.head].signature
        edges += [(h, g.atoms[b].signature, 0) for b in r.pos]
        edges += [(h, g.atoms[b].signature, 1) for b in r.neg]
    limit = len(preds)
    changed = True
    while changed:
        changed = False
        for h, b, w in edges:
            need = level[b] + w
            if level[h] < need:
                if need > limit:
                    return None
                level[h] = need
                changed = True
    return level


def is_stratified(g: GroundProgram) -> bool:
    return _engine(g).stratified is not None


def stratified_model(g: GroundProgram, active_facts: Iterable[int] = ()) -> frozenset:
    """The unique stable model of a stratified program, stratum by stratum."""
    eng = _engine(g)
    level = eng.stratified
    if level is None:
        raise ValueError("program is not stratified")
    by_level = {}
    for k, h in enumerate(eng.heads):
        by_level.setdefault(level[g.atoms[h].signature], []).append(k)
    model = set(g.facts) | set(active_facts)
    model = eng.closure((), model)
    for lv in sorted(by_level):
        rules = [k for k in by_level[lv] if not any(b in model for b in eng.neg[k])]
        model = eng.closure(rules, model)
    return frozenset(model)


class _Counter:
    def __init__(self, cap):
        self.cap = cap
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.cap:
            raise CapacityError("stable model search exceeded %d nodes" % self.cap)


def iter_stable_models(g: GroundProgram, active_facts: Iterable[int] = (),
                       must_true: Iterable[int] = (), must_false: Iterable[int] = (),
                       node_cap: int = DEFAULT_NODE_CAP, use_stratified: bool = True,
                       counter: Optional[_Counter] = None):
    """Yield stable models (as frozensets of ids) that contain ``must_true``
    and avoid ``must_false``."""
    eng = _engine(g)
    seeds = set(g.facts) | set(active_facts)
    must_true = frozenset(must_true)
    must_false = frozenset(must_false)
    counter = counter or _Counter(node_cap)
    if use_stratified and eng.stratified is not None:
        counter.tick()
        m = stratified_model(g, active_facts)
        if must_true <= m and not (must_false & m):
            yield m
        return

    stack = [(frozenset(), frozenset())]
    while stack:
        t, f = stack.pop()
        counter.tick()
        b = eng.bounds(seeds, (), t, f)
        if b is None:
            continue
        lower, upper = b
        if not must_true <= upper or must_false & lower:
            continue
        open_atoms = [a for a in eng.neg_atoms
                      if a not in t and a not in f and a in upper and a not in lower]
        if not open_atoms:
            m = frozenset(lower)
            if m == frozenset(upper) and is_stable(g, active_facts, m):
                yield m
            continue
        a = open_atoms[0]
        # pushed in reverse so the "true" branch is explored first
        stack.append((t, f | {a}))
        stack.append((t | {a}, f))


def stable_models(g: GroundProgram, active_facts: Iterable[int] = (),
                  node_cap: int = DEFAULT_NODE_CAP, use_stratified: bool = True) -> list:
    """All stable models of ``g`` with ``active_facts`` added, sorted."""
    ms = list(iter_stable_models(g, active_facts, node_cap=node_cap,
                                 use_stratified=use_stratified))
    return sorted(ms, key=lambda m: sorted(m))


def positive_envelope(g: GroundProgram, facts: Iterable[int]) -> frozenset:
    """Least model of the negation-free rules plus the program facts and ``facts``.

    It is contained in every stable model of ``g`` with a fact set including
    ``facts``, since every stable model satisfies the negation-free rules.
    """
    eng = _engine(g)
    return frozenset(eng.closure(eng.positive_rules, set(g.facts) | set(facts)))


def model_bounds(g: GroundProgram, true_facts: Iterable[int], maybe_facts: Iterable[int] = ()):
    """Bounds valid for every stable model of ``g`` plus ``true_facts`` plus any
    subset of ``maybe_facts``: ``lower <= M <= upper``."""
    eng = _engine(g)
    lower, upper = eng.bounds(set(g.facts) | set(true_facts), maybe_facts)
    return frozenset(lower), frozenset(upper)


def literal_constraints(g: GroundProgram, lits: Iterable):
    """Split literals into required-true / required-false id sets.

    Returns None if a positive literal names an atom outside the atom table,
    which no model can contain.
    """
    must_true, must_false = set(), set()
    for lit in lits:
        if isinstance(lit, Literal):
            i, negated = g.id_of(lit.atom), lit.negated
        else:
            i, negated = lit
        if i is None:
            if not negated:
                return None
            continue
        (must_false if negated else must_true).add(i)
    return must_true, must_false


def brave_entails(g: GroundProgram, active_facts: Iterable[int], lits: Iterable,
                  node_cap: int = DEFAULT_NODE_CAP) -> bool:
    split = literal_constraints(g, lits)
    if split is None:
        return False
    for _ in iter_stable_models(g, active_facts, split[0], split[1], node_cap=node_cap):
        return True
    return False


def cautious_entails(g: GroundProgram, active_facts: Iterable[int], lits: Iterable,
                     node_cap: int = DEFAULT_NODE_CAP) -> bool:
    lits = list(lits)
    split = literal_constraints(g, lits)
    models = stable_models(g, active_facts, node_cap=node_cap)
    if split is None:
        return not models
    must_true, must_false = split
    return all(must_true <= m and not (must_false & m) for m in models)
