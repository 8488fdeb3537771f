"""Bottom-up instantiation of safe programs.

The program is grounded once over LP together with the hypotheses, which are
kept as *assumable* atoms: each candidate hypothesis set is later switched on
as extra facts without regrounding.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .kernel import (Atom, BinOp, Comparison, GroundingError,
                     Program, Rule, Term, ValidationError, expr_constants,
                     validate_program)


@dataclass(frozen=True)
class GroundRule:
    head: int
    pos: tuple = ()
    neg: tuple = ()


@dataclass(eq=False)
class GroundProgram:
    atoms: tuple                      # id -> Atom
    rules: tuple                      # GroundRule, over ids
    facts: frozenset = frozenset()
    assumables: frozenset = frozenset()

    @cached_property
    def index(self) -> dict:
        return {a: i for i, a in enumerate(self.atoms)}

    def id_of(self, a: Atom) -> Optional[int]:
        return self.index.get(a)

    def ids(self, atoms: Iterable[Atom]) -> frozenset:
        return frozenset(self.index[a] for a in atoms)

    def decode(self, ids: Iterable[int]) -> frozenset:
        return frozenset(self.atoms[i] for i in ids)

    @cached_property
    def heads(self) -> frozenset:
        return frozenset(r.head for r in self.rules)

    def __len__(self):
        return len(self.rules)


def herbrand_universe(program: Program, hypotheses: Iterable[Atom] = ()) -> set:
    """All constants in the program (atoms and comparisons) and in the hypotheses."""
    out = set()
    for r in program.rules:
        for a in (r.head,) + r.body_pos + r.body_neg:
            out.update(t for t in a.args if not t.is_variable)
        for c in r.body_cmp:
            out.update(expr_constants(c.lhs))
            out.update(expr_constants(c.rhs))
    for h in hypotheses:
        out.update(h.args)
    return out


# Internally ground arguments are python values: ints for integers and strs
# for symbolic constants (which never start with a digit, so no clashes).

def _value(t: Term):
    return t.value


def _to_term(v) -> Term:
    return Term.int(v) if isinstance(v, int) else Term.const(v)


def _arith(e, env, rule_index):
    if isinstance(e, BinOp):
        a = _arith(e.lhs, env, rule_index)
        b = _arith(e.rhs, env, rule_index)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        return a * b
    v = env[e.value] if e.is_variable else e.value
    if not isinstance(v, int):
        raise GroundingError("rule %d: arithmetic on non-integer constant %s under %s"
                             % (rule_index, v, _fmt_env(env)))
    return v


def _fmt_env(env) -> str:
    return "{%s}" % ", ".join("%s=%s" % kv for kv in sorted(env.items()) if not kv[0].startswith("_"))


def _eval_cmp(c: Comparison, env: dict, rule_index: int) -> bool:
    plain = not isinstance(c.lhs, BinOp) and not isinstance(c.rhs, BinOp)
    if plain and c.op in ("=", "!="):
        # equality over plain terms also works on symbolic constants
        a = env[c.lhs.value] if c.lhs.is_variable else c.lhs.value
        b = env[c.rhs.value] if c.rhs.is_variable else c.rhs.value
        return (a == b) == (c.op == "=")
    a = _arith(c.lhs, env, rule_index)
    b = _arith(c.rhs, env, rule_index)
    return {"=": a == b, "!=": a != b, "<": a < b, "<=": a <= b,
            ">": a > b, ">=": a >= b}[c.op]


class _RulePlan:
    """A rule compiled for joining: body atoms in order, with each comparison
    scheduled right after the atom that binds its last variable."""

    def __init__(self, rule: Rule, index: int):
        self.rule = rule
        self.index = index
        self.body = []
        bound = set()
        pending = list(rule.body_cmp)
        ready = [c for c in pending if not set(c.variables())]
        pending = [c for c in pending if c not in ready]
        self.initial_checks = ready
        for a in rule.body_pos:
            bound.update(a.variables())
            now = [c for c in pending if set(c.variables()) <= bound]
            pending = [c for c in pending if c not in now]
            self.body.append((a, now))
        if pending:
            raise ValidationError("rule %d is unsafe" % index)

    def matches(self, domain: dict):
        """Yield every environment binding the positive body into ``domain``."""
        env = {}
        for c in self.initial_checks:
            if not _eval_cmp(c, env, self.index):
                return
        yield from self._join(0, env, domain)

    def _join(self, k, env, domain):
        if k == len(self.body):
            yield env
            return
        a, checks = self.body[k]
        key = (a.predicate, a.arity)
        for args in domain.get(key, ()):
            new = _unify(a.args, args, env)
            if new is None:
                continue
            if all(_eval_cmp(c, new, self.index) for c in checks):
                yield from self._join(k + 1, new, domain)


def _unify(pattern: tuple, args: tuple, env: dict):
    new = None
    for t, v in zip(pattern, args):
        if t.is_variable:
            cur = (new or env).get(t.value, _MISSING)
            if cur is _MISSING:
                if new is None:
                    new = dict(env)
                new[t.value] = v
            elif cur != v or type(cur) is not type(v):
                return None
        elif t.value != v or type(t.value) is not type(v):
            return None
    return env if new is None else new


_MISSING = object()


def _instantiate(a: Atom, env: dict) -> tuple:
    return (a.predicate, tuple(env[t.value] if t.is_variable else t.value for t in a.args))


def _key_of(a: Atom) -> tuple:
    return (a.predicate, tuple(_value(t) for t in a.args))


def _sort_key(key):
    pred, args = key
    return (pred, len(args), tuple((0, v, "") if isinstance(v, int) else (1, 0, v) for v in args))


def ground(program: Program, hypotheses: Iterable[Atom] = ()) -> GroundProgram:
    """Instantiate ``program`` with ``hypotheses`` as assumable atoms.

    Variables are bound by joining positive bodies against every atom that is
    derivable at all (facts, hypotheses and rule heads, ignoring negation);
    an instance whose positive body can never hold is omitted since it fires
    in no reduct.  Variable-free rules are kept as written.
    """
    problems = validate_program(program)
    if problems:
        raise ValidationError("; ".join(str(d) for d in problems))
    hypotheses = list(hypotheses)
    for h in hypotheses:
        if not h.is_ground():
            raise ValidationError("hypothesis %s is not ground" % h)

    plans = [_RulePlan(r, i) for i, r in enumerate(program.rules)]
    known = set(_key_of(h) for h in hypotheses)
    domain = defaultdict(set)

    def add(key):
        known.add(key)
        domain[(key[0], len(key[1]))].add(key[1])

    for key in list(known):
        add(key)

    # naive fixpoint over the negation-free relaxation
    changed = True
    while changed:
        changed = False
        for plan in plans:
            for env in list(plan.matches(domain)):
                key = _instantiate(plan.rule.head, env)
                if key not in known:
                    add(key)
                    changed = True

    instances = set()
    facts = set()
    for plan in plans:
        r = plan.rule
        if not r.variables():
            if all(_eval_cmp(c, {}, plan.index) for c in r.body_cmp):
                inst = (_key_of(r.head), tuple(_key_of(a) for a in r.body_pos),
                        tuple(_key_of(a) for a in r.body_neg))
                if inst[1] or inst[2]:
                    instances.add(inst)
                else:
                    facts.add(inst[0])
            continue
        for env in plan.matches(domain):
            head = _instantiate(r.head, env)
            pos = tuple(_instantiate(a, env) for a in r.body_pos)
            neg = tuple(_instantiate(a, env) for a in r.body_neg)
            if pos or neg:
                instances.add((head, pos, neg))
            else:
                facts.add(head)

    keys = set(facts) | set(_key_of(h) for h in hypotheses)
    for head, pos, neg in instances:
        keys.add(head)
        keys.update(pos)
        keys.update(neg)
    ordered = sorted(keys, key=_sort_key)
    ids = {k: i for i, k in enumerate(ordered)}
    atoms = tuple(Atom(p, tuple(_to_term(v) for v in args)) for p, args in ordered)

    rules = (GroundRule(ids[h], tuple(ids[a] for a in pos), tuple(ids[a] for a in neg))
             for h, pos, neg in instances)
    rules = tuple(sorted(rules, key=lambda r: (r.head, r.pos, r.neg)))
    return GroundProgram(atoms, rules, frozenset(ids[k] for k in facts),
                         frozenset(ids[_key_of(h)] for h in hypotheses))


def optimize_ground(g: GroundProgram) -> GroundProgram:
    """Drop rules that can never fire and duplicate rules.

    A rule is dropped when its positive body mentions an atom that is neither
    a fact, an assumable, nor the head of a remaining rule.  This repeats until
    nothing changes.  Atom ids are preserved.
    """
    seen = set()
    rules = []
    for r in g.rules:
        norm = GroundRule(r.head, tuple(sorted(set(r.pos))), tuple(sorted(set(r.neg))))
        if norm not in seen:
            seen.add(norm)
            rules.append(norm)
    base = g.facts | g.assumables
    while True:
        supported = base | {r.head for r in rules}
        kept = [r for r in rules if all(a in supported for a in r.pos)]
        if len(kept) == len(rules):
            break
        rules = kept
    return GroundProgram(g.atoms, tuple(rules), g.facts, g.assumables)


def format_ground_rule(g: GroundProgram, r: GroundRule) -> str:
    return str(Rule(g.atoms[r.head], tuple(g.atoms[i] for i in r.pos),
                    tuple(g.atoms[i] for i in r.neg)))


def dump_ground(g: GroundProgram) -> str:
    """Facts first, then rules; each block sorted as text."""
    facts = sorted("%s." % g.atoms[i] for i in g.facts)
    rules = sorted(format_ground_rule(g, r) for r in g.rules)
    return "".join(line + "\n" for line in facts + rules)
