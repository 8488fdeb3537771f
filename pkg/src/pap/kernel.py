"""Abstract syntax and semantic domain types shared by the whole package.

All values are immutable once built.  Ground atoms are plain ``Atom`` values
whose arguments are constant or integer terms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Union


class PapError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(PapError):
    pass


class GroundingError(PapError):
    pass


class CapacityError(PapError):
    """A configured search or size limit was exceeded."""


class CostDomainError(PapError):
    pass


class UnsupportedOperation(PapError):
    pass


CONST = "const"
INT = "int"
VAR = "var"
ANON = "anon"


@dataclass(frozen=True)
class Term:
    kind: str
    value: Union[str, int]

    @staticmethod
    def const(name: str) -> "Term":
        return Term(CONST, name)

    @staticmethod
    def int(value: int) -> "Term":
        return Term(INT, value)

    @staticmethod
    def var(name: str) -> "Term":
        return Term(VAR, name)

    @property
    def is_variable(self) -> bool:
        return self.kind in (VAR, ANON)

    def sort_key(self):
        # integers sort before symbols, numerically
        if self.kind == INT:
            return (0, self.value, "")
        return (1, 0, str(self.value))

    def __str__(self) -> str:
        if self.kind == ANON:
            return "_"
        return str(self.value)


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def signature(self) -> tuple:
        return (self.predicate, len(self.args))

    def variables(self) -> Iterator[str]:
        for t in self.args:
            if t.is_variable:
                yield t.value

    def is_ground(self) -> bool:
        return not any(t.is_variable for t in self.args)

    def sort_key(self):
        return (self.predicate, len(self.args), tuple(t.sort_key() for t in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return "%s(%s)" % (self.predicate, ",".join(str(t) for t in self.args))


def atom(predicate: str, *args) -> Atom:
    """Build a ground atom from python values: ``atom("c", 1, 2)``."""
    terms = []
    for a in args:
        if isinstance(a, Term):
            terms.append(a)
        elif isinstance(a, bool) or not isinstance(a, (int, str)):
            raise TypeError("unsupported argument %r" % (a,))
        elif isinstance(a, int):
            terms.append(Term.int(a))
        elif a[:1].isupper():
            terms.append(Term.var(a))
        else:
            terms.append(Term.const(a))
    return Atom(predicate, tuple(terms))


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negated: bool = False

    def __str__(self) -> str:
        return ("not " if self.negated else "") + str(self.atom)


def complement(lit: Literal) -> Literal:
    return Literal(lit.atom, not lit.negated)


# Arithmetic expressions only occur inside comparisons.

@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - *
    lhs: "Expr"
    rhs: "Expr"


Expr = Union[Term, BinOp]

COMPARISON_OPS = ("=", "!=", "<", "<=", ">", ">=")
ARITH_OPS = ("+", "-", "*")


def expr_variables(e: Expr) -> Iterator[str]:
    if isinstance(e, BinOp):
        yield from expr_variables(e.lhs)
        yield from expr_variables(e.rhs)
    elif e.is_variable:
        yield e.value


def expr_constants(e: Expr) -> Iterator[Term]:
    if isinstance(e, BinOp):
        yield from expr_constants(e.lhs)
        yield from expr_constants(e.rhs)
    elif not e.is_variable:
        yield e


_PREC = {"+": 1, "-": 1, "*": 2}


def format_expr(e: Expr) -> str:
    if not isinstance(e, BinOp):
        return str(e)
    prec = _PREC[e.op]
    left = format_expr(e.lhs)
    if isinstance(e.lhs, BinOp) and _PREC[e.lhs.op] < prec:
        left = "(%s)" % left
    right = format_expr(e.rhs)
    if isinstance(e.rhs, BinOp) and _PREC[e.rhs.op] <= prec:
        right = "(%s)" % right
    return "%s %s %s" % (left, e.op, right)


@dataclass(frozen=True)
class Comparison:
    op: str
    lhs: Expr
    rhs: Expr

    def variables(self) -> Iterator[str]:
        yield from expr_variables(self.lhs)
        yield from expr_variables(self.rhs)

    def __str__(self) -> str:
        return "%s %s %s" % (format_expr(self.lhs), self.op, format_expr(self.rhs))


@dataclass(frozen=True)
class Rule:
    head: Atom
    body_pos: tuple = ()
    body_neg: tuple = ()
    body_cmp: tuple = ()

    @property
    def is_fact(self) -> bool:
        return not (self.body_pos or self.body_neg or self.body_cmp)

    def variables(self) -> set:
        out = set(self.head.variables())
        for a in self.body_pos + self.body_neg:
            out.update(a.variables())
        for c in self.body_cmp:
            out.update(c.variables())
        return out

    def __str__(self) -> str:
        if self.is_fact:
            return "%s." % self.head
        body = [str(a) for a in self.body_pos]
        body += ["not %s" % a for a in self.body_neg]
        body += [str(c) for c in self.body_cmp]
        return "%s :- %s." % (self.head, ", ".join(body))


@dataclass(frozen=True)
class Program:
    rules: tuple = ()

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __str__(self) -> str:
        return "".join("%s\n" % r for r in self.rules)


@dataclass(frozen=True)
class Diagnostic:
    rule_index: Optional[int]
    reason: str

    def __str__(self) -> str:
        where = "rule %d" % self.rule_index if self.rule_index is not None else "instance"
        return "%s: %s" % (where, self.reason)


def _check_arities(atoms: Iterable[tuple], out: list) -> None:
    seen: dict = {}
    reported = set()
    for index, a in atoms:
        prev = seen.setdefault(a.predicate, a.arity)
        if prev != a.arity and a.predicate not in reported:
            reported.add(a.predicate)
            out.append(Diagnostic(index, "arity conflict on %s (%d vs %d)"
                                  % (a.predicate, prev, a.arity)))


def _rule_atoms(program: Program):
    for i, r in enumerate(program.rules):
        yield i, r.head
        for a in r.body_pos + r.body_neg:
            yield i, a


def validate_program(program: Program) -> list:
    """Return diagnostics for unsafe rules, misplaced ``_`` and arity conflicts."""
    out = []
    for i, r in enumerate(program.rules):
        bound = set()
        for a in r.body_pos:
            bound.update(a.variables())
        for where, atoms in (("head", (r.head,)), ("negative body", r.body_neg)):
            for a in atoms:
                if any(t.kind == ANON for t in a.args):
                    out.append(Diagnostic(i, "anonymous variable in %s" % where))
                for v in a.variables():
                    if v not in bound:
                        out.append(Diagnostic(i, "unsafe: %s not in positive body" % v))
        for c in r.body_cmp:
            for v in c.variables():
                if v not in bound:
                    out.append(Diagnostic(i, "unsafe: %s not in positive body" % v))
    _check_arities(_rule_atoms(program), out)
    return out


@dataclass(frozen=True)
class PapInstance:
    """A problem of abduction with penalization.

    ``penalties[i]`` is the penalty of ``hypotheses[i]``.  Hypotheses keep the
    order in which they were declared; that order has no semantic weight.
    """
    hypotheses: tuple = ()
    program: Program = field(default_factory=Program)
    observations: tuple = ()
    penalties: tuple = ()
    cost_id: str = "sum"

    def __post_init__(self):
        if len(self.penalties) != len(self.hypotheses):
            raise ValidationError("penalties must be total on the hypotheses")
        if len(set(self.hypotheses)) != len(self.hypotheses):
            raise ValidationError("duplicate hypothesis")
        for h, g in zip(self.hypotheses, self.penalties):
            if not h.is_ground():
                raise ValidationError("hypothesis %s is not ground" % h)
            if not (isinstance(g, (int, float)) and math.isfinite(g) and g > 0):
                raise ValidationError("penalty of %s must be positive, got %r" % (h, g))
        for o in self.observations:
            if not o.atom.is_ground():
                raise ValidationError("observation %s is not ground" % o)

    @property
    def gamma(self) -> Mapping[Atom, float]:
        return dict(zip(self.hypotheses, self.penalties))

    def penalty(self, h: Atom) -> float:
        return self.penalties[self.hypotheses.index(h)]

    def with_cost(self, cost_id: str) -> "PapInstance":
        return PapInstance(self.hypotheses, self.program, self.observations,
                           self.penalties, cost_id)


def validate_instance(p: PapInstance) -> list:
    """Program diagnostics plus arity consistency across hypotheses and observations."""
    out = validate_program(p.program)
    if any("arity conflict" in d.reason for d in out):
        return out
    atoms = list(_rule_atoms(p.program))
    atoms += [(None, h) for h in p.hypotheses]
    atoms += [(None, o.atom) for o in p.observations]
    _check_arities(atoms, out)
    return out


@dataclass
class SolveStats:
    nodes_explored: int = 0
    admissibility_checks: int = 0
    elapsed_time: float = 0.0


@dataclass
class SolveResult:
    consistent: bool
    optimal_cost: Optional[float]
    solutions: list  # list of tuples of Atom, each sorted
    stats: SolveStats = field(default_factory=SolveStats)

    def __post_init__(self):
        if self.consistent != (self.optimal_cost is not None) or \
                self.consistent != bool(self.solutions):
            raise ValueError("optimal_cost absent iff inconsistent iff no solutions")

    def solution_sets(self) -> set:
        return {frozenset(s) for s in self.solutions}


def sorted_atoms(atoms: Iterable[Atom]) -> tuple:
    return tuple(sorted(atoms, key=Atom.sort_key))
