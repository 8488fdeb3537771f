"""Reader and printer for the ``.pap`` text format.

A document is a list of rules in Datalog syntax with ``not`` for default
negation, plus three directives::

    #hypothesis offline(b) penalty 0.64.
    #observe not reaches(a,e).
    #cost prob.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .cost import REGISTRY, penalty_warnings
from .kernel import (ANON, COMPARISON_OPS, Atom, BinOp, Comparison,
                     Literal, PapError, PapInstance, Program, Rule, Term,
                     ValidationError, validate_instance)


@dataclass(frozen=True)
class SourceDiagnostic:
    line: int
    column: int
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return "%d:%d: %s: %s" % (self.line, self.column, self.severity, self.message)


class ParseError(PapError):
    def __init__(self, diagnostic: SourceDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<directive>\#[a-z]+)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<anon>_[A-Za-z0-9_]*)
  | (?P<op>:-|!=|<=|>=|[=<>+\-*(),.])
""", re.VERBOSE)


# an identifier followed by one of these starts a comparison, not an atom
_EXPR_FOLLOW = COMPARISON_OPS + ("+", "-", "*")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        self.i = 0
        self.warnings = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise self.error("unexpected character %r" % text[pos], pos)
            if m.lastgroup != "ws":
                self.toks.append(_Tok(m.lastgroup, m.group(), pos))
            pos = m.end()
        self.toks.append(_Tok("eof", "", len(text)))

    def where(self, pos: int):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message: str, pos: Optional[int] = None) -> ParseError:
        if pos is None:
            pos = self.peek().pos
        # diagnostics must point inside the text
        pos = max(0, min(pos, len(self.text) - 1))
        line, col = self.where(pos)
        return ParseError(SourceDiagnostic(line, col, message))

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("op", "directive", "ident") and t.text == text

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            t = self.peek()
            raise self.error("expected %r, found %s" % (text, repr(t.text) if t.text else "end of input"))
        return self.next()


class _Parser(_Reader):
    def __init__(self, text: str):
        super().__init__(text)
        self.rules = []
        self.rule_pos = []
        self.hyps = {}
        self.hyp_pos = {}
        self.obs = []
        self.cost_id = None
        self._anon = 0

    def document(self):
        while self.peek().kind != "eof":
            if self.peek().kind == "directive":
                self.directive()
            else:
                start = self.peek().pos
                self.rules.append(self.rule())
                self.rule_pos.append(start)

    # terms and atoms

    def term(self, allow_anon: bool) -> Term:
        t = self.next()
        if t.kind == "ident":
            if t.text == "not":
                raise self.error("'not' is reserved", t.pos)
            return Term.const(t.text)
        if t.kind == "var":
            return Term.var(t.text)
        if t.kind == "number" or (t.text == "-" and self.peek().kind == "number"):
            neg = t.text == "-"
            if neg:
                t = self.next()
            if not t.text.isdigit():
                raise self.error("terms must be integers or identifiers", t.pos)
            return Term.int(-int(t.text) if neg else int(t.text))
        if t.kind == "anon":
            if t.text != "_":
                raise self.error("variables must start with an uppercase letter", t.pos)
            if not allow_anon:
                raise self.error("anonymous variable not allowed here", t.pos)
            self._anon += 1
            return Term(ANON, "_%d" % self._anon)
        raise self.error("expected a term, found %s" % (repr(t.text) or "end of input"), t.pos)

    def atom(self, allow_anon: bool = False) -> Atom:
        t = self.next()
        if t.kind != "ident":
            raise self.error("expected an atom", t.pos)
        if t.text == "not":
            raise self.error("'not' is reserved", t.pos)
        args = []
        if self.at("("):
            self.next()
            args.append(self.term(allow_anon))
            while self.at(","):
                self.next()
                args.append(self.term(allow_anon))
            self.expect(")")
        return Atom(t.text, tuple(args))

    def ground_atom(self) -> Atom:
        pos = self.peek().pos
        a = self.atom(allow_anon=False)
        if not a.is_ground():
            raise self.error("directive argument must be ground", pos)
        return a

    # arithmetic

    def expr(self):
        e = self.product()
        while self.at("+") or self.at("-"):
            op = self.next().text
            e = BinOp(op, e, self.product())
        return e

    def product(self):
        e = self.primary()
        while self.at("*"):
            self.next()
            e = BinOp("*", e, self.primary())
        return e

    def primary(self):
        t = self.peek()
        if t.text == "(":
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind in ("var", "number", "ident") or t.text == "-":
            return self.term(allow_anon=False)
        raise self.error("expected a term")

    # statements

    def rule(self) -> Rule:
        self._anon = 0
        head = self.atom(allow_anon=False)
        pos, neg, cmp = [], [], []
        if self.at(":-"):
            self.next()
            while True:
                t = self.peek()
                if t.kind == "ident" and t.text == "not":
                    self.next()
                    neg.append(self.atom(allow_anon=False))
                elif t.kind == "ident" and self.peek(1).text not in _EXPR_FOLLOW:
                    pos.append(self.atom(allow_anon=True))
                else:
                    lhs = self.expr()
                    op = self.peek()
                    if op.text not in COMPARISON_OPS:
                        raise self.error("expected a comparison operator")
                    self.next()
                    cmp.append(Comparison(op.text, lhs, self.expr()))
                if not self.at(","):
                    break
                self.next()
        self.expect(".")
        return Rule(head, tuple(pos), tuple(neg), tuple(cmp))

    def directive(self):
        t = self.next()
        if t.text == "#hypothesis":
            pos = self.peek().pos
            h = self.ground_atom()
            penalty = 1.0
            if self.at("penalty"):
                self.next()
                sign = 1.0
                if self.at("-"):
                    self.next()
                    sign = -1.0
                num = self.next()
                if num.kind != "number":
                    raise self.error("expected a number after 'penalty'", num.pos)
                penalty = sign * float(num.text)
                if not penalty > 0:
                    raise self.error("penalty must be positive", num.pos)
            self.expect(".")
            if h in self.hyps:
                raise self.error("duplicate hypothesis %s" % h, pos)
            self.hyps[h] = penalty
            self.hyp_pos[h] = pos
        elif t.text == "#observe":
            negated = False
            if self.at("not"):
                self.next()
                negated = True
            lit = Literal(self.ground_atom(), negated)
            self.expect(".")
            if lit not in self.obs:
                self.obs.append(lit)
        elif t.text == "#cost":
            name = self.next()
            if name.kind != "ident":
                raise self.error("expected a cost function name", name.pos)
            if name.text not in REGISTRY:
                raise self.error("unknown cost function %r" % name.text, name.pos)
            if self.cost_id is not None:
                raise self.error("duplicate #cost directive", t.pos)
            self.cost_id = name.text
            self.expect(".")
        else:
            raise self.error("unknown directive %s" % t.text, t.pos)


def parse_program(text: str) -> Program:
    """Parse rules only; directives are rejected."""
    p = parse_pap(text)
    if p.hypotheses or p.observations:
        raise PapError("directives are not allowed here")
    return p.program


def parse_pap(text: str, warnings: Optional[list] = None) -> PapInstance:
    """Parse and validate a ``.pap`` document.

    Non-fatal findings are appended to ``warnings`` as ``SourceDiagnostic``.
    """
    ps = _Parser(text)
    ps.document()
    program = Program(tuple(ps.rules))
    cost_id = ps.cost_id or "sum"
    try:
        inst = PapInstance(tuple(ps.hyps), program, tuple(ps.obs),
                           tuple(ps.hyps.values()), cost_id)
    except ValidationError as e:
        raise ps.error(str(e), 0) from None
    for d in validate_instance(inst):
        if d.rule_index is not None:
            pos = ps.rule_pos[d.rule_index]
        else:
            pos = 0
        raise ps.error(d.reason, pos)
    if warnings is not None:
        for msg in penalty_warnings(cost_id, inst.penalties):
            warnings.append(SourceDiagnostic(1, 1, msg, "warning"))
    return inst


def parse_atom(text: str) -> Atom:
    ps = _Parser(text.strip() + ".")
    a = ps.ground_atom()
    ps.expect(".")
    if ps.peek().kind != "eof":
        raise ps.error("trailing input after atom")
    return a


def parse_atom_list(text: str) -> list:
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    if not text.strip():
        return []
    ps = _Parser(text + ".")
    out = [ps.ground_atom()]
    while ps.at(","):
        ps.next()
        out.append(ps.ground_atom())
    ps.expect(".")
    if ps.peek().kind != "eof":
        raise ps.error("expected ',' between atoms")
    return out


def format_number(x: float) -> str:
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def print_pap(p: PapInstance) -> str:
    lines = [str(r) for r in p.program.rules]
    for h, g in zip(p.hypotheses, p.penalties):
        lines.append("#hypothesis %s penalty %s." % (h, format_number(g)))
    for o in p.observations:
        lines.append("#observe %s." % o)
    lines.append("#cost %s." % p.cost_id)
    return "\n".join(lines) + "\n"
