import pytest

from pap.kernel import (Atom, Comparison, Literal, PapInstance, Program, Rule,
                        SolveResult, Term, ValidationError, atom, complement,
                        sorted_atoms, validate_instance, validate_program)
from pap.parser import parse_pap


def test_atom_helper_and_printing():
    a = atom("c", 1, "b")
    assert a.is_ground()
    assert a.arity == 2
    assert str(a) == "c(1,b)"
    assert str(atom("rains")) == "rains"
    v = atom("p", "X", "y")
    assert not v.is_ground()
    assert list(v.variables()) == ["X"]


def test_atoms_sort_ints_before_symbols():
    atoms = [atom("p", "b"), atom("p", 10), atom("p", 2), atom("p", "a")]
    assert [str(a) for a in sorted_atoms(atoms)] == ["p(2)", "p(10)", "p(a)", "p(b)"]


def test_complement():
    lit = Literal(atom("a"))
    assert complement(lit) == Literal(atom("a"), True)
    assert complement(complement(lit)) == lit
    assert str(complement(lit)) == "not a"


def test_rule_printing():
    x = Term.var("X")
    r = Rule(Atom("p", (x,)), (Atom("q", (x,)),), (Atom("r", (x,)),),
             (Comparison("!=", x, Term.const("a")),))
    assert str(r) == "p(X) :- q(X), not r(X), X != a."
    assert str(Rule(atom("a"))) == "a."
    assert Rule(atom("a")).is_fact


def test_validate_unsafe_variable():
    x, y = Term.var("X"), Term.var("Y")
    prog = Program((Rule(Atom("p", (x,)), (), (Atom("q", (x,)),)),))
    diags = validate_program(prog)
    assert diags and "unsafe" in diags[0].reason
    prog = Program((Rule(Atom("p", (x,)), (Atom("q", (x,)),), (), (Comparison("<", x, y),)),))
    assert any("Y" in d.reason for d in validate_program(prog))


def test_validate_arity_conflict():
    prog = Program((Rule(atom("p", "a")), Rule(atom("p", "a", "b"))))
    assert any("arity" in d.reason for d in validate_program(prog))


def test_instance_arity_conflict_with_hypothesis():
    p = PapInstance((atom("p"),), Program((Rule(atom("p", "a")),)), (), (1.0,))
    assert any("arity" in d.reason for d in validate_instance(p))


def test_instance_invariants():
    with pytest.raises(ValidationError):
        PapInstance((atom("h"),), Program(), (), ())
    with pytest.raises(ValidationError):
        PapInstance((atom("h"), atom("h")), Program(), (), (1.0, 1.0))
    with pytest.raises(ValidationError):
        PapInstance((atom("h"),), Program(), (), (0.0,))
    with pytest.raises(ValidationError):
        PapInstance((atom("h"),), Program(), (), (float("inf"),))
    with pytest.raises(ValidationError):
        PapInstance((atom("h", "X"),), Program(), (), (1.0,))


def test_gamma_and_with_cost():
    p = parse_pap("#hypothesis a penalty 2. #hypothesis b penalty 3.")
    assert p.gamma == {atom("a"): 2.0, atom("b"): 3.0}
    assert p.penalty(atom("b")) == 3.0
    assert p.with_cost("count").cost_id == "count"
    assert p.cost_id == "sum"


def test_solve_result_invariant():
    SolveResult(False, None, [])
    SolveResult(True, 0.0, [()])
    with pytest.raises(ValueError):
        SolveResult(True, None, [()])
    with pytest.raises(ValueError):
        SolveResult(False, 1.0, [])
