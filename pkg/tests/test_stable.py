import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pap.corpus import fixture
from pap.grounder import ground
from pap.kernel import CapacityError, Literal, atom
from pap.oracle import oracle_stable_models
from pap.parser import parse_program
from pap.stable import (brave_entails, cautious_entails, is_stable,
                        is_stratified, least_model, model_bounds,
                        positive_envelope, reduct, stable_models,
                        stratified_model)

from randgen import random_ground, rng_for

seeds = st.integers(0, 2**32)


def names(g, ids):
    return {str(a) for a in g.decode(ids)}


def ex21():
    return ground(fixture("ex21").instance().program)


def test_ex21_reduct_and_least_model():
    g = ex21()
    i = g.ids([atom("a"), atom("c")])
    r = reduct(g, (), i)
    assert all(rule.neg == () for rule in r.rules)
    assert len(r) == 3  # b :- not a is deleted
    assert names(g, least_model(r)) == {"a", "c"}
    assert is_stable(g, (), i)
    assert not is_stable(g, (), g.ids([atom("a"), atom("b"), atom("c")]))
    assert not is_stable(g, (), g.ids([atom("c")]))


def test_ex21_models():
    g = ex21()
    assert [names(g, m) for m in stable_models(g)] == [{"a", "c"}, {"b", "c"}]


def test_ex21_brave_and_cautious():
    g = ex21()
    for x in "abc":
        assert brave_entails(g, (), [Literal(atom(x))])
    assert cautious_entails(g, (), [Literal(atom("c"))])
    assert not cautious_entails(g, (), [Literal(atom("a"))])
    assert not cautious_entails(g, (), [Literal(atom("b"))])
    assert not brave_entails(g, (), [Literal(atom("a")), Literal(atom("b"))])


def test_unknown_atom_in_query():
    g = ex21()
    assert not brave_entails(g, (), [Literal(atom("zzz"))])
    assert brave_entails(g, (), [Literal(atom("zzz"), True)])


def test_odd_loop_has_no_model():
    g = ground(parse_program("a :- not a."))
    assert stable_models(g) == []
    # no model: everything is cautiously entailed, nothing bravely
    assert cautious_entails(g, (), [Literal(atom("a"))])
    assert not brave_entails(g, (), [Literal(atom("a"), True)])


def test_empty_program():
    g = ground(parse_program(""))
    assert stable_models(g) == [frozenset()]


def test_active_facts():
    g = ground(parse_program("fish :- rains."), [atom("rains")])
    assert [names(g, m) for m in stable_models(g)] == [set()]
    assert [names(g, m) for m in stable_models(g, g.ids([atom("rains")]))] == [{"rains", "fish"}]


def test_stratified_detection():
    assert is_stratified(ground(parse_program("a. b :- a, not c. c :- d.")))
    assert not is_stratified(ex21())
    assert not is_stratified(ground(parse_program("a :- not a.")))


def test_node_cap():
    text = "\n".join("a%d :- not b%d. b%d :- not a%d." % (i, i, i, i) for i in range(8))
    g = ground(parse_program(text))
    assert len(stable_models(g)) == 256
    with pytest.raises(CapacityError):
        stable_models(g, node_cap=10)


def test_envelope_on_ex21():
    g = ex21()
    # c only follows from a or b, so nothing is certain without branching
    assert positive_envelope(g, ()) == frozenset()
    lower, upper = model_bounds(g, ())
    assert lower == frozenset()
    assert names(g, upper) == {"a", "b", "c"}


# property suites over random programs

@settings(max_examples=200, deadline=None)
@given(seeds)
def test_reduct_is_negation_free_and_lm_is_model(seed):
    rng = rng_for(seed)
    g = random_ground(rng)
    interp = frozenset(i for i in range(len(g.atoms)) if rng.random() < 0.5)
    r = reduct(g, (), interp)
    assert all(rule.neg == () for rule in r.rules)
    lm = least_model(r)
    for rule in r.rules:
        if all(b in lm for b in rule.pos):
            assert rule.head in lm


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_models_match_oracle(seed):
    g = random_ground(rng_for(seed))
    got = set(stable_models(g))
    assert got == oracle_stable_models(g)
    if len(g.atoms) <= 12:
        assert got == oracle_stable_models(g, exhaustive=True)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_models_are_antichain_and_supported(seed):
    g = random_ground(rng_for(seed))
    models = stable_models(g)
    lm_pos = least_model(reduct(g, (), frozenset(range(len(g.atoms)))))
    for m in models:
        # least model of the full reduct is contained in every model
        assert lm_pos <= m
        for a in m:
            assert a in g.facts or any(
                r.head == a and all(b in m for b in r.pos) and not any(b in m for b in r.neg)
                for r in g.rules)
        for m2 in models:
            assert m == m2 or not m <= m2


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_stratified_fast_path(seed):
    rng = rng_for(seed)
    g = random_ground(rng, neg_rate=rng.choice((0.0, 0.15, 0.3)))
    general = stable_models(g, use_stratified=False)
    assert stable_models(g, use_stratified=True) == general
    if is_stratified(g):
        assert general == [stratified_model(g)]


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_envelope_below_every_model(seed):
    rng = rng_for(seed)
    g = random_ground(rng)
    extra = [i for i in range(len(g.atoms)) if rng.random() < 0.2]
    env = positive_envelope(g, extra)
    lower, upper = model_bounds(g, extra)
    for m in oracle_stable_models(g, extra):
        assert env <= m
        assert lower <= m <= upper


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_bounds_with_optional_facts(seed):
    rng = rng_for(seed)
    g = random_ground(rng)
    n = len(g.atoms)
    sure = [i for i in range(n) if rng.random() < 0.15]
    maybe = [i for i in range(n) if i not in sure and rng.random() < 0.3]
    lower, upper = model_bounds(g, sure, maybe)
    for k in range(1 << len(maybe)):
        chosen = sure + [a for j, a in enumerate(maybe) if k >> j & 1]
        for m in oracle_stable_models(g, chosen):
            assert lower <= m <= upper
