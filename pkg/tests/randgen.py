"""Random programs and PAP instances for differential and property tests."""
import random

from pap.grounder import ground
from pap.kernel import Atom, Literal, PapInstance, Program, Rule, Term, atom
from pap.oracle import oracle_stable_models

COSTS = ("sum", "count", "max", "prob")


def prop(name):
    return Atom(name)


def random_rules(rng, heads, body_atoms, n_rules, neg_rate=0.35, max_body=3):
    rules = []
    for _ in range(n_rules):
        head = rng.choice(heads)
        pos, neg = [], []
        for _ in range(rng.randint(0, max_body)):
            a = rng.choice(body_atoms)
            (neg if rng.random() < neg_rate else pos).append(a)
        rules.append(Rule(head, tuple(dict.fromkeys(pos)), tuple(dict.fromkeys(neg))))
    return rules


def random_program(rng, n_atoms=6, n_rules=8, neg_rate=0.35):
    """A propositional program over q0..q{n-1}."""
    atoms = [prop("q%d" % i) for i in range(n_atoms)]
    facts = [Rule(a) for a in atoms if rng.random() < 0.15]
    return Program(tuple(facts + random_rules(rng, atoms, atoms, n_rules, neg_rate)))


def random_ground(rng, **kw):
    return ground(random_program(rng, **kw))


def _first_order_rules(rng):
    """A few unary rules over constants a, b; contributes at most 6 atoms."""
    x = Term.var("X")
    rules = [Rule(atom("d", "a")), Rule(atom("d", "b"))]
    for _ in range(rng.randint(1, 3)):
        head = Atom(rng.choice("rs"), (x,))
        pos = [Atom("d", (x,))]
        neg = []
        other = Atom(rng.choice("rs"), (x,))
        if rng.random() < 0.5:
            neg.append(other)
        elif other != head:
            pos.append(other)
        rules.append(Rule(head, tuple(pos), tuple(neg)))
    return rules


def random_pap(rng, max_hyps=10, max_atoms=14, cost=None):
    """Random PAP with at most ``max_hyps`` hypotheses and ``max_atoms`` ground atoms."""
    while True:
        n_h = rng.randint(1, max_hyps)
        n_q = rng.randint(2, max(2, min(6, max_atoms - n_h)))
        hyps = [prop("h%d" % i) for i in range(n_h)]
        qs = [prop("q%d" % i) for i in range(n_q)]
        rules = random_rules(rng, qs, qs + hyps, rng.randint(n_q, 2 * n_q + 2),
                             neg_rate=rng.choice((0.2, 0.35, 0.5)))
        # hypotheses may occasionally be derivable as well
        if rng.random() < 0.3:
            rules += random_rules(rng, hyps, qs, 1)
        if rng.random() < 0.3:
            rules += _first_order_rules(rng)
        program = Program(tuple(rules))
        g = ground(program, hyps)
        if len(g.atoms) > max_atoms:
            continue
        obs_atoms = rng.sample(qs, rng.randint(1, min(3, n_q)))
        obs = tuple(Literal(a, rng.random() < 0.4) for a in obs_atoms)
        if rng.random() < 0.7:
            # read the observations off a stable model for a random S,
            # so that most instances are consistent
            s = [g.id_of(h) for h in hyps if rng.random() < 0.5]
            models = sorted(oracle_stable_models(g, s), key=sorted)
            if models:
                m = g.decode(rng.choice(models))
                obs = tuple(Literal(a, a not in m) for a in obs_atoms)
        c = cost or rng.choice(COSTS)
        if c == "prob":
            pens = tuple(rng.choice((0.1, 0.2, 0.5, 0.8, 0.9, 1.0)) for _ in hyps)
        else:
            pens = tuple(float(rng.randint(1, 4)) for _ in hyps)
        return PapInstance(tuple(hyps), program, obs, pens, c)


def rng_for(seed):
    return random.Random(seed)
