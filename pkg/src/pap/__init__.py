"""Abduction with penalization over normal logic programs."""
from .cost import EPS, REGISTRY, eval_cost, get_cost, max_cost
from .grounder import GroundProgram, dump_ground, ground, herbrand_universe, optimize_ground
from .kernel import (Atom, CapacityError, Comparison, GroundingError, Literal,
                     PapError, PapInstance, Program, Rule, SolveResult, Term,
                     ValidationError, atom, complement, validate_program)
from .parser import ParseError, parse_atom, parse_pap, print_pap
from .solver import (Solver, admissible_solutions, is_admissible, is_consistent,
                     is_necessary, is_optimal, is_relevant, solve)
from .stable import (brave_entails, cautious_entails, is_stable, least_model,
                     reduct, stable_models)

__version__ = "0.1.0"
