"""Penalty aggregation functions.

Costs are evaluated over the *multiset* of penalties of a hypothesis set, so
two hypotheses with equal penalty both count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .kernel import CostDomainError, PapError, UnsupportedOperation

EPS = 1e-9


@dataclass(frozen=True)
class CostFunction:
    id: str
    eval: Callable[[list], float]
    monotone: bool
    description: str = ""


def _sum(values):
    return math.fsum(values)


def _count(values):
    return float(len(values))


def _prob(values):
    for v in values:
        if v > 1:
            raise CostDomainError("prob cost needs penalties <= 1, got %r" % v)
    return 1.0 - math.prod(values)


def _max(values):
    return max(values, default=0.0)


REGISTRY = {
    f.id: f for f in (
        CostFunction("sum", _sum, True, "sum of penalties"),
        CostFunction("count", _count, True, "number of hypotheses"),
        CostFunction("prob", _prob, True, "1 - product of penalties"),
        CostFunction("max", _max, True, "largest penalty"),
    )
}


def get_cost(cost_id: str) -> CostFunction:
    try:
        return REGISTRY[cost_id]
    except KeyError:
        raise PapError("unknown cost function %r (expected one of %s)"
                       % (cost_id, ", ".join(sorted(REGISTRY)))) from None


def _resolve(f) -> CostFunction:
    return get_cost(f) if isinstance(f, str) else f


def eval_cost(f, gamma: Mapping, s: Iterable) -> float:
    """Apply ``f`` to the multiset ``{gamma[h] : h in s}``."""
    f = _resolve(f)
    return f.eval([gamma[h] for h in s])


def max_cost(f, gamma: Mapping, hypotheses: Iterable) -> float:
    f = _resolve(f)
    if not f.monotone:
        raise UnsupportedOperation("max_cost is only available for monotone costs")
    return eval_cost(f, gamma, hypotheses)


def penalty_warnings(cost_id: str, penalties: Iterable[float]) -> list:
    if cost_id == "prob" and any(p > 1 for p in penalties):
        return ["prob cost expects penalties in (0, 1]; larger values cannot be evaluated"]
    return []
