"""Fixture instances with expected results.

Each fixture is ``<name>.pap`` plus ``<name>.expected.json``.  The expected
file records, per query, the expected value and where it came from:
``published`` (a worked example, transcribed), ``oracle`` (computed by the
brute-force oracle and frozen) or ``by-hand``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..kernel import sorted_atoms
from ..parser import parse_pap

CORPUS_DIR = Path(__file__).resolve().parent

NAMES = ("fishing", "ex21", "network_count", "network_prob", "tsp4",
         "strategic4", "blocks2", "empty")


@dataclass(frozen=True)
class Fixture:
    name: str

    @property
    def path(self) -> Path:
        return CORPUS_DIR / ("%s.pap" % self.name)

    @property
    def expected_path(self) -> Path:
        return CORPUS_DIR / ("%s.expected.json" % self.name)

    def text(self) -> str:
        return self.path.read_text(encoding="utf-8")

    def instance(self):
        return parse_pap(self.text())

    def expected(self) -> dict:
        return json.loads(self.expected_path.read_text(encoding="utf-8"))


def fixtures() -> list:
    return [Fixture(n) for n in NAMES]


def fixture(name: str) -> Fixture:
    if name not in NAMES:
        raise KeyError(name)
    return Fixture(name)


def _atoms(s) -> list:
    return [str(a) for a in sorted_atoms(s)]


def _sets(ss) -> list:
    return sorted(_atoms(s) for s in ss)


def compute_expected(fx: Fixture, provenance: dict = None) -> dict:
    """Expected results computed with the oracle; ``provenance`` overrides
    the default ``oracle`` tag per key."""
    from ..grounder import ground
    from ..oracle import oracle_pap, oracle_stable_models

    p = fx.instance()
    o = oracle_pap(p)
    g = ground(p.program)
    models = _sets(g.decode(m) for m in oracle_stable_models(g))
    values = {
        "consistent": o.consistent,
        "optimal_cost": o.optimal_cost,
        "admissible": _sets(o.adm),
        "optimal": _sets(o.opt),
        "admissible_costs": {" ".join(_atoms(s)): c for s, c in sorted(o.costs.items(), key=lambda kv: _atoms(kv[0]))},
        "relevant": sorted(str(h) for h in o.relevant()),
        "necessary": sorted(str(h) for h in o.necessary()),
        "models": models,
    }
    provenance = provenance or {}
    return {"name": fx.name, "cost": p.cost_id,
            "expected": {k: {"value": v, "provenance": provenance.get(k, "oracle")}
                         for k, v in values.items()}}
