from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

# statement id -> short description of the statement being checked.
# The CLI can replace these descriptions from a key=value file.
STATEMENTS: dict[str, str] = {
    "alg.canonical": "canonical form of rational functions",
    "shuffle.relation": "shuffle relations of the chain character",
    "hopf.multiplicativity": "character property on the F-basis of permutations",
    "cone.bridge": "closed form of the prefix-cone transform against the chain character",
    "cone.brion": "shuffle subdivision of a product of prefix cones",
    "cone.lattice": "lattice enumeration of the prefix cone",
    "ez.diagram": "simplicial and cubical shuffle maps intertwined by prefix-sum coordinates",
    "ez.co_leibniz": "shuffle map against the alternating face sum",
    "ez.coassoc": "coassociativity of the shuffle map (double composite vanishes)",
    "forms.theta_pullback": "pullback of the logarithmic form to the cube",
    "forms.theta_ez": "shuffle pushforward of the pulled-back logarithmic form",
    "tot.dsq": "square of the total differential vanishes",
    "tot.leibniz": "Leibniz rule and associativity of the exterior product",
    "tot.cone_claim": "boundary formula for the cone pairing correction term",
    "tot.chain_map": "cone pairing is a chain map",
    "tot.homotopy": "cone pairings for different parameters are homotopic",
    "tot.e1_page": "first page of the filtration spectral sequence",
    "tot.constants": "recursions for the normalization constants",
}


@dataclass
class VerificationReport:
    statement: str
    params: dict
    passed: bool
    details: dict = field(default_factory=dict)
    elapsed_ms: float | None = None

    @property
    def paper_ref(self) -> str:
        return STATEMENTS.get(self.statement, "")

    def __bool__(self):
        return bool(self.passed)

    def to_dict(self, timings: bool = True) -> dict:
        d = {
            "statement": self.statement,
            "paper_ref": self.paper_ref,
            "params": self.params,
            "pass": bool(self.passed),
            "details": self.details,
        }
        if timings:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True)


@contextmanager
def stopwatch():
    box = {}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = round((time.perf_counter() - t0) * 1000.0, 3)


def timed(fn):
    """Decorator filling ``elapsed_ms`` on a returned report."""
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.elapsed_ms = round((time.perf_counter() - t0) * 1000.0, 3)
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper
