"""Random-model checks of D o D = 0, the Leibniz rule and associativity."""
from __future__ import annotations

import random

from ..report import VerificationReport, timed
from .model import (BigradedElement, box_product, d_part, delta_hat, random_element,
                    random_model, total_D)


def leibniz_sides(alpha: BigradedElement, beta: BigradedElement, flip: bool = False):
    lhs = total_D(box_product(alpha, beta))
    first = box_product(total_D(alpha), beta)
    if (beta.r % 2) != flip:
        first = -first
    rhs = first + box_product(alpha, total_D(beta))
    return lhs, rhs


@timed
def verify_leibniz(alpha: BigradedElement, beta: BigradedElement) -> VerificationReport:
    lhs, rhs = leibniz_sides(alpha, beta)
    return VerificationReport("tot.leibniz", {"r": alpha.r, "s": beta.r}, lhs == rhs,
                              {"lhs_size": lhs.size()})


def _pair(rng: random.Random):
    M = random_model(rng, name="M")
    N = random_model(rng, name="N")
    return random_element(rng, M), random_element(rng, N)


@timed
def verify_leibniz_random(count: int = 200, seed: int = 0, flip: bool = False) -> VerificationReport:
    rng = random.Random(seed)
    failures = 0
    parities = set()
    for _ in range(count):
        a, b = _pair(rng)
        parities.add((a.r % 2, b.r % 2))
        lhs, rhs = leibniz_sides(a, b, flip)
        failures += lhs != rhs
    return VerificationReport("tot.leibniz", {"count": count, "seed": seed}, failures == 0,
                              {"failures": failures,
                               "parities_seen": sorted(list(p) for p in parities)})


@timed
def verify_dsq(count: int = 200, seed: int = 0, flip: bool = False) -> VerificationReport:
    """D o D = 0, delta_hat o delta_hat = 0 and d delta_hat = delta_hat d on
    random elements of random models, including tensor products.  ``flip``
    drops the direction sign of delta_hat (negative control)."""
    rng = random.Random(seed)
    fails = {"D_squared": 0, "delta_hat_squared": 0, "d_delta_hat_commute": 0,
             "associativity": 0}
    for i in range(count):
        M = random_model(rng)
        if i % 3 == 0:
            M = M if rng.random() < 0.5 else None
        if M is None:
            a, b = _pair(rng)
            x = box_product(a, b)
        else:
            x = random_element(rng, M)
        fails["D_squared"] += not total_D(total_D(x, unsigned=flip), unsigned=flip).is_zero()
        fails["delta_hat_squared"] += not delta_hat(delta_hat(x)).is_zero()
        fails["d_delta_hat_commute"] += d_part(delta_hat(x)) != delta_hat(d_part(x))
        if i % 4 == 0:
            a, b = _pair(rng)
            c = random_element(rng, random_model(rng, name="P"))
            fails["associativity"] += box_product(box_product(a, b), c) != box_product(a, box_product(b, c))
    ok = not any(fails.values())
    return VerificationReport("tot.dsq", {"count": count, "seed": seed}, ok, fails)
