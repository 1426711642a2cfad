"""Acceptance criteria, one check each, with their runtime budgets.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` to
get one PASS/FAIL line per criterion.  All comparisons are exact.
"""
import itertools
import random
import time

import pytest

from chikit import cli, cones, forms, hopf
from chikit.combinat import ez
from chikit.combinat.perms import Permutation, all_permutations
from chikit import total


def _pairs(bound, lo=0):
    return [(m, s - m) for s in range(lo, bound + 1) for m in range(s + 1)]


def crit_shuffle():
    reps = [hopf.verify_shuffle_relation(m, n) for m, n in _pairs(8)]
    return all(r.passed for r in reps), f"{len(reps)} (m,n) pairs"


def crit_multiplicativity():
    n_checks, ok = 0, True
    for m in range(6):
        for n in range(6 - m):
            for a, b in itertools.product(all_permutations(m), all_permutations(n)):
                ok &= hopf.verify_multiplicativity(a, b).passed
                n_checks += 1
    return ok, f"{n_checks} permutation pairs"


def crit_brion():
    reps = [cones.verify_brion(m, n) for m, n in _pairs(8)]
    reps += [cones.verify_bridge(N) for N in range(1, 9)]
    return all(r.passed for r in reps), f"{len(reps)} instances"


def crit_lattice():
    reps = [cones.verify_lattice(N, B) for N in range(1, 5) for B in range(6)]
    return all(r.passed for r in reps), f"{len(reps)} (N,B) instances"


def crit_theta():
    reps = [forms.verify_theta_pullback(N) for N in range(1, 7)]
    reps += [forms.verify_theta_ez(m, n) for m, n in _pairs(6)]
    return all(r.passed for r in reps), f"{len(reps)} instances"


def crit_ez():
    reps = [ez.verify_ez_diagram(m, n) for m, n in _pairs(6)]
    reps += [ez.verify_co_leibniz(m, n) for m, n in _pairs(6, lo=1)]
    reps += [ez.verify_coassoc(m, n, r) for m in range(7) for n in range(7 - m)
             for r in range(7 - m - n)]
    return all(r.passed for r in reps), f"{len(reps)} instances"


def crit_total_engine():
    dsq = total.verify_dsq(200, seed=0)
    leib = total.verify_leibniz_random(200, seed=0)
    rng = random.Random(1)
    assoc_fail = 0
    for _ in range(200):
        a, b, c = (total.random_element(rng, total.random_model(rng, name=nm)) for nm in "ABC")
        assoc_fail += (total.box_product(total.box_product(a, b), c)
                       != total.box_product(a, total.box_product(b, c)))
    ok = dsq.passed and leib.passed and assoc_fail == 0
    return ok, (f"D^2 on 200 elements of 200 models {dsq.passed}, "
                f"leibniz 200 pairs {leib.passed}, associativity failures {assoc_fail}/200")


def crit_cone():
    ok = True
    for r, s in itertools.product((0, 1), repeat=2):
        ok &= total.verify_cone_claim(r, s).passed
        ok &= total.verify_hat_box_chain_map(r, s).passed
        ok &= total.verify_homotopy_t(r, s).passed
    control = [total.verify_cone_claim(r, s, signed=False).passed
               for r, s in itertools.product((0, 1), repeat=2)]
    ok &= not any(control)
    return ok, f"unsigned control fails on {control.count(False)}/4 parities"


def crit_e1():
    rep = total.verify_e1_page(20)
    return rep.passed, ", ".join(k for k, v in rep.details.items() if v is True)


def crit_constants():
    rep = total.verify_constants(6, 12)
    return rep.passed, "both recursions" if rep.passed else str(rep.details)


def crit_determinism():
    import contextlib
    import io
    outs = []
    for _ in range(2):
        buf, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
            code = cli.run(["all", "--max-size", "5"])
        outs.append((code, buf.getvalue()))
    ok = outs[0][0] == 0 and outs[0] == outs[1]
    return ok, f"exit {outs[0][0]}, {len(outs[0][1])} bytes, identical={outs[0] == outs[1]}"


# number, title, runtime budget in seconds, check
CRITERIA = [
    (1, "shuffle relation, m+n <= 8", 60, crit_shuffle),
    (2, "character multiplicativity, m+n <= 5", 60, crit_multiplicativity),
    (3, "cone subdivision and bridge identity, size <= 8", 60, crit_brion),
    (4, "lattice enumeration, N <= 4, B <= 5", 10, crit_lattice),
    (5, "theta pullback N <= 6 and theta EZ m+n <= 6", 120, crit_theta),
    (6, "EZ diagram, co-Leibniz, coassociativity up to size 6", 120, crit_ez),
    (7, "total complex engine on random models", 120, crit_total_engine),
    (8, "cone pairing claim, chain map and homotopy", 10, crit_cone),
    (9, "E1 page up to degree 20", 5, crit_e1),
    (10, "normalization constant recursions", 1, crit_constants),
    (11, "byte-identical reports for 'all --max-size 5'", 300, crit_determinism),
]


def evaluate(entry):
    num, title, budget, fn = entry
    t0 = time.perf_counter()
    ok, info = fn()
    secs = time.perf_counter() - t0
    within = secs <= budget
    line = (f"{'PASS' if ok and within else 'FAIL'} criterion {num}: {title} "
            f"[{info}; {secs:.2f} s of {budget} s]")
    return ok and within, line


@pytest.mark.parametrize("entry", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(entry):
    ok, line = evaluate(entry)
    print(line)
    assert ok, line


def main():
    results = [evaluate(e) for e in CRITERIA]
    for _, line in results:
        print(line, flush=True)
    return 0 if all(ok for ok, _ in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
