from __future__ import annotations

import io

from leash.cli import main
from leash.dyadic import Dyadic
from leash.measure import canonical_family, make_space
from leash.metrics import metric_d
from leash.transforms import invert, random_transformation
from leash.verify import SUITE_NAMES, oracle_a, oracle_d, run_suites

import oracles


def mutant_d(t, s, family=None, n=None):
    """``d`` with weights ``2^-2i`` instead of ``2^-i``."""
    fam = canonical_family(t.space)
    total = Dyadic(0)
    for i, a in enumerate(fam.sets(n), start=1):
        delta = (t(a) ^ s(a)).measure() + (invert(t)(a) ^ invert(s)(a)).measure()
        total = total + delta * Dyadic(1, 2 * i)
    return total


def test_library_oracles_agree_with_test_oracles():
    for L in (1, 2, 3):
        sp = make_space(L)
        t, s = random_transformation(sp, L), random_transformation(sp, L + 9)
        assert oracle_d(t, s).as_fraction() == oracles.d(t.forward.tolist(), s.forward.tolist())
        assert oracle_a(t, s).as_fraction() == oracles.a(t.forward.tolist(), s.forward.tolist())


def test_all_suites_pass_with_fixed_seed():
    results = run_suites(2024)
    assert [r.name for r in results] == list(SUITE_NAMES)
    for r in results:
        assert r.passed, (r.name, r.counterexample)
    sandwich = next(r for r in results if r.name == "sandwich")
    assert sandwich.notes["literal_lower_bound_violations"] > 0
    fixed = next(r for r in results if r.name == "fixed-u-continuity")
    assert fixed.notes["premise_holds"] > 0


def test_suite_filter_is_independent_of_selection():
    alone = run_suites(5, ["h-net"])[0]
    together = [r for r in run_suites(5, ["h-net", "product-lemma"]) if r.name == "h-net"][0]
    assert (alone.checks, alone.failures) == (together.checks, together.failures)


def test_mutated_d_is_caught():
    results = {r.name: r for r in run_suites(1, ["refinement-invariance", "d-dominates-a"], d=mutant_d)}
    assert not results["refinement-invariance"].passed
    assert results["refinement-invariance"].counterexample["check"] == "oracle"
    code = main(["verify", "--seed", "1"], d=mutant_d, stdout=io.StringIO(), stderr=io.StringIO())
    assert code == 1


def test_mutant_really_differs():
    sp = make_space(2)
    t, s = random_transformation(sp, 1), random_transformation(sp, 2)
    assert mutant_d(t, s) != metric_d(t, s)
    assert mutant_d(t, t) == 0
