from fractions import Fraction

import pytest

from sphsep.arith import dot
from sphsep.cones import cone_member, is_pointed, open_cone_nonempty
from sphsep.harness import (
    PROPERTIES,
    SuiteConfig,
    gen_disjoint_closed,
    gen_intersecting_closed,
    gen_open_pair,
    replay,
    run_suite,
    trial_seed,
)
from sphsep.separation import CommonRayWitness, OpenIntersectionWitness, Separator, separate_closed, separate_open


def l1(v):
    return sum(abs(c) for c in v)


@pytest.mark.parametrize("seed", range(8))
def test_gen_disjoint_closed(seed):
    b1, b2, u0 = gen_disjoint_closed(3, 5, Fraction(1, 10), seed, return_planted=True)
    assert is_pointed(b1.rays) and is_pointed(b2.rays)
    assert all(dot(g, u0) >= Fraction(1, 10) * l1(g) for g in b1.generators)
    assert all(dot(h, u0) <= -Fraction(1, 10) * l1(h) for h in b2.generators)
    assert isinstance(separate_closed(b1, b2), Separator)
    assert gen_disjoint_closed(3, 5, Fraction(1, 10), seed) == (b1, b2)


@pytest.mark.parametrize("seed", range(8))
def test_gen_intersecting_closed(seed):
    b1, b2, x = gen_intersecting_closed(4, 4, seed, return_planted=True)
    assert cone_member(b1.rays, x) and cone_member(b2.rays, x)
    w = separate_closed(b1, b2)
    assert isinstance(w, CommonRayWitness)
    assert cone_member(b1.rays, w.x) and cone_member(b2.rays, w.x)
    assert gen_intersecting_closed(4, 4, seed) == (b1, b2)


@pytest.mark.parametrize("seed", range(8))
def test_gen_open_pair(seed):
    for disjoint, kind in ((True, Separator), (False, OpenIntersectionWitness)):
        p1, p2 = gen_open_pair(3, 4, seed, disjoint)
        assert open_cone_nonempty(p1) and open_cone_nonempty(p2)
        assert isinstance(separate_open(p1, p2), kind)


def test_generator_preconditions():
    with pytest.raises(ValueError):
        gen_disjoint_closed(1, 3)
    with pytest.raises(ValueError):
        gen_disjoint_closed(2, 3, delta=0)
    with pytest.raises(ValueError):
        gen_intersecting_closed(2, 1)
    with pytest.raises(ValueError):
        gen_open_pair(2, 0)


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(trials=0)
    with pytest.raises(ValueError):
        SuiteConfig(delta=0)
    with pytest.raises(ValueError):
        SuiteConfig(dims=(1,))


def test_trial_seeds_distinct_and_stable():
    seeds = {trial_seed(42, name, t) for name in PROPERTIES for t in range(20)}
    assert len(seeds) == 20 * len(PROPERTIES)
    assert trial_seed(42, "lp.certificates", 3) == trial_seed(42, "lp.certificates", 3)


def test_minimal_run():
    report = run_suite(SuiteConfig(trials=1))
    assert report.ok
    assert set(report.results) == set(PROPERTIES)
    assert all(r.total == 1 for r in report.results.values())
    assert "ALL PROPERTIES PASS" in report.to_text()
    assert report.to_json()["ok"]


def test_corrupted_checker_reports_seeds():
    calls = []

    def broken(cfg, seed):
        calls.append(seed)
        assert seed % 2 == 0, "odd seed"

    report = run_suite(SuiteConfig(trials=10), properties={"broken": broken})
    r = report.results["broken"]
    assert r.total == 10 and not report.ok
    assert r.failed == sum(s % 2 for s in calls) > 0
    assert r.failing_seeds == [s for s in calls if s % 2]
    for s in r.failing_seeds:
        with pytest.raises(AssertionError):
            replay("broken", s, properties={"broken": broken})


def test_replay_passing_trial():
    replay("separation.dichotomy", trial_seed(42, "separation.dichotomy", 0))
