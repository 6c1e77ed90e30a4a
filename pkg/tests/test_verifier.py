import math

import pytest

from lerchsum import (
    ConvergenceError,
    DomainError,
    EvalPoint,
    SampleStrategy,
    SuiteOverride,
    default_strategy,
    get_identity,
    mutated_spec,
    prudnikov_original,
    run_suite,
    sample_points,
    verify_identity,
)
from lerchsum.identities import IdentitySpec, SideExpr
from lerchsum.report import dumps_csv, dumps_json, report_to_obj, strip_volatile

TWO_PI = 2.0 * math.pi


# ------------------------------------------------------------------- sampling

def test_sampling_is_deterministic():
    spec = get_identity("ID-02")
    strategy = default_strategy("ID-02", count=5, seed=7)
    first = sample_points(spec, strategy)
    second = sample_points(spec, strategy)
    assert first == second


def test_sampling_respects_pole_margins():
    spec = get_identity("ID-02")
    strategy = default_strategy("ID-02", count=25, seed=7)
    for pt in sample_points(spec, strategy):
        m, n = complex(pt.m), pt.n
        # margin in m-units translates to a sine-magnitude floor at each scale
        assert abs(math.sin(2.0 * m.real)) >= 2.0 * strategy.pole_margin * 0.63
        scale = 2.0 ** -n
        assert abs(math.sin(scale * m.real)) >= scale * strategy.pole_margin * 0.63


def test_sampling_count_zero_gives_empty():
    spec = get_identity("ID-02")
    strategy = SampleStrategy(seed=1, count=0,
                              region=default_strategy("ID-02").region)
    assert sample_points(spec, strategy) == []


def test_sampling_exhaustion_error():
    spec = get_identity("ID-02")
    strategy = SampleStrategy(seed=1, count=1, pole_margin=50.0,
                              region=default_strategy("ID-02").region)
    with pytest.raises(ConvergenceError):
        sample_points(spec, strategy)


def test_sampling_region_must_cover_schema():
    spec = get_identity("ID-03")
    strategy = SampleStrategy(seed=1, count=1,
                              region={"m": ((0.2, 2.5), (0.0, 0.0))})
    with pytest.raises(DomainError):
        sample_points(spec, strategy)


def test_main_theorem_sampler_honors_log_guard():
    import cmath
    spec = get_identity("ID-01")
    for pt in sample_points(spec, default_strategy("ID-01", count=20, seed=3)):
        assert pt.m.imag >= 0.5
        assert abs(cmath.log(pt.a)) <= 2.0 ** -pt.n + 1e-15


# ----------------------------------------------------------------- verifying

def test_verify_degenerate_all_pass(policy):
    spec = get_identity("ID-02")
    results = verify_identity(spec, default_strategy("ID-02", count=20, seed=7), policy)
    assert len(results) == 20
    assert all(r.passed for r in results)
    assert all(r.cond >= 1.0 for r in results)


def test_verify_prudnikov_variant_fails_everywhere(policy):
    sidecar = prudnikov_original()
    strategy = default_strategy("ID-02", count=20, seed=7)
    results = verify_identity(sidecar, strategy, policy, tol=1e-10)
    assert all(not r.passed for r in results)
    assert all(r.rel_err > 0.5 for r in results)


def test_monotone_tolerance(policy):
    spec = get_identity("ID-13")
    strategy = default_strategy("ID-13", count=10, seed=5)
    tight = verify_identity(spec, strategy, policy, tol=1e-7)
    loose = verify_identity(spec, strategy, policy, tol=1e-6)
    for a, b in zip(tight, loose):
        if a.passed:
            assert b.passed


def test_jobs_do_not_change_results(policy):
    spec = get_identity("ID-05")
    strategy = default_strategy("ID-05", count=12, seed=9)
    serial = verify_identity(spec, strategy, policy, jobs=1)
    parallel = verify_identity(spec, strategy, policy, jobs=4)
    assert [(r.passed, r.rel_err, r.cond) for r in serial] == \
           [(r.passed, r.rel_err, r.cond) for r in parallel]


def test_cond_growth_trend_for_exp_product(policy):
    # the exp-product identity loses digits as x -> 0 (its cosine combination
    # collapses to O(x^2) before csc blows it back up); cond must grow as x
    # shrinks.  The trend is asserted, not a specific rate: inflating cond to
    # the naive cancellation ratio would defeat the mutation gate.
    spec = get_identity("ID-06")
    conds = []
    for x in (0.8, 0.4, 0.2, 0.1):
        from lerchsum.identities import evaluate_side
        from lerchsum.numerics import CancellationMeter
        pt = EvalPoint(x=x, n=3)
        meter = CancellationMeter()
        lhs = evaluate_side("lhs", spec.lhs, pt, policy, meter)
        evaluate_side("rhs", spec.rhs, pt, policy, meter)
        conds.append(max(1.0, meter.peak / abs(lhs)))
    assert conds == sorted(conds)
    assert conds[-1] / conds[0] > 3.0


def test_exp_equality_mode_accepts_2pi_shifts(policy):
    def lhs_terms(pt, policy_, meter):
        yield complex(0.4, 0.3)

    def rhs_terms(pt, policy_, meter):
        yield complex(0.4, 0.3 + TWO_PI)

    synthetic = IdentitySpec(
        id="SYN-EXP", title="synthetic", description="2 pi i shifted sides",
        schema=("x",), compare_mode="exp_equality",
        lhs=SideExpr("sum", lhs_terms), rhs=SideExpr("sum", rhs_terms),
        constraints=lambda pt, margin: True,
    )
    strategy = SampleStrategy(seed=1, count=3,
                              region={"x": ((0.0, 1.0), (0.0, 0.0))})
    results = verify_identity(synthetic, strategy, policy, tol=1e-12)
    assert all(r.passed for r in results)
    relative = IdentitySpec(
        id="SYN-REL", title="synthetic", description="same pair, strict compare",
        schema=("x",), compare_mode="relative",
        lhs=SideExpr("sum", lhs_terms), rhs=SideExpr("sum", rhs_terms),
        constraints=lambda pt, margin: True,
    )
    results = verify_identity(relative, strategy, policy, tol=1e-12)
    assert not any(r.passed for r in results)


def test_mod_2pi_i_reports_branch_integer(policy):
    spec = get_identity("ID-07")
    results = verify_identity(spec, default_strategy("ID-07", count=10, seed=2), policy)
    assert all(r.passed for r in results)
    assert all(r.branch_integer is not None for r in results)


@pytest.mark.parametrize("identity_id", ["ID-02", "ID-11", "ID-15"])
def test_mutation_detected(policy, identity_id):
    spec = get_identity(identity_id)
    strategy = default_strategy(identity_id, count=15, seed=21)
    corrupted = mutated_spec(spec)
    results = verify_identity(corrupted, strategy, policy,
                              tol=verify_tol(identity_id))
    assert sum(r.passed for r in results) == 0


def verify_tol(identity_id):
    from lerchsum.verifier import DEFAULT_TOLERANCES
    return DEFAULT_TOLERANCES[identity_id]


# ---------------------------------------------------------------------- suite

def test_suite_filter_and_rows(policy):
    report = run_suite(policy, count=5, seed=11, ids=["ID-00", "ID-02"])
    assert [row.identity_id for row in report.rows] == ["ID-00", "ID-02"]
    assert report.all_passed


def test_suite_rejects_unknown_override(policy):
    from lerchsum.identities import UnknownIdentityError
    with pytest.raises(UnknownIdentityError):
        run_suite(policy, overrides={"ID-99": SuiteOverride(tol=1.0)}, count=1)


def test_suite_override_is_reflected(policy):
    report = run_suite(policy, overrides={"ID-13": SuiteOverride(tol=1e-5)},
                       count=4, seed=11, ids=["ID-13"])
    assert report.rows[0].tol == 1e-5
    assert report.rows[0].mode == "absolute"


def test_suite_determinism_excluding_volatile_meta(policy):
    import re
    ids = ["ID-00", "ID-02", "ID-13"]
    one = run_suite(policy, count=6, seed=555, ids=ids)
    two = run_suite(policy, count=6, seed=555, ids=ids)
    assert strip_volatile(report_to_obj(one)) == strip_volatile(report_to_obj(two))
    assert dumps_csv(one) == dumps_csv(two)
    scrub = lambda s: re.sub(r'"wall_time_s": [^,}]+', '"wall_time_s": 0', s)
    assert scrub(dumps_json(one, timestamp="T")) == scrub(dumps_json(two, timestamp="T"))


def test_suite_with_empty_selection_succeeds(policy):
    report = run_suite(policy, count=5, ids=[])
    assert report.rows == ()
    assert report.all_passed


def test_suite_report_json_is_valid_json(policy):
    import json
    report = run_suite(policy, count=3, seed=2, ids=["ID-02"])
    obj = json.loads(dumps_json(report))
    assert obj["meta"]["seed"] == 2
    assert obj["identities"][0]["id"] == "ID-02"
    assert len(obj["identities"][0]["points"]) == 3
