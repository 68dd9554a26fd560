"""Verification suites: corpus construction, verdicts, report contracts."""
import json

import numpy as np
import pytest

from sasaki3 import (
    build_space_form,
    verify_curve_eigen_theorem,
    verify_hopf_theorems,
    verify_legendre_theorems,
)
from sasaki3.classify import STANDARD_C_VALUES, EigenReport, standard_curve_corpus


def test_standard_c_values_cover_all_three_models():
    assert any(c > -3.0 for c in STANDARD_C_VALUES)
    assert -3.0 in STANDARD_C_VALUES
    assert any(c < -3.0 for c in STANDARD_C_VALUES)


def test_corpus_contains_witnesses_and_counterexamples():
    names = [name for name, _, _ in standard_curve_corpus(1.0)]
    assert "geodesic" in names
    assert any(name.startswith("helix[") for name in names)
    assert any(name.startswith("curve[") for name in names)  # non-helix profiles
    # above the flat-threshold curvature a critical helix joins the corpus
    rich = [name for name, _, _ in standard_curve_corpus(5.0)]
    assert len(rich) == len(names) + 1
    assert any("sqrt(c-1)" in name for name in rich)


def test_curve_suite_verdicts(sf1):
    reports = verify_curve_eigen_theorem(sf1)
    assert all(r.passed for r in reports)
    by_subject = {r.subject: r for r in reports}
    geo = by_subject["geodesic c=1"]
    assert geo.verdict == "geodesic"
    helix = by_subject["helix[kappa=1,tau=1] c=1"]
    assert helix.verdict == "eigen"
    assert helix.lambda_est == pytest.approx(2.0, abs=helix.tol)
    steep = by_subject["helix[kappa=2,tau=1] c=1"]
    assert steep.lambda_est == pytest.approx(5.0, abs=steep.tol)
    ramp = by_subject["curve[kappa=1+s,tau=1] c=1"]
    assert ramp.verdict == "non-eigen"
    assert ramp.lambda_est is None
    assert ramp.residual > 100.0 * ramp.tol


def test_legendre_suite_flags_the_critical_curvature():
    reports = verify_legendre_theorems((1.0, 2.0))
    assert all(r.passed for r in reports)
    poly = [r.subject for r in reports if r.verdict == "polyharmonic"]
    assert poly == ["legendre[kappa=1] c=2"]
    units = [
        r
        for r in reports
        if r.operator == "normal-laplacian" and r.verdict == "eigen"
    ]
    assert units  # every non-geodesic entry
    assert all(abs(r.lambda_est - 1.0) <= r.tol for r in units)


def test_hopf_suite_flags_the_critical_curvature():
    reports = verify_hopf_theorems((1.0, 5.0))
    assert all(r.passed for r in reports)
    poly = [r.subject for r in reports if r.verdict == "polyharmonic"]
    assert poly == ["cylinder[kappa_bar=2] c=5"]
    lams = {
        r.subject: r.lambda_est
        for r in reports
        if r.theorem_tag == "cylinder-laplacian-eigen" and r.verdict == "eigen"
    }
    # lambda = kappa_bar^2 + 2 stays above 2 for every sampled profile
    assert all(v > 2.0 for v in lams.values())
    assert lams["cylinder[kappa_bar=1] c=1"] == pytest.approx(3.0, abs=5e-5)
    ramp = [
        r
        for r in reports
        if r.subject == "cylinder[kappa_bar=s] c=1" and r.operator == "laplacian"
    ]
    assert len(ramp) == 1 and ramp[0].verdict == "non-eigen"


def test_non_eigen_verdicts_are_confirmed_at_half_step(sf1):
    """A refit at h/2 keeps the verdict, so it is not a resolution artifact."""
    coarse = verify_curve_eigen_theorem(
        sf1, corpus=[("curve[kappa=1+s,tau=1]", lambda s: 1.0 + s, 1.0)],
        h=4e-3, s_max=2.0,
    )
    fine = verify_curve_eigen_theorem(
        sf1, corpus=[("curve[kappa=1+s,tau=1]", lambda s: 1.0 + s, 1.0)],
        h=2e-3, s_max=2.0,
    )
    assert coarse[0].verdict == fine[0].verdict == "non-eigen"
    assert fine[0].residual > 100.0 * fine[0].tol


def test_reports_are_deterministic_and_serializable():
    a = verify_hopf_theorems((1.0,), h=5e-3, s_max=1.0)
    b = verify_hopf_theorems((1.0,), h=5e-3, s_max=1.0)
    ra = [r.to_record() for r in a]
    rb = [r.to_record() for r in b]
    assert ra == rb
    text = json.dumps(ra, sort_keys=True)
    assert json.loads(text) == ra


def test_report_passed_requires_matching_verdict_and_lambda():
    ok = EigenReport(
        subject="s", operator="laplacian", lambda_est=2.00001, residual=1e-9,
        verdict="eigen", theorem_tag="t", expected_verdict="eigen",
        expected_lambda=2.0, tol=5e-5,
    )
    assert ok.passed
    wrong_verdict = EigenReport(
        subject="s", operator="laplacian", lambda_est=2.0, residual=1e-9,
        verdict="non-eigen", theorem_tag="t", expected_verdict="eigen",
        expected_lambda=2.0, tol=5e-5,
    )
    assert not wrong_verdict.passed
    drifted = EigenReport(
        subject="s", operator="laplacian", lambda_est=2.1, residual=1e-9,
        verdict="eigen", theorem_tag="t", expected_verdict="eigen",
        expected_lambda=2.0, tol=5e-5,
    )
    assert not drifted.passed
    record = ok.to_record()
    assert record["passed"] is True
    assert set(record) == {
        "subject", "operator", "lambda_est", "residual", "verdict",
        "theorem_tag", "expected_verdict", "expected_lambda", "tol", "passed",
    }


def test_suites_honor_explicit_tolerance():
    # an absurdly tight tolerance must flip oracle-backed verdicts to failures
    reports = verify_hopf_theorems((5.0,), h=5e-3, s_max=1.0, tol=1e-30)
    assert not all(r.passed for r in reports)


@pytest.mark.parametrize("c", [0.0, 2.0])
def test_tag_population_per_theorem(c):
    reports = verify_legendre_theorems((c,), h=5e-3, s_max=1.0)
    tags = {r.theorem_tag for r in reports}
    assert tags == {
        "legendre-laplacian-eigen",
        "legendre-normal-laplacian-eigen",
        "legendre-bitension-vanishing",
    }
