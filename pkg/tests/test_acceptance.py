"""Acceptance gate: one test and one printed verdict line per criterion.

Tolerances are pinned here, not derived, so a regression in the tolerance
helpers cannot silently loosen the gate.  EXACT covers identities that hold
to rounding; EIGEN covers eigenvalues estimated through the finite
difference oracles at h = 1e-3.
"""
import io

import numpy as np
import pytest

from sasaki3 import (
    bitension_curve,
    build_cylinder,
    build_space_form,
    curvature_formula,
    curvature_from_frame,
    cylinder_jacobi_H,
    cylinder_laplacian_H,
    cylinder_mean_curvature,
    cylinder_normal_laplacian_H,
    eigen_residual,
    extract_frenet,
    laplacian_H_closed,
    laplacian_H_oracle,
    mean_curvature_vector,
    normal_laplacian_H,
    oneill_base_curvature,
    solve_natural_equation,
    synthesize_frenet_curve,
    synthesize_legendre_curve,
    vanishing_residual,
)
from sasaki3.export import export_curve_csv, export_cylinder_obj
from sasaki3.spaceform import XI, sectional_curvature, structure_residuals

EXACT = 1e-12
EIGEN = 5e-5  # max(1e-6, 50 h^2) at the working step h = 1e-3
H = 1e-3
N = 2001
C_GRID = (-7.0, -3.0, 0.0, 1.0, 5.0)


def _verdict(num: int, label: str, ok: bool, detail: str) -> None:
    print(f"criterion {num:2d} [{label}]: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_01_curvature_cross_check():
    worst = 0.0
    worst_sec = 0.0
    for c in C_GRID:
        sf = build_space_form(c)
        eye = np.eye(3)
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                for k in (1, 2, 3):
                    gap = np.max(np.abs(
                        curvature_from_frame(sf, i, j, k)
                        - curvature_formula(sf, eye[i - 1], eye[j - 1], eye[k - 1])
                    ))
                    worst = max(worst, gap)
        for alpha in np.linspace(0.0, np.pi, 7):
            v = np.array([np.cos(alpha), np.sin(alpha), 0.0])
            worst_sec = max(worst_sec,
                            abs(sectional_curvature(sf, v, XI) - 1.0))
    ok = worst <= EXACT and worst_sec <= EXACT
    _verdict(1, "curvature cross-check", ok,
             f"route gap {worst:.2e}, reeb-plane gap {worst_sec:.2e}")


def test_criterion_02_structure_equations():
    worst = 0.0
    for c in C_GRID:
        for name, value in structure_residuals(build_space_form(c)).items():
            worst = max(worst, value)
    _verdict(2, "structure equations", worst <= EXACT, f"max residual {worst:.2e}")


def test_criterion_03_curve_eigen_theorem():
    sf = build_space_form(1.0)
    results = []
    for kappa, tau, lam in ((1.0, 1.0, 2.0), (2.0, 1.0, 5.0)):
        curve, fd = synthesize_frenet_curve(sf, kappa, tau, np.eye(3), H, N)
        val, _ = eigen_residual(
            laplacian_H_oracle(sf, curve, fd), mean_curvature_vector(fd)
        )
        results.append(abs(val - lam))
    ramp_large = []
    for h, n in ((H, N), (H / 2.0, 2 * N - 1)):
        curve, fd = synthesize_frenet_curve(sf, lambda s: 1.0 + s, 1.0,
                                            np.eye(3), h, n)
        _, res = eigen_residual(
            laplacian_H_closed(fd), mean_curvature_vector(fd)
        )
        ramp_large.append(res)
    ok = max(results) <= EIGEN and all(r > 100.0 * EIGEN for r in ramp_large)
    _verdict(3, "helix eigenvalues", ok,
             f"lambda gaps {results[0]:.2e}/{results[1]:.2e}, "
             f"ramp residuals {ramp_large[0]:.2f}/{ramp_large[1]:.2f}")


def test_criterion_04_legendre_invariants():
    worst_eta = 0.0
    worst_tau = 0.0
    worst_lam = 0.0
    for c in (1.0, 5.0):
        sf = build_space_form(c)
        for kappa in (0.5, 1.0, 2.0):
            curve, _ = synthesize_legendre_curve(sf, kappa, H, N)
            fd = extract_frenet(sf, curve)
            worst_eta = max(worst_eta, float(np.max(np.abs(curve.velocity[:, 2]))))
            worst_tau = max(worst_tau,
                            float(np.max(np.abs(fd.tau[4:-4] - 1.0))))
            val, _ = eigen_residual(
                normal_laplacian_H(fd), mean_curvature_vector(fd)
            )
            worst_lam = max(worst_lam, abs(val - 1.0))
    ok = worst_eta <= 1e-8 and worst_tau <= 1e-6 and worst_lam <= EIGEN
    _verdict(4, "legendre invariants", ok,
             f"|eta| {worst_eta:.2e}, |tau-1| {worst_tau:.2e}, "
             f"|lambda-1| {worst_lam:.2e}")


def test_criterion_05_polyharmonic_legendre():
    residuals = {}
    for c, kappa in ((2.0, 1.0), (5.0, 2.0), (1.0, 1.0)):
        sf = build_space_form(c)
        curve, fd = synthesize_legendre_curve(sf, kappa, H, N)
        t2 = bitension_curve(sf, curve, fd)
        residuals[(c, kappa)] = vanishing_residual(t2, mean_curvature_vector(fd))
    ok = (residuals[(2.0, 1.0)] <= EIGEN and residuals[(5.0, 2.0)] <= EIGEN
          and residuals[(1.0, 1.0)] >= 0.5)
    _verdict(5, "polyharmonic horizontal helices", ok,
             f"critical {residuals[(2.0, 1.0)]:.2e}/{residuals[(5.0, 2.0)]:.2e}, "
             f"flat witness {residuals[(1.0, 1.0)]:.2f}")


def test_criterion_06_cylinder_eigen_theorem():
    sf = build_space_form(1.0)
    gaps = []
    lams = []
    for kappa_bar in (0.5, 1.0, 2.0):
        cyl = build_cylinder(sf, kappa_bar, H, 201)
        val, _ = eigen_residual(cylinder_laplacian_H(cyl),
                                cylinder_mean_curvature(cyl))
        lams.append(val)
        gaps.append(abs(val - (kappa_bar ** 2 + 2.0)))
    ok = (abs(lams[1] - 3.0) <= EIGEN and max(gaps) <= EIGEN
          and all(v > 2.0 for v in lams))
    _verdict(6, "cylinder eigenvalues", ok,
             f"lambda(1)={lams[1]:.6f}, max gap {max(gaps):.2e}, "
             f"min lambda {min(lams):.3f} > 2")


def test_criterion_07_natural_equation_round_trip():
    sf = build_space_form(1.0)
    s = np.arange(N) * H
    cyl = build_cylinder(sf, 0.5 * s + 0.25, H, N)
    clothoid = vanishing_residual(cylinder_normal_laplacian_H(cyl),
                                  cylinder_mean_curvature(cyl))
    gaps = []
    for lam, a, b in ((4.0, 1.0, 0.0), (-1.0, 1.0, 0.0)):
        kb = solve_natural_equation(lam, a, b, H, N)
        cyl = build_cylinder(sf, kb, H, N)
        val, _ = eigen_residual(cylinder_normal_laplacian_H(cyl),
                                cylinder_mean_curvature(cyl))
        gaps.append(abs(val - lam))
    ok = clothoid <= EIGEN and max(gaps) <= EIGEN
    _verdict(7, "natural equation", ok,
             f"clothoid residual {clothoid:.2e}, "
             f"lambda gaps {gaps[0]:.2e}/{gaps[1]:.2e}")


def test_criterion_08_polyharmonic_cylinders():
    residuals = {}
    for c, kappa_bar in ((5.0, 2.0), (2.0, 1.0)):
        sf = build_space_form(c)
        cyl = build_cylinder(sf, kappa_bar, H, 201)
        residuals[(c, kappa_bar)] = vanishing_residual(
            cylinder_jacobi_H(cyl), cylinder_mean_curvature(cyl)
        )
    sf1 = build_space_form(1.0)
    flat_floor = min(
        vanishing_residual(cylinder_jacobi_H(build_cylinder(sf1, kb, H, 201)),
                           cylinder_mean_curvature(build_cylinder(sf1, kb, H, 201)))
        for kb in np.arange(0.25, 2.51, 0.25)
    )
    ok = (residuals[(5.0, 2.0)] <= EIGEN and residuals[(2.0, 1.0)] <= EIGEN
          and flat_floor > EIGEN)
    _verdict(8, "polyharmonic cylinders", ok,
             f"critical {residuals[(5.0, 2.0)]:.2e}/{residuals[(2.0, 1.0)]:.2e}, "
             f"flat grid floor {flat_floor:.3f}")


def test_criterion_09_submersion_curvature():
    worst = max(
        abs(oneill_base_curvature(build_space_form(c)) - (c + 3.0))
        for c in C_GRID
    )
    pair = (oneill_base_curvature(build_space_form(1.0)),
            oneill_base_curvature(build_space_form(-3.0)))
    ok = worst <= EXACT and pair == (4.0, 0.0)
    _verdict(9, "base curvature c + 3", ok,
             f"max gap {worst:.2e}, c=1 -> {pair[0]}, c=-3 -> {pair[1]}")


def test_criterion_10_oracle_agreement_and_order():
    sf = build_space_form(1.0)

    def curve_gap(h, n):
        curve, fd = synthesize_frenet_curve(
            sf, lambda s: 2.0 + np.sin(s), 1.0, np.eye(3), h, n
        )
        a = laplacian_H_closed(fd).components
        b = laplacian_H_oracle(sf, curve, fd).components
        return float(np.max(np.abs(a - b)[4:-4]))

    g2, g1 = curve_gap(2e-3, 1001), curve_gap(1e-3, 2001)
    ratio = g2 / g1
    ok = g2 <= 1e-3 and 3.0 <= ratio <= 5.0
    detail = f"curve gap {g2:.2e}, halving ratio {ratio:.2f}"

    sf5 = build_space_form(5.0)
    curve, fd = synthesize_legendre_curve(sf5, 2.0, H, N)
    hv = mean_curvature_vector(fd)
    closed = vanishing_residual(bitension_curve(sf5, curve, fd), hv)
    oracle = vanishing_residual(
        bitension_curve(sf5, curve, fd, method="oracle"), hv
    )
    ok = ok and closed <= EXACT and oracle <= EIGEN
    _verdict(10, "oracle agreement", ok,
             detail + f", bitension closed {closed:.2e} vs oracle {oracle:.2e}")


def test_exports_are_byte_deterministic(tmp_path):
    """Deterministic writers back the reproducibility claims of the gate."""
    sf = build_space_form(1.0)
    curve, _ = synthesize_legendre_curve(sf, 1.0, H, 201)
    first, second = io.StringIO(), io.StringIO()
    export_curve_csv(sf, curve, first)
    export_curve_csv(sf, curve, second)
    csv_ok = first.getvalue() == second.getvalue()

    cyl = build_cylinder(sf, 1.0, 0.02, 51)
    a, b = tmp_path / "a.obj", tmp_path / "b.obj"
    export_cylinder_obj(sf, cyl, a, fiber_samples=12)
    export_cylinder_obj(sf, cyl, b, fiber_samples=12)
    obj_ok = a.read_bytes() == b.read_bytes()
    assert csv_ok and obj_ok
