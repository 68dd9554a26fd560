"""Hopf cylinders: fiber-invariant surfaces over base curves.

M^3(c) fibers over a surface of constant curvature c + 3; the preimage of
a unit-speed base curve with signed geodesic curvature kappa_bar(s) is a
flat cylinder, swept by the horizontal lift t of the base tangent and the
Reeb field xi.  In the adapted frame (t, n = phi t, xi) the ambient
connection acts on fiber-invariant fields V = a(s) t + b(s) n + c(s) xi by

    nabla_t V  = (a' - 2 H b) t + (2 H a + b' - c) n + (b + c') xi,
    nabla_xi V = b t - a n,

with H = kappa_bar / 2 the mean curvature of the cylinder (the mean
curvature vector is H n).  Everything in this module is a scalar model in
s: closed forms

    Delta H      = 6 H H' t + (-H'' + 4 H^3 + 2 H) n - 2 H' xi,
    Delta_perp H = -H'' n,
    J(H)         = 6 H H' t - (H'' - 4 H^3 + (c - 1) H) n - 2 H' xi,

where J is the Jacobi operator acting on H (the bitension field of the
cylinder is -2 J(H)), against :func:`cylinder_frame_oracle`, which
re-derives the same values by applying the two connection rules above
with finite differences and, for J, subtracting the curvature term
R(H) = H (R(n, t)t + R(n, xi)xi) evaluated through the frame curvature
table at a rotating horizontal pair.

Also here: the natural equation kappa_bar'' + lambda kappa_bar = 0 behind
the eigen relation Delta_perp H = lambda H, the O'Neill check that the
base curvature is c + 3, and the horizontal-lift identities used to
validate lifted curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .curves import SampledCurve, covariant_derivative_field
from .spaceform import (
    SpaceForm,
    E1,
    E2,
    curvature_from_frame,
    curvature_from_table,
    curvature_table,
    eta,
    frame_bracket,
    phi,
)

__all__ = [
    "HopfCylinder",
    "SurfaceOperatorValue",
    "build_cylinder",
    "cylinder_mean_curvature",
    "cylinder_laplacian_H",
    "cylinder_normal_laplacian_H",
    "cylinder_jacobi_H",
    "cylinder_bitension",
    "cylinder_curvature_term",
    "cylinder_frame_oracle",
    "solve_natural_equation",
    "oneill_base_curvature",
    "horizontal_lift_check",
]


@dataclass(frozen=True)
class HopfCylinder:
    """Scalar model of the cylinder over a base curve.

    ``kappa_bar`` holds signed base geodesic curvature samples on the grid
    s_i = i h; ``H = kappa_bar / 2`` exactly.
    """

    sf: SpaceForm
    kappa_bar: np.ndarray
    h: float
    n: int
    H: np.ndarray

    def __post_init__(self) -> None:
        if self.h <= 0.0:
            raise ValueError("step size h must be positive")
        if self.n < 5:
            raise ValueError("need at least 5 samples")
        kb = np.asarray(self.kappa_bar, dtype=float)
        if kb.shape != (self.n,):
            raise ValueError(f"kappa_bar must have shape ({self.n},)")
        object.__setattr__(self, "kappa_bar", kb)
        kb.flags.writeable = False
        self.H.flags.writeable = False

    @property
    def s(self) -> np.ndarray:
        return np.arange(self.n) * self.h


@dataclass(frozen=True)
class SurfaceOperatorValue:
    """Operator value on the cylinder in the adapted frame (t, n, xi)."""

    along_t: np.ndarray
    along_n: np.ndarray
    along_xi: np.ndarray

    @property
    def components(self) -> np.ndarray:
        return np.stack([self.along_t, self.along_n, self.along_xi], axis=1)

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.components, axis=1)


def build_cylinder(
    sf: SpaceForm,
    kappa_bar: float | Callable[[float], float] | np.ndarray,
    h: float,
    n: int,
) -> HopfCylinder:
    """Sample kappa_bar (constant, callable or ready-made array) on the grid."""
    if callable(kappa_bar):
        kb = np.array([float(kappa_bar(i * h)) for i in range(n)])
    else:
        kb = np.asarray(kappa_bar, dtype=float)
        if kb.ndim == 0:
            kb = np.full(n, float(kb))
        else:
            kb = kb.copy()
    return HopfCylinder(sf=sf, kappa_bar=kb, h=h, n=n, H=kb / 2.0)


def _surface(n, t_c, n_c, xi_c) -> SurfaceOperatorValue:
    return SurfaceOperatorValue(
        np.broadcast_to(np.asarray(t_c, dtype=float), (n,)).copy(),
        np.broadcast_to(np.asarray(n_c, dtype=float), (n,)).copy(),
        np.broadcast_to(np.asarray(xi_c, dtype=float), (n,)).copy(),
    )


def cylinder_mean_curvature(cyl: HopfCylinder) -> SurfaceOperatorValue:
    """Mean curvature vector H n of the cylinder."""
    return _surface(cyl.n, 0.0, cyl.H, 0.0)


def cylinder_laplacian_H(cyl: HopfCylinder) -> SurfaceOperatorValue:
    """Delta H, closed form (6 H H', -H'' + 4 H^3 + 2 H, -2 H')."""
    hh = cyl.H
    dh = np.gradient(hh, cyl.h, edge_order=2)
    ddh = np.gradient(dh, cyl.h, edge_order=2)
    return _surface(cyl.n, 6.0 * hh * dh, -ddh + 4.0 * hh**3 + 2.0 * hh, -2.0 * dh)


def cylinder_normal_laplacian_H(cyl: HopfCylinder) -> SurfaceOperatorValue:
    """Delta_perp H = -H'' n, closed form."""
    dh = np.gradient(cyl.H, cyl.h, edge_order=2)
    ddh = np.gradient(dh, cyl.h, edge_order=2)
    return _surface(cyl.n, 0.0, -ddh, 0.0)


def cylinder_jacobi_H(cyl: HopfCylinder) -> SurfaceOperatorValue:
    """Jacobi operator on H: 6 H H' t - (H'' - 4 H^3 + (c - 1) H) n - 2 H' xi."""
    hh, c = cyl.H, cyl.sf.c
    dh = np.gradient(hh, cyl.h, edge_order=2)
    ddh = np.gradient(dh, cyl.h, edge_order=2)
    return _surface(
        cyl.n,
        6.0 * hh * dh,
        -(ddh - 4.0 * hh**3 + (c - 1.0) * hh),
        -2.0 * dh,
    )


def cylinder_bitension(cyl: HopfCylinder) -> SurfaceOperatorValue:
    """Bitension field of the cylinder immersion, -2 J(H)."""
    j = cylinder_jacobi_H(cyl)
    return SurfaceOperatorValue(-2.0 * j.along_t, -2.0 * j.along_n, -2.0 * j.along_xi)


def cylinder_curvature_term(cyl: HopfCylinder) -> SurfaceOperatorValue:
    """R(H) = H (R(n, t)t + R(n, xi)xi) through the frame curvature table.

    Evaluated at a rotating horizontal pair t(s) = cos s e1 + sin s e2,
    n = phi t, exercising frame independence; the closed-form value is
    (c + 1) H n.
    """
    s = cyl.s
    t = np.stack([np.cos(s), np.sin(s), np.zeros_like(s)], axis=1)
    nn = phi(t)
    xi = np.tile(np.array([0.0, 0.0, 1.0]), (cyl.n, 1))
    table = curvature_table(cyl.sf)
    r = curvature_from_table(cyl.sf, nn, t, t, table=table) + curvature_from_table(
        cyl.sf, nn, xi, xi, table=table
    )
    r = cyl.H[:, None] * r
    return SurfaceOperatorValue(
        np.sum(r * t, axis=1), np.sum(r * nn, axis=1), r[:, 2].copy()
    )


def cylinder_frame_oracle(cyl: HopfCylinder, which: str) -> SurfaceOperatorValue:
    """Recompute an operator value from the connection rules by differencing.

    which is one of "laplacian", "normal_laplacian", "jacobi".  Fields are
    held as adapted-frame coefficient arrays; nabla_t differentiates them
    in s (np.gradient, O(h^2)) and adds the algebraic frame-rotation
    terms, nabla_xi is purely algebraic.  No closed operator formula is
    used anywhere on this route.
    """
    hh, h = cyl.H, cyl.h
    n = cyl.n

    def d(f: np.ndarray) -> np.ndarray:
        return np.gradient(f, h, edge_order=2)

    def nabla_t(v: np.ndarray) -> np.ndarray:
        a, b, c_ = v[:, 0], v[:, 1], v[:, 2]
        return np.stack(
            [d(a) - 2.0 * hh * b, 2.0 * hh * a + d(b) - c_, b + d(c_)], axis=1
        )

    def nabla_xi(v: np.ndarray) -> np.ndarray:
        return np.stack([v[:, 1], -v[:, 0], np.zeros(n)], axis=1)

    h_vec = np.stack([np.zeros(n), hh, np.zeros(n)], axis=1)

    if which == "laplacian":
        val = -(nabla_t(nabla_t(h_vec)) + nabla_xi(nabla_xi(h_vec)))
    elif which == "normal_laplacian":
        # Normal bundle is spanned by n: project to the n component
        # between derivatives.
        b1 = nabla_t(h_vec)[:, 1]
        v1 = np.stack([np.zeros(n), b1, np.zeros(n)], axis=1)
        b2 = nabla_t(v1)[:, 1]
        # nabla_xi of a purely normal field has no normal component.
        val = np.stack([np.zeros(n), -b2, np.zeros(n)], axis=1)
    elif which == "jacobi":
        lap = -(nabla_t(nabla_t(h_vec)) + nabla_xi(nabla_xi(h_vec)))
        rt = cylinder_curvature_term(cyl)
        val = lap - rt.components
    else:
        raise ValueError("which must be 'laplacian', 'normal_laplacian' or 'jacobi'")
    return SurfaceOperatorValue(val[:, 0], val[:, 1], val[:, 2])


def solve_natural_equation(
    lam: float, a: float, b: float, h: float, n: int
) -> np.ndarray:
    """Solutions kappa_bar of kappa_bar'' + lambda kappa_bar = 0, sampled.

    The general solution branches on the sign of lambda:

        lambda > 0:  a cos(sqrt(lambda) s) + b sin(sqrt(lambda) s)
        lambda = 0:  a s + b
        lambda < 0:  a exp(sqrt(-lambda) s) + b exp(-sqrt(-lambda) s)

    These are exactly the curvature profiles for which Delta_perp H is a
    multiple of H with factor lambda.
    """
    s = np.arange(n) * h
    if lam > 0.0:
        w = np.sqrt(lam)
        return a * np.cos(w * s) + b * np.sin(w * s)
    if lam == 0.0:
        return a * s + b
    w = np.sqrt(-lam)
    return a * np.exp(w * s) + b * np.exp(-w * s)


def oneill_base_curvature(sf: SpaceForm) -> float:
    """Curvature of the base surface by the O'Neill submersion formula.

    sec_base = sec(e1, e2) + (3/4) |vertical part of [e1, e2]|^2, with the
    sectional curvature taken from the frame curvature oracle.  Comes out
    c + 3; nothing here is hardcoded to that value.
    """
    r = curvature_from_frame(sf, 1, 2, 2)
    sec = float(np.dot(r, E1))
    vert = float(eta(frame_bracket(sf, E1, E2)))
    return sec + 0.75 * vert**2


def horizontal_lift_check(sf: SpaceForm, curve: SampledCurve) -> float:
    """Max deviation from the horizontal-lift identities along a curve.

    For the lift of a unit-speed base curve, the contact component of
    nabla_{gamma'} gamma' vanishes and the contact component of
    nabla_{gamma'} (phi gamma') equals +1.  Returns the larger max-norm
    deviation over the interior; rejects curves that are not horizontal.
    """
    u = curve.velocity
    if float(np.max(np.abs(eta(u)))) > 1e-8:
        raise ValueError("horizontal_lift_check requires a horizontal curve")
    acc = covariant_derivative_field(sf, curve, u)
    w = covariant_derivative_field(sf, curve, phi(u))
    inner = slice(2, -2) if curve.n > 5 else slice(1, -1)
    r1 = float(np.max(np.abs(eta(acc)[inner])))
    r2 = float(np.max(np.abs(eta(w)[inner] - 1.0)))
    return max(r1, r2)
