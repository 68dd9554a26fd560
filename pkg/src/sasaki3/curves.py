"""Unit-speed curves in M^3(c), sampled on a uniform arclength grid.

A curve is carried entirely by its velocity coefficients against the
global frame: the frame is defined on the whole manifold, so a vector
field along the curve is just an ``(n, 3)`` coefficient array and the
covariant derivative along the curve splits into an ordinary s-derivative
plus an algebraic Gamma contraction,

    (nabla_{gamma'} V)^k = dV^k/ds + sum_{a,b} u^a V^b Gamma^k_{ab},

with u the velocity.  :func:`covariant_derivative` realises this with a
central difference and is the module's finite-difference oracle; every
closed-form operator elsewhere is checked against it.

Synthesis integrates the Frenet system

    nabla_{gamma'} p1 = kappa p2
    nabla_{gamma'} p2 = -kappa p1 + tau p3
    nabla_{gamma'} p3 = -tau p2

with a classic fixed-step RK4 on the nine frame coefficients, re-running
Gram-Schmidt after every step so the frame never drifts from orthonormal.
Legendre synthesis instead pins p3 = xi and p2 = phi p1 and integrates p1
alone; with that pinning the contact component of the velocity is
conserved exactly by the stage arithmetic, so eta(gamma') stays at machine
zero over arbitrarily many steps.

Extraction differentiates the velocity samples with 4th-order stencils
(matching RK4's order, so synthesize -> extract round-trips at O(h^4)) and
reads kappa, tau, and the frame off the Frenet relations.  Orientation:
p3 = p1 x p2 with e1 x e2 = e3.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .spaceform import SpaceForm, eta, phi

__all__ = [
    "KAPPA_FLOOR",
    "SampledCurve",
    "FrenetData",
    "covariant_derivative",
    "covariant_derivative_field",
    "synthesize_frenet_curve",
    "synthesize_legendre_curve",
    "extract_frenet",
]

# Below this, |nabla_{gamma'} gamma'| is treated as zero (geodesic).
KAPPA_FLOOR = 1e-7

ScalarFn = Callable[[float], float]


@dataclass(frozen=True)
class SampledCurve:
    """Arclength samples of a unit-speed curve.

    ``velocity[i]`` holds the frame coefficients of gamma'(i * h).  With
    ``legendre_flag`` set the curve is claimed horizontal and the claim is
    enforced at construction.
    """

    h: float
    n: int
    velocity: np.ndarray
    legendre_flag: bool = False

    def __post_init__(self) -> None:
        if self.h <= 0.0:
            raise ValueError("step size h must be positive")
        if self.n < 5:
            raise ValueError("need at least 5 samples")
        v = np.asarray(self.velocity, dtype=float)
        if v.shape != (self.n, 3):
            raise ValueError(f"velocity must have shape ({self.n}, 3)")
        object.__setattr__(self, "velocity", v)
        speed = np.linalg.norm(v, axis=1)
        if np.max(np.abs(speed - 1.0)) > 1e-9:
            raise ValueError("curve is not unit speed")
        if self.legendre_flag and np.max(np.abs(eta(v))) > 1e-9:
            raise ValueError("legendre_flag set but eta(velocity) != 0")
        v.flags.writeable = False

    @property
    def s(self) -> np.ndarray:
        return np.arange(self.n) * self.h


@dataclass(frozen=True)
class FrenetData:
    """Frenet apparatus along a sampled curve.

    ``tau`` is None exactly when the curve is a geodesic; p2, p3 are then
    undefined and left as None as well.  kappa and tau are reported
    non-negative for honest Frenet frames; a negative extracted tau means
    the sampled frame violates the orientation convention and is flagged
    with a warning rather than silently re-signed.
    """

    h: float
    kappa: np.ndarray
    tau: np.ndarray | None
    p1: np.ndarray
    p2: np.ndarray | None
    p3: np.ndarray | None
    geodesic: bool = False

    def __post_init__(self) -> None:
        kappa = np.asarray(self.kappa, dtype=float)
        object.__setattr__(self, "kappa", kappa)
        if self.geodesic:
            if self.tau is not None:
                raise ValueError("geodesic Frenet data carries no torsion")
            return
        if self.tau is None or self.p2 is None or self.p3 is None:
            raise ValueError("non-geodesic Frenet data needs tau, p2, p3")
        frames = np.stack([self.p1, self.p2, self.p3], axis=1)
        gram = np.einsum("nij,nkj->nik", frames, frames)
        if np.max(np.abs(gram - np.eye(3))) > 1e-8:
            raise ValueError("Frenet frame is not orthonormal")

    @property
    def n(self) -> int:
        return len(self.kappa)

    @property
    def s(self) -> np.ndarray:
        return np.arange(self.n) * self.h


def _as_fn(f: float | ScalarFn) -> ScalarFn:
    if callable(f):
        return f
    value = float(f)
    return lambda s: value


def _sample(fn: ScalarFn, h: float, n: int) -> np.ndarray:
    return np.array([float(fn(i * h)) for i in range(n)])


def _deriv4(f: np.ndarray, h: float) -> np.ndarray:
    """4th-order first derivative along axis 0 (5-point stencils).

    Central in the interior, one-sided of the same order at the two
    samples on each end, so the output covers the full grid.
    """
    f = np.asarray(f, dtype=float)
    if f.shape[0] < 5:
        raise ValueError("needs at least 5 samples")
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (
        12.0 * h
    )
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    out[-2] = -(
        -3.0 * f[-1] - 10.0 * f[-2] + 18.0 * f[-3] - 6.0 * f[-4] + f[-5]
    ) / (12.0 * h)
    out[-1] = -(
        -25.0 * f[-1] + 48.0 * f[-2] - 36.0 * f[-3] + 16.0 * f[-4] - 3.0 * f[-5]
    ) / (12.0 * h)
    return out


def covariant_derivative(
    sf: SpaceForm, curve: SampledCurve, field: np.ndarray, i: int
) -> np.ndarray:
    """(nabla_{gamma'} field) at sample i, central difference, O(h^2).

    This is the finite-difference oracle the closed-form operators are
    measured against; it knows nothing beyond the connection table and the
    samples.
    """
    field = np.asarray(field, dtype=float)
    if field.shape != (curve.n, 3):
        raise ValueError(f"field must have shape ({curve.n}, 3)")
    if i < 1 or i > curve.n - 2:
        raise ValueError("covariant_derivative needs interior sample")
    dv = (field[i + 1] - field[i - 1]) / (2.0 * curve.h)
    return dv + np.einsum("a,b,abk->k", curve.velocity[i], field[i], sf.gamma)


def covariant_derivative_field(
    sf: SpaceForm, curve: SampledCurve, field: np.ndarray, order: int = 2
) -> np.ndarray:
    """Vectorised covariant derivative over the whole grid.

    order=2 matches the pointwise oracle in the interior and falls back to
    one-sided O(h^2) stencils at the two boundary samples; order=4 uses the
    5-point stencils extraction relies on.  Boundary samples are filled
    but carry the one-sided truncation error, so accuracy-critical
    comparisons should stay in the interior.
    """
    field = np.asarray(field, dtype=float)
    if field.shape != (curve.n, 3):
        raise ValueError(f"field must have shape ({curve.n}, 3)")
    if order == 2:
        dv = np.gradient(field, curve.h, axis=0, edge_order=2)
    elif order == 4:
        dv = _deriv4(field, curve.h)
    else:
        raise ValueError("order must be 2 or 4")
    return dv + np.einsum("na,nb,abk->nk", curve.velocity, field, sf.gamma)


def _gram_schmidt(p: np.ndarray) -> np.ndarray:
    q = np.empty_like(p)
    q[0] = p[0] / np.linalg.norm(p[0])
    q[1] = p[1] - (p[1] @ q[0]) * q[0]
    q[1] /= np.linalg.norm(q[1])
    q[2] = p[2] - (p[2] @ q[0]) * q[0] - (p[2] @ q[1]) * q[1]
    q[2] /= np.linalg.norm(q[2])
    return q


def synthesize_frenet_curve(
    sf: SpaceForm,
    kappa: float | ScalarFn,
    tau: float | ScalarFn,
    initial_frame: np.ndarray,
    h: float,
    n: int,
) -> tuple[SampledCurve, FrenetData]:
    """Integrate the Frenet system for prescribed kappa(s) >= 0, tau(s).

    ``initial_frame`` holds the starting frame as rows (p1, p2, p3); it
    must be orthonormal to 1e-8 in Gram residual.  RK4 with per-step
    Gram-Schmidt; the returned velocity is the p1 trajectory, so the curve
    is unit speed to machine precision and round-trips through
    :func:`extract_frenet` at O(h^4).
    """
    if h <= 0.0:
        raise ValueError("step size h must be positive")
    if n < 5:
        raise ValueError("need at least 5 samples")
    p0 = np.array(initial_frame, dtype=float)
    if p0.shape != (3, 3):
        raise ValueError("initial_frame must be three frame vectors (3 x 3)")
    gram = np.max(np.abs(p0 @ p0.T - np.eye(3)))
    if gram > 1e-8:
        raise ValueError(f"initial frame not orthonormal (Gram residual {gram:.2e})")

    kap, tu = _as_fn(kappa), _as_fn(tau)
    gamma = sf.gamma

    def rhs(s: float, p: np.ndarray) -> np.ndarray:
        k, t = kap(s), tu(s)
        a = np.array([[0.0, k, 0.0], [-k, 0.0, t], [0.0, -t, 0.0]])
        return a @ p - np.einsum("a,ib,abk->ik", p[0], p, gamma)

    frames = np.empty((n, 3, 3))
    frames[0] = _gram_schmidt(p0)
    p = frames[0]
    for i in range(n - 1):
        s = i * h
        k1 = rhs(s, p)
        k2 = rhs(s + 0.5 * h, p + 0.5 * h * k1)
        k3 = rhs(s + 0.5 * h, p + 0.5 * h * k2)
        k4 = rhs(s + h, p + h * k3)
        p = _gram_schmidt(p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        frames[i + 1] = p

    curve = SampledCurve(h=h, n=n, velocity=frames[:, 0].copy())
    data = FrenetData(
        h=h,
        kappa=_sample(kap, h, n),
        tau=_sample(tu, h, n),
        p1=frames[:, 0].copy(),
        p2=frames[:, 1].copy(),
        p3=frames[:, 2].copy(),
    )
    return curve, data


def synthesize_legendre_curve(
    sf: SpaceForm,
    kappa: float | ScalarFn,
    h: float,
    n: int,
    initial_velocity: np.ndarray | None = None,
) -> tuple[SampledCurve, FrenetData]:
    """Integrate a horizontal (Legendre) curve with prescribed kappa(s).

    The frame is pinned to p2 = phi p1, p3 = xi, which is the Frenet frame
    of any non-geodesic Legendre curve and forces torsion tau = 1.  Only
    p1 is integrated:

        dp1/ds = kappa phi p1 - Gamma(p1, p1),

    whose contact component vanishes identically, so horizontality is
    conserved exactly.  ``initial_velocity`` defaults to e1 and must be a
    horizontal unit vector.
    """
    if h <= 0.0:
        raise ValueError("step size h must be positive")
    if n < 5:
        raise ValueError("need at least 5 samples")
    u0 = np.array([1.0, 0.0, 0.0]) if initial_velocity is None else np.array(
        initial_velocity, dtype=float
    )
    if abs(np.linalg.norm(u0) - 1.0) > 1e-8:
        raise ValueError("initial velocity must be a unit vector")
    if abs(float(eta(u0))) > 1e-9:
        raise ValueError("initial velocity must be horizontal (eta = 0)")

    kap = _as_fn(kappa)
    gamma = sf.gamma

    def rhs(s: float, u: np.ndarray) -> np.ndarray:
        return kap(s) * phi(u) - np.einsum("a,b,abk->k", u, u, gamma)

    vel = np.empty((n, 3))
    vel[0] = u0
    u = u0
    for i in range(n - 1):
        s = i * h
        k1 = rhs(s, u)
        k2 = rhs(s + 0.5 * h, u + 0.5 * h * k1)
        k3 = rhs(s + 0.5 * h, u + 0.5 * h * k2)
        k4 = rhs(s + h, u + h * k3)
        u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        u = u / np.linalg.norm(u)
        vel[i + 1] = u

    curve = SampledCurve(h=h, n=n, velocity=vel, legendre_flag=True)
    data = FrenetData(
        h=h,
        kappa=_sample(kap, h, n),
        tau=np.ones(n),
        p1=vel.copy(),
        p2=phi(vel),
        p3=np.tile(np.array([0.0, 0.0, 1.0]), (n, 1)),
    )
    return curve, data


def extract_frenet(sf: SpaceForm, curve: SampledCurve) -> FrenetData:
    """Recover kappa, tau and the Frenet frame from velocity samples.

    kappa = |nabla_{gamma'} gamma'|; below :data:`KAPPA_FLOOR` everywhere
    the curve is classified as a geodesic (kappa == 0, tau unset).  A
    kappa that straddles the floor leaves the normal direction ill-defined
    at isolated samples and is rejected.
    """
    u = curve.velocity
    acc = covariant_derivative_field(sf, curve, u, order=4)
    kappa = np.linalg.norm(acc, axis=1)

    if np.max(kappa) < KAPPA_FLOOR:
        return FrenetData(
            h=curve.h,
            kappa=np.zeros(curve.n),
            tau=None,
            p1=u.copy(),
            p2=None,
            p3=None,
            geodesic=True,
        )
    if np.min(kappa) < KAPPA_FLOOR:
        raise ValueError("Frenet frame degenerates: curvature crosses zero")

    p2 = acc / kappa[:, None]
    p3 = np.cross(u, p2)
    dp2 = covariant_derivative_field(sf, curve, p2, order=4)
    tau = np.sum(dp2 * p3, axis=1)
    if np.min(tau) < -1e-6:
        warnings.warn(
            "extracted torsion is negative: frame orientation convention violated",
            stacklevel=2,
        )
    return FrenetData(h=curve.h, kappa=kappa, tau=tau, p1=u.copy(), p2=p2, p3=p3)
