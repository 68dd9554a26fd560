"""Position reconstruction in model charts, CSV / OBJ writers.

The frame description of a curve never leaves the Lie algebra; to draw
anything, positions are reconstructed by integrating the left-invariant
ODE  G' = G . (u^1 E1 + u^2 E2 + u^3 E3)  in a matrix (or quaternion)
model of the group, with RK4 on the sampled velocity (midpoint values by
interpolation) and a per-step renormalisation onto the model variety.
Three charts cover every c:

* c > -3   quaternion chart: unit quaternions with the Berger generator
           scaling E1 = a i, E2 = a j, E3 = b k, a = sqrt(mu/2),
           b = mu/2 (round sphere exactly at c = 1);
* c = -3   Heisenberg chart: unitriangular coordinates with
           x' = u1, y' = u2, z' = u3/2 + x u2;
* c < -3   SL(2, R) chart: 2x2 matrices of determinant one with
           E1 = beta (E + F), E2 = beta diag(1, -1),
           E3 = (mu/2) (E - F), beta = sqrt(-mu/2).

The exported xyz columns are chart coordinates (stereographic projection
for quaternions), documented in the file header.  Fibers of the
Sasakian fibration are the flows of E3; they close up in the quaternion
and SL(2, R) charts and drift straight in the Heisenberg chart, which is
what the cylinder OBJ export sweeps.

This is a convenience layer: the verification suites never depend on
chart output beyond its byte determinism, which the writers guarantee by
formatting every float with repr.
"""

from __future__ import annotations

import io
import math
from typing import Callable

import numpy as np

from .curves import SampledCurve, synthesize_legendre_curve
from .hopf import HopfCylinder
from .spaceform import SpaceForm

__all__ = [
    "chart_name",
    "integrate_positions",
    "project_xyz",
    "fiber_flow",
    "fiber_period",
    "export_curve_csv",
    "export_cylinder_obj",
]


def chart_name(sf: SpaceForm) -> str:
    if sf.c > -3.0:
        return "quaternion"
    if sf.c == -3.0:
        return "heisenberg"
    return "sl2"


def _qmul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    w1, x1, y1, z1 = p
    w2, x2, y2, z2 = q
    return np.array(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ]
    )


def _rhs(sf: SpaceForm) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    name = chart_name(sf)
    if name == "quaternion":
        a = math.sqrt(sf.mu / 2.0)
        b = sf.mu / 2.0

        def f(state: np.ndarray, u: np.ndarray) -> np.ndarray:
            return _qmul(state, np.array([0.0, a * u[0], a * u[1], b * u[2]]))

        return f
    if name == "heisenberg":

        def f(state: np.ndarray, u: np.ndarray) -> np.ndarray:
            x = state[0]
            return np.array([u[0], u[1], 0.5 * u[2] + x * u[1]])

        return f
    beta = math.sqrt(-sf.mu / 2.0)
    alpha = sf.mu / 2.0
    e1 = beta * np.array([[0.0, 1.0], [1.0, 0.0]])
    e2 = beta * np.array([[1.0, 0.0], [0.0, -1.0]])
    e3 = alpha * np.array([[0.0, 1.0], [-1.0, 0.0]])

    def f(state: np.ndarray, u: np.ndarray) -> np.ndarray:
        return state @ (u[0] * e1 + u[1] * e2 + u[2] * e3)

    return f


def _renormalize(sf: SpaceForm, state: np.ndarray) -> np.ndarray:
    name = chart_name(sf)
    if name == "quaternion":
        return state / np.linalg.norm(state)
    if name == "heisenberg":
        return state
    det = state[0, 0] * state[1, 1] - state[0, 1] * state[1, 0]
    return state / math.sqrt(det)


def _initial_state(sf: SpaceForm) -> np.ndarray:
    name = chart_name(sf)
    if name == "quaternion":
        return np.array([1.0, 0.0, 0.0, 0.0])
    if name == "heisenberg":
        return np.zeros(3)
    return np.eye(2)


def integrate_positions(sf: SpaceForm, curve: SampledCurve) -> np.ndarray:
    """Chart states along the curve, starting at the identity.

    RK4 on the sampled velocity; midpoint stage values are linear
    interpolations of adjacent samples, so positions are only guaranteed
    to O(h^2) for non-constant velocity, plenty for plotting.
    """
    f = _rhs(sf)
    h = curve.h
    vel = curve.velocity
    state = _initial_state(sf)
    out = np.empty((curve.n,) + state.shape)
    out[0] = state
    for i in range(curve.n - 1):
        u0, u1 = vel[i], vel[i + 1]
        um = 0.5 * (u0 + u1)
        k1 = f(state, u0)
        k2 = f(state + 0.5 * h * k1, um)
        k3 = f(state + 0.5 * h * k2, um)
        k4 = f(state + h * k3, u1)
        state = _renormalize(sf, state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        out[i + 1] = state
    return out


def project_xyz(
    sf: SpaceForm, states: np.ndarray, style: str = "stereographic"
) -> np.ndarray:
    """Chart coordinates for plotting, one xyz row per state.

    ``style`` only matters for the quaternion chart: "stereographic"
    projects from the antipode (-1, 0, 0, 0) and is faithful but singular
    there; "vector" takes the quaternion vector part, which is total and
    bounded (two-sheeted), the right choice for meshes whose fibers sweep
    whole great circles.
    """
    name = chart_name(sf)
    if name == "quaternion":
        if style == "vector":
            return np.asarray(states[..., 1:4])
        return states[..., 1:4] / (1.0 + states[..., 0:1])
    if name == "heisenberg":
        return np.asarray(states)
    flat = states.reshape(states.shape[:-2] + (4,))
    return np.stack([flat[..., 0], flat[..., 1], flat[..., 2]], axis=-1)


def fiber_flow(sf: SpaceForm, state: np.ndarray, t: float) -> np.ndarray:
    """Flow of the Reeb generator E3 for time t from a chart state."""
    name = chart_name(sf)
    if name == "quaternion":
        b = sf.mu / 2.0
        return _qmul(state, np.array([math.cos(b * t), 0.0, 0.0, math.sin(b * t)]))
    if name == "heisenberg":
        return state + np.array([0.0, 0.0, 0.5 * t])
    alpha = sf.mu / 2.0
    rot = np.array(
        [
            [math.cos(alpha * t), math.sin(alpha * t)],
            [-math.sin(alpha * t), math.cos(alpha * t)],
        ]
    )
    return state @ rot


def fiber_period(sf: SpaceForm) -> float | None:
    """Period of the fiber flow, None when fibers do not close (c = -3)."""
    name = chart_name(sf)
    if name == "heisenberg":
        return None
    return 2.0 * math.pi / abs(sf.mu / 2.0)


def _fmt(x: float) -> str:
    return repr(float(x))


def export_curve_csv(sf: SpaceForm, curve: SampledCurve, out) -> None:
    """Write the reconstructed polyline as CSV columns s, x, y, z.

    ``out`` is a path or a text file object.  Output bytes depend only on
    the inputs.
    """
    states = integrate_positions(sf, curve)
    xyz = project_xyz(sf, states)
    s = curve.s
    lines = [
        f"# chart: {chart_name(sf)} (c={_fmt(sf.c)}, mu={_fmt(sf.mu)})",
        "# xyz: "
        + {
            "quaternion": "stereographic projection (qx,qy,qz)/(1+qw) of a unit quaternion",
            "heisenberg": "unitriangular coordinates (x, y, z)",
            "sl2": "matrix entries (g00, g01, g10); g11 = (1 + g01*g10)/g00",
        }[chart_name(sf)],
        "s,x,y,z",
    ]
    for i in range(curve.n):
        lines.append(
            f"{_fmt(s[i])},{_fmt(xyz[i, 0])},{_fmt(xyz[i, 1])},{_fmt(xyz[i, 2])}"
        )
    _write_text(out, "\n".join(lines) + "\n")


def export_cylinder_obj(
    sf: SpaceForm, cyl: HopfCylinder, out, fiber_samples: int = 64
) -> None:
    """Write the swept cylinder surface as a Wavefront OBJ quad mesh.

    The base curve is lifted horizontally (its frame ODE reuses the
    Legendre integrator with the signed curvature profile), chart states
    are swept along the fiber flow, and rings are joined into quads;
    rings close up whenever the fiber is periodic.
    """
    if fiber_samples < 3:
        raise ValueError("need at least 3 fiber samples")
    grid = cyl.s
    kb = cyl.kappa_bar

    def signed_kappa(s: float) -> float:
        return float(np.interp(s, grid, kb))

    lift, _ = synthesize_legendre_curve(sf, signed_kappa, cyl.h, cyl.n)
    states = integrate_positions(sf, lift)

    period = fiber_period(sf)
    closed = period is not None
    if closed:
        ts = [period * j / fiber_samples for j in range(fiber_samples)]
    else:
        ts = list(np.linspace(-0.5, 0.5, fiber_samples))

    lines = [
        f"# hopf cylinder over kappa_bar samples, c={_fmt(sf.c)}",
        f"# chart: {chart_name(sf)}; rings: {cyl.n}; fiber samples: {fiber_samples};"
        f" fiber {'closed' if closed else 'open'}",
        "# xyz: quaternion vector part for c > -3, chart coordinates otherwise",
    ]
    for i in range(cyl.n):
        for t in ts:
            x, y, z = project_xyz(sf, fiber_flow(sf, states[i], t), style="vector")
            lines.append(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}")

    def vid(i: int, j: int) -> int:
        return i * fiber_samples + j + 1

    jmax = fiber_samples if closed else fiber_samples - 1
    for i in range(cyl.n - 1):
        for j in range(jmax):
            jn = (j + 1) % fiber_samples
            lines.append(
                f"f {vid(i, j)} {vid(i + 1, j)} {vid(i + 1, jn)} {vid(i, jn)}"
            )
    _write_text(out, "\n".join(lines) + "\n")


def _write_text(out, text: str) -> None:
    if isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    elif isinstance(out, io.TextIOBase) or hasattr(out, "write"):
        out.write(text)
    else:
        raise TypeError("out must be a path or a writable text file object")
