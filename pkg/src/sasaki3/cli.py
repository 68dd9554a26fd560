"""Command-line front end.

Four commands:

* ``verify``      run a classification suite, write a JSON/CSV report,
                  exit 0 iff every verdict matches its theorem;
* ``synthesize``  integrate a named curve family, dump frame samples;
* ``export``      reconstruct geometry in a model chart (CSV polyline for
                  curves, OBJ mesh for cylinders);
* ``sweep``       map the Jacobi vanishing residual over a kappa_bar grid.

Exit codes: 0 success, 1 verdict mismatch (diff summary on stderr),
2 usage errors.  Reports carry ``"schema": "1"`` and are byte-identical
for identical configuration.  The environment variable SASAKI_TOL
overrides the residual tolerance for verdicts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .classify import (
    STANDARD_C_VALUES,
    EigenReport,
    verify_curve_eigen_theorem,
    verify_hopf_theorems,
    verify_legendre_theorems,
)
from .curves import synthesize_frenet_curve, synthesize_legendre_curve
from .export import export_curve_csv, export_cylinder_obj
from .hopf import (
    build_cylinder,
    cylinder_frame_oracle,
    cylinder_mean_curvature,
    solve_natural_equation,
)
from .operators import vanishing_residual, verdict_tol
from .spaceform import build_space_form

__all__ = ["RunConfig", "run_verify", "run_export", "main", "entry"]

_REPORT_FIELDS = (
    "subject",
    "operator",
    "lambda_est",
    "residual",
    "verdict",
    "theorem_tag",
    "expected_verdict",
    "expected_lambda",
    "tol",
    "passed",
)

_CURVE_FAMILIES = ("geodesic", "helix", "legendre-helix")
_CYLINDER_FAMILIES = ("circle", "clothoid", "natural")


@dataclass
class RunConfig:
    """Validated knobs for one CLI run."""

    command: str
    c_values: list[float]
    h: float = 1e-3
    s_max: float = 2.0
    tol: float | None = None
    out: str | None = None
    fmt: str = "json"
    suite: str = "all"
    family: str | None = None
    params: dict = field(default_factory=dict)
    fiber_samples: int = 64

    @property
    def n(self) -> int:
        return int(round(self.s_max / self.h)) + 1


def _parse_c_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad c list {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sasaki3",
        description="Curves and Hopf cylinders in 3-dimensional Sasakian space forms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, many_c: bool) -> None:
        if many_c:
            p.add_argument(
                "--c",
                type=_parse_c_list,
                default=list(STANDARD_C_VALUES),
                help="comma-separated curvature parameters (default standard set)",
            )
        else:
            p.add_argument("--c", type=float, default=1.0)
        p.add_argument("--h", type=float, default=1e-3, help="grid step")
        p.add_argument("--s-max", type=float, default=2.0, help="arclength span")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    pv = sub.add_parser("verify", help="run a classification suite")
    pv.add_argument(
        "--suite",
        choices=["curves", "legendre", "hopf", "all"],
        default="all",
    )
    common(pv, many_c=True)
    pv.add_argument("--format", choices=["json", "csv"], default="json")

    ps = sub.add_parser("synthesize", help="integrate a curve family, dump samples")
    ps.add_argument("--family", choices=_CURVE_FAMILIES, required=True)
    ps.add_argument("--kappa", type=float, default=None)
    ps.add_argument("--tau", type=float, default=None)
    common(ps, many_c=False)
    ps.add_argument("--format", choices=["json", "csv"], default="csv")

    pe = sub.add_parser("export", help="reconstruct geometry in a model chart")
    pe.add_argument(
        "--family", choices=_CURVE_FAMILIES + _CYLINDER_FAMILIES, required=True
    )
    pe.add_argument("--kappa", type=float, default=None)
    pe.add_argument("--tau", type=float, default=None)
    pe.add_argument("--kappa-bar", type=float, default=None)
    pe.add_argument("--a", type=float, default=None)
    pe.add_argument("--b", type=float, default=None)
    pe.add_argument("--lam", type=float, default=None)
    pe.add_argument("--fiber-samples", type=int, default=64)
    common(pe, many_c=False)

    pw = sub.add_parser("sweep", help="Jacobi vanishing residual over a kappa_bar grid")
    common(pw, many_c=True)
    pw.add_argument("--kappa-bar-min", type=float, default=0.25)
    pw.add_argument("--kappa-bar-max", type=float, default=2.5)
    pw.add_argument("--steps", type=int, default=10)
    return parser


def _tol_from_env(parser: argparse.ArgumentParser) -> float | None:
    raw = os.environ.get("SASAKI_TOL")
    if raw is None:
        return None
    try:
        value = float(raw)
    except ValueError:
        parser.error(f"SASAKI_TOL is not a number: {raw!r}")
    if value <= 0.0:
        parser.error("SASAKI_TOL must be positive")
    return value


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _records_csv(records: list[dict]) -> str:
    def cell(v) -> str:
        if v is None:
            return ""
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return repr(v)
        return str(v)

    lines = [",".join(_REPORT_FIELDS)]
    for rec in records:
        lines.append(",".join(cell(rec[k]) for k in _REPORT_FIELDS))
    return "\n".join(lines) + "\n"


def run_verify(cfg: RunConfig) -> tuple[int, str]:
    """Run the configured suites; return (exit code, report text)."""
    reports: list[EigenReport] = []
    if cfg.suite in ("curves", "all"):
        for c in cfg.c_values:
            reports.extend(
                verify_curve_eigen_theorem(
                    build_space_form(c), h=cfg.h, s_max=cfg.s_max, tol=cfg.tol
                )
            )
    if cfg.suite in ("legendre", "all"):
        reports.extend(
            verify_legendre_theorems(
                cfg.c_values, h=cfg.h, s_max=cfg.s_max, tol=cfg.tol
            )
        )
    if cfg.suite in ("hopf", "all"):
        reports.extend(
            verify_hopf_theorems(cfg.c_values, h=cfg.h, s_max=cfg.s_max, tol=cfg.tol)
        )

    records = [r.to_record() for r in reports]
    all_passed = all(rec["passed"] for rec in records)
    if cfg.fmt == "csv":
        text = _records_csv(records)
    else:
        text = _json_text(
            {
                "schema": "1",
                "command": "verify",
                "suite": cfg.suite,
                "c_values": cfg.c_values,
                "h": cfg.h,
                "s_max": cfg.s_max,
                "tol": cfg.tol,
                "all_passed": all_passed,
                "reports": records,
            }
        )
    if not all_passed:
        for rec in records:
            if not rec["passed"]:
                sys.stderr.write(
                    f"MISMATCH {rec['subject']} {rec['operator']}"
                    f" [{rec['theorem_tag']}]: expected {rec['expected_verdict']}"
                    f" (lambda={rec['expected_lambda']}), got {rec['verdict']}"
                    f" (lambda={rec['lambda_est']}, residual={rec['residual']:.3e})\n"
                )
    return (0 if all_passed else 1), text


def _synthesize_family(cfg: RunConfig, parser: argparse.ArgumentParser):
    sf = build_space_form(cfg.c_values[0])
    fam, p = cfg.family, cfg.params
    if fam == "geodesic":
        return sf, *synthesize_frenet_curve(sf, 0.0, 0.0, np.eye(3), cfg.h, cfg.n)
    if fam == "helix":
        if p.get("kappa") is None or p.get("tau") is None:
            parser.error("family 'helix' needs --kappa and --tau")
        return sf, *synthesize_frenet_curve(
            sf, p["kappa"], p["tau"], np.eye(3), cfg.h, cfg.n
        )
    if fam == "legendre-helix":
        if p.get("kappa") is None:
            parser.error("family 'legendre-helix' needs --kappa")
        return sf, *synthesize_legendre_curve(sf, p["kappa"], cfg.h, cfg.n)
    parser.error(f"unknown curve family {fam!r}")


def _cylinder_family(cfg: RunConfig, parser: argparse.ArgumentParser):
    sf = build_space_form(cfg.c_values[0])
    fam, p = cfg.family, cfg.params
    if fam == "circle":
        if p.get("kappa_bar") is None:
            parser.error("family 'circle' needs --kappa-bar")
        return sf, build_cylinder(sf, p["kappa_bar"], cfg.h, cfg.n)
    if fam == "clothoid":
        if p.get("a") is None or p.get("b") is None:
            parser.error("family 'clothoid' needs --a and --b")
        return sf, build_cylinder(
            sf, lambda s: p["a"] * s + p["b"], cfg.h, cfg.n
        )
    if fam == "natural":
        if p.get("lam") is None or p.get("a") is None or p.get("b") is None:
            parser.error("family 'natural' needs --lam, --a and --b")
        kb = solve_natural_equation(p["lam"], p["a"], p["b"], cfg.h, cfg.n)
        return sf, build_cylinder(sf, kb, cfg.h, cfg.n)
    parser.error(f"unknown cylinder family {fam!r}")


def run_export(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    """Geometry export; OBJ for cylinder families, CSV polyline for curves."""
    if cfg.family in _CYLINDER_FAMILIES:
        sf, cyl = _cylinder_family(cfg, parser)
        if cfg.out is None:
            parser.error("export of a cylinder mesh needs --out")
        export_cylinder_obj(sf, cyl, cfg.out, fiber_samples=cfg.fiber_samples)
        return 0
    sf, curve, _ = _synthesize_family(cfg, parser)
    if cfg.out is None:
        export_curve_csv(sf, curve, sys.stdout)
    else:
        export_curve_csv(sf, curve, cfg.out)
    return 0


def _run_synthesize(cfg: RunConfig, parser: argparse.ArgumentParser) -> int:
    sf, curve, fd = _synthesize_family(cfg, parser)
    tau = fd.tau if fd.tau is not None else np.zeros(fd.n)
    if cfg.fmt == "csv":
        lines = [f"# family: {cfg.family}; c={sf.c!r}; h={cfg.h!r}; n={cfg.n}"]
        lines.append("s,u1,u2,u3,kappa,tau")
        for i in range(curve.n):
            row = (curve.s[i], *curve.velocity[i], fd.kappa[i], tau[i])
            lines.append(",".join(repr(float(x)) for x in row))
        _emit("\n".join(lines) + "\n", cfg.out)
    else:
        _emit(
            _json_text(
                {
                    "schema": "1",
                    "command": "synthesize",
                    "family": cfg.family,
                    "c": sf.c,
                    "h": cfg.h,
                    "n": cfg.n,
                    "samples": [
                        {
                            "s": float(curve.s[i]),
                            "u": [float(x) for x in curve.velocity[i]],
                            "kappa": float(fd.kappa[i]),
                            "tau": float(tau[i]),
                        }
                        for i in range(curve.n)
                    ],
                }
            ),
            cfg.out,
        )
    return 0


def _run_sweep(cfg: RunConfig, grid: list[float]) -> int:
    entries = []
    for c in cfg.c_values:
        sf = build_space_form(c)
        for kb in grid:
            cyl = build_cylinder(sf, kb, cfg.h, cfg.n)
            op = cylinder_frame_oracle(cyl, "jacobi")
            hv = cylinder_mean_curvature(cyl)
            res = vanishing_residual(op, hv)
            tol = cfg.tol if cfg.tol is not None else verdict_tol(cfg.h)
            entries.append(
                {
                    "c": c,
                    "kappa_bar": kb,
                    "residual": res,
                    "polyharmonic": bool(res <= tol),
                }
            )
    _emit(
        _json_text(
            {
                "schema": "1",
                "command": "sweep",
                "h": cfg.h,
                "s_max": cfg.s_max,
                "entries": entries,
            }
        ),
        cfg.out,
    )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.h <= 0.0:
        parser.error("--h must be positive")
    if args.s_max <= 0.0:
        parser.error("--s-max must be positive")
    if int(round(args.s_max / args.h)) + 1 < 5:
        parser.error("grid too coarse: fewer than 5 samples")
    tol = _tol_from_env(parser)

    c_values = args.c if isinstance(args.c, list) else [args.c]
    cfg = RunConfig(
        command=args.command,
        c_values=[float(x) for x in c_values],
        h=args.h,
        s_max=args.s_max,
        tol=tol,
        out=args.out,
        fmt=getattr(args, "format", "json"),
        suite=getattr(args, "suite", "all"),
        family=getattr(args, "family", None),
        params={
            "kappa": getattr(args, "kappa", None),
            "tau": getattr(args, "tau", None),
            "kappa_bar": getattr(args, "kappa_bar", None),
            "a": getattr(args, "a", None),
            "b": getattr(args, "b", None),
            "lam": getattr(args, "lam", None),
        },
        fiber_samples=getattr(args, "fiber_samples", 64),
    )

    if cfg.command == "verify":
        code, text = run_verify(cfg)
        _emit(text, cfg.out)
        return code
    if cfg.command == "synthesize":
        return _run_synthesize(cfg, parser)
    if cfg.command == "export":
        return run_export(cfg, parser)
    if cfg.command == "sweep":
        if args.steps < 2:
            parser.error("--steps must be at least 2")
        grid = list(
            np.linspace(args.kappa_bar_min, args.kappa_bar_max, args.steps)
        )
        return _run_sweep(cfg, [float(x) for x in grid])
    parser.error(f"unknown command {cfg.command!r}")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
