"""Command-line front end: verification suites, field sampling, transport runs,
and origin classification.

Reports go to stdout as JSON; human-readable summaries go to stderr.
Exit codes: 0 all checks pass, 1 usage or parse error, 2 check failure,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .ansatz import (
    eval_curvature_K_form,
    eval_flat_connection,
    finite_difference_curvature,
    flat_connection_field,
    ode_residuals,
    flat_solution,
)
from .errors import IntegrationError, ProfileValidationError
from .nfield import Construction, classify_origin, covariant_derivative_n, nfield_cartesian
from .profiles import (
    ProfileFunction,
    exp_decay,
    from_expression,
    gauss,
    make_profile,
    rational,
    zero_profile,
)
from .sampling import SampleGridSpec, build_sample_set
from .transport import Curve, integrate_transport, radial_transport_closed_form, transport_to_infinity

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK = 2
EXIT_IO = 3

PROFILE_KINDS = ("zero", "expdecay", "gauss", "rational", "custom")


@dataclass(frozen=True)
class ProfileSpec:
    """Parsed profile selection from the command line."""

    kind: str
    amplitude: float = math.pi / 2.0
    rate: float = 1.0
    expr: Optional[str] = None

    def to_profile(self) -> ProfileFunction:
        if self.kind == "zero":
            return zero_profile()
        if self.kind in ("expdecay", "gauss", "rational") and self.rate <= 0.0:
            raise ProfileValidationError("--rate must be positive")
        if self.kind == "expdecay":
            return exp_decay(self.amplitude, self.rate)
        if self.kind == "gauss":
            return gauss(self.amplitude, self.rate)
        if self.kind == "rational":
            # rate is the inverse length scale: f = amplitude / (1 + rate*r)
            return rational(self.amplitude, 1.0 / self.rate)
        if self.kind == "custom":
            if not self.expr:
                raise ProfileValidationError("--profile custom requires --expr")
            return from_expression(self.expr)
        raise ProfileValidationError(f"unknown profile kind {self.kind!r}")


def _parse_constant(text: str) -> float:
    """Parse a numeric flag that may be a plain float or use pi, e.g. 'pi/2'."""
    try:
        return float(text)
    except ValueError:
        pass
    import sympy

    try:
        value = sympy.parse_expr(text.replace("^", "**"), local_dict={"pi": sympy.pi})
        return float(value)
    except Exception as exc:
        raise argparse.ArgumentTypeError(f"cannot parse constant {text!r}: {exc}") from exc


def _parse_vec3(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected 'x,y,z', got {text!r}")
    return np.array([float(p) for p in parts])


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; the contract wants 1
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(prog="disclination",
                     description="Flat-connection point-defect toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_profile_flags(p):
        p.add_argument("--profile", choices=PROFILE_KINDS, default="expdecay")
        p.add_argument("--amplitude", type=_parse_constant, default=math.pi / 2.0,
                       help="profile amplitude; accepts expressions like 'pi/2'")
        p.add_argument("--rate", type=_parse_constant, default=1.0,
                       help="decay rate (inverse length scale for 'rational')")
        p.add_argument("--expr", default=None,
                       help="expression in r for --profile custom, e.g. 'pi/2*exp(-r)'")

    p_verify = sub.add_parser("verify", help="run the numerical check suite")
    add_profile_flags(p_verify)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--npoints", type=int, default=40)
    p_verify.add_argument("--corrupt-derivative", type=float, default=1.0,
                          help="scale the analytic derivative (negative-control aid)")

    p_sample = sub.add_parser("sample", help="sample the director field onto a grid")
    add_profile_flags(p_sample)
    p_sample.add_argument("--section", choices=("x2zero", "x3zero", "volume"), default="x2zero")
    p_sample.add_argument("--extent", type=float, default=3.0)
    p_sample.add_argument("--resolution", type=int, default=21)
    p_sample.add_argument("--exclusion", type=float, default=0.05)
    p_sample.add_argument("--construction", choices=("spher_sym", "hedgehog"), default="spher_sym")
    p_sample.add_argument("--out", required=True)
    p_sample.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sample.add_argument("--seed", type=int, default=0)

    p_transport = sub.add_parser("transport", help="transport a frame along a path")
    add_profile_flags(p_transport)
    p_transport.add_argument("--from", dest="start", type=_parse_vec3, default=None,
                             help="ray start point 'x,y,z'")
    p_transport.add_argument("--path", choices=("ray", "polyline"), default="ray")
    p_transport.add_argument("--vertices", default=None,
                             help="polyline vertices 'x,y,z;x,y,z;...'")
    p_transport.add_argument("--out", default=None, help="also write the JSON report here")
    p_transport.add_argument("--seed", type=int, default=0)

    p_classify = sub.add_parser("classify", help="classify the defect at the origin")
    add_profile_flags(p_classify)

    return parser


# ---------------------------------------------------------------------------
# verify


def _run_checks(profile: ProfileFunction, seed: int, npoints: int) -> List[dict]:
    rng = np.random.default_rng(seed)
    checks = []

    def record(name: str, max_residual: float, tolerance: float):
        checks.append({
            "check_name": name,
            "max_residual": float(max_residual),
            "tolerance": tolerance,
            "pass": bool(max_residual <= tolerance),
        })

    def random_points(count):
        radii = rng.uniform(0.1, 50.0, size=count)
        dirs = rng.normal(size=(count, 3))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        return dirs * radii[:, None]

    # Profile self-consistency: analytic derivative vs central differences.
    worst = 0.0
    for r in (0.2, 0.7, 1.3, 2.9, 7.7, 19.0):
        h = 1e-5 * max(1.0, r)
        fd = (profile(r + h) - profile(r - h)) / (2.0 * h)
        worst = max(worst, abs(fd - profile.deriv(r)) / max(1.0, abs(profile.deriv(r))))
    record("profile_derivative_consistency", worst, 1e-6)

    K, V, U = flat_solution(profile)

    pts = random_points(npoints)
    worst = max(eval_curvature_K_form(K, V, U, x).max_abs() for x in pts)
    record("flatness_analytic", worst, 1e-10)

    conn = flat_connection_field(profile)
    worst = max(
        finite_difference_curvature(conn, x, h=1e-5).max_abs()
        for x in pts[: min(npoints, 25)]
    )
    record("flatness_fd", worst, 1e-6)

    worst = max(
        abs(v) for r in np.geomspace(0.1, 50.0, 32) for v in ode_residuals(K, V, U, float(r))
    )
    record("ode_residuals", worst, 1e-12)

    worst = max(
        abs(float(np.linalg.norm(nfield_cartesian(profile, x))) - 1.0) for x in pts
    )
    record("unit_norm", worst, 1e-12)

    worst = max(
        float(np.abs(covariant_derivative_n(profile, x=x, h=1e-5)).max())
        for x in pts[: min(npoints, 20)]
    )
    record("covariant_derivative", worst, 1e-6)

    worst = 0.0
    for x in ([1.0, 1.0, 1.0], [0.3, -0.8, 0.5], [-2.0, 0.4, 1.1]):
        res = transport_to_infinity(profile, np.array(x))
        closed = radial_transport_closed_form(profile, np.array(x))
        worst = max(worst, float(np.linalg.norm(res.S_inv - closed)))
    record("transport_oracle", worst, 1e-8)

    return checks


def cmd_verify(args) -> int:
    try:
        profile = ProfileSpec(args.profile, args.amplitude, args.rate, args.expr).to_profile()
    except ProfileValidationError as exc:
        print(f"profile error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.corrupt_derivative != 1.0:
        scale = args.corrupt_derivative
        base = profile
        profile = make_profile(
            base.evaluate,
            lambda r: scale * base.derivative(r),
            base.f_at_zero,
            base.f_at_infinity,
            label=f"{base.label} [derivative x{scale:g}]",
            validate=False,
        )
    checks = _run_checks(profile, args.seed, args.npoints)
    all_pass = all(c["pass"] for c in checks)
    report = {
        "profile": profile.label,
        "seed": args.seed,
        "npoints": args.npoints,
        "checks": checks,
        "all_pass": all_pass,
    }
    print(json.dumps(report, indent=2))
    for c in checks:
        status = "PASS" if c["pass"] else "FAIL"
        print(f"{status}  {c['check_name']}: max residual {c['max_residual']:.3e} "
              f"(tolerance {c['tolerance']:.1e})", file=sys.stderr)
    return EXIT_OK if all_pass else EXIT_CHECK


# ---------------------------------------------------------------------------
# sample


def cmd_sample(args) -> int:
    try:
        profile = ProfileSpec(args.profile, args.amplitude, args.rate, args.expr).to_profile()
        grid = SampleGridSpec(args.section, args.extent, args.resolution, args.exclusion)
    except (ProfileValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    construction = Construction(args.construction)
    try:
        samples = build_sample_set(profile, grid, construction)
    except ValueError as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return EXIT_CHECK
    try:
        if args.format == "csv":
            samples.write_csv(args.out)
        else:
            samples.write_json(args.out)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(samples.samples)} records to {args.out}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# transport


def cmd_transport(args) -> int:
    try:
        profile = ProfileSpec(args.profile, args.amplitude, args.rate, args.expr).to_profile()
    except ProfileValidationError as exc:
        print(f"profile error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = {"profile": profile.label, "path": args.path}
    try:
        if args.path == "ray":
            if args.start is None:
                print("error: --path ray requires --from", file=sys.stderr)
                return EXIT_USAGE
            start = args.start
            result = transport_to_infinity(profile, start)
            closed = radial_transport_closed_form(profile, start)
            diff = float(np.linalg.norm(result.S_inv - closed))
            report.update({
                "from": list(map(float, start)),
                "integrator": _matrix_report(result),
                "closed_form": {"matrix": closed.tolist()},
                "frobenius_difference": diff,
            })
        else:
            if not args.vertices:
                print("error: --path polyline requires --vertices", file=sys.stderr)
                return EXIT_USAGE
            vertices = [_parse_vec3(part) for part in args.vertices.split(";")]
            curve = Curve.polyline(vertices)
            result = integrate_transport(flat_connection_field(profile), curve)
            report.update({
                "vertices": [list(map(float, v)) for v in vertices],
                "integrator": _matrix_report(result),
            })
    except IntegrationError as exc:
        report["error"] = str(exc)
        report["error_estimate"] = exc.error_estimate
        print(json.dumps(report, indent=2))
        print(f"integration failure: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = json.dumps(report, indent=2)
    print(text)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    if "frobenius_difference" in report:
        print(f"integrator vs closed form: {report['frobenius_difference']:.3e}",
              file=sys.stderr)
    return EXIT_OK


def _matrix_report(result) -> dict:
    return {
        "matrix": result.S_inv.tolist(),
        "steps": result.steps,
        "error_estimate": result.error_estimate,
        "max_orth_drift": result.max_orth_drift,
    }


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args) -> int:
    try:
        profile = ProfileSpec(args.profile, args.amplitude, args.rate, args.expr).to_profile()
    except ProfileValidationError as exc:
        print(f"profile error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    result = classify_origin(profile)
    if result.continuous:
        report = {"profile": profile.label, "classification": "continuous", "k": result.k}
    else:
        report = {
            "profile": profile.label,
            "classification": "essential_singularity",
            "witnesses": [
                {"direction": list(map(float, d)), "limit": list(map(float, l))}
                for d, l in result.witnesses
            ],
        }
    print(json.dumps(report, indent=2))
    print(result.describe(), file=sys.stderr)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "verify": cmd_verify,
        "sample": cmd_sample,
        "transport": cmd_transport,
        "classify": cmd_classify,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
