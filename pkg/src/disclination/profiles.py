"""Radial profile functions with analytic derivatives and declared limits.

A profile ``f(r)`` is the single degree of freedom of the flat-connection
family: everything else in the package is built from pointwise values of
``f`` and ``f'``, plus the declared limits ``f(0)`` and ``f(infinity)``.
Limits are declared, not computed: the closed-form transport and the
origin classification need them exactly, so construction refuses profiles
whose tail does not actually approach the declared value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ProfileValidationError

R_FAR = 50.0          # radius at which tails are considered "at infinity"
LIMIT_TOL = 1e-6      # required closeness of f(R_FAR) to the declared limit
TAU_FD = 1e-6         # tolerance for derivative-vs-values consistency
_CHECK_RADII = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, R_FAR)


def _fd_step(r: float) -> float:
    return 1e-6 * max(1.0, r)


@dataclass(frozen=True)
class RadialFunction:
    """A scalar function of radius with an optional analytic derivative.

    When no derivative is supplied, ``deriv`` falls back to a central
    difference with step ``1e-6 * max(1, r)`` and the function reports
    ``derivative_is_exact = False`` so callers can tell approximate
    results apart from exact ones.
    """

    evaluate: Callable[[float], float]
    derivative: Optional[Callable[[float], float]] = None
    label: str = ""

    def __call__(self, r: float) -> float:
        return float(self.evaluate(r))

    def deriv(self, r: float) -> float:
        if self.derivative is not None:
            return float(self.derivative(r))
        h = _fd_step(r)
        return (self(r + h) - self(r - h)) / (2.0 * h)

    @property
    def derivative_is_exact(self) -> bool:
        return self.derivative is not None


@dataclass(frozen=True)
class ProfileFunction:
    """A radial profile with analytic derivative and declared limits."""

    evaluate: Callable[[float], float]
    derivative: Callable[[float], float]
    f_at_zero: float
    f_at_infinity: float
    label: str = ""

    def __call__(self, r: float) -> float:
        return float(self.evaluate(r))

    def deriv(self, r: float) -> float:
        return float(self.derivative(r))

    @property
    def derivative_is_exact(self) -> bool:
        return True


def _check_consistency(p: ProfileFunction) -> None:
    for r in _CHECK_RADII:
        value = p(r)
        slope = p.deriv(r)
        if not (math.isfinite(value) and math.isfinite(slope)):
            raise ProfileValidationError(
                f"profile {p.label!r}: non-finite value or derivative at r={r}"
            )
        h = 1e-5 * max(1.0, r)
        fd = (p(r + h) - p(r - h)) / (2.0 * h)
        if abs(fd - slope) > TAU_FD * max(1.0, abs(slope)):
            raise ProfileValidationError(
                f"profile {p.label!r}: derivative inconsistent with values at "
                f"r={r} (analytic {slope:.6e}, central difference {fd:.6e})"
            )
    near = p(1e-7)
    if abs(near - p.f_at_zero) > 1e-5:
        raise ProfileValidationError(
            f"profile {p.label!r}: f(1e-7)={near:.6e} far from declared "
            f"f(0)={p.f_at_zero:.6e}"
        )


def _check_tail(p: ProfileFunction) -> None:
    if abs(p(R_FAR) - p.f_at_infinity) < LIMIT_TOL:
        return
    # Slow-decay fallback: the deviation from the declared limit must
    # shrink monotonically along a geometric radius ladder and end below
    # LIMIT_TOL.  Catches wrong declarations without refusing 1/r tails.
    deviations = [abs(p(R_FAR * 10.0**k) - p.f_at_infinity) for k in range(6)]
    decreasing = all(b < a for a, b in zip(deviations, deviations[1:]))
    if not (decreasing and deviations[-1] < LIMIT_TOL):
        raise ProfileValidationError(
            f"profile {p.label!r}: values do not approach the declared "
            f"f(infinity)={p.f_at_infinity:.6e} "
            f"(|f({R_FAR:g}) - limit| = {abs(p(R_FAR) - p.f_at_infinity):.3e})"
        )


def make_profile(
    evaluate: Callable[[float], float],
    derivative: Callable[[float], float],
    f_at_zero: float,
    f_at_infinity: float,
    label: str = "",
    validate: bool = True,
) -> ProfileFunction:
    """Build a profile from callables, running the consistency checks.

    ``validate=False`` skips the checks; it exists for negative-control
    tests that need deliberately broken profiles.
    """
    p = ProfileFunction(evaluate, derivative, float(f_at_zero), float(f_at_infinity), label)
    if validate:
        _check_consistency(p)
        _check_tail(p)
    return p


def zero_profile() -> ProfileFunction:
    """The trivial profile f == 0 (no defect, vanishing connection)."""
    return ProfileFunction(lambda r: 0.0, lambda r: 0.0, 0.0, 0.0, "zero")


def exp_decay(amplitude: float, rate: float = 1.0) -> ProfileFunction:
    """f(r) = amplitude * exp(-rate * r)."""
    a, b = float(amplitude), float(rate)
    return make_profile(
        lambda r: a * math.exp(-b * r),
        lambda r: -a * b * math.exp(-b * r),
        a,
        0.0,
        f"expdecay(amplitude={a:g}, rate={b:g})",
    )


def gauss(amplitude: float, rate: float = 1.0) -> ProfileFunction:
    """f(r) = amplitude * exp(-rate * r^2)."""
    a, b = float(amplitude), float(rate)
    return make_profile(
        lambda r: a * math.exp(-b * r * r),
        lambda r: -2.0 * a * b * r * math.exp(-b * r * r),
        a,
        0.0,
        f"gauss(amplitude={a:g}, rate={b:g})",
    )


def rational(amplitude: float, scale: float = 1.0) -> ProfileFunction:
    """f(r) = amplitude / (1 + r/scale); a slow 1/r tail."""
    a, s = float(amplitude), float(scale)
    return make_profile(
        lambda r: a / (1.0 + r / s),
        lambda r: -(a / s) / (1.0 + r / s) ** 2,
        a,
        0.0,
        f"rational(amplitude={a:g}, scale={s:g})",
    )


_EXPR_ALLOWED = "+-*/^ ().0123456789"


def from_expression(text: str, label: str = "") -> ProfileFunction:
    """Build a profile from an expression in ``r``.

    Supported: ``+ - * / ^``, ``exp``, ``sin``, ``cos``, the constant
    ``pi`` and the variable ``r``.  The derivative is obtained
    symbolically, and the limits at 0 and infinity are computed
    symbolically as well; both must be finite.
    """
    import sympy

    r = sympy.Symbol("r", positive=True)
    local = {"r": r, "pi": sympy.pi, "exp": sympy.exp, "sin": sympy.sin, "cos": sympy.cos}
    cleaned = text.replace("^", "**")
    try:
        expr = sympy.parse_expr(cleaned, local_dict=local, evaluate=True)
    except Exception as exc:
        raise ProfileValidationError(f"cannot parse profile expression {text!r}: {exc}") from exc
    extra = expr.free_symbols - {r}
    if extra:
        raise ProfileValidationError(
            f"profile expression {text!r} uses unknown symbols: {sorted(map(str, extra))}"
        )
    dexpr = sympy.diff(expr, r)
    at_zero = sympy.limit(expr, r, 0, "+")
    at_inf = sympy.limit(expr, r, sympy.oo)
    if not (at_zero.is_finite and at_inf.is_finite):
        raise ProfileValidationError(
            f"profile expression {text!r} has non-finite limits: "
            f"f(0)={at_zero}, f(inf)={at_inf}"
        )
    fn = sympy.lambdify(r, expr, modules="math")
    dfn = sympy.lambdify(r, dexpr, modules="math")
    return make_profile(
        lambda rr: float(fn(rr)),
        lambda rr: float(dfn(rr)),
        float(at_zero),
        float(at_inf),
        label or f"expr({text})",
    )
