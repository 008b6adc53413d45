"""Spherically symmetric SO(3) connections, their curvature, and the flat family.

The most general spherically symmetric connection is parameterized by
three radial functions ``W``, ``V``, ``U``:

    A_mu^i = eps_{mu i j} (x_j / r) W(r) + delta_mu^i V(r)
             + (x_mu x_i / r^2) U(r).

Vanishing curvature reduces, after substituting ``W = (K - 1)/r``, to
three coupled ODEs whose general solution is a one-function family:

    K = cos f,    V = +- sin(f)/r,    U = +- (r f' - sin f)/r,

with both signs taken together and ``f(r)`` free.  This requires
``|K| <= 1``, which the ``K = cos f`` parameterization realizes.  The
module evaluates the ansatz, its curvature in both the (W, V, U) and the
(K, V, U) forms, the equilibrium residuals, the flat family itself, a
finite-difference curvature oracle that is independent of the printed
curvature formulas, and the Cartan torsion for the identity vielbein.

Everything is singular at the origin in general, so all point evaluations
enforce an exclusion radius ``r_min`` (default ``R_MIN``).  Under the full
orthogonal group (reflections included) ``W`` transforms as a scalar
while ``V`` and ``U`` are pseudoscalars; nothing here depends on that
parity bookkeeping and it is not modeled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np

from .errors import OriginExclusionError
from .profiles import ProfileFunction, RadialFunction
from .so3 import EPSILON, bivector_to_vector, vector_to_bivector

R_MIN = 1e-8  # default origin-exclusion radius for point evaluations

# Ordered index pairs (mu, nu) carried by antisymmetric two-index tensors.
PAIR_INDICES: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (1, 2))

Profile = Union[ProfileFunction, RadialFunction]
ConnectionField = Callable[[np.ndarray], np.ndarray]


class SignBranch(enum.Enum):
    """Simultaneous sign choice for V and U in the flat family."""

    UPPER = 1.0
    LOWER = -1.0


@dataclass(frozen=True)
class PairTensor:
    """Components T_{mu nu}^i stored for ordered pairs (0,1), (0,2), (1,2).

    Antisymmetry in (mu, nu) is structural: only ordered pairs are stored
    and :meth:`component` mirrors the sign for swapped indices.
    """

    values: np.ndarray  # shape (3, 3): row = ordered pair, column = i

    def component(self, mu: int, nu: int, i: int) -> float:
        if mu == nu:
            return 0.0
        sign = 1.0
        if mu > nu:
            mu, nu, sign = nu, mu, -1.0
        return sign * float(self.values[PAIR_INDICES.index((mu, nu)), i])

    def max_abs(self) -> float:
        return float(np.abs(self.values).max())


class CurvatureAtPoint(PairTensor):
    """Curvature components F_{mu nu}^i at one point."""


class TorsionAtPoint(PairTensor):
    """Torsion components T_{mu nu}^i at one point."""


@dataclass(frozen=True)
class GeneralAnsatz:
    """The three radial functions (W, V, U) of the symmetric ansatz."""

    W: RadialFunction
    V: RadialFunction
    U: RadialFunction


def _radius(x: np.ndarray, r_min: float) -> float:
    r = float(np.linalg.norm(x))
    if r < r_min:
        raise OriginExclusionError(f"point at radius {r:.3e} is inside the excluded ball r_min={r_min:.1e}")
    return r


def eval_general_connection(a: GeneralAnsatz, x: np.ndarray, r_min: float = R_MIN) -> np.ndarray:
    """Evaluate the symmetric ansatz; rows are mu, columns are i."""
    x = np.asarray(x, dtype=float)
    r = _radius(x, r_min)
    w, v, u = a.W(r), a.V(r), a.U(r)
    # eps_{mu i j} x_j coincides with the dual matrix of x (cyclic indices).
    out = vector_to_bivector(x) * (w / r)
    out += np.outer(x, x) * (u / (r * r))
    out[0, 0] += v
    out[1, 1] += v
    out[2, 2] += v
    return out


def _pair_tensor(x: np.ndarray, r: float, c1: float, c2: float, c3: float) -> CurvatureAtPoint:
    """Assemble the three tensor structures common to both curvature forms."""
    vals = np.empty((3, 3))
    r3 = r * r * r
    r2 = r * r
    for row, (mu, nu) in enumerate(PAIR_INDICES):
        exx = float(EPSILON[mu, nu, :] @ x)  # eps_{mu nu j} x_j
        for i in range(3):
            vals[row, i] = (
                EPSILON[mu, nu, i] * c1
                + exx * x[i] * c2 / r3
                + (x[mu] * (1.0 if nu == i else 0.0) - x[nu] * (1.0 if mu == i else 0.0)) * c3 / r2
            )
    return CurvatureAtPoint(vals)


def eval_general_curvature(a: GeneralAnsatz, x: np.ndarray, r_min: float = R_MIN) -> CurvatureAtPoint:
    """Curvature of the (W, V, U) ansatz from its closed-form expansion."""
    x = np.asarray(x, dtype=float)
    r = _radius(x, r_min)
    w, v, u = a.W(r), a.V(r), a.U(r)
    wp, vp = a.W.deriv(r), a.V.deriv(r)
    c1 = wp + w / r + v * (v + u)
    c2 = w - r * wp + r * w * w - r * v * u
    c3 = r * vp - u - r * w * (v + u)
    return _pair_tensor(x, r, c1, c2, c3)


def eval_curvature_K_form(
    K: Profile, V: Profile, U: Profile, x: np.ndarray, r_min: float = R_MIN
) -> CurvatureAtPoint:
    """Curvature in the (K, V, U) variables, where W = (K - 1)/r."""
    x = np.asarray(x, dtype=float)
    r = _radius(x, r_min)
    k, v, u = K(r), V(r), U(r)
    kp, vp = K.deriv(r), V.deriv(r)
    c1 = (kp + r * v * (v + u)) / r
    c2 = -kp + (k * k - 1.0) / r - r * v * u
    c3 = r * vp - u - (k - 1.0) * (v + u)
    return _pair_tensor(x, r, c1, c2, c3)


def ode_residuals(K: Profile, V: Profile, U: Profile, r: float) -> Tuple[float, float, float]:
    """Residuals of the three equilibrium equations at radius r.

    All three vanish identically on the flat family; the first two summed
    give ``r V^2 + (K^2 - 1)/r``, the identity that forces ``|K| <= 1``.
    """
    if r <= 0.0:
        raise ValueError("ode_residuals requires r > 0")
    k, v, u = K(r), V(r), U(r)
    kp, vp = K.deriv(r), V.deriv(r)
    rho1 = kp + r * v * (v + u)
    rho2 = -kp + (k * k - 1.0) / r - r * v * u
    rho3 = r * vp - u - (k - 1.0) * (v + u)
    return (rho1, rho2, rho3)


def flat_solution(f: Profile, branch: SignBranch = SignBranch.UPPER) -> Tuple[RadialFunction, RadialFunction, RadialFunction]:
    """The flat-family profiles (K, V, U) built from f with one sign choice.

    K and V carry analytic derivatives composed from f and f'; U would
    need f'' for an analytic derivative, so it falls back to a finite
    difference (its derivative is never needed by the curvature or the
    residuals, where U enters undifferentiated).
    """
    s = branch.value

    def k_eval(r: float) -> float:
        return math.cos(f(r))

    def k_deriv(r: float) -> float:
        return -math.sin(f(r)) * f.deriv(r)

    def v_eval(r: float) -> float:
        return s * math.sin(f(r)) / r

    def v_deriv(r: float) -> float:
        return s * (r * f.deriv(r) * math.cos(f(r)) - math.sin(f(r))) / (r * r)

    def u_eval(r: float) -> float:
        return s * (r * f.deriv(r) - math.sin(f(r))) / r

    return (
        RadialFunction(k_eval, k_deriv, "K"),
        RadialFunction(v_eval, v_deriv, "V"),
        RadialFunction(u_eval, None, "U"),
    )


def eval_flat_connection(f: Profile, x: np.ndarray, r_min: float = R_MIN) -> np.ndarray:
    """The flat connection of the family (upper sign branch), rows mu, columns i.

    Its radial contraction obeys ``(x^mu / r) A_mu^i = x^i f'(r) / r``,
    which is what makes transport along rays integrable in closed form.
    """
    x = np.asarray(x, dtype=float)
    r = _radius(x, r_min)
    fv = f(r)
    fp = f.deriv(r)
    sf = math.sin(fv)
    out = vector_to_bivector(x) * ((math.cos(fv) - 1.0) / (r * r))
    out += np.outer(x, x) * ((r * fp - sf) / (r * r * r))
    diag = sf / r
    out[0, 0] += diag
    out[1, 1] += diag
    out[2, 2] += diag
    return out


def flat_connection_field(f: Profile, r_min: float = R_MIN) -> ConnectionField:
    """The flat connection as a point evaluator, for transport and stencils."""

    def conn(x: np.ndarray) -> np.ndarray:
        return eval_flat_connection(f, x, r_min)

    return conn


def general_connection_field(a: GeneralAnsatz, r_min: float = R_MIN) -> ConnectionField:
    def conn(x: np.ndarray) -> np.ndarray:
        return eval_general_connection(a, x, r_min)

    return conn


def finite_difference_curvature(
    conn: ConnectionField, x: np.ndarray, h: float = 1e-5, r_min: float = R_MIN
) -> CurvatureAtPoint:
    """Curvature from the defining derivative-plus-commutator combination.

    Partial derivatives are central differences of step ``h`` on the
    connection field; the commutator is exact.  The combination is formed
    in bivector (matrix) form and dualized back, so this path shares no
    algebra with the closed-form curvature expansions and serves as an
    independent oracle with O(h^2) truncation error.
    """
    x = np.asarray(x, dtype=float)
    _radius(x, r_min)  # the center itself must be admissible
    stencil_rows = []
    for mu in range(3):
        step = np.zeros(3)
        step[mu] = h
        for p in (x + step, x - step):
            if float(np.linalg.norm(p)) < r_min:
                raise OriginExclusionError(
                    f"finite-difference stencil around radius {np.linalg.norm(x):.3e} "
                    f"enters the excluded ball r_min={r_min:.1e}"
                )
        stencil_rows.append((conn(x + step), conn(x - step)))
    a0 = conn(x)
    biv = [vector_to_bivector(a0[mu]) for mu in range(3)]
    d = [(plus - minus) / (2.0 * h) for plus, minus in stencil_rows]  # d[mu][nu, i]
    vals = np.empty((3, 3))
    for row, (mu, nu) in enumerate(PAIR_INDICES):
        fmat = (
            vector_to_bivector(d[mu][nu])
            - vector_to_bivector(d[nu][mu])
            - (biv[mu] @ biv[nu] - biv[nu] @ biv[mu])
        )
        vals[row] = bivector_to_vector(fmat, tol=np.inf)
    return CurvatureAtPoint(vals)


def torsion_flat_vielbein(conn: ConnectionField, x: np.ndarray, r_min: float = R_MIN) -> TorsionAtPoint:
    """Cartan torsion for the identity vielbein: T_{mu nu}^i = w_{mu nu}^i - w_{nu mu}^i.

    The derivative terms of the torsion drop for a constant vielbein, so
    only the connection evaluated at ``x`` (dualized to its two-index
    form ``w_{mu j}^i``) enters.  Flat connections with a nontrivial
    profile still carry torsion.
    """
    x = np.asarray(x, dtype=float)
    _radius(x, r_min)
    a0 = conn(x)
    biv = [vector_to_bivector(a0[mu]) for mu in range(3)]
    vals = np.empty((3, 3))
    for row, (mu, nu) in enumerate(PAIR_INDICES):
        vals[row] = biv[mu][nu, :] - biv[nu][mu, :]
    return TorsionAtPoint(vals)
