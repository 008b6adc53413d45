"""Reconstruction of the unit director field n from the flat connection.

A boundary director n0 fixed at infinity is carried to each point by
parallel transport.  Because the flat family transports radially in
closed form, the field has explicit component formulas; with
n0 = (0, 0, 1) they read

    n1 = -(x2/r) sin f + (x1 x3 / r^2) (1 - cos f)
    n2 = +(x1/r) sin f + (x2 x3 / r^2) (1 - cos f)
    n3 =  cos f + (x3^2 / r^2) (1 - cos f)

and equal ``apply_rotation(n0, spherical_matrix(f, x))``.  Two
constructions are provided: the spherically symmetric one above, and the
hedgehog, which first turns the boundary director into the radial unit
vector with an auxiliary rotation P written in the spherical frame and
then applies the same symmetric matrix; the composition returns exactly
x/r wherever the spherical frame is defined (everywhere off the
nonpositive 3-axis).

The origin classification follows the directional limits of the field:
substituting the declared f(0) into the formulas gives the limit along
each straight ray, and a single limit exists exactly when f(0) is an
integer multiple of pi.  (At odd multiples the limits along different
axes still differ pairwise -- the criterion counts the multiples, not the
spread; see ``classify_origin``.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np

from .ansatz import ConnectionField, R_MIN, eval_flat_connection
from .errors import AxisExclusionError, OriginExclusionError
from .profiles import ProfileFunction
from .so3 import apply_rotation, exp_so3, vector_to_bivector

TAU_CLASS = 1e-9            # closeness of f(0) to k*pi required for "continuous"
AXIS_EXCLUSION_RADIUS = 1e-8  # cylinder radius around the nonpositive 3-axis

N0_DEFAULT = np.array([0.0, 0.0, 1.0])


class Construction(Enum):
    SPHERICALLY_SYMMETRIC = "spher_sym"
    HEDGEHOG = "hedgehog"


def _radius(x: np.ndarray, r_min: float) -> float:
    r = float(np.linalg.norm(x))
    if r < r_min:
        raise OriginExclusionError(f"point at radius {r:.3e} is inside r_min={r_min:.1e}")
    return r


def spherical_matrix(f: ProfileFunction, x: np.ndarray, r_min: float = R_MIN) -> np.ndarray:
    """The spherically symmetric rotation attached to the flat family at x.

    Equals ``exp_so3(-(x/r) f(r))``: the rotation about the radial axis
    by the profile value, oriented so that transport from infinity with
    ``f_at_infinity = 0`` reproduces it.  Covariance:
    ``spherical_matrix(f, R @ x) = R @ spherical_matrix(f, x) @ R.T``.
    """
    x = np.asarray(x, dtype=float)
    r = _radius(x, r_min)
    return exp_so3(-(x / r) * f(r))


def nfield_cartesian(
    f: ProfileFunction,
    x: np.ndarray,
    n0: np.ndarray = N0_DEFAULT,
    r_min: float = R_MIN,
) -> np.ndarray:
    """The director field in Cartesian components for n0 = (0, 0, 1).

    Implements the explicit component formulas; other boundary directors
    go through :func:`director_field`, which composes the rotation matrix
    directly.
    """
    if not np.array_equal(np.asarray(n0, dtype=float), N0_DEFAULT):
        raise ValueError("nfield_cartesian implements the n0=(0,0,1) formulas; "
                         "use director_field for other boundary directors")
    x1, x2, x3 = (float(c) for c in x)
    r = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
    if r < r_min:
        raise OriginExclusionError(f"point at radius {r:.3e} is inside r_min={r_min:.1e}")
    fv = f(r)
    sf = math.sin(fv)
    omc = 1.0 - math.cos(fv)
    r2 = r * r
    return np.array([
        -(x2 / r) * sf + ((x1 * x3) / r2) * omc,
        (x1 / r) * sf + ((x2 * x3) / r2) * omc,
        math.cos(fv) + ((x3 * x3) / r2) * omc,
    ])


def nfield_spherical(f: ProfileFunction, r: float, theta: float, phi: float,
                     r_min: float = R_MIN) -> np.ndarray:
    """The same field in spherical coordinates (r, theta, phi).

    Returns Cartesian components; agrees with :func:`nfield_cartesian`
    at ``x = r (sin th cos ph, sin th sin ph, cos th)``.
    """
    if r < r_min:
        raise OriginExclusionError(f"radius {r:.3e} is inside r_min={r_min:.1e}")
    fv = f(r)
    sf = math.sin(fv)
    omc = 1.0 - math.cos(fv)
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    return np.array([
        -st * sp * sf + st * ct * cp * omc,
        st * cp * sf + st * ct * sp * omc,
        math.cos(fv) + ct * ct * omc,
    ])


def plane_section_x2(f: ProfileFunction, x1: float, x3: float, r_min: float = R_MIN) -> np.ndarray:
    """The field restricted to the plane x2 = 0.

    The out-of-plane component n2 = (x1/r) sin f is generally nonzero, so
    the in-plane projection (n1, n3) is shorter than unity at interior
    points: the basis for the section figures.
    """
    x1 = float(x1)
    x3 = float(x3)
    r = math.sqrt(x1 * x1 + x3 * x3)
    if r < r_min:
        raise OriginExclusionError(f"point at radius {r:.3e} is inside r_min={r_min:.1e}")
    fv = f(r)
    sf = math.sin(fv)
    omc = 1.0 - math.cos(fv)
    r2 = r * r
    return np.array([
        ((x1 * x3) / r2) * omc,
        (x1 / r) * sf,
        math.cos(fv) + ((x3 * x3) / r2) * omc,
    ])


def hedgehog_P(theta: float) -> np.ndarray:
    """The auxiliary rotation in the spherical frame (e_r, e_theta, e_phi).

    Turns the constant boundary director into the radial unit vector; it
    is a block rotation by theta in the (r, theta) plane and is not
    spherically symmetric.
    """
    ct, st = math.cos(theta), math.sin(theta)
    return np.array([
        [ct, st, 0.0],
        [-st, ct, 0.0],
        [0.0, 0.0, 1.0],
    ])


def spherical_frame(x: np.ndarray) -> Tuple[float, float, np.ndarray, np.ndarray, np.ndarray]:
    """Polar angles and the orthonormal frame (e_r, e_theta, e_phi) at x."""
    x = np.asarray(x, dtype=float)
    x1, x2, x3 = x
    rho = math.hypot(x1, x2)
    theta = math.atan2(rho, x3)
    phi = math.atan2(x2, x1)
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    e_r = np.array([st * cp, st * sp, ct])
    e_t = np.array([ct * cp, ct * sp, -st])
    e_p = np.array([-sp, cp, 0.0])
    return theta, phi, e_r, e_t, e_p


def hedgehog_field(
    f: ProfileFunction,
    x: np.ndarray,
    r_min: float = R_MIN,
    axis_radius: float = AXIS_EXCLUSION_RADIUS,
) -> np.ndarray:
    """The hedgehog director at x: compose n0 -> P -> symmetric rotation.

    The basis changes between the spherical frame (where P lives) and
    Cartesian components are made explicitly.  The result equals x/|x|
    for every profile, since the symmetric rotation's axis is radial.
    Undefined on the nonpositive 3-axis, where the spherical frame
    degenerates: points inside a cylinder of radius ``axis_radius``
    around it are rejected.
    """
    x = np.asarray(x, dtype=float)
    r = _radius(x, r_min)
    if x[2] <= 0.0 and math.hypot(x[0], x[1]) < axis_radius:
        raise AxisExclusionError(
            f"hedgehog construction is undefined on the nonpositive 3-axis "
            f"(point within cylinder radius {axis_radius:.1e})"
        )
    theta, _, e_r, e_t, e_p = spherical_frame(x)
    n0_sph = np.array([N0_DEFAULT @ e_r, N0_DEFAULT @ e_t, N0_DEFAULT @ e_p])
    tilted = apply_rotation(n0_sph, hedgehog_P(theta))
    tilted_cart = tilted[0] * e_r + tilted[1] * e_t + tilted[2] * e_p
    return apply_rotation(tilted_cart, spherical_matrix(f, x, r_min))


@dataclass(frozen=True)
class DirectorField:
    """A unit director field evaluator with its construction metadata."""

    evaluator: Callable[[np.ndarray], np.ndarray]
    n0: np.ndarray
    profile: ProfileFunction
    construction: Construction

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.evaluator(x)


def director_field(
    f: ProfileFunction,
    construction: Construction = Construction.SPHERICALLY_SYMMETRIC,
    n0: np.ndarray = N0_DEFAULT,
    r_min: float = R_MIN,
) -> DirectorField:
    """Bundle a field evaluator for the requested construction."""
    n0 = np.asarray(n0, dtype=float)
    if abs(float(n0 @ n0) - 1.0) > 1e-12:
        raise ValueError("boundary director n0 must be a unit vector")
    if construction is Construction.HEDGEHOG:
        if not np.array_equal(n0, N0_DEFAULT):
            raise ValueError("the hedgehog construction fixes n0 = (0, 0, 1)")

        def evaluator(x: np.ndarray) -> np.ndarray:
            return hedgehog_field(f, x, r_min)
    else:

        def evaluator(x: np.ndarray) -> np.ndarray:
            return apply_rotation(n0, spherical_matrix(f, x, r_min))

    return DirectorField(evaluator, n0, f, construction)


@dataclass(frozen=True)
class OriginClassification:
    """Outcome of the origin test: continuous (with the integer k such
    that f(0) = k*pi) or an essential singularity, witnessed by two
    directions whose directional limits differ."""

    continuous: bool
    k: Optional[int]
    witnesses: Tuple[Tuple[np.ndarray, np.ndarray], ...] = ()

    def describe(self) -> str:
        if self.continuous:
            return f"continuous (f(0) = {self.k}*pi)"
        parts = ", ".join(
            f"limit along ({d[0]:g},{d[1]:g},{d[2]:g}) -> "
            f"({l[0]:.6g},{l[1]:.6g},{l[2]:.6g})"
            for d, l in self.witnesses
        )
        return f"essential singularity ({parts})"


def directional_limit(f: ProfileFunction, direction: np.ndarray) -> np.ndarray:
    """Limit of the director along the ray r -> 0+ in ``direction``.

    The field depends on position only through f(r) and ratios of
    homogeneity degree zero, so the limit is the component formula with
    the declared f(0) substituted and x replaced by the unit direction.
    """
    d = np.asarray(direction, dtype=float)
    if abs(float(d @ d) - 1.0) > 1e-9:
        raise ValueError("direction must be a unit vector")
    f0 = f.f_at_zero
    sf = math.sin(f0)
    omc = 1.0 - math.cos(f0)
    return np.array([
        -d[1] * sf + d[0] * d[2] * omc,
        d[0] * sf + d[1] * d[2] * omc,
        math.cos(f0) + d[2] * d[2] * omc,
    ])


def estimate_directional_limit(
    f: ProfileFunction, direction: np.ndarray, r_probe: float = 1e-6
) -> np.ndarray:
    """Brute-force estimate of the directional limit by sampling.

    Samples the field at radii ``r_probe`` and ``2 r_probe`` along the
    direction and extrapolates linearly to r = 0, removing the O(r)
    error a single sample would carry.
    """
    d = np.asarray(direction, dtype=float)
    n1 = nfield_cartesian(f, d * r_probe)
    n2 = nfield_cartesian(f, d * (2.0 * r_probe))
    return 2.0 * n1 - n2


_WITNESS_DIRECTIONS = (np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))


def classify_origin(f: ProfileFunction, tol: float = TAU_CLASS) -> OriginClassification:
    """Classify the origin by the declared f(0).

    A single direction-independent limit exists iff f(0) = k*pi; the
    criterion tests the declared value against the nearest multiple.  In
    the singular case two witness directions with differing limits are
    attached.  Note the limits along distinct axes can differ even when
    the criterion holds with odd k; the classification follows the
    multiple-of-pi rule, the witnesses only document the singular case.
    """
    f0 = f.f_at_zero
    k = round(f0 / math.pi)
    if abs(f0 - k * math.pi) < tol:
        return OriginClassification(True, int(k))
    witnesses = tuple((d, directional_limit(f, d)) for d in _WITNESS_DIRECTIONS)
    return OriginClassification(False, None, witnesses)


def covariant_derivative_n(
    f: ProfileFunction,
    n0: np.ndarray = N0_DEFAULT,
    x: np.ndarray = None,
    h: float = 1e-5,
    conn: Optional[ConnectionField] = None,
    r_min: float = R_MIN,
) -> np.ndarray:
    """Finite-difference covariant derivative of the director field.

    Row mu holds ``d_mu n^i + n^j w_{mu j}^i`` with the derivative taken
    by central differences of step ``h`` and the connection defaulting to
    the flat family of ``f``.  For that pairing the result vanishes up to
    O(h^2): the field is transported by its own connection.
    """
    if x is None:
        raise ValueError("covariant_derivative_n needs an evaluation point x")
    x = np.asarray(x, dtype=float)
    field = director_field(f, Construction.SPHERICALLY_SYMMETRIC, n0, r_min)
    for mu in range(3):
        step = np.zeros(3)
        step[mu] = h
        for p in (x + step, x - step):
            if float(np.linalg.norm(p)) < r_min:
                raise OriginExclusionError(
                    "finite-difference stencil enters the excluded origin ball"
                )
    a = conn(x) if conn is not None else eval_flat_connection(f, x, r_min)
    n = field(x)
    out = np.empty((3, 3))
    for mu in range(3):
        step = np.zeros(3)
        step[mu] = h
        dn = (field(x + step) - field(x - step)) / (2.0 * h)
        out[mu] = dn + n @ vector_to_bivector(a[mu])
    return out
