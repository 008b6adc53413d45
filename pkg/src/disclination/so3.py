"""Exact 3x3 linear algebra for the rotation group SO(3) and its Lie algebra.

Index conventions for the whole package are fixed here, once:

* every two-index object is stored with its FIRST index as the row, so
  ``S_i^j`` lands at ``S[i, j]`` and a connection row ``A_mu^i`` at
  ``A[mu, i]``;
* ``EPSILON[i, j, k]`` is the totally antisymmetric symbol with
  ``EPSILON[0, 1, 2] = +1``;
* the metric is Euclidean, so upper and lower indices coincide and no
  metric bookkeeping appears anywhere;
* :func:`exp_so3` is exactly the matrix exponential of
  ``vector_to_bivector(f)``, i.e. of the algebra element ``f^k eps_{kij}``;
* :func:`apply_rotation` contracts the source index of the vector with the
  ROW index of the matrix: ``n_i = sum_j n0_j S[j, i]``.

All functions are pure and operate on plain ``numpy`` arrays.
"""

from __future__ import annotations

import numpy as np

THETA_SMALL = 1e-4  # series branch threshold for the exponential map, radians
TAU_ORTH = 1e-9     # orthogonality / determinant tolerance
TAU_ANTISYM = 1e-9  # antisymmetry tolerance for bivector input

IDENTITY = np.eye(3)


def _build_epsilon() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    return eps


EPSILON = _build_epsilon()
EPSILON.setflags(write=False)


def vector_to_bivector(v: np.ndarray) -> np.ndarray:
    """Dualize a 3-vector to the antisymmetric matrix ``b[i, j] = v_k eps_{kij}``."""
    v0, v1, v2 = (float(c) for c in v)
    return np.array([
        [0.0, v2, -v1],
        [-v2, 0.0, v0],
        [v1, -v0, 0.0],
    ])


def bivector_to_vector(b: np.ndarray, tol: float = TAU_ANTISYM) -> np.ndarray:
    """Invert :func:`vector_to_bivector`: ``v_k = 0.5 * b[i, j] eps_{kij}``.

    Rejects input whose symmetric part exceeds ``tol`` in Frobenius norm;
    a symmetric contribution signals a bug in the caller.
    """
    b = np.asarray(b, dtype=float)
    sym = 0.5 * (b + b.T)
    if np.linalg.norm(sym) > tol:
        raise ValueError(
            f"matrix is not antisymmetric: |sym part| = {np.linalg.norm(sym):.3e} > {tol:.1e}"
        )
    return 0.5 * np.array([b[1, 2] - b[2, 1], b[2, 0] - b[0, 2], b[0, 1] - b[1, 0]])


def _rodrigues(f: np.ndarray, angle: float, series: bool | None = None) -> np.ndarray:
    """Axis-angle rotation ``I cos(angle) + B sin(angle)/angle + f f^T (1-cos)/angle^2``.

    ``angle`` may carry either sign as long as ``|angle| = |f|``; the
    formula is invariant under ``(f, angle) -> (-f, -angle)``.  ``series``
    forces the small-angle branch on or off (used by the seam tests);
    by default angles below ``THETA_SMALL`` take the series.
    """
    f = np.asarray(f, dtype=float)
    a = float(angle)
    if series is None:
        series = abs(a) < THETA_SMALL
    if series:
        sinc = 1.0 - a * a / 6.0
        versine = 0.5 - a * a / 24.0
    elif a == 0.0:
        sinc, versine = 1.0, 0.5
    else:
        sinc = np.sin(a) / a
        half = np.sin(0.5 * a) / (0.5 * a)
        versine = 0.5 * half * half  # (1 - cos a)/a^2 without cancellation
    return np.cos(a) * IDENTITY + sinc * vector_to_bivector(f) + versine * np.outer(f, f)


def exp_so3(f: np.ndarray) -> np.ndarray:
    """Exponential map: the rotation ``expm(vector_to_bivector(f))``.

    The rotation angle is ``|f|`` and the axis is ``f/|f|``; the zero
    vector maps to the identity.
    """
    f = np.asarray(f, dtype=float)
    return _rodrigues(f, float(np.linalg.norm(f)))


def is_rotation(S: np.ndarray, tol: float = TAU_ORTH) -> bool:
    S = np.asarray(S, dtype=float)
    if S.shape != (3, 3):
        return False
    return (
        np.abs(S.T @ S - IDENTITY).max() <= tol
        and abs(np.linalg.det(S) - 1.0) <= tol
    )


def check_rotation(S: np.ndarray, tol: float = TAU_ORTH) -> None:
    """Raise ``ValueError`` unless ``S`` is orthogonal with determinant +1."""
    S = np.asarray(S, dtype=float)
    if S.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {S.shape}")
    drift = np.abs(S.T @ S - IDENTITY).max()
    det = np.linalg.det(S)
    if drift > tol or abs(det - 1.0) > tol:
        raise ValueError(
            f"matrix is not a rotation: |S^T S - I| = {drift:.3e}, det = {det:.12f}"
        )


def log_so3(S: np.ndarray, tol: float = TAU_ORTH) -> np.ndarray:
    """Principal-branch inverse of :func:`exp_so3`, with angle in [0, pi].

    Exists for round-trip testing; near angle pi the axis is recovered
    from the symmetric part, and its overall sign (immaterial at exactly
    pi) is aligned with the antisymmetric part when that is nonzero.
    """
    check_rotation(S, tol)
    S = np.asarray(S, dtype=float)
    c = min(1.0, max(-1.0, 0.5 * (np.trace(S) - 1.0)))
    angle = float(np.arccos(c))
    v = bivector_to_vector(0.5 * (S - S.T), tol=np.inf)  # = f sin(F)/F
    if angle < THETA_SMALL:
        return v * (1.0 + angle * angle / 6.0)
    if angle < np.pi - THETA_SMALL:
        return v * (angle / np.sin(angle))
    # Near pi: (S + S^T)/2 - c*I = (1 - c) a a^T with a the unit axis.
    m = 0.5 * (S + S.T) - c * IDENTITY
    d = np.clip(np.diag(m) / (1.0 - c), 0.0, None)
    a = np.sqrt(d)
    k = int(np.argmax(a))
    for j in range(3):
        if j != k:
            a[j] = m[k, j] / ((1.0 - c) * a[k])
    a /= np.linalg.norm(a)
    if np.dot(a, v) < 0.0:
        a = -a
    return a * angle


def apply_rotation(n0: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Rotate ``n0``: ``n_i = sum_j n0_j S[j, i]`` (source index on the row)."""
    return np.asarray(n0, dtype=float) @ np.asarray(S, dtype=float)


def orthonormalize(M: np.ndarray) -> np.ndarray:
    """Project an almost-orthogonal matrix back onto SO(3).

    Symmetric (polar-factor) orthogonalization via the SVD; the result is
    the nearest rotation in the Frobenius sense.
    """
    u, _, vt = np.linalg.svd(np.asarray(M, dtype=float))
    R = u @ vt
    if np.linalg.det(R) < 0.0:
        u[:, -1] = -u[:, -1]
        R = u @ vt
    return R
