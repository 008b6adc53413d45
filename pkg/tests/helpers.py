"""Independent oracles and shared builders for the test suite.

The oracles here deliberately avoid the library's own algebra: the
Levi-Civita sign is computed by counting inversions, the matrix
exponential by a Taylor series (with argument scaling so 30 terms reach
full precision for any test angle), and derivatives by central
differences.
"""

import math

import numpy as np

from disclination.profiles import (
    ProfileFunction,
    RadialFunction,
    exp_decay,
    gauss,
    rational,
    zero_profile,
)


def levi_civita_sign(i: int, j: int, k: int) -> float:
    """Permutation sign by brute-force inversion counting."""
    perm = (i, j, k)
    if len(set(perm)) < 3:
        return 0.0
    inversions = sum(
        1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b]
    )
    return float((-1) ** inversions)


def series_expm(M: np.ndarray, terms: int = 30) -> np.ndarray:
    """Matrix exponential by Taylor series.

    The argument is scaled by a power of two until its norm is below 1/2,
    the 30-term series is summed, and the result squared back; the series
    remainder at norm 1/2 is below 1e-40.
    """
    M = np.asarray(M, dtype=float)
    norm = float(np.linalg.norm(M))
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    A = M / (2.0 ** squarings)
    result = np.eye(3)
    term = np.eye(3)
    for n in range(1, terms + 1):
        term = term @ A / n
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def random_unit(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_points(rng: np.random.Generator, count: int, r_lo: float = 0.1, r_hi: float = 50.0):
    radii = rng.uniform(r_lo, r_hi, size=count)
    return [random_unit(rng) * r for r in radii]


def profile_test_set() -> list[ProfileFunction]:
    """The four profiles used throughout: 0, (pi/2)e^-r, pi e^-r^2, pi/(1+r)."""
    return [
        zero_profile(),
        exp_decay(math.pi / 2.0, 1.0),
        gauss(math.pi, 1.0),
        rational(math.pi, 1.0),
    ]


def smooth_triple(seed: int = 0):
    """Random smooth radial functions (K, V, U) with analytic derivatives."""
    rng = np.random.default_rng(seed)
    a, b, c, d, e, g = rng.uniform(0.2, 1.0, size=6)

    K = RadialFunction(
        lambda r: 1.0 + a * math.sin(b * r) * math.exp(-r / 4.0),
        lambda r: a * math.exp(-r / 4.0) * (b * math.cos(b * r) - math.sin(b * r) / 4.0),
        "K",
    )
    V = RadialFunction(
        lambda r: c * math.cos(d * r) / (1.0 + r),
        lambda r: -c * (d * math.sin(d * r) * (1.0 + r) + math.cos(d * r)) / (1.0 + r) ** 2,
        "V",
    )
    U = RadialFunction(
        lambda r: e * r * math.exp(-g * r),
        lambda r: e * math.exp(-g * r) * (1.0 - g * r),
        "U",
    )
    return K, V, U


def w_from_k(K: RadialFunction) -> RadialFunction:
    """W = (K - 1)/r with the analytic derivative composed from K, K'."""
    return RadialFunction(
        lambda r: (K(r) - 1.0) / r,
        lambda r: K.deriv(r) / r - (K(r) - 1.0) / (r * r),
        "W",
    )


ZERO_RF = RadialFunction(lambda r: 0.0, lambda r: 0.0, "0")


def const_rf(value: float) -> RadialFunction:
    return RadialFunction(lambda r: value, lambda r: 0.0, f"{value:g}")
