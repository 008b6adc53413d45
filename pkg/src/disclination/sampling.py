"""Grid sampling of director fields and deterministic CSV/JSON export.

Sections are planes through the origin (x2 = 0 or x3 = 0) or a full
volume grid.  Records carry the point, the director, a flatness residual
from the finite-difference curvature oracle, and the in-plane projection
length of the director (the arrow length in the section figures; for
volume grids the full norm, i.e. 1).

Output is deterministic: fixed row-major ordering over the grid and a
fixed float format (17 significant digits, ``.`` decimal separator), so
identical invocations produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from . import __version__
from .ansatz import R_MIN, finite_difference_curvature, flat_connection_field
from .errors import AxisExclusionError
from .nfield import Construction, director_field
from .profiles import ProfileFunction

CSV_HEADER = "x1,x2,x3,n1,n2,n3,curv_residual,proj_len"
UNIT_NORM_TOL = 1e-10

SECTIONS = ("x2zero", "x3zero", "volume")


@dataclass(frozen=True)
class SampleGridSpec:
    """A sampling grid: section kind, half-width, points per axis,
    and the radius of the excluded ball around the origin."""

    section: str
    extent: float = 3.0
    resolution: int = 21
    exclusion_radius: float = 0.05

    def __post_init__(self):
        if self.section not in SECTIONS:
            raise ValueError(f"unknown section {self.section!r}; expected one of {SECTIONS}")
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        if self.extent <= 0.0:
            raise ValueError("extent must be positive")
        if self.exclusion_radius < R_MIN:
            raise ValueError(f"exclusion radius must be at least r_min={R_MIN:.1e}")

    def points(self) -> Iterator[np.ndarray]:
        """Grid points in deterministic row-major order."""
        axis = np.linspace(-self.extent, self.extent, self.resolution)
        if self.section == "x2zero":
            for a in axis:
                for b in axis:
                    yield np.array([a, 0.0, b])
        elif self.section == "x3zero":
            for a in axis:
                for b in axis:
                    yield np.array([a, b, 0.0])
        else:
            for a in axis:
                for b in axis:
                    for c in axis:
                        yield np.array([a, b, c])


@dataclass(frozen=True)
class FieldSample:
    x1: float
    x2: float
    x3: float
    n1: float
    n2: float
    n3: float
    curv_residual: float
    proj_len: float

    def as_tuple(self) -> Tuple[float, ...]:
        return (self.x1, self.x2, self.x3, self.n1, self.n2, self.n3,
                self.curv_residual, self.proj_len)


@dataclass(frozen=True)
class FieldSampleSet:
    samples: Tuple[FieldSample, ...]
    profile_label: str
    grid: SampleGridSpec
    construction: Construction

    def write_csv(self, path: str) -> None:
        lines = [CSV_HEADER]
        for s in self.samples:
            lines.append(",".join(format(v, ".17g") for v in s.as_tuple()))
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")

    def write_json(self, path: str) -> None:
        payload = {
            "metadata": {
                "profile": self.profile_label,
                "grid": {
                    "section": self.grid.section,
                    "extent": self.grid.extent,
                    "resolution": self.grid.resolution,
                    "exclusion_radius": self.grid.exclusion_radius,
                },
                "construction": self.construction.value,
                "version": __version__,
            },
            "records": [
                {
                    "x1": s.x1, "x2": s.x2, "x3": s.x3,
                    "n1": s.n1, "n2": s.n2, "n3": s.n3,
                    "curv_residual": s.curv_residual, "proj_len": s.proj_len,
                }
                for s in self.samples
            ],
        }
        with open(path, "w", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _projection_length(section: str, n: np.ndarray) -> float:
    if section == "x2zero":
        return math.hypot(n[0], n[2])
    if section == "x3zero":
        return math.hypot(n[0], n[1])
    return float(np.linalg.norm(n))


def build_sample_set(
    profile: ProfileFunction,
    grid: SampleGridSpec,
    construction: Construction = Construction.SPHERICALLY_SYMMETRIC,
    fd_step: float = 1e-5,
) -> FieldSampleSet:
    """Sample the director field over the grid.

    Points inside the exclusion ball are skipped, as are points where the
    hedgehog construction is undefined (the nonpositive 3-axis).  Every
    emitted record is checked for unit norm; a violation raises rather
    than silently writing bad data.
    """
    field = director_field(profile, construction)
    conn = flat_connection_field(profile)
    records = []
    for x in grid.points():
        r = float(np.linalg.norm(x))
        if r < grid.exclusion_radius:
            continue
        try:
            n = field(x)
        except AxisExclusionError:
            continue
        norm_err = abs(float(np.linalg.norm(n)) - 1.0)
        if norm_err > UNIT_NORM_TOL:
            raise ValueError(
                f"director at {tuple(x)} violates unit norm by {norm_err:.3e}"
            )
        residual = finite_difference_curvature(conn, x, h=fd_step).max_abs()
        records.append(FieldSample(
            float(x[0]), float(x[1]), float(x[2]),
            float(n[0]), float(n[1]), float(n[2]),
            residual, _projection_length(grid.section, n),
        ))
    return FieldSampleSet(tuple(records), profile.label, grid, construction)
