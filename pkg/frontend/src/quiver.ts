/**
 * Arrow geometry for section figures.
 *
 * A panel projects the director onto its plane: the x2 = 0 panel plots
 * (n1, n3) at plane coordinates (x1, x3); the x3 = 0 panel plots
 * (n1, n2) at (x1, x2).  Arrow lengths are the projection lengths from
 * the CSV, untouched: a shorter-than-unit arrow means the director has a
 * component perpendicular to the plane.
 */

import { CsvSchemaError, FieldRecord } from "./csv.js";

export type Panel = "x2zero" | "x3zero";

export interface Arrow {
  /** Anchor point in plane coordinates (arrow is centered on it). */
  x: number;
  y: number;
  /** In-plane direction components (unit length when fully in plane). */
  dx: number;
  dy: number;
  /** In-plane projection length from the CSV record. */
  length: number;
}

const PLANE_TOL = 1e-12;

export function buildArrows(records: FieldRecord[], panel: Panel): Arrow[] {
  const arrows: Arrow[] = [];
  for (const r of records) {
    if (panel === "x2zero") {
      if (Math.abs(r.x2) > PLANE_TOL) {
        throw new CsvSchemaError(
          `record at (${r.x1}, ${r.x2}, ${r.x3}) does not lie in the x2=0 plane`,
        );
      }
      arrows.push({ x: r.x1, y: r.x3, dx: r.n1, dy: r.n3, length: r.projLen });
    } else {
      if (Math.abs(r.x3) > PLANE_TOL) {
        throw new CsvSchemaError(
          `record at (${r.x1}, ${r.x2}, ${r.x3}) does not lie in the x3=0 plane`,
        );
      }
      arrows.push({ x: r.x1, y: r.x2, dx: r.n1, dy: r.n2, length: r.projLen });
    }
  }
  return arrows;
}

/**
 * Measured far-field / interior properties of a rendered panel.
 *
 * Far field: arrows at radius >= 0.95 of the largest radius in the data.
 * Interior: arrows at radius <= half the largest radius that sit away
 * from the vertical symmetry axis (|x| >= 0.2 r), where the
 * out-of-plane component is appreciable.
 */
export interface PanelProperties {
  farFieldCount: number;
  maxFarFieldLengthDeviation: number;
  maxFarFieldAngleFromVertical: number;
  minFarFieldLength: number;
  interiorCount: number;
  maxInteriorLength: number;
  interiorStrictlyShorter: boolean;
}

export function measurePanelProperties(
  arrows: Arrow[],
  interiorRadius = 1.5,
): PanelProperties {
  const radii = arrows.map((a) => Math.hypot(a.x, a.y));
  const rMax = Math.max(...radii);
  let farFieldCount = 0;
  let maxDev = 0;
  let maxAngle = 0;
  let minFar = Infinity;
  let interiorCount = 0;
  let maxInterior = 0;
  arrows.forEach((a, i) => {
    const r = radii[i];
    if (r >= 0.95 * rMax) {
      farFieldCount += 1;
      maxDev = Math.max(maxDev, Math.abs(a.length - 1.0));
      maxAngle = Math.max(maxAngle, Math.atan2(Math.abs(a.dx), a.dy));
      minFar = Math.min(minFar, a.length);
    } else if (r <= interiorRadius && Math.abs(a.x) >= 0.2 * r) {
      interiorCount += 1;
      maxInterior = Math.max(maxInterior, a.length);
    }
  });
  return {
    farFieldCount,
    maxFarFieldLengthDeviation: maxDev,
    maxFarFieldAngleFromVertical: maxAngle,
    minFarFieldLength: minFar,
    interiorCount,
    maxInteriorLength: maxInterior,
    interiorStrictlyShorter: interiorCount > 0 && maxInterior < minFar,
  };
}
