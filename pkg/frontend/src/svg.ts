/**
 * Deterministic SVG output for quiver panels.
 *
 * Pure string building: given the same arrows and options the output is
 * byte-identical.  Arrow pixel length is projection length times one
 * global scale; no per-arrow normalization happens here.
 */

import { Arrow } from "./quiver.js";

export interface RenderOptions {
  /** Arrow length in data units for a unit projection; defaults to 90% of the grid spacing. */
  arrowScale?: number;
  /** Pixels per data unit. */
  pixelsPerUnit?: number;
  /** Margin around the data extent, in data units. */
  margin?: number;
  title?: string;
}

const HEAD_FRACTION = 0.3; // arrowhead size relative to the drawn shaft
const HEAD_ANGLE = 2.6;    // radians between shaft direction and head barbs

function fmt(v: number): string {
  // Fixed decimals keep the output deterministic and diffable.
  const s = v.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
}

export function estimateGridSpacing(arrows: Arrow[]): number {
  const xs = Array.from(new Set(arrows.map((a) => a.x))).sort((a, b) => a - b);
  let spacing = Infinity;
  for (let i = 1; i < xs.length; i++) {
    const gap = xs[i] - xs[i - 1];
    if (gap > 1e-9) spacing = Math.min(spacing, gap);
  }
  return Number.isFinite(spacing) ? spacing : 1.0;
}

export function renderPanelSvg(arrows: Arrow[], options: RenderOptions = {}): string {
  if (arrows.length === 0) {
    throw new Error("nothing to render: no arrows");
  }
  const arrowScale = options.arrowScale ?? 0.9 * estimateGridSpacing(arrows);
  const pixelsPerUnit = options.pixelsPerUnit ?? 80;
  const margin = options.margin ?? 0.6;

  const xs = arrows.map((a) => a.x);
  const ys = arrows.map((a) => a.y);
  const xMin = Math.min(...xs) - margin;
  const xMax = Math.max(...xs) + margin;
  const yMin = Math.min(...ys) - margin;
  const yMax = Math.max(...ys) + margin;
  const width = (xMax - xMin) * pixelsPerUnit;
  const height = (yMax - yMin) * pixelsPerUnit;

  const px = (x: number) => (x - xMin) * pixelsPerUnit;
  const py = (y: number) => (yMax - y) * pixelsPerUnit; // SVG y grows downward

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(width)}" ` +
      `height="${fmt(height)}" viewBox="0 0 ${fmt(width)} ${fmt(height)}">`,
  );
  parts.push(`<rect width="${fmt(width)}" height="${fmt(height)}" fill="white"/>`);
  if (options.title) {
    parts.push(
      `<text x="${fmt(width / 2)}" y="16" text-anchor="middle" ` +
        `font-family="sans-serif" font-size="13">${options.title}</text>`,
    );
  }
  parts.push('<g stroke="black" stroke-width="1.1" fill="none">');
  for (const a of arrows) {
    // The in-plane components already have length projLen, so scaling
    // them directly preserves "image length = projection length".
    const vx = a.dx * arrowScale;
    const vy = a.dy * arrowScale;
    const x0 = a.x - vx / 2;
    const y0 = a.y - vy / 2;
    const x1 = a.x + vx / 2;
    const y1 = a.y + vy / 2;
    parts.push(
      `<line x1="${fmt(px(x0))}" y1="${fmt(py(y0))}" ` +
        `x2="${fmt(px(x1))}" y2="${fmt(py(y1))}"/>`,
    );
    const shaft = Math.hypot(vx, vy);
    if (shaft > 1e-9) {
      const angle = Math.atan2(vy, vx);
      const head = HEAD_FRACTION * shaft;
      for (const side of [-1, 1]) {
        const hx = x1 + head * Math.cos(angle + side * HEAD_ANGLE);
        const hy = y1 + head * Math.sin(angle + side * HEAD_ANGLE);
        parts.push(
          `<line x1="${fmt(px(x1))}" y1="${fmt(py(y1))}" ` +
            `x2="${fmt(px(hx))}" y2="${fmt(py(hy))}"/>`,
        );
      }
    }
  }
  parts.push("</g>");
  parts.push(`<rect width="${fmt(width)}" height="${fmt(height)}" fill="none" stroke="gray"/>`);
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export function renderSideBySide(left: string, right: string): string {
  // Stitch two standalone panels into one figure via nested <svg> tags.
  const size = (svg: string) => {
    const m = svg.match(/width="([\d.]+)" height="([\d.]+)"/);
    if (!m) throw new Error("panel SVG missing width/height");
    return { w: parseFloat(m[1]), h: parseFloat(m[2]) };
  };
  const a = size(left);
  const b = size(right);
  const gap = 20;
  const width = a.w + b.w + gap;
  const height = Math.max(a.h, b.h);
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(width)}" ` +
    `height="${fmt(height)}" viewBox="0 0 ${fmt(width)} ${fmt(height)}">\n` +
    `<svg x="0" y="0">\n${left}</svg>\n` +
    `<svg x="${fmt(a.w + gap)}" y="0">\n${right}</svg>\n` +
    `</svg>\n`
  );
}
