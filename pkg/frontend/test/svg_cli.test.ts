import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { main } from "../src/cli.js";
import { parseFieldCsv } from "../src/csv.js";
import { buildArrows } from "../src/quiver.js";
import { estimateGridSpacing, renderPanelSvg, renderSideBySide } from "../src/svg.js";

const fixture = (name: string) =>
  fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));

const loadArrows = (name: string, panel: "x2zero" | "x3zero") =>
  buildArrows(parseFieldCsv(readFileSync(fixture(name), "utf8")), panel);

describe("renderPanelSvg", () => {
  const arrows = loadArrows("example_two_x2zero.csv", "x2zero");

  it("is deterministic", () => {
    const a = renderPanelSvg(arrows);
    const b = renderPanelSvg(arrows);
    expect(a).toBe(b);
  });

  it("draws one shaft line per arrow with pixel length proportional to proj_len", () => {
    const arrowScale = 0.27;
    const pixelsPerUnit = 80;
    const svg = renderPanelSvg(arrows, { arrowScale, pixelsPerUnit });
    const lines = [...svg.matchAll(/<line x1="([-\d.]+)" y1="([-\d.]+)" x2="([-\d.]+)" y2="([-\d.]+)"\/>/g)];
    // three <line> elements per arrow: shaft plus two head barbs
    expect(lines.length).toBe(3 * arrows.length);
    arrows.forEach((a, i) => {
      const [x1, y1, x2, y2] = lines[3 * i].slice(1, 5).map(Number);
      const drawn = Math.hypot(x2 - x1, y2 - y1);
      const expected = a.length * arrowScale * pixelsPerUnit;
      expect(Math.abs(drawn - expected)).toBeLessThan(0.01);
    });
  });

  it("estimates the grid spacing from distinct abscissae", () => {
    expect(estimateGridSpacing(arrows)).toBeCloseTo(0.3, 10);
  });

  it("refuses to render nothing", () => {
    expect(() => renderPanelSvg([])).toThrow(/no arrows/);
  });

  it("stitches two panels side by side", () => {
    const left = renderPanelSvg(arrows, { title: "left" });
    const right = renderPanelSvg(loadArrows("example_two_x3zero.csv", "x3zero"), { title: "right" });
    const both = renderSideBySide(left, right);
    expect(both).toContain("left");
    expect(both).toContain("right");
    expect(both.startsWith("<svg ")).toBe(true);
  });
});

describe("render CLI", () => {
  it("writes an SVG for a valid export", () => {
    const dir = mkdtempSync(join(tmpdir(), "quiver-"));
    const out = join(dir, "fig.svg");
    const code = main(["--input", fixture("example_two_x2zero.csv"), "--panel", "x2zero", "--out", out]);
    expect(code).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain("<svg");
    expect(svg).toContain("section x2 = 0");
  });

  it("renders both panels from two inputs", () => {
    const dir = mkdtempSync(join(tmpdir(), "quiver-"));
    const out = join(dir, "both.svg");
    const code = main([
      "--input", fixture("example_two_x2zero.csv"),
      "--input2", fixture("example_two_x3zero.csv"),
      "--panel", "both", "--out", out,
    ]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("section x3 = 0");
  });

  it("fails with usage errors on missing flags", () => {
    expect(main([])).toBe(1);
    expect(main(["--input", "x.csv"])).toBe(1);
    expect(main(["--panel", "both", "--input", "a.csv", "--out", "b.svg"])).toBe(1);
  });

  it("rejects an empty CSV without writing output", () => {
    const dir = mkdtempSync(join(tmpdir(), "quiver-"));
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "");
    const out = join(dir, "fig.svg");
    expect(main(["--input", empty, "--out", out])).toBe(2);
    expect(existsSync(out)).toBe(false);
  });

  it("reports missing input as an I/O error", () => {
    const dir = mkdtempSync(join(tmpdir(), "quiver-"));
    expect(main(["--input", join(dir, "nope.csv"), "--out", join(dir, "f.svg")])).toBe(3);
  });
});
