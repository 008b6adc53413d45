#!/usr/bin/env node
/**
 * render --input samples.csv --panel x2zero --out fig.svg
 *
 * Reads a director-field CSV export and writes a quiver-style SVG.
 * --panel both needs a second file: --input for the x2=0 section and
 * --input2 for the x3=0 section.
 *
 * Exit codes: 0 ok, 1 usage error, 2 schema or empty-input error,
 * 3 I/O error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { CsvSchemaError, parseFieldCsv } from "./csv.js";
import { buildArrows, Panel } from "./quiver.js";
import { renderPanelSvg, renderSideBySide } from "./svg.js";

interface Args {
  input?: string;
  input2?: string;
  panel: string;
  out?: string;
  scale?: number;
}

function parseArgs(argv: string[]): Args {
  const args: Args = { panel: "x2zero" };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) throw new Error(`missing value for ${flag}`);
      return argv[i];
    };
    switch (flag) {
      case "--input":
        args.input = next();
        break;
      case "--input2":
        args.input2 = next();
        break;
      case "--panel":
        args.panel = next();
        break;
      case "--out":
        args.out = next();
        break;
      case "--scale":
        args.scale = Number(next());
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  return args;
}

function renderOnePanel(path: string, panel: Panel, scale?: number): string {
  const records = parseFieldCsv(readFileSync(path, "utf8"));
  const arrows = buildArrows(records, panel);
  const title = panel === "x2zero" ? "section x2 = 0" : "section x3 = 0";
  return renderPanelSvg(arrows, { arrowScale: scale, title });
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
    if (!args.input || !args.out) throw new Error("--input and --out are required");
    if (!["x2zero", "x3zero", "both"].includes(args.panel)) {
      throw new Error(`unknown panel ${args.panel}`);
    }
    if (args.panel === "both" && !args.input2) {
      throw new Error("--panel both needs --input (x2=0 data) and --input2 (x3=0 data)");
    }
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 1;
  }

  let svg: string;
  try {
    if (args.panel === "both") {
      svg = renderSideBySide(
        renderOnePanel(args.input, "x2zero", args.scale),
        renderOnePanel(args.input2 as string, "x3zero", args.scale),
      );
    } else {
      svg = renderOnePanel(args.input, args.panel as Panel, args.scale);
    }
  } catch (err) {
    if (err instanceof CsvSchemaError) {
      console.error(`schema error: ${err.message}`);
      return 2;
    }
    if ((err as NodeJS.ErrnoException).code) {
      console.error(`cannot read input: ${(err as Error).message}`);
      return 3;
    }
    console.error(`render error: ${(err as Error).message}`);
    return 2;
  }

  try {
    writeFileSync(args.out, svg);
  } catch (err) {
    console.error(`cannot write ${args.out}: ${(err as Error).message}`);
    return 3;
  }
  console.error(`wrote ${args.out}`);
  return 0;
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
