/** CLI: render one figure from summary CSVs to SVG (optionally also PNG).
 *
 * Usage:
 *   render --figure fig1 --input exp1_summary.csv [--input more.csv] --out fig1.svg [--png]
 *
 * Exit codes: 0 ok, 1 bad arguments or schema mismatch, 2 write failure.
 */

import { mkdirSync, writeFileSync } from "fs";
import { createRequire } from "module";
import { dirname } from "path";

import { readSummaryCsv, SchemaError, SummaryTable } from "./csv.js";
import { FIGURES, FigureId, renderFigure } from "./figures.js";

const require = createRequire(import.meta.url);

export interface RenderArgs {
  figure: FigureId;
  inputs: string[];
  out: string;
  png: boolean;
}

export function parseArgs(argv: string[]): RenderArgs {
  let figure: string | null = null;
  let out: string | null = null;
  let png = false;
  const inputs: string[] = [];
  for (let i = 0; i < argv.length; i += 1) {
    const flag = argv[i];
    if (flag === "--png") {
      png = true;
      continue;
    }
    if (flag === "--figure" || flag === "--input" || flag === "--out") {
      const value = argv[i + 1];
      if (value === undefined) throw new Error(`${flag} needs a value`);
      if (flag === "--figure") figure = value;
      else if (flag === "--out") out = value;
      else inputs.push(value);
      i += 1;
      continue;
    }
    throw new Error(`unknown argument ${flag}`);
  }
  if (figure === null || !(figure in FIGURES)) {
    throw new Error(`--figure must be one of ${Object.keys(FIGURES).join(", ")}`);
  }
  if (inputs.length === 0) throw new Error("--input is required (repeat for multiple panels)");
  if (inputs.length > 3) throw new Error("at most 3 input panels are supported");
  if (out === null) throw new Error("--out is required");
  return { figure: figure as FigureId, inputs, out, png };
}

export function renderToFiles(args: RenderArgs): string[] {
  const tables: SummaryTable[] = args.inputs.map((p) => readSummaryCsv(p));
  const svg = renderFigure(args.figure, tables);
  const written: string[] = [];
  mkdirSync(dirname(args.out) || ".", { recursive: true });
  writeFileSync(args.out, svg, "utf8");
  written.push(args.out);
  if (args.png) {
    // Lazy import keeps plain SVG rendering free of the native dependency.
    const { Resvg } = require("@resvg/resvg-js");
    const pngPath = args.out.replace(/\.svg$/, "") + ".png";
    const pngBytes = new Resvg(svg).render().asPng();
    writeFileSync(pngPath, pngBytes);
    written.push(pngPath);
  }
  return written;
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    for (const path of renderToFiles(args)) {
      console.log(`wrote ${path}`);
    }
    return 0;
  } catch (err) {
    if (err instanceof SchemaError || err instanceof Error) {
      const code = (err as NodeJS.ErrnoException).code;
      console.error(`error: ${err.message}`);
      return code === "EACCES" || code === "ENOSPC" || code === "ENOTDIR" ? 2 : 1;
    }
    console.error(`error: ${String(err)}`);
    return 1;
  }
}

const invokedDirectly = process.argv[1]?.endsWith("render.js") ?? false;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
