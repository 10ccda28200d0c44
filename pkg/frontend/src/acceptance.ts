/** Figure-rendering acceptance: build all four figures twice from harness
 * summary CSVs, require byte-identical output and one drawn series per
 * populated risk/bound column.
 *
 * Usage: acceptance [csvDir] [outDir]
 *   csvDir defaults to ../out/acceptance (the primary acceptance run's
 *   output); outDir defaults to <csvDir>/figures.
 */

import { existsSync, readFileSync } from "fs";
import { join, resolve } from "path";

import { readSummaryCsv } from "./csv.js";
import { FigureId, presentSeries, renderFigure } from "./figures.js";
import { renderToFiles } from "./render.js";

interface Job {
  figure: FigureId;
  inputs: string[];
}

function jobs(csvDir: string): Job[] {
  return [
    { figure: "fig1", inputs: [join(csvDir, "exp1_floor_sqrt_N_summary.csv")] },
    {
      figure: "fig2",
      inputs: [
        join(csvDir, "exp2_iid_summary.csv"),
        join(csvDir, "exp2_correlated_summary.csv"),
      ],
    },
    { figure: "fig3", inputs: [join(csvDir, "exp3_summary.csv")] },
    { figure: "fig4", inputs: [join(csvDir, "exp4_floor_N_over_10_summary.csv")] },
  ];
}

function seriesInSvg(svg: string): string[] {
  return [...svg.matchAll(/data-series="([^"]+)"/g)].map((m) => m[1]);
}

export function runAcceptance(csvDir: string, outDir: string): boolean {
  let allOk = true;
  for (const job of jobs(csvDir)) {
    const missing = job.inputs.filter((p) => !existsSync(p));
    if (missing.length > 0) {
      console.log(`ACCEPTANCE FAIL — ${job.figure}: missing inputs ${missing.join(", ")}`);
      allOk = false;
      continue;
    }
    const out = join(outDir, `${job.figure}.svg`);
    renderToFiles({ figure: job.figure, inputs: job.inputs, out, png: false });
    const first = readFileSync(out, "utf8");
    renderToFiles({ figure: job.figure, inputs: job.inputs, out, png: false });
    const second = readFileSync(out, "utf8");
    const identical = first === second;

    const tables = job.inputs.map((p) => readSummaryCsv(p));
    const expected = presentSeries(tables);
    const drawn = new Set(seriesInSvg(second));
    const absent = expected.filter((c) => !drawn.has(c));
    const ok = identical && absent.length === 0;
    allOk = allOk && ok;
    console.log(
      `ACCEPTANCE ${ok ? "PASS" : "FAIL"} — ${job.figure}: wrote ${out}, ` +
        `byte-identical rerun: ${identical}, series drawn: ${expected.length - absent.length}/${expected.length}` +
        (absent.length > 0 ? ` (missing ${absent.join(", ")})` : ""),
    );
  }
  return allOk;
}

const invokedDirectly = process.argv[1]?.endsWith("acceptance.js") ?? false;
if (invokedDirectly) {
  const csvDir = resolve(process.argv[2] ?? join("..", "out", "acceptance"));
  const outDir = resolve(process.argv[3] ?? join(csvDir, "figures"));
  process.exit(runAcceptance(csvDir, outDir) ? 0 : 1);
}
