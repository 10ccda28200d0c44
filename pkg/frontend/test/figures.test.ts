import { join } from "path";
import { describe, expect, it } from "vitest";

import { CSV_VERSION, readSummaryCsv, SUMMARY_COLUMNS } from "../src/csv.js";
import { presentSeries, renderFigure } from "../src/figures.js";

const FIXTURES = join(__dirname, "..", "fixtures");

const load = (name: string) => readSummaryCsv(join(FIXTURES, name));

function drawnSeries(svg: string): string[] {
  return [...svg.matchAll(/data-series="([^"]+)"/g)].map((m) => m[1]);
}

describe("renderFigure", () => {
  it("is deterministic", () => {
    const tables = [load("exp1_floor_sqrt_N_summary.csv")];
    expect(renderFigure("fig1", tables)).toBe(renderFigure("fig1", tables));
  });

  it("draws one series per populated column", () => {
    const tables = [load("exp1_floor_sqrt_N_summary.csv")];
    const svg = renderFigure("fig1", tables);
    const expected = presentSeries(tables);
    expect(expected).toContain("mse_csdl_mean");
    expect(expected).toContain("mse_identity_mean");
    expect(new Set(drawnSeries(svg))).toEqual(new Set(expected));
  });

  it("renders three panels for the three sparsity rules", () => {
    const tables = [
      load("exp1_constant_5_summary.csv"),
      load("exp1_floor_sqrt_N_summary.csv"),
      load("exp1_floor_N_over_10_summary.csv"),
    ];
    const svg = renderFigure("fig1", tables);
    expect([...svg.matchAll(/data-panel="/g)].length).toBe(3);
    expect(svg).toContain("sparsity_rule=constant_5");
    expect(svg).toContain("sparsity_rule=floor_sqrt_N");
    expect(svg).toContain("sparsity_rule=floor_N_over_10");
  });

  it("renders two panels for the two noise kinds", () => {
    const svg = renderFigure("fig2", [
      load("exp2_iid_summary.csv"),
      load("exp2_correlated_summary.csv"),
    ]);
    expect([...svg.matchAll(/data-panel="/g)].length).toBe(2);
    expect(svg).toContain("noise=iid");
    expect(svg).toContain("noise=correlated");
  });

  it("marks the planted mass with a dashed line on the budget sweep", () => {
    const svg = renderFigure("fig3", [load("exp3_summary.csv")]);
    expect(svg).toContain('data-marker="sparsity"');
    expect(svg).toContain("stroke-dasharray");
  });

  it("omits the identity estimator when its column is empty", () => {
    const tables = [load("exp4_floor_N_over_10_summary.csv")];
    const svg = renderFigure("fig4", tables);
    expect(drawnSeries(svg)).not.toContain("mse_identity_mean");
    expect(svg).not.toContain('data-legend="mse_identity_mean"');
    expect(drawnSeries(svg)).toContain("mse_csdl_mean");
  });

  it("draws markers without a connecting line for a single grid point", () => {
    const header = [...SUMMARY_COLUMNS].join(",");
    const row = [
      "exp1", "0", "1000", "10", "5", "31", "31", "iid_gaussian", "1",
      "0.01", "0", "0.01", "0.01",
      "0.03", "0", "0.03", "0.03",
      "0.009", "0", "0.009", "0.009",
      "0.15", "0.05", "0.01", "0.003", "1",
    ].join(",");
    const single = {
      meta: { experiment: "exp1" },
      columns: [...SUMMARY_COLUMNS],
      rows: [Object.fromEntries([...SUMMARY_COLUMNS].map((c, i) => [c, row.split(",")[i]]))],
    };
    const svg = renderFigure("fig1", [single]);
    expect(svg).toContain("<circle");
    const body = svg.split('data-series="mse_csdl_mean"')[1].split("</g>")[0];
    expect(body).not.toContain("<path");
    expect(svg).toContain(CSV_VERSION.length > 0 ? "<svg" : "");
  });

  it("embeds no timestamps or absolute paths", () => {
    const svg = renderFigure("fig3", [load("exp3_summary.csv")]);
    expect(svg).not.toMatch(/20\d\d-\d\d-\d\d/);
    expect(svg).not.toContain(FIXTURES);
  });
});
