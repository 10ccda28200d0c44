/** Reader for the versioned summary CSVs produced by the csdl harness. */

import { readFileSync } from "fs";

export const CSV_VERSION = "csdl_csv_v1";

export const SUMMARY_COLUMNS = [
  "experiment",
  "grid_index",
  "N",
  "n",
  "K",
  "sparsity",
  "lambda",
  "noise_kind",
  "n_trials",
  "mse_csdl_mean",
  "mse_csdl_stderr",
  "mse_csdl_min",
  "mse_csdl_max",
  "mse_zero_mean",
  "mse_zero_stderr",
  "mse_zero_min",
  "mse_zero_max",
  "mse_identity_mean",
  "mse_identity_stderr",
  "mse_identity_min",
  "mse_identity_max",
  "ub_componentwise",
  "ub_joint",
  "lb_componentwise",
  "lb_joint",
  "stderr_degenerate",
] as const;

export interface SummaryTable {
  meta: Record<string, string>;
  columns: string[];
  rows: Record<string, string>[];
}

export class SchemaError extends Error {
  readonly missing: string[];
  readonly unexpected: string[];

  constructor(path: string, missing: string[], unexpected: string[]) {
    const parts = [`${path}: summary schema mismatch`];
    if (missing.length > 0) parts.push(`missing columns: ${missing.join(", ")}`);
    if (unexpected.length > 0) parts.push(`unexpected columns: ${unexpected.join(", ")}`);
    super(parts.join("; "));
    this.missing = missing;
    this.unexpected = unexpected;
  }
}

export function readSummaryCsv(path: string): SummaryTable {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0 || lines[0].trim() !== `# ${CSV_VERSION}`) {
    throw new SchemaError(path, [`# ${CSV_VERSION} header line`], []);
  }
  const meta: Record<string, string> = {};
  let i = 1;
  while (i < lines.length && lines[i].startsWith("#")) {
    for (const token of lines[i].slice(1).trim().split(/\s+/)) {
      const eq = token.indexOf("=");
      if (eq > 0) meta[token.slice(0, eq)] = token.slice(eq + 1);
    }
    i += 1;
  }
  if (i >= lines.length) throw new SchemaError(path, ["column header row"], []);
  const columns = lines[i].split(",");
  const expected = SUMMARY_COLUMNS as readonly string[];
  const missing = expected.filter((c) => !columns.includes(c));
  const unexpected = columns.filter((c) => !expected.includes(c));
  if (missing.length > 0 || unexpected.length > 0) {
    throw new SchemaError(path, missing, unexpected);
  }
  const rows: Record<string, string>[] = [];
  for (let j = i + 1; j < lines.length; j += 1) {
    const cells = lines[j].split(",");
    if (cells.length !== columns.length) {
      throw new Error(`${path} line ${j + 1}: expected ${columns.length} cells, got ${cells.length}`);
    }
    const row: Record<string, string> = {};
    columns.forEach((c, k) => {
      row[c] = cells[k];
    });
    rows.push(row);
  }
  rows.sort((a, b) => Number(a.grid_index) - Number(b.grid_index));
  return { meta, columns, rows };
}
