/** Figure definitions and panel rendering for the four risk-curve figures. */

import { SummaryTable } from "./csv.js";
import {
  band,
  escapeXml,
  fmt,
  linearTicks,
  logTicks,
  makeScale,
  markers,
  Point,
  polyline,
} from "./svg.js";

export type FigureId = "fig1" | "fig2" | "fig3" | "fig4";

export interface FigureDef {
  id: FigureId;
  xColumn: "N" | "n" | "lambda";
  xLabel: string;
  logY: boolean;
  /** Vertical dashed marker at this column's value (fig3: the planted mass). */
  dashedXColumn?: "sparsity";
  panelTitleKeys: string[];
}

export const FIGURES: Record<FigureId, FigureDef> = {
  fig1: { id: "fig1", xColumn: "N", xLabel: "sequence length N", logY: true,
          panelTitleKeys: ["sparsity_rule"] },
  fig2: { id: "fig2", xColumn: "n", xLabel: "atom length n", logY: true,
          panelTitleKeys: ["noise"] },
  fig3: { id: "fig3", xColumn: "lambda", xLabel: "budget lambda", logY: false,
          dashedXColumn: "sparsity", panelTitleKeys: ["sparsity_rule"] },
  fig4: { id: "fig4", xColumn: "N", xLabel: "sequence length N", logY: true,
          panelTitleKeys: ["sparsity_rule"] },
};

interface SeriesDef {
  column: string;
  label: string;
  color: string;
  dash?: string;
  withBand?: boolean;
  withMarkers?: boolean;
}

const SERIES: SeriesDef[] = [
  { column: "mse_csdl_mean", label: "estimator", color: "#1f77b4", withBand: true, withMarkers: true },
  { column: "mse_zero_mean", label: "zero estimator", color: "#2ca02c", withMarkers: true },
  { column: "mse_identity_mean", label: "identity estimator", color: "#d62728", withMarkers: true },
  { column: "ub_componentwise", label: "upper bound (componentwise)", color: "#9467bd", dash: "6 3" },
  { column: "ub_joint", label: "upper bound (joint)", color: "#8c564b", dash: "6 3" },
  { column: "lb_componentwise", label: "lower bound (componentwise)", color: "#e377c2", dash: "2 3" },
  { column: "lb_joint", label: "lower bound (joint)", color: "#7f7f7f", dash: "2 3" },
];

const PANEL_WIDTH = 340;
const PANEL_HEIGHT = 300;
const MARGIN = { top: 36, right: 16, bottom: 44, left: 64 };
const LEGEND_WIDTH = 210;

function numeric(row: Record<string, string>, column: string): number | null {
  const cell = row[column];
  if (cell === undefined || cell === "") return null;
  const value = Number(cell);
  return Number.isFinite(value) ? value : null;
}

/** Columns that have at least one plottable value in any of the tables. */
export function presentSeries(tables: SummaryTable[]): string[] {
  return SERIES.filter((s) =>
    tables.some((t) => t.rows.some((r) => numeric(r, s.column) !== null)),
  ).map((s) => s.column);
}

function collectValues(def: FigureDef, tables: SummaryTable[]): { xs: number[]; ys: number[] } {
  const xs: number[] = [];
  const ys: number[] = [];
  for (const table of tables) {
    for (const row of table.rows) {
      const x = numeric(row, def.xColumn);
      if (x !== null) xs.push(x);
      for (const s of SERIES) {
        const y = numeric(row, s.column);
        if (y !== null && (!def.logY || y > 0)) ys.push(y);
        if (s.withBand) {
          const err = numeric(row, "mse_csdl_stderr");
          if (y !== null && err !== null) {
            const hi = y + err;
            const lo = y - err;
            if (!def.logY || hi > 0) ys.push(hi);
            if (!def.logY || lo > 0) ys.push(lo);
          }
        }
      }
    }
  }
  return { xs, ys };
}

function pad(domain: [number, number], log: boolean): [number, number] {
  if (log) return [domain[0] / 1.5, domain[1] * 1.5];
  const span = domain[1] - domain[0] || Math.abs(domain[0]) || 1;
  return [domain[0] - 0.06 * span, domain[1] + 0.06 * span];
}

function renderPanel(
  def: FigureDef,
  table: SummaryTable,
  panelIndex: number,
  xDomain: [number, number],
  yDomain: [number, number],
): string {
  const x0 = panelIndex * PANEL_WIDTH + MARGIN.left;
  const x1 = (panelIndex + 1) * PANEL_WIDTH - MARGIN.right;
  const y0 = PANEL_HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  const xScale = makeScale(xDomain, [x0, x1], true);
  const yScale = makeScale(yDomain, [y0, y1], def.logY);

  const parts: string[] = [];
  parts.push(`<rect x="${fmt(x0)}" y="${fmt(y1)}" width="${fmt(x1 - x0)}" height="${fmt(y0 - y1)}" fill="none" stroke="#333"/>`);

  for (const tick of logTicks(xDomain)) {
    const px = xScale(tick);
    parts.push(`<line x1="${fmt(px)}" y1="${fmt(y0)}" x2="${fmt(px)}" y2="${fmt(y0 + 4)}" stroke="#333"/>`);
    parts.push(`<text x="${fmt(px)}" y="${fmt(y0 + 16)}" text-anchor="middle" font-size="10">${fmt(tick)}</text>`);
  }
  const yTicks = def.logY ? logTicks(yDomain) : linearTicks(yDomain);
  for (const tick of yTicks) {
    const py = yScale(tick);
    parts.push(`<line x1="${fmt(x0 - 4)}" y1="${fmt(py)}" x2="${fmt(x0)}" y2="${fmt(py)}" stroke="#333"/>`);
    parts.push(`<text x="${fmt(x0 - 6)}" y="${fmt(py + 3)}" text-anchor="end" font-size="10">${fmt(tick)}</text>`);
  }
  parts.push(`<text x="${fmt((x0 + x1) / 2)}" y="${fmt(PANEL_HEIGHT - 8)}" text-anchor="middle" font-size="11">${escapeXml(def.xLabel)}</text>`);

  const title = def.panelTitleKeys
    .map((k) => (table.meta[k] !== undefined ? `${k}=${table.meta[k]}` : ""))
    .filter((t) => t.length > 0)
    .join(" ");
  parts.push(`<text x="${fmt((x0 + x1) / 2)}" y="${fmt(y1 - 10)}" text-anchor="middle" font-size="11">${escapeXml(`${table.rows[0]?.experiment ?? ""} ${title}`.trim())}</text>`);

  if (def.dashedXColumn) {
    const at = numeric(table.rows[0] ?? {}, def.dashedXColumn);
    if (at !== null && at >= xDomain[0] && at <= xDomain[1]) {
      const px = xScale(at);
      parts.push(`<g data-marker="${def.dashedXColumn}"><line x1="${fmt(px)}" y1="${fmt(y0)}" x2="${fmt(px)}" y2="${fmt(y1)}" stroke="#333" stroke-dasharray="4 4"/></g>`);
    }
  }

  const clampY = (v: number) => (def.logY ? Math.max(v, yDomain[0]) : v);
  for (const s of SERIES) {
    const pts: Point[] = [];
    const upper: Point[] = [];
    const lower: Point[] = [];
    for (const row of table.rows) {
      const x = numeric(row, def.xColumn);
      const y = numeric(row, s.column);
      if (x === null || y === null || (def.logY && y <= 0)) continue;
      pts.push({ x: xScale(x), y: yScale(y) });
      if (s.withBand) {
        const err = numeric(row, "mse_csdl_stderr") ?? 0;
        upper.push({ x: xScale(x), y: yScale(clampY(y + err)) });
        lower.push({ x: xScale(x), y: yScale(clampY(y - err)) });
      }
    }
    if (pts.length === 0) continue;
    const group: string[] = [];
    if (s.withBand) group.push(band(upper, lower, s.color));
    group.push(polyline(pts, s.color, s.dash));
    if (s.withMarkers || pts.length === 1) group.push(markers(pts, s.color));
    parts.push(`<g data-series="${s.column}">${group.join("")}</g>`);
  }
  return `<g data-panel="${panelIndex}">${parts.join("")}</g>`;
}

function renderLegend(columns: string[], xOffset: number): string {
  const items = SERIES.filter((s) => columns.includes(s.column));
  const rows = items.map((s, i) => {
    const y = MARGIN.top + 18 * i;
    const line = `<line x1="${fmt(xOffset)}" y1="${fmt(y)}" x2="${fmt(xOffset + 26)}" y2="${fmt(y)}" stroke="${s.color}" stroke-width="1.5"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>`;
    const text = `<text x="${fmt(xOffset + 32)}" y="${fmt(y + 3)}" font-size="10">${escapeXml(s.label)}</text>`;
    return `<g data-legend="${s.column}">${line}${text}</g>`;
  });
  return `<g data-legend-box="1">${rows.join("")}</g>`;
}

export function renderFigure(id: FigureId, tables: SummaryTable[]): string {
  if (tables.length === 0) throw new Error(`${id}: at least one input table is required`);
  const def = FIGURES[id];
  const { xs, ys } = collectValues(def, tables);
  if (xs.length === 0 || ys.length === 0) throw new Error(`${id}: no plottable data`);
  const xDomain = pad([Math.min(...xs), Math.max(...xs)], true);
  const yDomain = pad([Math.min(...ys), Math.max(...ys)], def.logY);

  const width = tables.length * PANEL_WIDTH + LEGEND_WIDTH;
  const panels = tables.map((t, i) => renderPanel(def, t, i, xDomain, yDomain));
  const legend = renderLegend(presentSeries(tables), tables.length * PANEL_WIDTH + 10);
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${PANEL_HEIGHT}" viewBox="0 0 ${width} ${PANEL_HEIGHT}" font-family="Helvetica, Arial, sans-serif" data-figure="${id}">`,
    `<rect width="${width}" height="${PANEL_HEIGHT}" fill="white"/>`,
    ...panels,
    legend,
    `</svg>`,
    ``,
  ].join("\n");
}
