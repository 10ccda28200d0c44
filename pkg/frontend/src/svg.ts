/** Deterministic SVG chart primitives (no timestamps, fixed styling). */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
  log: boolean;
}

/** Stable short float formatting for SVG coordinates and tick labels. */
export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const rounded = Number(x.toPrecision(6));
  return String(rounded);
}

export function makeScale(domain: [number, number], range: [number, number], log: boolean): Scale {
  const [d0, d1] = log ? [Math.log10(domain[0]), Math.log10(domain[1])] : domain;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const scale = ((value: number) => {
    const v = log ? Math.log10(value) : value;
    return range[0] + ((v - d0) / span) * (range[1] - range[0]);
  }) as Scale;
  scale.domain = domain;
  scale.range = range;
  scale.log = log;
  return scale;
}

export function logTicks(domain: [number, number]): number[] {
  const ticks: number[] = [];
  const lo = Math.ceil(Math.log10(domain[0]) - 1e-9);
  const hi = Math.floor(Math.log10(domain[1]) + 1e-9);
  for (let e = lo; e <= hi; e += 1) ticks.push(10 ** e);
  if (ticks.length === 0) ticks.push(domain[0], domain[1]);
  return ticks;
}

export function linearTicks(domain: [number, number], count = 5): number[] {
  const span = domain[1] - domain[0];
  if (span <= 0) return [domain[0]];
  const rawStep = span / count;
  const magnitude = 10 ** Math.floor(Math.log10(rawStep));
  const step = [1, 2, 5, 10].map((m) => m * magnitude).find((s) => span / s <= count) ?? magnitude * 10;
  const ticks: number[] = [];
  for (let v = Math.ceil(domain[0] / step) * step; v <= domain[1] + 1e-12; v += step) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Point {
  x: number;
  y: number;
}

export function polyline(points: Point[], stroke: string, dash?: string): string {
  if (points.length === 0) return "";
  const attrs = `fill="none" stroke="${stroke}" stroke-width="1.5"` + (dash ? ` stroke-dasharray="${dash}"` : "");
  if (points.length === 1) return "";
  const d = points.map((p, i) => `${i === 0 ? "M" : "L"}${fmt(p.x)} ${fmt(p.y)}`).join(" ");
  return `<path ${attrs} d="${d}"/>`;
}

export function markers(points: Point[], fill: string): string {
  return points.map((p) => `<circle cx="${fmt(p.x)}" cy="${fmt(p.y)}" r="2.5" fill="${fill}"/>`).join("");
}

export function band(upper: Point[], lower: Point[], fill: string): string {
  if (upper.length < 2) return "";
  const forward = upper.map((p, i) => `${i === 0 ? "M" : "L"}${fmt(p.x)} ${fmt(p.y)}`).join(" ");
  const back = [...lower].reverse().map((p) => `L${fmt(p.x)} ${fmt(p.y)}`).join(" ");
  return `<path fill="${fill}" fill-opacity="0.25" stroke="none" d="${forward} ${back} Z"/>`;
}
