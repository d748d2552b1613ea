/**
 * Minimal deterministic SVG assembly: fixed decimal precision, no timestamps,
 * no randomness, so re-rendering an artifact is byte-stable.
 */

export const WIDTH = 640;
export const HEIGHT = 480;
export const MARGIN = { top: 28, right: 24, bottom: 46, left: 60 };

export function fmt(x: number, digits = 3): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate ${x}`);
  const s = x.toFixed(digits);
  return s === "-0." + "0".repeat(digits) ? s.slice(1) : s;
}

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface Panel {
  body: string[];
  width: number;
  height: number;
}

export function openSvg(width = WIDTH, height = HEIGHT): string[] {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif" font-size="12">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  ];
}

export function closeSvg(parts: string[]): string {
  return [...parts, "</svg>", ""].join("\n");
}

/** ~10 tick positions covering [lo, hi] at a round step. */
export function ticks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step0 = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (span / count) / step0;
  const step = step0 * (err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1);
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  return out;
}

export function axes(
  xScale: (v: number) => number,
  yScale: (v: number) => number,
  xDomain: [number, number],
  yDomain: [number, number],
  xLabel: string,
  yLabel: string,
  opts: { xTicks?: number[]; yTicks?: number[]; yTickFormat?: (v: number) => string } = {},
): string[] {
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(`<g stroke="black" fill="none">`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}"/>`);
  parts.push(`</g>`);
  const xs = opts.xTicks ?? ticks(xDomain[0], xDomain[1]);
  const ys = opts.yTicks ?? ticks(yDomain[0], yDomain[1]);
  const yFmt = opts.yTickFormat ?? ((v: number) => trimNumber(v));
  for (const v of xs) {
    const px = xScale(v);
    parts.push(`<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 5}" stroke="black"/>`);
    parts.push(
      `<text x="${fmt(px)}" y="${y0 + 18}" text-anchor="middle">${esc(trimNumber(v))}</text>`,
    );
  }
  for (const v of ys) {
    const py = yScale(v);
    parts.push(`<line x1="${x0 - 5}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="black"/>`);
    parts.push(
      `<text x="${x0 - 8}" y="${fmt(py + 4)}" text-anchor="end">${esc(yFmt(v))}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt((x0 + x1) / 2)}" y="${HEIGHT - 8}" text-anchor="middle">${esc(xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${fmt((y0 + y1) / 2)}" text-anchor="middle" transform="rotate(-90 16 ${fmt(
      (y0 + y1) / 2,
    )})">${esc(yLabel)}</text>`,
  );
  return parts;
}

export function trimNumber(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1e4 || abs < 1e-3) return v.toExponential(1);
  return parseFloat(v.toPrecision(6)).toString();
}

/** Perceptually ordered dark-to-bright colormap (piecewise-linear viridis-like). */
const STOPS: [number, number, number][] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

export function colormap(t: number): string {
  const x = Math.min(1, Math.max(0, t)) * (STOPS.length - 1);
  const i = Math.min(STOPS.length - 2, Math.floor(x));
  const f = x - i;
  const c = STOPS[i].map((a, k) => Math.round(a + f * (STOPS[i + 1][k] - a)));
  return `rgb(${c[0]},${c[1]},${c[2]})`;
}

export const SERIES_COLORS = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
];
