import { scaleLinear } from "d3-scale";
import { loadCsv, column, SchemaError } from "../csv.js";
import {
  WIDTH,
  HEIGHT,
  MARGIN,
  openSvg,
  closeSvg,
  axes,
  fmt,
  esc,
  SERIES_COLORS,
} from "../svg.js";

export interface TimeSeriesOptions {
  /** columns to plot against `t`; default: every column except `t` */
  series?: string[];
  yLabel?: string;
  logY?: boolean;
  title?: string;
}

/**
 * Line plot of one or more observable columns versus the `t` column of a
 * trajectory/ensemble artifact (trajectory.csv, observables.csv,
 * decorrelator.csv, fidelities.csv, ...).
 */
export function renderTimeSeries(path: string, opts: TimeSeriesOptions = {}): string {
  const probe = loadCsv(path, ["t"]);
  const series =
    opts.series ?? probe.columns.filter((c) => c !== "t");
  if (series.length === 0) {
    throw new SchemaError(`artifact ${path} has no observable columns besides 't'`);
  }
  const table = loadCsv(path, ["t", ...series]);
  const t = column(table, "t");

  let yLo = Infinity;
  let yHi = -Infinity;
  for (const name of series) {
    for (const v of column(table, name)) {
      const y = opts.logY ? (v > 0 ? Math.log10(v) : NaN) : v;
      if (Number.isFinite(y)) {
        yLo = Math.min(yLo, y);
        yHi = Math.max(yHi, y);
      }
    }
  }
  if (!Number.isFinite(yLo)) {
    throw new SchemaError(`artifact ${path}: no plottable values in [${series.join(", ")}]`);
  }
  if (yHi === yLo) {
    yLo -= 0.5;
    yHi += 0.5;
  }
  const pad = 0.05 * (yHi - yLo);

  const x = scaleLinear()
    .domain([t[0], t[t.length - 1]])
    .range([MARGIN.left, WIDTH - MARGIN.right]);
  const y = scaleLinear()
    .domain([yLo - pad, yHi + pad])
    .range([HEIGHT - MARGIN.bottom, MARGIN.top]);

  const parts = openSvg();
  parts.push(
    ...axes(x, y, x.domain() as [number, number], y.domain() as [number, number], "t", opts.yLabel ?? (opts.logY ? "log10 value" : "value")),
  );
  series.forEach((name, k) => {
    const values = column(table, name);
    const pts: string[] = [];
    for (let i = 0; i < t.length; i++) {
      const v = opts.logY ? (values[i] > 0 ? Math.log10(values[i]) : NaN) : values[i];
      if (Number.isFinite(v)) pts.push(`${fmt(x(t[i]))},${fmt(y(v))}`);
    }
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    parts.push(
      `<polyline points="${pts.join(" ")}" fill="none" stroke="${color}" stroke-width="1.5"/>`,
    );
    parts.push(
      `<text x="${WIDTH - MARGIN.right - 6}" y="${MARGIN.top + 14 + 16 * k}" text-anchor="end" fill="${color}">${esc(name)}</text>`,
    );
  });
  if (opts.title) {
    parts.push(
      `<text x="${fmt(WIDTH / 2)}" y="18" text-anchor="middle" font-size="14">${esc(opts.title)}</text>`,
    );
  }
  return closeSvg(parts);
}
