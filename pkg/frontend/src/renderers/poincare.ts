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

/**
 * Scatter plot of stroboscopic section crossings (z1, phi1) from poincare.csv,
 * one color per branch label.
 */
export function renderPoincare(path: string): string {
  const table = loadCsv(path, ["orbit", "z1", "phi1"], ["branch"]);
  const z1 = column(table, "z1");
  const phi1 = column(table, "phi1");
  const branch = table.labels["branch"];
  const branches = [...new Set(branch)].sort();
  if (branches.length === 0) {
    throw new SchemaError(`artifact ${path}: no branch labels`);
  }

  const x = scaleLinear().domain([-Math.PI, Math.PI]).range([MARGIN.left, WIDTH - MARGIN.right]);
  const y = scaleLinear().domain([-1, 1]).range([HEIGHT - MARGIN.bottom, MARGIN.top]);

  const parts = openSvg();
  const colorOf = new Map(branches.map((b, k) => [b, SERIES_COLORS[k % SERIES_COLORS.length]]));
  for (let i = 0; i < z1.length; i++) {
    parts.push(
      `<circle cx="${fmt(x(phi1[i]))}" cy="${fmt(y(z1[i]))}" r="1.2" fill="${colorOf.get(branch[i])}"/>`,
    );
  }
  parts.push(
    ...axes(x, y, [-Math.PI, Math.PI], [-1, 1], "phi1", "z1", {
      xTicks: [-Math.PI, -Math.PI / 2, 0, Math.PI / 2, Math.PI],
    }),
  );
  branches.forEach((b, k) => {
    parts.push(
      `<text x="${MARGIN.left + 10 + 140 * k}" y="18" fill="${colorOf.get(b)}">${esc(b)}</text>`,
    );
  });
  return closeSvg(parts);
}
