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
  colormap,
  trimNumber,
} from "../svg.js";

/**
 * Heatmap of a single-spin quasi-probability distribution Q(z, phi) from a
 * husimi_t*.csv artifact with columns z, phi, Q on a regular grid.
 */
export function renderHusimi(path: string): string {
  const table = loadCsv(path, ["z", "phi", "Q"]);
  const z = column(table, "z");
  const phi = column(table, "phi");
  const q = column(table, "Q");

  const zVals = [...new Set(z)].sort((a, b) => a - b);
  const phiVals = [...new Set(phi)].sort((a, b) => a - b);
  if (zVals.length < 2 || phiVals.length < 2) {
    throw new SchemaError(`artifact ${path}: need at least a 2x2 (phi, z) grid`);
  }
  if (zVals.length * phiVals.length !== q.length) {
    throw new SchemaError(
      `artifact ${path}: ${q.length} rows do not fill a ${phiVals.length}x${zVals.length} grid`,
    );
  }
  const dz = (zVals[zVals.length - 1] - zVals[0]) / (zVals.length - 1);
  const dphi = (phiVals[phiVals.length - 1] - phiVals[0]) / (phiVals.length - 1);
  const qMax = Math.max(...q);
  if (!(qMax > 0)) {
    throw new SchemaError(`artifact ${path}: distribution is identically zero`);
  }

  const x = scaleLinear()
    .domain([phiVals[0] - dphi / 2, phiVals[phiVals.length - 1] + dphi / 2])
    .range([MARGIN.left, WIDTH - MARGIN.right]);
  const y = scaleLinear()
    .domain([zVals[0] - dz / 2, zVals[zVals.length - 1] + dz / 2])
    .range([HEIGHT - MARGIN.bottom, MARGIN.top]);

  const parts = openSvg();
  for (let i = 0; i < q.length; i++) {
    const px = x(phi[i] - dphi / 2);
    const py = y(z[i] + dz / 2);
    const w = x(phi[i] + dphi / 2) - px;
    const h = y(z[i] - dz / 2) - py;
    parts.push(
      `<rect x="${fmt(px)}" y="${fmt(py)}" width="${fmt(w, 4)}" height="${fmt(h, 4)}" fill="${colormap(q[i] / qMax)}"/>`,
    );
  }
  parts.push(
    ...axes(x, y, x.domain() as [number, number], y.domain() as [number, number], "phi", "z"),
  );
  parts.push(
    `<text x="${WIDTH - MARGIN.right}" y="18" text-anchor="end">Q max = ${trimNumber(qMax)}</text>`,
  );
  return closeSvg(parts);
}
