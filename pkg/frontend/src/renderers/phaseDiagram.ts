import { scaleLinear } from "d3-scale";
import { loadCsv, column, SchemaError } from "../csv.js";
import { WIDTH, HEIGHT, MARGIN, openSvg, closeSvg, axes, fmt, esc } from "../svg.js";

const REGION_COLORS: Record<number, string> = {
  0: "#bdbdbd", // no partial attractor
  1: "#4575b4", // normal-phase attractor
  2: "#fee090", // inverted-pair attractor, normal phase unstable
  3: "#d73027", // superradiant attractor
};

/**
 * Region map over the (lambda, V) coupling plane from phase_diagram.csv.
 * Each grid cell is filled by its integer region code.
 */
export function renderPhaseDiagram(path: string): string {
  const table = loadCsv(path, ["lambda", "V", "region"]);
  const lam = column(table, "lambda");
  const v = column(table, "V");
  const region = column(table, "region");

  const lamVals = [...new Set(lam)].sort((a, b) => a - b);
  const vVals = [...new Set(v)].sort((a, b) => a - b);
  if (lamVals.length < 2 || vVals.length < 2) {
    throw new SchemaError(`artifact ${path}: need at least a 2x2 (lambda, V) grid`);
  }
  const dLam = (lamVals[lamVals.length - 1] - lamVals[0]) / (lamVals.length - 1);
  const dV = (vVals[vVals.length - 1] - vVals[0]) / (vVals.length - 1);

  const x = scaleLinear()
    .domain([lamVals[0] - dLam / 2, lamVals[lamVals.length - 1] + dLam / 2])
    .range([MARGIN.left, WIDTH - MARGIN.right]);
  const y = scaleLinear()
    .domain([vVals[0] - dV / 2, vVals[vVals.length - 1] + dV / 2])
    .range([HEIGHT - MARGIN.bottom, MARGIN.top]);

  const parts = openSvg();
  for (let i = 0; i < lam.length; i++) {
    const code = Math.round(region[i]);
    const fill = REGION_COLORS[code];
    if (fill === undefined) {
      throw new SchemaError(`artifact ${path} row ${i + 1}: unknown region code ${region[i]}`);
    }
    const px = x(lam[i] - dLam / 2);
    const py = y(v[i] + dV / 2);
    const w = x(lam[i] + dLam / 2) - px;
    const h = y(v[i] - dV / 2) - py;
    parts.push(
      `<rect x="${fmt(px)}" y="${fmt(py)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`,
    );
  }
  parts.push(
    ...axes(x, y, x.domain() as [number, number], y.domain() as [number, number], "lambda", "V"),
  );
  Object.entries(REGION_COLORS).forEach(([code, color], k) => {
    const lx = MARGIN.left + 10 + 110 * k;
    parts.push(`<rect x="${lx}" y="8" width="12" height="12" fill="${color}"/>`);
    parts.push(`<text x="${lx + 16}" y="18">${esc(`region ${code}`)}</text>`);
  });
  return closeSvg(parts);
}
