import { scaleLinear } from "d3-scale";
import { loadCsv, column, SchemaError } from "../csv.js";
import { WIDTH, HEIGHT, MARGIN, openSvg, closeSvg, axes, fmt } from "../svg.js";

/**
 * Bar chart of a pre-binned distribution from saturation_histogram.csv
 * (columns bin_left, bin_right, count).
 */
export function renderHistogram(path: string): string {
  const table = loadCsv(path, ["bin_left", "bin_right", "count"]);
  const left = column(table, "bin_left");
  const right = column(table, "bin_right");
  const count = column(table, "count");
  for (let i = 0; i < left.length; i++) {
    if (!(right[i] > left[i])) {
      throw new SchemaError(`artifact ${path} row ${i + 1}: bin_right must exceed bin_left`);
    }
    if (count[i] < 0) {
      throw new SchemaError(`artifact ${path} row ${i + 1}: negative count`);
    }
  }
  const cMax = Math.max(...count);
  if (!(cMax > 0)) {
    throw new SchemaError(`artifact ${path}: histogram is empty`);
  }

  const x = scaleLinear()
    .domain([left[0], right[right.length - 1]])
    .range([MARGIN.left, WIDTH - MARGIN.right]);
  const y = scaleLinear()
    .domain([0, cMax * 1.05])
    .range([HEIGHT - MARGIN.bottom, MARGIN.top]);

  const parts = openSvg();
  for (let i = 0; i < left.length; i++) {
    const px = x(left[i]);
    const w = x(right[i]) - px;
    const py = y(count[i]);
    const h = y(0) - py;
    parts.push(
      `<rect x="${fmt(px)}" y="${fmt(py)}" width="${fmt(w)}" height="${fmt(h)}" fill="#4575b4" stroke="white" stroke-width="0.5"/>`,
    );
  }
  parts.push(
    ...axes(x, y, x.domain() as [number, number], y.domain() as [number, number], "value", "count"),
  );
  return closeSvg(parts);
}
