/**
 * Strict CSV loading for simulation artifacts.
 *
 * Renderers never guess: a missing column, an empty file, or a non-finite
 * value in a required column aborts with a SchemaError naming the offender.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export interface Table {
  columns: string[];
  rows: Record<string, number>[];
  /** columns that may contain non-numeric labels (kept as strings) */
  labels: Record<string, string[]>;
}

export function loadCsv(
  path: string,
  requiredNumeric: string[],
  requiredLabels: string[] = [],
): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch {
    throw new SchemaError(`cannot read artifact ${path}`);
  }
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`malformed CSV ${path}: ${parsed.errors[0].message}`);
  }
  const columns = parsed.meta.fields ?? [];
  for (const col of [...requiredNumeric, ...requiredLabels]) {
    if (!columns.includes(col)) {
      throw new SchemaError(`artifact ${path} lacks required column '${col}'`);
    }
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`artifact ${path} has no data rows`);
  }
  const rows: Record<string, number>[] = [];
  const labels: Record<string, string[]> = {};
  for (const col of requiredLabels) labels[col] = [];
  parsed.data.forEach((raw, i) => {
    const row: Record<string, number> = {};
    for (const col of requiredNumeric) {
      const value = Number(raw[col]);
      if (!Number.isFinite(value)) {
        throw new SchemaError(
          `artifact ${path} row ${i + 1}: column '${col}' is not a finite number (got '${raw[col]}')`,
        );
      }
      row[col] = value;
    }
    rows.push(row);
    for (const col of requiredLabels) labels[col].push(raw[col] ?? "");
  });
  return { columns, rows, labels };
}

export function column(table: Table, name: string): number[] {
  return table.rows.map((r) => {
    const v = r[name];
    if (v === undefined) throw new SchemaError(`column '${name}' was not loaded`);
    return v;
  });
}
