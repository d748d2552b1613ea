#!/usr/bin/env node
import { writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { SchemaError } from "./csv.js";
import { renderTimeSeries } from "./renderers/timeSeries.js";
import { renderPhaseDiagram } from "./renderers/phaseDiagram.js";
import { renderHusimi } from "./renderers/husimi.js";
import { renderPoincare } from "./renderers/poincare.js";
import { renderHistogram } from "./renderers/histogram.js";

const KINDS = ["time-series", "phase-diagram", "husimi", "poincare", "histogram"] as const;
type Kind = (typeof KINDS)[number];

export function render(
  kind: Kind,
  input: string,
  opts: { series?: string[]; logY?: boolean; yLabel?: string } = {},
): string {
  switch (kind) {
    case "time-series":
      return renderTimeSeries(input, opts);
    case "phase-diagram":
      return renderPhaseDiagram(input);
    case "husimi":
      return renderHusimi(input);
    case "poincare":
      return renderPoincare(input);
    case "histogram":
      return renderHistogram(input);
  }
}

async function main(): Promise<void> {
  const argv = await yargs(hideBin(process.argv))
    .command("render <kind>", "render a simulation artifact to SVG", (y) =>
      y
        .positional("kind", { choices: KINDS, demandOption: true })
        .option("input", { type: "string", demandOption: true, describe: "artifact CSV path" })
        .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
        .option("series", {
          type: "string",
          array: true,
          describe: "columns to plot (time-series only)",
        })
        .option("log-y", { type: "boolean", default: false })
        .option("y-label", { type: "string" }),
    )
    .demandCommand(1)
    .strict()
    .parse();

  try {
    const svg = render(argv.kind as Kind, argv.input as string, {
      series: argv.series as string[] | undefined,
      logY: argv.logY as boolean,
      yLabel: argv.yLabel as string | undefined,
    });
    writeFileSync(argv.out as string, svg);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      process.exit(2);
    }
    throw err;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  main();
}
