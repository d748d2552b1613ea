import { describe, it, expect } from "vitest";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { render } from "../src/cli.js";

const SAMPLES = join(dirname(fileURLToPath(import.meta.url)), "..", "samples");

describe("committed sample artifacts", () => {
  const cases: [Parameters<typeof render>[0], string, object?][] = [
    ["phase-diagram", "pd/phase_diagram.csv"],
    ["time-series", "traj/trajectory.csv", { series: ["z1", "z2"] }],
    ["time-series", "scar/observables.csv", { series: ["F1_mean", "F2_mean"] }],
    ["histogram", "sat/saturation_histogram.csv"],
    ["poincare", "poin/poincare.csv"],
    ["husimi", "scar/husimi_t5.csv"],
  ];

  for (const [kind, rel, opts] of cases) {
    it(`renders ${rel} as ${kind}`, () => {
      const path = join(SAMPLES, rel);
      const svg = render(kind, path, opts ?? {});
      expect(svg.startsWith("<svg ")).toBe(true);
      expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
      // deterministic output
      expect(render(kind, path, opts ?? {})).toBe(svg);
    });
  }
});
