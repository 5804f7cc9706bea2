/** Golden tests: render each figure from the committed example outputs and
 * compare a sha256 of the exact bytes against the recorded value. Any
 * rendering change, intended or not, shows up as a hash diff; update
 * golden.json deliberately when the change is intended.
 */

import { createHash } from "node:crypto";
import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";
import {
  AbReport,
  ExposureFit,
  InjectionFits,
  renderExposure,
  renderHistogram,
  renderInjection,
  renderPintCurve,
  renderRobustness,
} from "../src/figures.js";

const here = path.dirname(fileURLToPath(import.meta.url));
const dataDir = path.join(here, "..", "..", "examples_output");
const golden: Record<string, string> = JSON.parse(
  fs.readFileSync(path.join(here, "golden.json"), "utf8"),
);

const csv = (p: string) => parseCsv(fs.readFileSync(path.join(dataDir, p), "utf8"));
const json = (p: string) => JSON.parse(fs.readFileSync(path.join(dataDir, p), "utf8"));
const sha = (s: string) => createHash("sha256").update(s).digest("hex");

function renderAll(): Record<string, string> {
  const report = json("ab/report.json") as AbReport;
  return {
    "exposure.svg": renderExposure(
      csv("exposure/exposure.csv"), json("exposure/fit.json") as ExposureFit),
    "asymmetry_histogram.svg": renderHistogram(csv("ab/histogram.csv"), report),
    "pint_curve.svg": renderPintCurve(report),
    "robustness_map.svg": renderRobustness(csv("ab/robustness_grid.csv")),
    "injection.svg": renderInjection(
      csv("injection/injection.csv"), json("injection/fits.json") as InjectionFits),
  };
}

describe("figure rendering", () => {
  const svgs = renderAll();

  it("produces well-formed standalone SVG", () => {
    for (const [name, svg] of Object.entries(svgs)) {
      expect(svg.startsWith('<svg xmlns="http://www.w3.org/2000/svg"'), name).toBe(true);
      expect(svg.endsWith("</svg>\n"), name).toBe(true);
      expect(svg, name).not.toContain("NaN");
      expect(svg, name).not.toContain("Infinity");
    }
  });

  it("is deterministic across renders", () => {
    const again = renderAll();
    for (const name of Object.keys(svgs)) {
      expect(again[name], name).toBe(svgs[name]);
    }
  });

  for (const name of Object.keys(golden)) {
    it(`matches golden hash: ${name}`, () => {
      expect(svgs[name], `${name} was not rendered`).toBeDefined();
      expect(sha(svgs[name]!)).toBe(golden[name]);
    });
  }

  it("annotates the exposure figure with the fitted parameters", () => {
    const fit = json("exposure/fit.json") as ExposureFit;
    expect(svgs["exposure.svg"]).toContain("fit: a =");
    expect(svgs["exposure.svg"]).toContain(String(Number(fit.free.params["a"]!.toPrecision(6))));
  });

  it("marks the inverted internal power on the curve figure", () => {
    expect(svgs["pint_curve.svg"]).toContain("P_int/P_ext =");
  });
});
