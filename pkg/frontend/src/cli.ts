/** Render all figures from a directory of qprad CLI outputs.
 *
 * Usage: node dist/cli.js [--in DIR] [--out DIR]
 *
 * Expects the layout produced by the simulation tool:
 *   DIR/exposure/{exposure.csv,fit.json}
 *   DIR/ab/{histogram.csv,report.json,robustness_grid.csv}
 *   DIR/injection/{injection.csv,fits.json}
 * Missing inputs skip the corresponding figure with a note.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { parseCsv } from "./csv.js";
import {
  AbReport,
  ExposureFit,
  InjectionFits,
  renderExposure,
  renderHistogram,
  renderInjection,
  renderPintCurve,
  renderRobustness,
} from "./figures.js";

function arg(name: string, fallback: string): string {
  const i = process.argv.indexOf(name);
  if (i >= 0) {
    const v = process.argv[i + 1];
    if (!v) throw new Error(`${name} needs a value`);
    return v;
  }
  return fallback;
}

function main(): void {
  const inDir = arg("--in", "../examples_output");
  const outDir = arg("--out", "figures");
  fs.mkdirSync(outDir, { recursive: true });

  const csv = (p: string) => parseCsv(fs.readFileSync(path.join(inDir, p), "utf8"));
  const json = (p: string) => JSON.parse(fs.readFileSync(path.join(inDir, p), "utf8"));
  const have = (p: string) => fs.existsSync(path.join(inDir, p));
  const write = (name: string, svg: string) => {
    fs.writeFileSync(path.join(outDir, name), svg);
    console.log(`wrote ${path.join(outDir, name)}`);
  };

  if (have("exposure/exposure.csv") && have("exposure/fit.json")) {
    write("exposure.svg",
      renderExposure(csv("exposure/exposure.csv"), json("exposure/fit.json") as ExposureFit));
  } else {
    console.log("skipping exposure.svg (no exposure outputs)");
  }

  if (have("ab/report.json")) {
    const report = json("ab/report.json") as AbReport;
    if (have("ab/histogram.csv")) {
      write("asymmetry_histogram.svg", renderHistogram(csv("ab/histogram.csv"), report));
    }
    write("pint_curve.svg", renderPintCurve(report));
    if (have("ab/robustness_grid.csv")) {
      write("robustness_map.svg", renderRobustness(csv("ab/robustness_grid.csv")));
    }
  } else {
    console.log("skipping A/B figures (no ab/report.json)");
  }

  if (have("injection/injection.csv") && have("injection/fits.json")) {
    write("injection.svg",
      renderInjection(csv("injection/injection.csv"), json("injection/fits.json") as InjectionFits));
  } else {
    console.log("skipping injection.svg (no injection outputs)");
  }
}

main();
