/** The five figure renderers.
 *
 * Each takes already-parsed CLI outputs and returns a complete SVG string.
 * Rendering is pure and deterministic: same inputs, same bytes.
 */

import { Table, numericColumn } from "./csv.js";
import { extent, linearScale, logScale } from "./scale.js";
import { DEFAULT_FRAME, axes, document, el, fmt, plotRange, polyline } from "./svg.js";

export interface FitEntry {
  model: string;
  params: Record<string, number>;
  stderr: Record<string, number>;
  rss: number;
  converged: boolean;
}

export interface ExposureFit {
  omega_q_rad_s: number;
  free: FitEntry;
}

export interface AbReport {
  median_delta_gamma_per_s: number;
  ci_low_per_s: number;
  ci_high_per_s: number;
  n_pairs: number;
  wilcoxon: { p_value: number; statistic: number; n: number };
  pint_from_median_over_pext: number;
  pint_curve: { delta_gamma_per_s: number; pint_over_pext: number }[];
}

export interface InjectionFits {
  rate_coeff_per_s: number;
  ranking: string[];
  fits: Record<string, FitEntry>;
}

const POINT = { fill: "#1f5fa8", r: 2.5 };
const LINE = { stroke: "#c44e52", "stroke-width": 1.8 };
const TRUTH = { stroke: "#777", "stroke-width": 1, "stroke-dasharray": "4 3" };

/** Exposure decay: measured relaxation rate vs time with the fit overlay. */
export function renderExposure(exposure: Table, fit: ExposureFit): string {
  const f = DEFAULT_FRAME;
  const pr = plotRange(f);
  const tH = numericColumn(exposure, "t_s").map((t) => t / 3600);
  const meas = numericColumn(exposure, "gamma1_measured_per_s");
  const pTot = numericColumn(exposure, "p_tot_kev_s_mm3");
  const { a, gamma_other } = fit.free.params;
  if (a === undefined || gamma_other === undefined) throw new Error("fit lacks a/gamma_other");
  const model = pTot.map((p) => a * Math.sqrt(fit.omega_q_rad_s * p) + gamma_other);

  const xs = linearScale(extent(tH), pr.x);
  const ys = linearScale(extent(meas.concat(model)), pr.y);
  const body: string[] = axes(f, xs, ys, {
    title: "Source exposure: relaxation rate vs time",
    xLabel: "time since source installation (h)",
    yLabel: "Gamma_1 (1/s)",
  });
  for (let i = 0; i < tH.length; i++) {
    body.push(el("circle", { cx: xs.map(tH[i]!), cy: ys.map(meas[i]!), ...POINT }));
  }
  body.push(polyline(tH.map((t) => xs.map(t)), model.map((m) => ys.map(m)), LINE));
  body.push(el("text", {
    x: pr.x[1] - 8, y: pr.y[1] + 16, "text-anchor": "end", "font-size": 11, fill: "#c44e52",
  }, [], `fit: a = ${fmt(a)}, Gamma_other = ${fmt(gamma_other)} 1/s`));
  return document(f, body);
}

/** Histogram of per-pair shield-state rate differences, with median and CI. */
export function renderHistogram(hist: Table, report: AbReport): string {
  const f = DEFAULT_FRAME;
  const pr = plotRange(f);
  const lo = numericColumn(hist, "bin_lo_per_s");
  const hi = numericColumn(hist, "bin_hi_per_s");
  const count = numericColumn(hist, "count");
  const xs = linearScale([lo[0]!, hi[hi.length - 1]!], pr.x);
  const ys = linearScale([0, Math.max(...count) * 1.05], pr.y);
  const body: string[] = axes(f, xs, ys, {
    title: `Shield A/B rate differences (n = ${report.n_pairs} pairs)`,
    xLabel: "delta Gamma_1, up minus down (1/s)",
    yLabel: "pairs per bin",
  });
  for (let i = 0; i < lo.length; i++) {
    const x0 = xs.map(lo[i]!);
    body.push(el("rect", {
      x: x0, y: ys.map(count[i]!),
      width: xs.map(hi[i]!) - x0, height: ys.map(0) - ys.map(count[i]!),
      fill: "#7ca6ce", stroke: "#41618b", "stroke-width": 0.5,
    }));
  }
  const cx0 = xs.map(report.ci_low_per_s);
  body.push(el("rect", {
    x: cx0, y: pr.y[1], width: xs.map(report.ci_high_per_s) - cx0,
    height: pr.y[0] - pr.y[1], fill: "#c44e52", "fill-opacity": 0.15,
  }));
  const mx = xs.map(report.median_delta_gamma_per_s);
  body.push(el("line", { x1: mx, y1: pr.y[0], x2: mx, y2: pr.y[1], ...LINE }));
  body.push(el("text", {
    x: pr.x[1] - 8, y: pr.y[1] + 16, "text-anchor": "end", "font-size": 11,
  }, [], `median ${fmt(report.median_delta_gamma_per_s)} 1/s, p = ${report.wilcoxon.p_value.toExponential(2)}`));
  return document(f, body);
}

/** Expected shield effect vs internal power, with the measured band. */
export function renderPintCurve(report: AbReport): string {
  const f = DEFAULT_FRAME;
  const pr = plotRange(f);
  const px = report.pint_curve.map((p) => p.pint_over_pext);
  const dg = report.pint_curve.map((p) => p.delta_gamma_per_s);
  const xs = linearScale([px[0]!, px[px.length - 1]!], pr.x);
  const ys = linearScale(extent(dg.concat([report.ci_low_per_s, report.ci_high_per_s])), pr.y);
  const body: string[] = axes(f, xs, ys, {
    title: "Shield effect vs internal radiation power",
    xLabel: "P_int / P_ext",
    yLabel: "expected delta Gamma_1 (1/s)",
  });
  const yLo = ys.map(report.ci_high_per_s);
  body.push(el("rect", {
    x: pr.x[0], y: yLo, width: pr.x[1] - pr.x[0],
    height: ys.map(report.ci_low_per_s) - yLo, fill: "#55a868", "fill-opacity": 0.2,
  }));
  const my = ys.map(report.median_delta_gamma_per_s);
  body.push(el("line", {
    x1: pr.x[0], y1: my, x2: pr.x[1], y2: my,
    stroke: "#55a868", "stroke-width": 1.5, "stroke-dasharray": "6 3",
  }));
  body.push(polyline(px.map((v) => xs.map(v)), dg.map((v) => ys.map(v)), {
    stroke: "#1f5fa8", "stroke-width": 1.8,
  }));
  const ix = xs.map(report.pint_from_median_over_pext);
  body.push(el("line", { x1: ix, y1: pr.y[0], x2: ix, y2: my, ...TRUTH }));
  body.push(el("text", {
    x: ix + 5, y: pr.y[0] - 8, "font-size": 11,
  }, [], `P_int/P_ext = ${fmt(report.pint_from_median_over_pext)}`));
  return document(f, body);
}

/** Robustness map: Wilcoxon p-value across pairing mode and analysis cuts. */
export function renderRobustness(grid: Table): string {
  const pairings: string[] = [];
  for (const r of grid.rows) {
    const p = String(r["pairing"]);
    if (!pairings.includes(p)) pairings.push(p);
  }
  const cutoffs = [...new Set(numericColumn(grid, "t1_cutoff_us"))].sort((a, b) => a - b);
  const sigmas = [...new Set(numericColumn(grid, "outlier_sigma"))].sort((a, b) => a - b);

  const cell = 46;
  const panelW = cutoffs.length * cell;
  const panelH = sigmas.length * cell;
  const f = {
    width: 90 + pairings.length * (panelW + 28), height: panelH + 130,
    left: 0, right: 0, top: 0, bottom: 0,
  };
  const body: string[] = [el("text", {
    x: f.width / 2, y: 24, "text-anchor": "middle", "font-size": 14, "font-weight": "bold",
  }, [], "Detection robustness: one-sided Wilcoxon p across analysis cuts")];

  // color: log10(p) from 0 (white) down to -12 (dark blue), clipped
  const shade = (p: number): string => {
    const t = Math.min(1, Math.max(0, -Math.log10(Math.max(p, 1e-300)) / 12));
    const ch = Math.round(235 - 180 * t);
    return `rgb(${Math.round(245 - 190 * t)},${ch},245)`;
  };

  pairings.forEach((pairing, pi) => {
    const ox = 70 + pi * (panelW + 28);
    const oy = 56;
    body.push(el("text", {
      x: ox + panelW / 2, y: oy - 8, "text-anchor": "middle", "font-size": 12,
    }, [], `pairing: ${pairing}`));
    for (const row of grid.rows) {
      if (String(row["pairing"]) !== pairing) continue;
      const ci = cutoffs.indexOf(row["t1_cutoff_us"] as number);
      const si = sigmas.indexOf(row["outlier_sigma"] as number);
      const p = row["p_value"] as number;
      const valid = row["valid"] === 1;
      body.push(el("rect", {
        x: ox + ci * cell, y: oy + si * cell, width: cell, height: cell,
        fill: valid ? shade(p) : "#eee", stroke: "#999", "stroke-width": 0.5,
      }));
      body.push(el("text", {
        x: ox + ci * cell + cell / 2, y: oy + si * cell + cell / 2 + 4,
        "text-anchor": "middle", "font-size": 9,
      }, [], valid ? p.toExponential(0) : "n/a"));
    }
    cutoffs.forEach((c, ci) => {
      body.push(el("text", {
        x: ox + ci * cell + cell / 2, y: oy + panelH + 14,
        "text-anchor": "middle", "font-size": 10,
      }, [], fmt(c)));
    });
    body.push(el("text", {
      x: ox + panelW / 2, y: oy + panelH + 30, "text-anchor": "middle", "font-size": 11,
    }, [], "T1 cutoff (us)"));
    if (pi === 0) {
      sigmas.forEach((s, si) => {
        body.push(el("text", {
          x: ox - 8, y: oy + si * cell + cell / 2 + 4,
          "text-anchor": "end", "font-size": 10,
        }, [], fmt(s)));
      });
      body.push(el("text", {
        x: 20, y: oy + panelH / 2, "font-size": 11, "text-anchor": "middle",
        transform: `rotate(-90 20 ${fmt(oy + panelH / 2)})`,
      }, [], "outlier sigma"));
    }
  });
  return document(f, body);
}

function xqpClosed(x0: number, r: number, s: number, t: number): number {
  if (t <= 0) return x0;
  if (s === 0) return x0 / (1 + x0 * r * t);
  if (r === 0) return x0 * Math.exp(-s * t);
  const e = Math.exp(-s * t);
  return (x0 * s * e) / (s + r * x0 * (1 - e));
}

/** Injection recovery on log-log axes with the two leading model fits. */
export function renderInjection(series: Table, fits: InjectionFits): string {
  const f = DEFAULT_FRAME;
  const pr = plotRange(f);
  const t = numericColumn(series, "t_s");
  const g = numericColumn(series, "gamma1_per_s");
  const xs = logScale([t[0]!, t[t.length - 1]!], pr.x);
  const ys = logScale([Math.min(...g) / 1.5, Math.max(...g) * 1.5], pr.y);
  const body: string[] = axes(f, xs, ys, {
    title: "Quasiparticle injection recovery",
    xLabel: "delay after injection (s)",
    yLabel: "Gamma_1 (1/s)",
  });
  for (let i = 0; i < t.length; i++) {
    body.push(el("circle", { cx: xs.map(t[i]!), cy: ys.map(g[i]!), ...POINT }));
  }
  const colors = ["#c44e52", "#55a868"];
  fits.ranking.slice(0, 2).forEach((name, k) => {
    const fit = fits.fits[name];
    if (!fit) throw new Error(`missing fit '${name}'`);
    const { x0, r, s, gamma_other } = fit.params;
    const n = 200;
    const lt0 = Math.log10(t[0]!);
    const lt1 = Math.log10(t[t.length - 1]!);
    const tc: number[] = [];
    const gc: number[] = [];
    for (let i = 0; i <= n; i++) {
      const ti = Math.pow(10, lt0 + ((lt1 - lt0) * i) / n);
      tc.push(ti);
      gc.push(fits.rate_coeff_per_s * xqpClosed(x0!, r!, s!, ti) + gamma_other!);
    }
    body.push(polyline(tc.map((v) => xs.map(v)), gc.map((v) => ys.map(v)), {
      stroke: colors[k]!, "stroke-width": 1.6,
      ...(k === 1 ? { "stroke-dasharray": "5 3" } : {}),
    }));
    body.push(el("text", {
      x: pr.x[0] + 10, y: pr.y[1] + 16 + 14 * k, "font-size": 11, fill: colors[k]!,
    }, [], `${k + 1}. ${fit.model} (rss ${fit.rss.toExponential(2)})`));
  });
  return document(f, body);
}
