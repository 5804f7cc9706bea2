/** String-based SVG construction.
 *
 * Everything goes through fmt() so the output is stable down to the byte,
 * which is what the golden tests hash.
 */

import { Scale } from "./scale.js";

export function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite value: ${x}`);
  return Number(x.toPrecision(6)).toString();
}

export function el(
  name: string,
  attrs: Record<string, string | number>,
  children: string[] = [],
  text?: string,
): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${typeof v === "number" ? fmt(v) : v}"`)
    .join("");
  if (children.length === 0 && text === undefined) return `<${name}${a}/>`;
  return `<${name}${a}>${text ?? ""}${children.join("")}</${name}>`;
}

export interface Frame {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const DEFAULT_FRAME: Frame = {
  width: 640,
  height: 420,
  left: 72,
  top: 40,
  right: 24,
  bottom: 56,
};

export function plotRange(f: Frame): { x: [number, number]; y: [number, number] } {
  return {
    x: [f.left, f.width - f.right],
    y: [f.height - f.bottom, f.top], // y grows upward on screen
  };
}

function tickLabel(v: number): string {
  const a = Math.abs(v);
  if (v !== 0 && (a >= 1e5 || a < 1e-3)) return v.toExponential(1).replace("e+", "e");
  return fmt(v);
}

export function axes(
  f: Frame,
  xs: Scale,
  ys: Scale,
  opts: { title: string; xLabel: string; yLabel: string; xLog?: boolean; yLog?: boolean },
): string[] {
  const out: string[] = [];
  const x0 = f.left;
  const x1 = f.width - f.right;
  const y0 = f.height - f.bottom;
  const y1 = f.top;
  out.push(el("rect", {
    x: x0, y: y1, width: x1 - x0, height: y0 - y1,
    fill: "none", stroke: "#333", "stroke-width": 1,
  }));
  for (const t of xs.ticks()) {
    const px = xs.map(t);
    out.push(el("line", { x1: px, y1: y0, x2: px, y2: y0 + 5, stroke: "#333" }));
    out.push(el("line", {
      x1: px, y1: y0, x2: px, y2: y1, stroke: "#ddd", "stroke-width": 0.5,
    }));
    out.push(el("text", {
      x: px, y: y0 + 18, "text-anchor": "middle", "font-size": 11,
    }, [], tickLabel(t)));
  }
  for (const t of ys.ticks()) {
    const py = ys.map(t);
    out.push(el("line", { x1: x0 - 5, y1: py, x2: x0, y2: py, stroke: "#333" }));
    out.push(el("line", {
      x1: x0, y1: py, x2: x1, y2: py, stroke: "#ddd", "stroke-width": 0.5,
    }));
    out.push(el("text", {
      x: x0 - 8, y: py + 4, "text-anchor": "end", "font-size": 11,
    }, [], tickLabel(t)));
  }
  out.push(el("text", {
    x: (x0 + x1) / 2, y: 22, "text-anchor": "middle", "font-size": 14, "font-weight": "bold",
  }, [], opts.title));
  out.push(el("text", {
    x: (x0 + x1) / 2, y: f.height - 12, "text-anchor": "middle", "font-size": 12,
  }, [], opts.xLabel));
  out.push(el("text", {
    x: 16, y: (y0 + y1) / 2, "font-size": 12, "text-anchor": "middle",
    transform: `rotate(-90 16 ${fmt((y0 + y1) / 2)})`,
  }, [], opts.yLabel));
  return out;
}

export function polyline(
  xs: number[], ys: number[], attrs: Record<string, string | number>,
): string {
  if (xs.length !== ys.length) throw new Error("polyline length mismatch");
  const pts = xs.map((x, i) => `${fmt(x)},${fmt(ys[i]!)}`).join(" ");
  return el("polyline", { points: pts, fill: "none", ...attrs });
}

export function document(f: Frame, children: string[]): string {
  return el("svg", {
    xmlns: "http://www.w3.org/2000/svg",
    width: f.width,
    height: f.height,
    viewBox: `0 0 ${f.width} ${f.height}`,
    "font-family": "sans-serif",
  }, [
    el("rect", { x: 0, y: 0, width: f.width, height: f.height, fill: "white" }),
    ...children,
  ]) + "\n";
}
