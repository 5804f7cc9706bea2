/** Linear and log10 scales with nice tick placement. */

export interface Scale {
  map(v: number): number;
  ticks(): number[];
  domain: [number, number];
}

/** Round a raw step to the nearest 1/2/5 decade multiple. */
function niceStep(span: number, target: number): number {
  const raw = span / Math.max(target, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) return m * mag;
  }
  return 10 * mag;
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
  tickTarget = 6,
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  if (!(d1 > d0)) throw new Error(`degenerate domain [${d0}, ${d1}]`);
  const k = (r1 - r0) / (d1 - d0);
  const step = niceStep(d1 - d0, tickTarget);
  return {
    domain,
    map: (v) => r0 + (v - d0) * k,
    ticks: () => {
      const out: number[] = [];
      for (let t = Math.ceil(d0 / step) * step; t <= d1 + 1e-9 * step; t += step) {
        out.push(Math.abs(t) < 1e-12 * step ? 0 : t);
      }
      return out;
    },
  };
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (!(d0 > 0 && d1 > d0)) throw new Error(`log scale needs 0 < lo < hi, got [${d0}, ${d1}]`);
  const inner = linearScale([Math.log10(d0), Math.log10(d1)], range);
  return {
    domain,
    map: (v) => inner.map(Math.log10(v)),
    ticks: () => {
      const out: number[] = [];
      const e0 = Math.ceil(Math.log10(d0) - 1e-9);
      const e1 = Math.floor(Math.log10(d1) + 1e-9);
      for (let e = e0; e <= e1; e++) {
        out.push(Number(`1e${e}`));
      }
      return out;
    },
  };
}

/** Padded [min, max] of a data vector. */
export function extent(values: number[], pad = 0.05): [number, number] {
  if (values.length === 0) throw new Error("extent of empty vector");
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) throw new Error("non-finite value in data");
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (hi === lo) {
    hi = lo + (lo === 0 ? 1 : Math.abs(lo) * 0.1);
  }
  const span = hi - lo;
  return [lo - pad * span, hi + pad * span];
}
