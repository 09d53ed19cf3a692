/**
 * Deterministic SVG figures over the simulator CSV: BER curves on a log
 * axis and classification-accuracy curves with Wilson confidence bands.
 * No timestamps, no randomness: one (CSV, spec) pair yields one byte
 * sequence, so figure diffs always mean data diffs.
 */

import { SimRow, CsvSchemaError } from "./csv.js";

export type FigureKind = "ber-awgn" | "ber-vlc" | "gca-awgn" | "gca-vlc";

export const FIGURE_KINDS: FigureKind[] = ["ber-awgn", "ber-vlc", "gca-awgn", "gca-vlc"];

export interface FigureSpec {
  kind: FigureKind;
  levels: string[]; // e.g. ["A", "D", "F"]
}

const WIDTH = 820;
const HEIGHT = 560;
const MARGIN = { left: 78, right: 24, top: 46, bottom: 96 };

const SCHEME_COLOR: Record<string, string> = {
  proposed: "#1f5fa8",
  baseline: "#c23b22",
};
const DASH_CYCLE = ["", "6 3", "2 3", "8 3 2 3", "4 2", "10 4"];

/** Dash pattern is a pure function of the level label so renders never
 * depend on call order. */
function dashFor(level: string): string {
  let ordinal = 0;
  if (/^[A-Z]$/.test(level)) {
    ordinal = level.charCodeAt(0) - 65;
  } else {
    const m = /^L(\d+)$/.exec(level);
    if (m) ordinal = Number(m[1]) - 1;
  }
  return DASH_CYCLE[((ordinal % DASH_CYCLE.length) + DASH_CYCLE.length) % DASH_CYCLE.length];
}

function channelOf(kind: FigureKind): string {
  return kind.endsWith("awgn") ? "awgn" : "vlc";
}

function metricOf(kind: FigureKind): "ber" | "gca" {
  return kind.startsWith("ber") ? "ber" : "gca";
}

function fmt(v: number): string {
  return Number(v.toFixed(3)).toString();
}

interface Series {
  scheme: string;
  level: string;
  points: SimRow[];
}

function collectSeries(rows: SimRow[], spec: FigureSpec): Series[] {
  const channel = channelOf(spec.kind);
  const filtered = rows.filter((r) => r.channel === channel);
  if (filtered.length === 0) {
    throw new CsvSchemaError(`no rows for channel ${channel} in this CSV`);
  }
  const present = new Set(filtered.map((r) => r.level));
  for (const level of spec.levels) {
    if (!present.has(level)) {
      throw new CsvSchemaError(`requested level ${level} not present in the CSV`);
    }
  }
  const series: Series[] = [];
  for (const scheme of ["proposed", "baseline"]) {
    for (const level of spec.levels) {
      const points = filtered
        .filter((r) => r.scheme === scheme && r.level === level)
        .sort((a, b) => a.param - b.param);
      if (points.length > 0) {
        series.push({ scheme, level, points });
      }
    }
  }
  return series;
}

function xScale(params: number[]): (v: number) => number {
  const lo = Math.min(...params);
  const hi = Math.max(...params);
  const span = hi - lo || 1;
  return (v) => MARGIN.left + ((v - lo) / span) * (WIDTH - MARGIN.left - MARGIN.right);
}

/** Log-axis floor: half the smallest positive value, so zero-BER points stay drawable. */
function logFloor(values: number[]): number {
  const positive = values.filter((v) => v > 0);
  if (positive.length === 0) return 1e-8;
  return Math.min(...positive) / 2;
}

function yScaleLog(values: number[]): { scale: (v: number) => number; floor: number; decades: number[] } {
  const floor = logFloor(values);
  const top = Math.max(...values, floor * 10);
  const lo = Math.floor(Math.log10(floor));
  const hi = Math.ceil(Math.log10(top));
  const scale = (v: number) => {
    const clamped = Math.max(v, floor);
    const t = (Math.log10(clamped) - lo) / (hi - lo || 1);
    return HEIGHT - MARGIN.bottom - t * (HEIGHT - MARGIN.top - MARGIN.bottom);
  };
  const decades: number[] = [];
  for (let d = lo; d <= hi; d++) decades.push(d);
  return { scale, floor, decades };
}

function yScaleLinear(values: number[]): { scale: (v: number) => number; lo: number; hi: number } {
  const lo = Math.max(0, Math.min(...values) - 0.02);
  const hi = 1.0;
  const scale = (v: number) =>
    HEIGHT - MARGIN.bottom - ((v - lo) / (hi - lo || 1)) * (HEIGHT - MARGIN.top - MARGIN.bottom);
  return { scale, lo, hi };
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderFigure(rows: SimRow[], spec: FigureSpec): string {
  const series = collectSeries(rows, spec);
  const metric = metricOf(spec.kind);
  const channel = channelOf(spec.kind);
  const params = [...new Set(series.flatMap((s) => s.points.map((p) => p.param)))].sort((a, b) => a - b);
  const sx = xScale(params);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  const xLabel = channel === "awgn" ? "Eb/N0 per coded bit (dB)" : "interference coefficient h";
  const yLabel = metric === "ber" ? "message-bit error rate" : "group classification accuracy";
  const title =
    (metric === "ber" ? "BER" : "GCA") + " over the " + (channel === "awgn" ? "AWGN" : "VLC-ISI") + " channel";

  const plotBottom = HEIGHT - MARGIN.bottom;
  const plotTop = MARGIN.top;

  let yTicks: { v: number; label: string }[] = [];
  let sy: (v: number) => number;
  if (metric === "ber") {
    const values = series.flatMap((s) => s.points.map((p) => p.ber));
    const { scale, decades } = yScaleLog(values);
    sy = scale;
    yTicks = decades.map((d) => ({ v: 10 ** d, label: `1e${d}` }));
  } else {
    const values = series.flatMap((s) => s.points.flatMap((p) => [p.gca_lo, p.gca]));
    const { scale, lo, hi } = yScaleLinear(values);
    sy = scale;
    const step = (hi - lo) / 5;
    for (let i = 0; i <= 5; i++) {
      const v = lo + i * step;
      yTicks.push({ v, label: fmt(v) });
    }
  }

  // axes and grid
  parts.push(`<g stroke="#444" stroke-width="1">`);
  parts.push(`<line x1="${MARGIN.left}" y1="${plotBottom}" x2="${WIDTH - MARGIN.right}" y2="${plotBottom}"/>`);
  parts.push(`<line x1="${MARGIN.left}" y1="${plotTop}" x2="${MARGIN.left}" y2="${plotBottom}"/>`);
  parts.push(`</g>`);
  for (const t of yTicks) {
    const y = sy(t.v);
    parts.push(`<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${WIDTH - MARGIN.right}" y2="${fmt(y)}" stroke="#ddd"/>`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="12">${t.label}</text>`);
  }
  for (const p of params) {
    const x = sx(p);
    parts.push(`<line x1="${fmt(x)}" y1="${plotBottom}" x2="${fmt(x)}" y2="${plotBottom + 5}" stroke="#444"/>`);
    parts.push(`<text x="${fmt(x)}" y="${plotBottom + 20}" text-anchor="middle" font-size="12">${p}</text>`);
  }
  parts.push(`<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${plotBottom + 40}" text-anchor="middle" font-size="13">${esc(xLabel)}</text>`);
  parts.push(`<text x="20" y="${(plotTop + plotBottom) / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${(plotTop + plotBottom) / 2})">${esc(yLabel)}</text>`);
  parts.push(`<text x="${WIDTH / 2}" y="26" text-anchor="middle" font-size="16">${esc(title)}</text>`);

  // confidence bands first so curves draw on top
  if (metric === "gca") {
    for (const s of series) {
      const upper = s.points.map((p) => `${fmt(sx(p.param))},${fmt(sy(p.gca_hi))}`);
      const lower = [...s.points].reverse().map((p) => `${fmt(sx(p.param))},${fmt(sy(p.gca_lo))}`);
      parts.push(
        `<polygon points="${upper.join(" ")} ${lower.join(" ")}" fill="${SCHEME_COLOR[s.scheme] ?? "#777"}" opacity="0.12"/>`,
      );
    }
  }

  for (const s of series) {
    const color = SCHEME_COLOR[s.scheme] ?? "#777";
    const dash = dashFor(s.level);
    const coords = s.points.map((p) => {
      const v = metric === "ber" ? p.ber : p.gca;
      return `${fmt(sx(p.param))},${fmt(sy(v))}`;
    });
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    parts.push(`<polyline points="${coords.join(" ")}" fill="none" stroke="${color}" stroke-width="2"${dashAttr}/>`);
    for (const c of coords) {
      const [x, y] = c.split(",");
      parts.push(`<circle cx="${x}" cy="${y}" r="3" fill="${color}"/>`);
    }
  }

  // legend
  let ly = plotTop + 6;
  for (const s of series) {
    const color = SCHEME_COLOR[s.scheme] ?? "#777";
    const dash = dashFor(s.level);
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    const lx = WIDTH - MARGIN.right - 170;
    parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 28}" y2="${ly}" stroke="${color}" stroke-width="2"${dashAttr}/>`);
    parts.push(`<text x="${lx + 34}" y="${ly + 4}" font-size="12">${esc(`${s.scheme} ${s.level}`)}</text>`);
    ly += 16;
  }

  // caption: seed and trial counts straight from the CSV rows
  const seeds = [...new Set(series.flatMap((s) => s.points.map((p) => p.seed)))].sort((a, b) => a - b);
  const totalTrials = series.reduce((acc, s) => acc + s.points.reduce((a, p) => a + p.trials, 0), 0);
  const caption = `seed ${seeds.join(",")}; ${totalTrials} trials over ${params.length} channel points`;
  parts.push(`<text x="${MARGIN.left}" y="${HEIGHT - 16}" font-size="11" fill="#555">${esc(caption)}</text>`);

  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}
