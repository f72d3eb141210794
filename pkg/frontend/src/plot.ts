import { writeFileSync } from "fs";
import { ResultRow, loadResultsCsv } from "./csv";

/** What to render: one results.csv in, one SVG out. */
export interface PlotSpec {
  inputPath: string;
  outputPath: string;
  xField: "sweep_value";
  xLabel: string;
  logY: boolean;
  /** sweep_value at which bound curves are shifted onto the empirical mean;
   *  defaults to the smallest sweep value. */
  calibrationPoint?: number;
  title?: string;
}

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 44, right: 168, bottom: 56, left: 76 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

const COLORS = {
  mean: "#1f77b4",
  band: "#aec7e8",
  ours: "#ff9900",
  shah: "#2ca02c",
};

const px = (value: number): string => value.toFixed(2);

function tickLabel(value: number, logY: boolean): string {
  if (logY) {
    const exponent = Math.round(Math.log10(value));
    return `1e${exponent}`;
  }
  const magnitude = Math.abs(value);
  if (magnitude !== 0 && (magnitude >= 1e4 || magnitude < 1e-2)) {
    return value.toExponential(1);
  }
  return Number(value.toPrecision(4)).toString();
}

function xTickLabel(value: number): string {
  return Number(value.toPrecision(4)).toString();
}

interface Scale {
  (value: number): number;
  ticks: number[];
}

function makeLinearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  const scale = ((value: number) =>
    outLo + ((value - lo) / span) * (outHi - outLo)) as Scale;
  const step = span / 4;
  scale.ticks = [0, 1, 2, 3, 4].map((k) => lo + k * step);
  return scale;
}

function makeLogScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const tLo = Math.log10(lo);
  const tHi = Math.log10(hi);
  const span = tHi - tLo || 1;
  const scale = ((value: number) =>
    outLo + ((Math.log10(value) - tLo) / span) * (outHi - outLo)) as Scale;
  const first = Math.ceil(tLo);
  const last = Math.floor(tHi);
  const decades = Math.max(last - first, 0);
  const step = Math.max(1, Math.ceil(decades / 6));
  const ticks: number[] = [];
  for (let e = first; e <= last; e += step) {
    ticks.push(Math.pow(10, e));
  }
  scale.ticks = ticks.length > 0 ? ticks : [lo, hi];
  return scale;
}

function polyline(xs: number[], ys: number[]): string {
  return xs.map((x, i) => `${px(x)},${px(ys[i])}`).join(" ");
}

/**
 * Render one figure: empirical mean line with its 95% CI band, plus both
 * bound curves multiplicatively shifted to pass through the empirical mean
 * at the calibration point (a constant vertical shift on a log axis).
 *
 * A single-row input degenerates to markers only: no band, no curves.
 */
export function renderSvg(spec: PlotSpec, rows: ResultRow[]): string {
  const sorted = [...rows].sort((a, b) => a.sweep_value - b.sweep_value);
  const xs = sorted.map((r) => r.sweep_value);

  const calibration = spec.calibrationPoint ?? xs[0];
  const calibrated = sorted.find((r) => r.sweep_value === calibration);
  if (calibrated === undefined) {
    throw new Error(
      `calibration point ${calibration} is not a sweep value of ${spec.inputPath}` +
        ` (values: ${xs.join(", ")})`
    );
  }
  const oursShift = calibrated.mean_l2 / calibrated.bound_ours;
  const shahShift = calibrated.mean_l2 / calibrated.bound_shah;

  const series = {
    mean: sorted.map((r) => r.mean_l2),
    ciLow: sorted.map((r) => r.ci_low),
    ciHigh: sorted.map((r) => r.ci_high),
    ours: sorted.map((r) => r.bound_ours * oursShift),
    shah: sorted.map((r) => r.bound_shah * shahShift),
  };

  const yValues = [
    ...series.mean,
    ...series.ciLow,
    ...series.ciHigh,
    ...series.ours,
    ...series.shah,
  ].filter((v) => Number.isFinite(v) && (!spec.logY || v > 0));
  const yLo = Math.min(...yValues);
  const yHi = Math.max(...yValues);
  const pad = spec.logY ? Math.pow(yHi / yLo, 0.04) : (yHi - yLo) * 0.05 || 1;
  const yScale = spec.logY
    ? makeLogScale(yLo / pad, yHi * pad, MARGIN.top + PLOT_H, MARGIN.top)
    : makeLinearScale(yLo - pad, yHi + pad, MARGIN.top + PLOT_H, MARGIN.top);

  const xLo = xs[0];
  const xHi = xs[xs.length - 1];
  const xPad = (xHi - xLo) * 0.04 || 1;
  const xScale = makeLinearScale(xLo - xPad, xHi + xPad, MARGIN.left, MARGIN.left + PLOT_W);

  const X = xs.map((v) => xScale(v));
  const single = sorted.length === 1;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  // axes and grid
  const axisBottom = MARGIN.top + PLOT_H;
  for (const tick of yScale.ticks) {
    const y = yScale(tick);
    parts.push(
      `<line x1="${px(MARGIN.left)}" y1="${px(y)}" x2="${px(MARGIN.left + PLOT_W)}" ` +
        `y2="${px(y)}" stroke="#dddddd" stroke-width="1"/>`
    );
    parts.push(
      `<text x="${px(MARGIN.left - 8)}" y="${px(y + 4)}" text-anchor="end" ` +
        `font-size="12" fill="#333333">${tickLabel(tick, spec.logY)}</text>`
    );
  }
  for (const tick of xScale.ticks) {
    const x = xScale(tick);
    parts.push(
      `<line x1="${px(x)}" y1="${px(axisBottom)}" x2="${px(x)}" ` +
        `y2="${px(axisBottom + 5)}" stroke="#333333" stroke-width="1"/>`
    );
    parts.push(
      `<text x="${px(x)}" y="${px(axisBottom + 20)}" text-anchor="middle" ` +
        `font-size="12" fill="#333333">${xTickLabel(tick)}</text>`
    );
  }
  parts.push(
    `<rect x="${px(MARGIN.left)}" y="${px(MARGIN.top)}" width="${px(PLOT_W)}" ` +
      `height="${px(PLOT_H)}" fill="none" stroke="#333333" stroke-width="1"/>`
  );

  if (!single) {
    // CI band: forward along the upper edge, back along the lower edge
    const bandPoints =
      polyline(X, series.ciHigh.map((v) => yScale(v))) +
      " " +
      polyline([...X].reverse(), [...series.ciLow].reverse().map((v) => yScale(v)));
    parts.push(
      `<polygon points="${bandPoints}" fill="${COLORS.band}" fill-opacity="0.55" stroke="none"/>`
    );
    parts.push(
      `<polyline points="${polyline(X, series.ours.map((v) => yScale(v)))}" fill="none" ` +
        `stroke="${COLORS.ours}" stroke-width="2" stroke-dasharray="6,3"/>`
    );
    parts.push(
      `<polyline points="${polyline(X, series.shah.map((v) => yScale(v)))}" fill="none" ` +
        `stroke="${COLORS.shah}" stroke-width="2" stroke-dasharray="2,3"/>`
    );
    parts.push(
      `<polyline points="${polyline(X, series.mean.map((v) => yScale(v)))}" fill="none" ` +
        `stroke="${COLORS.mean}" stroke-width="2.5"/>`
    );
  }
  for (let i = 0; i < X.length; i++) {
    parts.push(
      `<circle cx="${px(X[i])}" cy="${px(yScale(series.mean[i]))}" r="3.5" ` +
        `fill="${COLORS.mean}"/>`
    );
    if (single) {
      parts.push(
        `<circle cx="${px(X[i])}" cy="${px(yScale(series.ours[i]))}" r="3.5" ` +
          `fill="${COLORS.ours}"/>`
      );
      parts.push(
        `<circle cx="${px(X[i])}" cy="${px(yScale(series.shah[i]))}" r="3.5" ` +
          `fill="${COLORS.shah}"/>`
      );
    }
  }

  // legend
  const legendX = MARGIN.left + PLOT_W + 14;
  const legend: Array<[string, string]> = [
    [COLORS.mean, "empirical mean"],
    [COLORS.band, "95% CI band"],
    [COLORS.ours, "fisher bound (shifted)"],
    [COLORS.shah, "range bound (shifted)"],
  ];
  legend.forEach(([color, label], index) => {
    const y = MARGIN.top + 12 + index * 20;
    parts.push(
      `<rect x="${px(legendX)}" y="${px(y - 9)}" width="14" height="10" fill="${color}"/>`
    );
    parts.push(
      `<text x="${px(legendX + 20)}" y="${px(y)}" font-size="12" fill="#333333">${label}</text>`
    );
  });

  // labels
  parts.push(
    `<text x="${px(MARGIN.left + PLOT_W / 2)}" y="${px(HEIGHT - 14)}" text-anchor="middle" ` +
      `font-size="14" fill="#111111">${spec.xLabel}</text>`
  );
  parts.push(
    `<text x="18" y="${px(MARGIN.top + PLOT_H / 2)}" text-anchor="middle" font-size="14" ` +
      `fill="#111111" transform="rotate(-90 18 ${px(MARGIN.top + PLOT_H / 2)})">` +
      `squared l2 error${spec.logY ? " (log scale)" : ""}</text>`
  );
  if (spec.title) {
    parts.push(
      `<text x="${px(WIDTH / 2)}" y="24" text-anchor="middle" font-size="16" ` +
        `fill="#111111">${spec.title}</text>`
    );
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/** Load, render, and write; returns the SVG text that was written. */
export function renderToFile(spec: PlotSpec): string {
  const rows = loadResultsCsv(spec.inputPath);
  const svg = renderSvg(spec, rows);
  writeFileSync(spec.outputPath, svg, "utf8");
  return svg;
}
