/** Line view: pro / anti / neutral series over time with zoom presets. */

import type { Granularity, SeriesPoint } from "../types.js";

export const WIDTH = 880;
export const HEIGHT = 360;
const PLOT = { left: 56, right: 16, top: 12, bottom: 30 };

export const SERIES_KEYS = ["pro", "anti", "neutral"] as const;
export const SERIES_COLORS: Record<(typeof SERIES_KEYS)[number], string> = {
  pro: "#c0392b",
  anti: "#2471a3",
  neutral: "#7f8c8d",
};

/** Zoom presets, from one hour up to the whole window. */
export const ZOOM_PRESETS: { label: string; hours: number | null }[] = [
  { label: "1h", hours: 1 },
  { label: "6h", hours: 6 },
  { label: "1d", hours: 24 },
  { label: "1w", hours: 24 * 7 },
  { label: "all", hours: null },
];

export function renderLineView(points: SeriesPoint[], granularity: Granularity): string {
  if (!points.length) {
    return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" data-view="line" data-granularity="${granularity}">` +
      `<text class="no-data" x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle">no data in range</text></svg>`;
  }
  const plotW = WIDTH - PLOT.left - PLOT.right;
  const plotH = HEIGHT - PLOT.top - PLOT.bottom;
  const maxY = Math.max(1, ...points.flatMap((p) => [p.pro, p.anti, p.neutral]));
  const step = points.length > 1 ? plotW / (points.length - 1) : 0;
  const toX = (i: number) => PLOT.left + (points.length > 1 ? i * step : plotW / 2);
  const toY = (v: number) => PLOT.top + plotH - (v / maxY) * plotH;

  const polylines = SERIES_KEYS.map((key) => {
    const pts = points.map((p, i) => `${toX(i).toFixed(1)},${toY(p[key]).toFixed(1)}`).join(" ");
    return `<polyline class="series" data-series="${key}" data-points="${points.length}" points="${pts}" fill="none" stroke="${SERIES_COLORS[key]}" stroke-width="1.5"/>`;
  }).join("");

  // Invisible hover markers carry the exact payload numbers per bucket.
  const markers = points
    .map((p, i) => {
      return (
        `<g class="bucket" data-bucket-start="${p.bucket_start}" data-pro="${p.pro}" data-anti="${p.anti}" data-neutral="${p.neutral}">` +
        `<circle cx="${toX(i).toFixed(1)}" cy="${toY(p.pro).toFixed(1)}" r="2" fill="${SERIES_COLORS.pro}">` +
        `<title>${p.bucket_start}: pro ${p.pro}, anti ${p.anti}, neutral ${p.neutral}</title></circle></g>`
      );
    })
    .join("");

  const first = points[0]!.bucket_start;
  const last = points[points.length - 1]!.bucket_start;
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" data-view="line" data-granularity="${granularity}">` +
    `<line x1="${PLOT.left}" y1="${PLOT.top + plotH}" x2="${PLOT.left + plotW}" y2="${PLOT.top + plotH}" stroke="#999"/>` +
    `<line x1="${PLOT.left}" y1="${PLOT.top}" x2="${PLOT.left}" y2="${PLOT.top + plotH}" stroke="#999"/>` +
    `<text x="${PLOT.left}" y="${HEIGHT - 8}" class="axis-label">${first}</text>` +
    `<text x="${PLOT.left + plotW}" y="${HEIGHT - 8}" text-anchor="end" class="axis-label">${last}</text>` +
    `<text x="14" y="${PLOT.top + 4}" class="axis-label">${maxY}</text>` +
    polylines +
    markers +
    `</svg>`
  );
}

/** Peak bucket by total volume (used by the header readout). */
export function peakBucket(points: SeriesPoint[]): SeriesPoint | null {
  if (!points.length) return null;
  return points.reduce((best, p) => (p.pro + p.anti + p.neutral > best.pro + best.anti + best.neutral ? p : best));
}
