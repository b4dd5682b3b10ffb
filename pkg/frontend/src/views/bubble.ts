/** Bubble (motion-chart) view.
 *
 * Six variables at once: X = neutral-tweet count, Y = normalized PGPSS3,
 * one bubble per state, bubble size = population, bubble color =
 * gun-ownership share, date on the slider. A trail overlays a state's
 * day-by-day trajectory; the embedded bar-chart toggle reuses the same
 * payload (bars = tweet volume, ordered and annotated by pro-gun count).
 *
 * Every rendered number is carried verbatim in data-* attributes so tests
 * (and curious users) can trace each mark back to an API response field.
 */

import type { BubbleRow } from "../types.js";

export const WIDTH = 720;
export const HEIGHT = 440;
const PLOT = { left: 60, right: 24, top: 16, bottom: 42 };

export interface BubbleTrail {
  state: string;
  /** one point per day in the window, in date order */
  points: { date: string; row: BubbleRow }[];
}

function scaleLinear(domainMax: number, rangeMax: number) {
  const d = domainMax > 0 ? domainMax : 1;
  return (v: number) => (v / d) * rangeMax;
}

export function ownershipColor(pct: number): string {
  // 0 -> blue, 1 -> red through neutral gray
  const t = Math.max(0, Math.min(1, pct));
  const r = Math.round(70 + t * 185);
  const b = Math.round(230 - t * 180);
  return `rgb(${r},90,${b})`;
}

export function bubbleRadius(population: number, maxPopulation: number): number {
  if (maxPopulation <= 0) return 4;
  return 4 + 26 * Math.sqrt(population / maxPopulation);
}

export function renderBubbleView(
  rows: BubbleRow[],
  date: string,
  trails: BubbleTrail[] = [],
  bars = false,
): string {
  if (!rows.length) {
    return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" data-view="bubble" data-date="${date}">` +
      `<text class="no-data" x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle">no data for ${date}</text></svg>`;
  }
  return bars ? renderBars(rows, date) : renderBubbles(rows, date, trails);
}

function renderBubbles(rows: BubbleRow[], date: string, trails: BubbleTrail[]): string {
  const plotW = WIDTH - PLOT.left - PLOT.right;
  const plotH = HEIGHT - PLOT.top - PLOT.bottom;
  const maxX = Math.max(...rows.map((r) => r.neutral_count));
  const maxPop = Math.max(...rows.map((r) => r.population));
  const sx = scaleLinear(maxX, plotW);
  const toX = (v: number) => PLOT.left + sx(v);
  const toY = (norm: number) => PLOT.top + (1 - Math.max(0, Math.min(1, norm))) * plotH;

  const marks = rows
    .map((r) => {
      const cx = toX(r.neutral_count).toFixed(1);
      const cy = toY(r.pgpss3_norm).toFixed(1);
      const radius = bubbleRadius(r.population, maxPop).toFixed(1);
      return (
        `<g class="bubble" data-state="${r.state}" data-neutral-count="${r.neutral_count}"` +
        ` data-pgpss3-norm="${r.pgpss3_norm}" data-population="${r.population}"` +
        ` data-gun-ownership-pct="${r.gun_ownership_pct}" data-pro-count="${r.pro_count}" data-total="${r.total}">` +
        `<circle cx="${cx}" cy="${cy}" r="${radius}" fill="${ownershipColor(r.gun_ownership_pct)}" fill-opacity="0.75">` +
        `<title>${r.state}: neutral ${r.neutral_count}, PGPSS3 ${r.pgpss3_norm.toFixed(4)}, ` +
        `population ${r.population}, ownership ${(r.gun_ownership_pct * 100).toFixed(1)}%</title></circle>` +
        `<text x="${cx}" y="${cy}" text-anchor="middle" dy="4" class="bubble-label">${r.state}</text></g>`
      );
    })
    .join("");

  const trailMarks = trails
    .filter((t) => t.points.length)
    .map((t) => {
      const pts = t.points
        .map((p) => `${toX(p.row.neutral_count).toFixed(1)},${toY(p.row.pgpss3_norm).toFixed(1)}`)
        .join(" ");
      return (
        `<polyline class="trail" data-state="${t.state}" data-points="${t.points.length}"` +
        ` points="${pts}" fill="none" stroke="#444" stroke-dasharray="3 2"/>`
      );
    })
    .join("");

  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" data-view="bubble" data-date="${date}">` +
    axis(plotW, plotH, maxX) +
    trailMarks +
    marks +
    `</svg>`
  );
}

function axis(plotW: number, plotH: number, maxX: number): string {
  return (
    `<g class="axes">` +
    `<line x1="${PLOT.left}" y1="${PLOT.top + plotH}" x2="${PLOT.left + plotW}" y2="${PLOT.top + plotH}" stroke="#999"/>` +
    `<line x1="${PLOT.left}" y1="${PLOT.top}" x2="${PLOT.left}" y2="${PLOT.top + plotH}" stroke="#999"/>` +
    `<text x="${PLOT.left + plotW / 2}" y="${HEIGHT - 8}" text-anchor="middle" class="axis-label">neutral tweets (0..${maxX})</text>` +
    `<text x="14" y="${PLOT.top + plotH / 2}" transform="rotate(-90 14 ${PLOT.top + plotH / 2})" text-anchor="middle" class="axis-label">PGPSS3 (normalized)</text>` +
    `</g>`
  );
}

function renderBars(rows: BubbleRow[], date: string): string {
  const plotW = WIDTH - PLOT.left - PLOT.right;
  const plotH = HEIGHT - PLOT.top - PLOT.bottom;
  const ordered = [...rows].sort((a, b) => b.pro_count - a.pro_count || (a.state < b.state ? -1 : 1));
  const maxTotal = Math.max(...ordered.map((r) => r.total));
  const maxPop = Math.max(...ordered.map((r) => r.population));
  const band = plotW / ordered.length;
  const bars = ordered
    .map((r, i) => {
      const h = maxTotal > 0 ? (r.total / maxTotal) * plotH : 0;
      const x = (PLOT.left + i * band + band * 0.1).toFixed(1);
      const shade = maxPop > 0 ? 0.25 + 0.75 * (r.population / maxPop) : 1;
      return (
        `<g class="bar" data-state="${r.state}" data-total="${r.total}" data-pro-count="${r.pro_count}"` +
        ` data-population="${r.population}">` +
        `<rect x="${x}" y="${(PLOT.top + plotH - h).toFixed(1)}" width="${(band * 0.8).toFixed(1)}"` +
        ` height="${h.toFixed(1)}" fill="rgba(60,90,200,${shade.toFixed(3)})">` +
        `<title>${r.state}: ${r.total} tweets, ${r.pro_count} pro-gun</title></rect>` +
        `<text x="${(PLOT.left + i * band + band / 2).toFixed(1)}" y="${HEIGHT - 24}" text-anchor="middle" class="bar-label">${r.state}</text></g>`
      );
    })
    .join("");
  return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" data-view="bubble-bars" data-date="${date}">${bars}</svg>`;
}
