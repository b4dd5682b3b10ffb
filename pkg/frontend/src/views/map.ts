/** Choropleth view: one state shape per row of /api/map, gradient-filled
 * by the normalized score. States absent from the response render in
 * neutral gray with a "no data" tooltip. The hover tooltip always shows
 * the state's gun-ownership share from /api/meta.
 */

import type { StateShape } from "../geometry.js";
import type { MapRow, MetaState, ScoreVariant } from "../types.js";

export const WIDTH = 880;
export const HEIGHT = 520;

export function scoreColor(norm: number): string {
  // light yellow (0) to deep red (1)
  const t = Math.max(0, Math.min(1, norm));
  const g = Math.round(235 - t * 175);
  const b = Math.round(200 - t * 170);
  return `rgb(245,${g},${b})`;
}

export const NO_DATA_FILL = "#d5d8dc";

export function renderMapView(
  shapes: StateShape[],
  rows: MapRow[],
  meta: MetaState[],
  score: ScoreVariant,
  from: string,
  to: string,
): string {
  const byState = new Map(rows.map((r) => [r.state, r]));
  const ownership = new Map(meta.map((s) => [s.code, s.gun_ownership_pct]));
  const paths = shapes
    .map((shape) => {
      const row = byState.get(shape.code);
      const pct = ownership.get(shape.code);
      const pctLabel = pct === undefined ? "unknown" : `${(pct * 100).toFixed(1)}%`;
      if (!row) {
        return (
          `<path class="state no-data" data-state="${shape.code}" d="${shape.path}" fill="${NO_DATA_FILL}" stroke="#fff">` +
          `<title>${shape.code}: no data (gun ownership ${pctLabel})</title></path>`
        );
      }
      return (
        `<path class="state" data-state="${shape.code}" data-raw="${row.raw}" data-norm="${row.norm}"` +
        ` d="${shape.path}" fill="${scoreColor(row.norm)}" stroke="#fff">` +
        `<title>${shape.code}: ${score} ${row.norm.toFixed(4)} (raw ${row.raw.toFixed(6)}), ` +
        `gun ownership ${pctLabel}</title></path>`
      );
    })
    .join("");
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" data-view="map" data-score="${score}" data-from="${from}" data-to="${to}">` +
    paths +
    `</svg>`
  );
}
