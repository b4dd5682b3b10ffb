/** Shared test fixtures: canned API payloads and a scriptable fetch. */

import type { FetchLike } from "../src/api.js";
import type { BubbleRow, MapRow, Meta, SeriesPoint } from "../src/types.js";

export const META: Meta = {
  window: {
    start: 1354838400,
    end: 1358294399,
    start_date: "2012-12-07",
    end_date: "2013-01-15",
  },
  classifier_id: "oracle",
  totals: { pro: 100, anti: 100, neutral: 50 },
  states: [
    { code: "AA", population: 10_000_000, gun_ownership_pct: 0.3 },
    { code: "BB", population: 1_000_000, gun_ownership_pct: 0.4 },
    { code: "CC", population: 2_000_000, gun_ownership_pct: 0.2 },
  ],
};

export const MAP_ROWS: MapRow[] = [
  { state: "AA", raw: 0.225023, norm: 1.0 },
  { state: "BB", raw: 0.0036, norm: 0.016 },
];

export const BUBBLE_ROWS: BubbleRow[] = [
  {
    state: "AA",
    neutral_count: 17,
    pgpss3_norm: 1.0,
    population: 10_000_000,
    gun_ownership_pct: 0.3,
    pro_count: 41,
    total: 90,
  },
  {
    state: "BB",
    neutral_count: 5,
    pgpss3_norm: 0.016,
    population: 1_000_000,
    gun_ownership_pct: 0.4,
    pro_count: 9,
    total: 20,
  },
];

export const SERIES: SeriesPoint[] = [
  { bucket_start: "2012-12-13T00:00:00Z", pro: 3, anti: 5, neutral: 2 },
  { bucket_start: "2012-12-14T00:00:00Z", pro: 30, anti: 41, neutral: 12 },
  { bucket_start: "2012-12-15T00:00:00Z", pro: 7, anti: 6, neutral: 3 },
];

export interface RecordingFetch {
  fetch: FetchLike;
  calls: string[];
}

/** fetch stub answering from a route table; records every URL. */
export function recordingFetch(routes: Record<string, unknown>): RecordingFetch {
  const calls: string[] = [];
  const fetchFn: FetchLike = async (url) => {
    calls.push(url);
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const bare = path.split("?")[0]!;
    const body = path in routes ? routes[path] : routes[bare];
    if (body === undefined) {
      return {
        ok: false,
        status: 404,
        json: async () => ({ status: 404, code: "not_found", message: path }),
      };
    }
    return { ok: true, status: 200, json: async () => body };
  };
  return { fetch: fetchFn, calls };
}

export const TEST_GEO = {
  features: [
    {
      properties: { state_code: "AA" },
      geometry: {
        type: "Polygon" as const,
        coordinates: [[[0, 0], [10, 0], [10, 10], [0, 10], [0, 0]]],
      },
    },
    {
      properties: { state_code: "BB" },
      geometry: {
        type: "Polygon" as const,
        coordinates: [[[12, 0], [20, 0], [20, 10], [12, 10], [12, 0]]],
      },
    },
    {
      properties: { state_code: "CC" },
      geometry: {
        type: "Polygon" as const,
        coordinates: [[[22, 0], [30, 0], [30, 10], [22, 10], [22, 0]]],
      },
    },
  ],
};
