/** Payload shapes of the snapshot API. Field names mirror the service
 * responses exactly; the dashboard never derives sentiment numbers of its
 * own, it only positions and labels what the API returns. */

export interface MetaState {
  code: string;
  population: number;
  gun_ownership_pct: number;
}

export interface Meta {
  window: { start: number; end: number; start_date: string; end_date: string };
  classifier_id: string;
  totals: { pro: number; anti: number; neutral: number };
  states: MetaState[];
}

export interface SeriesPoint {
  bucket_start: string;
  pro: number;
  anti: number;
  neutral: number;
}

export interface MapRow {
  state: string;
  raw: number;
  norm: number;
}

export interface TagRow {
  tag: string;
  count: number;
}

export interface BubbleRow {
  state: string;
  neutral_count: number;
  pgpss3_norm: number;
  population: number;
  gun_ownership_pct: number;
  pro_count: number;
  total: number;
}

export type ScoreVariant = "pgpss1" | "pgpss2" | "pgpss3";
export type Granularity = "hour" | "day";
