/** View state and its URL-hash encoding.
 *
 * The full state of the dashboard round-trips through location.hash, so a
 * deep link restores the identical view. Date fields are clamped to the
 * snapshot window (reversed ranges are swapped, never rejected).
 */

import type { Granularity, ScoreVariant } from "./types.js";

export type ViewName = "bubble" | "line" | "map";

export interface ViewState {
  view: ViewName;
  score: ScoreVariant;
  /** bubble-view slider date (YYYY-MM-DD) */
  date: string;
  /** line/map range, inclusive dates */
  from: string;
  to: string;
  granularity: Granularity;
  /** states with the trail overlay enabled in the bubble view */
  trail: string[];
  /** bar-chart toggle of the bubble view */
  bars: boolean;
  autoplay: boolean;
}

export function defaultState(windowStart: string, windowEnd: string): ViewState {
  return {
    view: "map",
    score: "pgpss3",
    date: windowStart,
    from: windowStart,
    to: windowEnd,
    granularity: "day",
    trail: [],
    bars: false,
    autoplay: false,
  };
}

const VIEWS: ViewName[] = ["bubble", "line", "map"];
const SCORES: ScoreVariant[] = ["pgpss1", "pgpss2", "pgpss3"];

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("view", state.view);
  params.set("score", state.score);
  params.set("date", state.date);
  params.set("from", state.from);
  params.set("to", state.to);
  params.set("granularity", state.granularity);
  if (state.trail.length) params.set("trail", state.trail.join(","));
  if (state.bars) params.set("bars", "1");
  if (state.autoplay) params.set("autoplay", "1");
  return params.toString();
}

export function decodeState(hash: string, windowStart: string, windowEnd: string): ViewState {
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  const base = defaultState(windowStart, windowEnd);
  const view = params.get("view");
  if (view && (VIEWS as string[]).includes(view)) base.view = view as ViewName;
  const score = params.get("score");
  if (score && (SCORES as string[]).includes(score)) base.score = score as ScoreVariant;
  const granularity = params.get("granularity");
  if (granularity === "hour" || granularity === "day") base.granularity = granularity;
  base.date = params.get("date") ?? base.date;
  base.from = params.get("from") ?? base.from;
  base.to = params.get("to") ?? base.to;
  const trail = params.get("trail");
  base.trail = trail ? trail.split(",").filter(Boolean) : [];
  base.bars = params.get("bars") === "1";
  base.autoplay = params.get("autoplay") === "1";
  return clampToWindow(base, windowStart, windowEnd);
}

function isDate(value: string): boolean {
  return /^\d{4}-\d{2}-\d{2}$/.test(value);
}

export function clampDate(value: string, windowStart: string, windowEnd: string): string {
  if (!isDate(value)) return windowStart;
  if (value < windowStart) return windowStart;
  if (value > windowEnd) return windowEnd;
  return value;
}

/** Dates inside the window, reversed ranges swapped; never errors. */
export function clampToWindow(state: ViewState, windowStart: string, windowEnd: string): ViewState {
  let from = clampDate(state.from, windowStart, windowEnd);
  let to = clampDate(state.to, windowStart, windowEnd);
  if (from > to) [from, to] = [to, from];
  return { ...state, from, to, date: clampDate(state.date, windowStart, windowEnd) };
}

/** All dashboard dates are UTC calendar days, stepped by the slider. */
export function addDays(date: string, days: number): string {
  const ms = Date.parse(`${date}T00:00:00Z`) + days * 86_400_000;
  return new Date(ms).toISOString().slice(0, 10);
}

export function datesInRange(from: string, to: string): string[] {
  const out: string[] = [];
  for (let d = from; d <= to; d = addDays(d, 1)) out.push(d);
  return out;
}
