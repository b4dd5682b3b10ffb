/** Headless dashboard controller: state in, fetches out, markup to a
 * render sink. All DOM wiring lives in main.ts, so everything here is
 * directly testable against a fake fetch or a live service.
 */

import { ApiClient } from "./api.js";
import type { GeoDoc, StateShape } from "./geometry.js";
import { fitProjection, stateShapes } from "./geometry.js";
import { clampToWindow, datesInRange, defaultState, encodeState, type ViewState } from "./state.js";
import type { BubbleRow, Meta } from "./types.js";
import { renderBubbleView, type BubbleTrail } from "./views/bubble.js";
import { renderLineView } from "./views/line.js";
import { renderMapView, WIDTH as MAP_WIDTH, HEIGHT as MAP_HEIGHT } from "./views/map.js";

export interface RenderSink {
  (html: string, state: ViewState): void;
}

export class Dashboard {
  state: ViewState;
  /** day payloads are immutable per snapshot, so trail fetches are cached */
  private bubbleCache = new Map<string, BubbleRow[]>();
  onError: (message: string) => void = () => undefined;

  private constructor(
    readonly api: ApiClient,
    readonly meta: Meta,
    private readonly shapes: StateShape[],
    private readonly render: RenderSink,
  ) {
    this.state = defaultState(meta.window.start_date, meta.window.end_date);
  }

  static async create(api: ApiClient, geo: GeoDoc, render: RenderSink): Promise<Dashboard> {
    const meta = await api.meta();
    const shapes = stateShapes(geo, fitProjection(geo, MAP_WIDTH, MAP_HEIGHT));
    return new Dashboard(api, meta, shapes, render);
  }

  get windowStart(): string {
    return this.meta.window.start_date;
  }

  get windowEnd(): string {
    return this.meta.window.end_date;
  }

  encodeHash(): string {
    return encodeState(this.state);
  }

  /** Apply a state change (clamped to the window) and refetch the view. */
  async set(partial: Partial<ViewState>): Promise<void> {
    this.state = clampToWindow({ ...this.state, ...partial }, this.windowStart, this.windowEnd);
    await this.refresh();
  }

  async stepDate(days: number): Promise<void> {
    const dates = datesInRange(this.windowStart, this.windowEnd);
    const index = Math.max(0, dates.indexOf(this.state.date));
    const next = dates[(index + days + dates.length) % dates.length]!;
    await this.set({ date: next });
  }

  async refresh(): Promise<void> {
    try {
      if (this.state.view === "bubble") await this.renderBubble();
      else if (this.state.view === "line") await this.renderLine();
      else await this.renderMap();
    } catch (err) {
      this.onError(err instanceof Error ? err.message : String(err));
    }
  }

  private async bubbleRowsFor(date: string): Promise<BubbleRow[]> {
    const cached = this.bubbleCache.get(date);
    if (cached) return cached;
    const rows = (await this.api.bubble(date)) ?? [];
    this.bubbleCache.set(date, rows);
    return rows;
  }

  private async renderBubble(): Promise<void> {
    const rows = (await this.api.bubble(this.state.date)) ?? [];
    this.bubbleCache.set(this.state.date, rows);
    const trails: BubbleTrail[] = [];
    for (const code of this.state.trail) {
      const points: BubbleTrail["points"] = [];
      for (const date of datesInRange(this.windowStart, this.windowEnd)) {
        const dayRows = await this.bubbleRowsFor(date);
        const row = dayRows.find((r) => r.state === code);
        if (row) points.push({ date, row });
      }
      trails.push({ state: code, points });
    }
    this.render(renderBubbleView(rows, this.state.date, trails, this.state.bars), this.state);
  }

  private async renderLine(): Promise<void> {
    const points = await this.api.series(this.state.granularity, "US", this.state.from, this.state.to);
    if (points === null) return; // a newer request superseded this one
    this.render(renderLineView(points, this.state.granularity), this.state);
  }

  private async renderMap(): Promise<void> {
    const rows = await this.api.map(this.state.score, this.state.from, this.state.to);
    if (rows === null) return;
    this.render(
      renderMapView(this.shapes, rows, this.meta.states, this.state.score, this.state.from, this.state.to),
      this.state,
    );
  }
}
