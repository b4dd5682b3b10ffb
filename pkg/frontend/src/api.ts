/** Typed client for the snapshot API with per-channel staleness guards.
 *
 * Every logical view ("bubble", "series", "map", ...) keeps a request
 * sequence number; when responses arrive out of order the late response
 * of an older request resolves to null instead of clobbering newer data
 * (last-selected state wins).
 */

import type { BubbleRow, Granularity, MapRow, Meta, ScoreVariant, SeriesPoint, TagRow } from "./types.js";

export type FetchLike = (url: string) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(readonly status: number, readonly code: string, message: string) {
    super(message);
  }
}

export class ApiClient {
  private sequences = new Map<string, number>();

  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string, params?: Record<string, string>): Promise<T> {
    const query = params && Object.keys(params).length ? `?${new URLSearchParams(params)}` : "";
    const response = await this.fetchFn(`${this.baseUrl}${path}${query}`);
    const body = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      throw new ApiError(
        response.status,
        String(body["code"] ?? "unknown"),
        String(body["message"] ?? `HTTP ${response.status}`),
      );
    }
    return body as T;
  }

  /** Latest-wins fetch: resolves null if a newer request on the same
   * channel started before this one finished. */
  async latest<T>(channel: string, path: string, params?: Record<string, string>): Promise<T | null> {
    const seq = (this.sequences.get(channel) ?? 0) + 1;
    this.sequences.set(channel, seq);
    const result = await this.get<T>(path, params);
    return this.sequences.get(channel) === seq ? result : null;
  }

  meta(): Promise<Meta> {
    return this.get<Meta>("/api/meta");
  }

  series(granularity: Granularity, state: string, from?: string, to?: string): Promise<SeriesPoint[] | null> {
    const params: Record<string, string> = { granularity, state };
    if (from) params["from"] = from;
    if (to) params["to"] = to;
    return this.latest<SeriesPoint[]>("series", "/api/series", params);
  }

  map(score: ScoreVariant, from?: string, to?: string): Promise<MapRow[] | null> {
    const params: Record<string, string> = { score };
    if (from) params["from"] = from;
    if (to) params["to"] = to;
    return this.latest<MapRow[]>("map", "/api/map", params);
  }

  tags(kind: "hashtag" | "mention", n = 20): Promise<TagRow[] | null> {
    return this.latest<TagRow[]>(`tags-${kind}`, "/api/tags", { kind, n: String(n) });
  }

  bubble(date: string): Promise<BubbleRow[] | null> {
    return this.latest<BubbleRow[]>("bubble", "/api/bubble", { date });
  }
}
