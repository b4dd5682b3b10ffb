/** Browser bootstrap: DOM wiring around the headless Dashboard.
 *
 * Configuration is limited to the service base URL (?api=... query
 * parameter, default http://127.0.0.1:8000). The full view state lives in
 * location.hash, so reloading a deep link restores the identical view.
 */

import { ApiClient } from "./api.js";
import { Dashboard } from "./controller.js";
import type { GeoDoc } from "./geometry.js";
import { decodeState } from "./state.js";
import { ZOOM_PRESETS } from "./views/line.js";

const apiBase =
  new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8000";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function boot(): Promise<void> {
  const banner = el<HTMLDivElement>("error-banner");
  const chart = el<HTMLDivElement>("chart");
  const api = new ApiClient(apiBase);

  let geo: GeoDoc;
  let dashboard: Dashboard;
  try {
    geo = (await (await fetch("assets/us_states_simplified.geojson")).json()) as GeoDoc;
    dashboard = await Dashboard.create(api, geo, (html, state) => {
      chart.innerHTML = html;
      syncControls();
      const encoded = dashboard.encodeHash();
      if (window.location.hash.replace(/^#/, "") !== encoded) {
        history.replaceState(null, "", `#${encoded}`);
      }
    });
  } catch (err) {
    banner.textContent = `service unreachable at ${apiBase}: ${err instanceof Error ? err.message : err}`;
    banner.hidden = false;
    return;
  }
  dashboard.onError = (message) => {
    banner.textContent = message;
    banner.hidden = false;
  };

  const dates = el<HTMLInputElement>("date-slider");
  const dateLabel = el<HTMLSpanElement>("date-label");
  const windowDays =
    Math.round((Date.parse(dashboard.windowEnd) - Date.parse(dashboard.windowStart)) / 86_400_000) + 1;
  dates.min = "0";
  dates.max = String(windowDays - 1);

  function dayToDate(day: number): string {
    return new Date(Date.parse(`${dashboard.windowStart}T00:00:00Z`) + day * 86_400_000)
      .toISOString()
      .slice(0, 10);
  }

  function dateToDay(date: string): number {
    return Math.round((Date.parse(date) - Date.parse(dashboard.windowStart)) / 86_400_000);
  }

  function syncControls(): void {
    const s = dashboard.state;
    for (const name of ["bubble", "line", "map"]) {
      el<HTMLButtonElement>(`view-${name}`).classList.toggle("active", s.view === name);
    }
    el<HTMLSelectElement>("score-select").value = s.score;
    el<HTMLSelectElement>("granularity-select").value = s.granularity;
    dates.value = String(dateToDay(s.date));
    dateLabel.textContent = s.date;
    el<HTMLInputElement>("from-input").value = s.from;
    el<HTMLInputElement>("to-input").value = s.to;
    el<HTMLInputElement>("bars-toggle").checked = s.bars;
    el<HTMLInputElement>("trail-input").value = s.trail.join(",");
    document.body.dataset["view"] = s.view;
  }

  for (const name of ["bubble", "line", "map"] as const) {
    el<HTMLButtonElement>(`view-${name}`).addEventListener("click", () => {
      banner.hidden = true;
      void dashboard.set({ view: name });
    });
  }
  el<HTMLSelectElement>("score-select").addEventListener("change", (ev) => {
    void dashboard.set({ score: (ev.target as HTMLSelectElement).value as never });
  });
  el<HTMLSelectElement>("granularity-select").addEventListener("change", (ev) => {
    void dashboard.set({ granularity: (ev.target as HTMLSelectElement).value as never });
  });
  dates.addEventListener("change", () => {
    void dashboard.set({ date: dayToDate(Number(dates.value)) });
  });
  el<HTMLInputElement>("from-input").addEventListener("change", (ev) => {
    void dashboard.set({ from: (ev.target as HTMLInputElement).value });
  });
  el<HTMLInputElement>("to-input").addEventListener("change", (ev) => {
    void dashboard.set({ to: (ev.target as HTMLInputElement).value });
  });
  el<HTMLInputElement>("bars-toggle").addEventListener("change", (ev) => {
    void dashboard.set({ bars: (ev.target as HTMLInputElement).checked });
  });
  el<HTMLInputElement>("trail-input").addEventListener("change", (ev) => {
    const value = (ev.target as HTMLInputElement).value;
    void dashboard.set({ trail: value.split(",").map((s) => s.trim().toUpperCase()).filter(Boolean) });
  });

  // Zoom preset buttons shrink the range ending at the window end.
  const zoomBox = el<HTMLSpanElement>("zoom-presets");
  for (const preset of ZOOM_PRESETS) {
    const button = document.createElement("button");
    button.textContent = preset.label;
    button.addEventListener("click", () => {
      if (preset.hours === null) {
        void dashboard.set({ from: dashboard.windowStart, to: dashboard.windowEnd });
        return;
      }
      const endMs = Date.parse(`${dashboard.state.to}T00:00:00Z`);
      const fromDate = new Date(Math.max(
        Date.parse(`${dashboard.windowStart}T00:00:00Z`),
        endMs - Math.max(0, preset.hours - 24) * 3_600_000,
      )).toISOString().slice(0, 10);
      void dashboard.set({
        from: fromDate,
        granularity: preset.hours <= 48 ? "hour" : "day",
      });
    });
    zoomBox.appendChild(button);
  }

  let autoplayTimer: number | null = null;
  el<HTMLButtonElement>("autoplay-toggle").addEventListener("click", () => {
    if (autoplayTimer !== null) {
      window.clearInterval(autoplayTimer);
      autoplayTimer = null;
      return;
    }
    autoplayTimer = window.setInterval(() => void dashboard.stepDate(1), 900);
  });

  window.addEventListener("hashchange", () => {
    dashboard.state = decodeState(window.location.hash, dashboard.windowStart, dashboard.windowEnd);
    void dashboard.refresh();
  });

  dashboard.state = decodeState(window.location.hash, dashboard.windowStart, dashboard.windowEnd);
  await dashboard.refresh();
}

void boot();
