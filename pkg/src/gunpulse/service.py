"""Read-only HTTP API over one immutable snapshot.

Every response is a pure function of the snapshot file, so identical
requests always produce identical bodies. Errors use a uniform JSON shape
{status, code, message} with status 400, 404 or 500. Date parameters are
inclusive UTC calendar dates (YYYY-MM-DD); sub-window scores are
recomputed by summing daily counts over the range and re-scoring (ratios
are not averaged).
"""

from __future__ import annotations

from datetime import datetime, timezone
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .aggregate import DAY, NATIONAL, Snapshot, load_snapshot
from .scoring import score_all_states
from .ingest import CorpusWindow


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        assert status in (400, 404, 500)
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message

    def body(self) -> dict:
        return {"status": self.status, "code": self.code, "message": self.message}


def _parse_date(value: str, param: str) -> int:
    """YYYY-MM-DD -> UTC epoch seconds of that day's start."""
    try:
        dt = datetime.strptime(value, "%Y-%m-%d").replace(tzinfo=timezone.utc)
    except ValueError:
        raise ApiError(400, "invalid_date", f"{param} must be YYYY-MM-DD, got {value!r}") from None
    return int(dt.timestamp())


def _epoch_to_iso(ts: int) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _epoch_to_date(ts: int) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%d")


def _range_from_params(snapshot: Snapshot, date_from: Optional[str], date_to: Optional[str]) -> tuple[int, int]:
    start = _parse_date(date_from, "from") if date_from else snapshot.window.start
    end = (_parse_date(date_to, "to") + DAY - 1) if date_to else snapshot.window.end
    if start > end:
        raise ApiError(400, "invalid_range", "from is after to")
    return start, end


def create_app(snapshot: Snapshot) -> FastAPI:
    app = FastAPI(title="gunpulse snapshot API", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body())

    @app.exception_handler(404)
    async def _not_found(_request: Request, _exc):
        return JSONResponse(
            status_code=404,
            content={"status": 404, "code": "not_found", "message": "unknown endpoint"},
        )

    @app.exception_handler(Exception)
    async def _internal(_request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"status": 500, "code": "internal_error", "message": str(exc)},
        )

    @app.get("/api/meta")
    def meta():
        return {
            "window": {
                "start": snapshot.window.start,
                "end": snapshot.window.end,
                "start_date": _epoch_to_date(snapshot.window.start),
                "end_date": _epoch_to_date(snapshot.window.end),
            },
            "classifier_id": snapshot.classifier_id,
            "totals": {
                "pro": snapshot.totals.pro,
                "anti": snapshot.totals.anti,
                "neutral": snapshot.totals.neutral,
            },
            "states": [
                {
                    "code": code,
                    "population": v["population"],
                    "gun_ownership_pct": v["gun_ownership_pct"],
                }
                for code, v in sorted(snapshot.states.items())
            ],
        }

    # Query strings are parsed by hand; fastapi's signature-driven
    # validation would answer 422 where the API contract wants 400.
    @app.get("/api/series")
    def series(request: Request):
        params = request.query_params
        granularity = params.get("granularity", "day")
        if granularity not in ("hour", "day"):
            raise ApiError(400, "invalid_granularity", f"granularity must be hour or day, got {granularity!r}")
        state = params.get("state", NATIONAL).upper()
        known = {pt.state_code for pt in snapshot.series}
        if state not in known and state != NATIONAL:
            raise ApiError(404, "unknown_state", f"no data for state {state!r}")
        start, end = _range_from_params(snapshot, params.get("from"), params.get("to"))
        out = [
            {
                "bucket_start": _epoch_to_iso(pt.bucket_start),
                "pro": pt.counts.pro,
                "anti": pt.counts.anti,
                "neutral": pt.counts.neutral,
            }
            for pt in snapshot.series
            if pt.granularity == granularity
            and pt.state_code == state
            and start <= pt.bucket_start <= end
        ]
        out.sort(key=lambda e: e["bucket_start"])
        return out

    @app.get("/api/map")
    def map_scores(request: Request):
        params = request.query_params
        score = params.get("score", "pgpss3")
        if score not in ("pgpss1", "pgpss2", "pgpss3"):
            raise ApiError(400, "invalid_score", f"score must be pgpss1|pgpss2|pgpss3, got {score!r}")
        start, end = _range_from_params(snapshot, params.get("from"), params.get("to"))
        counts = snapshot.daily_state_counts(start, end)
        if not counts:
            return []
        result = score_all_states(counts, CorpusWindow(start, end), snapshot.population_table())
        variant = int(score[-1])
        return [
            {
                "state": s.state_code,
                "raw": getattr(s, f"raw{variant}"),
                "norm": getattr(s, f"norm{variant}"),
            }
            for s in result.states
        ]

    @app.get("/api/tags")
    def tags(request: Request):
        params = request.query_params
        kind = params.get("kind", "hashtag")
        if kind not in ("hashtag", "mention"):
            raise ApiError(400, "invalid_kind", f"kind must be hashtag or mention, got {kind!r}")
        raw_n = params.get("n", "20")
        try:
            n = int(raw_n)
        except ValueError:
            raise ApiError(400, "invalid_n", f"n must be an integer, got {raw_n!r}") from None
        if n < 1:
            raise ApiError(400, "invalid_n", f"n must be >= 1, got {n}")
        source = snapshot.top_hashtags if kind == "hashtag" else snapshot.top_mentions
        return [{"tag": t.tag, "count": t.count} for t in source[:n]]

    @app.get("/api/bubble")
    def bubble(request: Request):
        params = request.query_params
        date = params.get("date")
        if not date:
            raise ApiError(400, "missing_date", "date=YYYY-MM-DD is required")
        day_start = _parse_date(date, "date")
        day_counts = snapshot.daily_state_counts(day_start, day_start + DAY - 1)
        if not day_counts:
            return []
        daily = {res.window.start: res for res in snapshot.pgpss_daily}
        scores = daily.get(day_start)
        if scores is None:
            scores = score_all_states(
                day_counts, CorpusWindow(day_start, day_start + DAY - 1), snapshot.population_table()
            )
        norm3 = {s.state_code: s.norm3 for s in scores.states}
        out = []
        for code in sorted(day_counts):
            c = day_counts[code]
            info = snapshot.states[code]
            out.append(
                {
                    "state": code,
                    "neutral_count": c.neutral,
                    "pgpss3_norm": norm3.get(code, 0.0),
                    "population": info["population"],
                    "gun_ownership_pct": info["gun_ownership_pct"],
                    "pro_count": c.pro,
                    "total": c.total,
                }
            )
        return out

    return app


def serve(snapshot_path, host: str = "127.0.0.1", port: int = 8000) -> None:
    """Load, validate and serve a snapshot until interrupted."""
    import uvicorn

    snapshot = load_snapshot(snapshot_path)
    snapshot.validate()
    uvicorn.run(create_app(snapshot), host=host, port=port, log_level="warning")
