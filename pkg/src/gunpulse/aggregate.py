"""Bucketing of classified tweets into the immutable snapshot artifact.

All bucketing is UTC-aligned epoch arithmetic. Every (bucket, state) pair
with data gets a point, plus a national "US" rollup that also absorbs
tweets without a resolved state, so national counts always equal state
sums plus unresolved counts.
"""

from __future__ import annotations

import gzip
import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ._util import ARTIFACT_VERSION, canonical_dumps
from .geo import PopulationTable
from .ingest import CorpusWindow, Tweet
from .labels import SentimentLabel
from .scoring import PGPSSResult, SentimentCounts, StateScores, score_all_states

HOUR = 3_600
DAY = 86_400
NATIONAL = "US"

#: (tweet, label, resolved state or None)
ClassifiedTweet = tuple[Tweet, SentimentLabel, Optional[str]]


@dataclass(frozen=True)
class SeriesPoint:
    bucket_start: int  # UTC epoch seconds, aligned to the granularity
    granularity: str  # "hour" | "day"
    state_code: str  # two-letter code or "US"
    counts: SentimentCounts


@dataclass(frozen=True)
class TagFrequency:
    tag: str
    kind: str  # "hashtag" | "mention"
    count: int


def _bucket_start(ts: int, granularity: str) -> int:
    width = HOUR if granularity == "hour" else DAY
    return ts - (ts % width)


def bucket_counts(records: Sequence[ClassifiedTweet], granularity: str) -> list[SeriesPoint]:
    """Per-(bucket, state) sentiment counts plus a "US" rollup per bucket."""
    if granularity not in ("hour", "day"):
        raise ValueError(f"granularity must be 'hour' or 'day', got {granularity!r}")
    acc: dict[tuple[int, str], list[int]] = {}
    for tweet, label, state in records:
        bucket = _bucket_start(tweet.timestamp, granularity)
        for key in ((bucket, state) if state else (), (bucket, NATIONAL)):
            if not key:
                continue
            cell = acc.setdefault(key, [0, 0, 0])
            cell[int(label)] += 1
    points = []
    for (bucket, state), (pro, anti, neutral) in sorted(acc.items()):
        points.append(
            SeriesPoint(
                bucket_start=bucket,
                granularity=granularity,
                state_code=state,
                counts=SentimentCounts(pro=pro, anti=anti, neutral=neutral),
            )
        )
    return points


def top_tags(tweets: Iterable[Tweet], kind: str, n: int) -> list[TagFrequency]:
    """Top-n tags by count; ties broken lexicographically."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if kind not in ("hashtag", "mention"):
        raise ValueError(f"kind must be 'hashtag' or 'mention', got {kind!r}")
    counts: dict[str, int] = {}
    for tw in tweets:
        for tag in tw.hashtags if kind == "hashtag" else tw.mentions:
            counts[tag] = counts.get(tag, 0) + 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [TagFrequency(tag=t, kind=kind, count=c) for t, c in ranked[:n]]


@dataclass(frozen=True)
class Snapshot:
    """Everything the service exposes, precomputed and immutable."""

    window: CorpusWindow
    classifier_id: str
    series: tuple[SeriesPoint, ...]
    pgpss_daily: tuple[PGPSSResult, ...]
    top_hashtags: tuple[TagFrequency, ...]
    top_mentions: tuple[TagFrequency, ...]
    totals: SentimentCounts
    states: dict  # code -> {population, gun_ownership_pct}
    provenance: Optional[dict] = None

    def national_population(self) -> int:
        return sum(v["population"] for v in self.states.values())

    def population_table(self) -> PopulationTable:
        return PopulationTable(states=dict(self.states), national_population=self.national_population())

    def daily_state_counts(self, start: int, end: int) -> dict[str, SentimentCounts]:
        """Sum per-state daily counts over buckets inside [start, end]."""
        acc: dict[str, SentimentCounts] = {}
        for pt in self.series:
            if pt.granularity != "day" or pt.state_code == NATIONAL:
                continue
            if start <= pt.bucket_start <= end:
                acc[pt.state_code] = acc.get(pt.state_code, SentimentCounts()) + pt.counts
        return acc

    def validate(self) -> None:
        """Check the conservation invariants; raises ValueError on failure."""
        daily: dict[tuple[int, str], SentimentCounts] = {}
        hourly_sum: dict[tuple[int, str], SentimentCounts] = {}
        for pt in self.series:
            key_day = (_bucket_start(pt.bucket_start, "day"), pt.state_code)
            if pt.granularity == "day":
                daily[key_day] = pt.counts
            else:
                hourly_sum[key_day] = hourly_sum.get(key_day, SentimentCounts()) + pt.counts
        if set(daily) != set(hourly_sum):
            raise ValueError("hourly and daily series cover different (day, state) cells")
        for key, counts in daily.items():
            if counts != hourly_sum[key]:
                raise ValueError(f"hourly counts do not sum to daily counts at {key}")
        for (day, state), counts in list(daily.items()):
            if state == NATIONAL:
                state_total = SentimentCounts()
                for (d2, s2), c2 in daily.items():
                    if d2 == day and s2 != NATIONAL:
                        state_total = state_total + c2
                if not (
                    state_total.pro <= counts.pro
                    and state_total.anti <= counts.anti
                    and state_total.neutral <= counts.neutral
                ):
                    raise ValueError(f"national counts smaller than state sums on day {day}")
        total = SentimentCounts()
        for pt in self.series:
            if pt.granularity == "day" and pt.state_code == NATIONAL:
                total = total + pt.counts
        if total != self.totals:
            raise ValueError("snapshot totals do not match the national daily series")

    def to_json(self) -> str:
        doc = {
            "version": ARTIFACT_VERSION,
            "window": {"start": self.window.start, "end": self.window.end},
            "classifier_id": self.classifier_id,
            "states": [
                {
                    "code": code,
                    "population": v["population"],
                    "gun_ownership_pct": v["gun_ownership_pct"],
                }
                for code, v in sorted(self.states.items())
            ],
            "series": [
                {
                    "bucket_start": pt.bucket_start,
                    "granularity": pt.granularity,
                    "state": pt.state_code,
                    "pro": pt.counts.pro,
                    "anti": pt.counts.anti,
                    "neutral": pt.counts.neutral,
                }
                for pt in self.series
            ],
            "pgpss_daily": [
                {
                    "day_start": res.window.start,
                    "states": res.to_dict()["states"],
                }
                for res in self.pgpss_daily
            ],
            "top_hashtags": [{"tag": t.tag, "count": t.count} for t in self.top_hashtags],
            "top_mentions": [{"tag": t.tag, "count": t.count} for t in self.top_mentions],
            "totals": {
                "pro": self.totals.pro,
                "anti": self.totals.anti,
                "neutral": self.totals.neutral,
            },
        }
        if self.provenance:
            doc["provenance"] = self.provenance
        return canonical_dumps(doc)

    @classmethod
    def from_json(cls, payload: str) -> "Snapshot":
        doc = json.loads(payload)
        if doc.get("version") != ARTIFACT_VERSION:
            raise ValueError(f"unsupported snapshot version: {doc.get('version')}")
        window = CorpusWindow(doc["window"]["start"], doc["window"]["end"])
        series = tuple(
            SeriesPoint(
                bucket_start=e["bucket_start"],
                granularity=e["granularity"],
                state_code=e["state"],
                counts=SentimentCounts(e["pro"], e["anti"], e["neutral"]),
            )
            for e in doc["series"]
        )
        pgpss_daily = tuple(
            PGPSSResult(
                window=CorpusWindow(e["day_start"], e["day_start"] + DAY - 1),
                states=tuple(
                    StateScores(
                        s["code"], s["raw1"], s["raw2"], s["raw3"], s["norm1"], s["norm2"], s["norm3"]
                    )
                    for s in e["states"]
                ),
            )
            for e in doc["pgpss_daily"]
        )
        return cls(
            window=window,
            classifier_id=doc["classifier_id"],
            series=series,
            pgpss_daily=pgpss_daily,
            top_hashtags=tuple(
                TagFrequency(t["tag"], "hashtag", t["count"]) for t in doc["top_hashtags"]
            ),
            top_mentions=tuple(
                TagFrequency(t["tag"], "mention", t["count"]) for t in doc["top_mentions"]
            ),
            totals=SentimentCounts(**doc["totals"]),
            states={e["code"]: {
                "population": e["population"],
                "gun_ownership_pct": e["gun_ownership_pct"],
            } for e in doc["states"]},
            provenance=doc.get("provenance"),
        )


def build_snapshot(
    records: Sequence[ClassifiedTweet],
    pop: PopulationTable,
    window: CorpusWindow,
    classifier_id: str = "oracle",
    top_n: int = 20,
    provenance: Optional[dict] = None,
) -> Snapshot:
    """Assemble the full snapshot from classified, state-assigned tweets."""
    hourly = bucket_counts(records, "hour")
    daily = bucket_counts(records, "day")

    per_day_states: dict[int, dict[str, SentimentCounts]] = {}
    for pt in daily:
        if pt.state_code == NATIONAL:
            continue
        per_day_states.setdefault(pt.bucket_start, {})[pt.state_code] = pt.counts
    pgpss_daily = tuple(
        score_all_states(states, CorpusWindow(day, day + DAY - 1), pop)
        for day, states in sorted(per_day_states.items())
    )

    totals = [0, 0, 0]
    for _, label, _ in records:
        totals[int(label)] += 1

    tweets = [tw for tw, _, _ in records]
    return Snapshot(
        window=window,
        classifier_id=classifier_id,
        series=tuple(daily) + tuple(hourly),
        pgpss_daily=pgpss_daily,
        top_hashtags=tuple(top_tags(tweets, "hashtag", top_n)),
        top_mentions=tuple(top_tags(tweets, "mention", top_n)),
        totals=SentimentCounts(*totals),
        states=dict(pop.states),
        provenance=provenance,
    )


def save_snapshot(snapshot: Snapshot, path) -> None:
    payload = snapshot.to_json()
    if str(path).endswith(".gz"):
        # mtime pinned so identical snapshots produce identical .gz bytes
        with gzip.GzipFile(filename="", mode="wb", fileobj=open(path, "wb"), mtime=0) as fh:
            fh.write(payload.encode("utf-8"))
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)


def load_snapshot(path) -> Snapshot:
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rt", encoding="utf-8") as fh:
        return Snapshot.from_json(fh.read())
