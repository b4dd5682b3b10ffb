"""Ingestion: newline-delimited tweet JSON, filter rules, and the trimmed CSV.

Input schema (one JSON object per line): id (string), text (string),
timestamp (ISO-8601 string; integer epoch seconds also accepted), lat/lon
(numbers, optional), hashtags/mentions (arrays of string, optional),
lang (string, optional), country_code (string, optional), is_retweet
(boolean, default false).

Trimmed CSV layout (RFC-4180, header row):
    id,timestamp_utc,text,lat,lon,state,label,hashtags,mentions
hashtags/mentions are ';'-joined; state and label stay empty until the
geo and classify stages fill them.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import BinaryIO, Iterable, Optional, Sequence

import json


class CsvFormatError(ValueError):
    """A trimmed-CSV row that does not conform to the documented layout."""

    def __init__(self, row: int, reason: str):
        super().__init__(f"row {row}: {reason}")
        self.row = row
        self.reason = reason


@dataclass(frozen=True)
class Tweet:
    """One ingested record. Coordinates are (latitude, longitude) degrees."""

    id: str
    text: str
    timestamp: int  # seconds since Unix epoch, UTC
    coordinates: Optional[tuple[float, float]] = None
    hashtags: tuple[str, ...] = ()
    mentions: tuple[str, ...] = ()
    lang: str = "en"
    country_code: Optional[str] = None
    is_retweet: bool = False

    def __post_init__(self):
        if not self.id:
            raise ValueError("tweet id must be non-empty")
        if "\x00" in self.text or "\x00" in self.id:
            raise ValueError("NUL characters are not representable in the trimmed CSV")
        if self.coordinates is not None:
            lat, lon = self.coordinates
            if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
                raise ValueError(f"coordinates out of range: {self.coordinates}")
        for h in self.hashtags:
            if not h.startswith("#"):
                raise ValueError(f"hashtag missing '#' sigil: {h!r}")
        for m in self.mentions:
            if not m.startswith("@"):
                raise ValueError(f"mention missing '@' sigil: {m!r}")


@dataclass(frozen=True)
class FilterRules:
    """GNIP-style selection rules.

    A tweet is kept iff it matches at least one keyword, phrase, hashtag or
    mention, and additionally satisfies the country/lang/retweet filters
    when those are set. Keyword and phrase matching is case-insensitive on
    token boundaries (a keyword is a one-token phrase), so the keyword
    "guns" does not match the hashtag token "#guns"; list hashtags under
    ``hashtags`` instead.
    """

    keywords: tuple[str, ...] = ()
    phrases: tuple[str, ...] = ()
    hashtags: tuple[str, ...] = ()
    mentions: tuple[str, ...] = ()
    country_code: Optional[str] = None
    lang: Optional[str] = None
    exclude_retweets: bool = False

    def __post_init__(self):
        if not (self.keywords or self.phrases or self.hashtags or self.mentions):
            raise ValueError("at least one of keywords/phrases/hashtags/mentions must be non-empty")


@dataclass(frozen=True)
class CorpusWindow:
    """Inclusive UTC time window, in epoch seconds."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"window start {self.start} > end {self.end}")

    def contains(self, ts: int) -> bool:
        return self.start <= ts <= self.end


@dataclass(frozen=True)
class ParseIssue:
    """One problem found while parsing a line of input.

    severity "error" means the line produced no tweet; "warning" means the
    tweet was kept but degraded (e.g. out-of-range coordinates dropped).
    """

    line: int
    reason: str
    severity: str = "error"


def _parse_timestamp(value) -> int:
    if isinstance(value, bool):
        raise ValueError("timestamp must be an ISO-8601 string or epoch seconds")
    if isinstance(value, (int, float)):
        return int(value)
    if isinstance(value, str):
        text = value.strip()
        # Python 3.10's fromisoformat rejects a trailing Z.
        if text.endswith(("Z", "z")):
            text = text[:-1] + "+00:00"
        dt = datetime.fromisoformat(text)
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return int(dt.astimezone(timezone.utc).timestamp())
    raise ValueError(f"unparseable timestamp: {value!r}")


def _normalize_tags(values, sigil: str) -> tuple[str, ...]:
    out = []
    for v in values or ():
        v = str(v).strip().lower()
        if not v:
            continue
        if not v.startswith(sigil):
            v = sigil + v
        out.append(v)
    return tuple(out)


def parse_tweet_json(stream: BinaryIO | Iterable[bytes]) -> tuple[list[Tweet], list[ParseIssue]]:
    """Parse newline-delimited JSON into tweets plus per-line issues.

    Malformed lines never abort the run; each one is recorded as an
    error-severity issue. Lines whose only defect is an out-of-range
    coordinate pair keep their tweet (coordinates dropped) and record a
    warning. Blank lines are skipped. Input order is preserved, so
    len(tweets) + number of error-severity issues == number of non-empty
    lines.
    """
    tweets: list[Tweet] = []
    issues: list[ParseIssue] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.decode("utf-8", errors="replace") if isinstance(raw, (bytes, bytearray)) else raw
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            issues.append(ParseIssue(lineno, f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(obj, dict):
            issues.append(ParseIssue(lineno, "line is not a JSON object"))
            continue

        missing = [k for k in ("id", "text", "timestamp") if obj.get(k) in (None, "")]
        if missing:
            issues.append(ParseIssue(lineno, f"missing required field(s): {', '.join(missing)}"))
            continue
        try:
            ts = _parse_timestamp(obj["timestamp"])
        except (ValueError, TypeError) as exc:
            issues.append(ParseIssue(lineno, f"unparseable timestamp: {exc}"))
            continue

        coords = None
        lat, lon = obj.get("lat"), obj.get("lon")
        if lat is not None and lon is not None:
            try:
                coords = (float(lat), float(lon))
            except (TypeError, ValueError):
                coords = None
                issues.append(ParseIssue(lineno, "non-numeric coordinates dropped", severity="warning"))
            if coords is not None and not (-90.0 <= coords[0] <= 90.0 and -180.0 <= coords[1] <= 180.0):
                issues.append(
                    ParseIssue(lineno, f"coordinates out of range, dropped: {coords}", severity="warning")
                )
                coords = None

        try:
            tweets.append(
                Tweet(
                    id=str(obj["id"]).replace("\x00", ""),
                    text=str(obj["text"]).replace("\x00", ""),
                    timestamp=ts,
                    coordinates=coords,
                    hashtags=_normalize_tags(obj.get("hashtags"), "#"),
                    mentions=_normalize_tags(obj.get("mentions"), "@"),
                    lang=str(obj.get("lang") or "en"),
                    country_code=(str(obj["country_code"]) if obj.get("country_code") else None),
                    is_retweet=bool(obj.get("is_retweet", False)),
                )
            )
        except ValueError as exc:
            issues.append(ParseIssue(lineno, str(exc)))
    return tweets, issues


def _match_token_sequence(needle: Sequence[str], haystack: Sequence[str]) -> bool:
    n = len(needle)
    if n == 0 or n > len(haystack):
        return False
    first = needle[0]
    for i in range(len(haystack) - n + 1):
        if haystack[i] == first and list(haystack[i : i + n]) == list(needle):
            return True
    return False


def apply_filters(tweets: Sequence[Tweet], rules: FilterRules) -> list[Tweet]:
    """Keep the tweets selected by `rules`, preserving input order.

    Adding a keyword can only grow the result; setting exclude_retweets can
    only shrink it.
    """
    from .features import tokenize  # phrase matching rides on the shared tokenizer

    keyword_tokens = [tuple(tokenize(k)) for k in rules.keywords]
    phrase_tokens = [tuple(tokenize(p)) for p in rules.phrases]
    want_hashtags = set(_normalize_tags(rules.hashtags, "#"))
    want_mentions = set(_normalize_tags(rules.mentions, "@"))

    kept = []
    for tw in tweets:
        if rules.exclude_retweets and tw.is_retweet:
            continue
        if rules.country_code and (tw.country_code or "").lower() != rules.country_code.lower():
            continue
        if rules.lang and tw.lang.lower() != rules.lang.lower():
            continue
        tokens = tokenize(tw.text)
        positive = (
            any(_match_token_sequence(k, tokens) for k in keyword_tokens)
            or any(_match_token_sequence(p, tokens) for p in phrase_tokens)
            or any(h in want_hashtags for h in tw.hashtags)
            or any(m in want_mentions for m in tw.mentions)
        )
        if positive:
            kept.append(tw)
    return kept


CSV_COLUMNS = ("id", "timestamp_utc", "text", "lat", "lon", "state", "label", "hashtags", "mentions")


def _epoch_to_iso(ts: int) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def write_trimmed_csv(
    tweets: Sequence[Tweet],
    path,
    states: Optional[Sequence[Optional[str]]] = None,
    labels: Optional[Sequence[Optional[str]]] = None,
) -> int:
    """Write the trimmed CSV; returns the number of rows written.

    `states`/`labels` are optional parallel sequences filling the otherwise
    empty state and label columns.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        return _write_trimmed(fh, tweets, states, labels)


def _write_trimmed(fh, tweets, states=None, labels=None) -> int:
    writer = csv.writer(fh)
    writer.writerow(CSV_COLUMNS)
    for i, tw in enumerate(tweets):
        lat, lon = ("", "") if tw.coordinates is None else (repr(tw.coordinates[0]), repr(tw.coordinates[1]))
        writer.writerow(
            [
                tw.id,
                _epoch_to_iso(tw.timestamp),
                tw.text,
                lat,
                lon,
                (states[i] or "") if states else "",
                (labels[i] or "") if labels else "",
                ";".join(tw.hashtags),
                ";".join(tw.mentions),
            ]
        )
    return len(tweets)


def read_trimmed_csv(path) -> list[Tweet]:
    """Read back a trimmed CSV as tweets (state/label columns ignored).

    Writing then reading is the identity on every trimmed field (id,
    timestamp, text, coordinates, hashtags, mentions); lang, country_code
    and is_retweet are not part of the trimmed layout and come back as
    their defaults.
    """
    tweets, _, _ = read_trimmed_csv_rows(path)
    return tweets


def read_trimmed_csv_rows(path) -> tuple[list[Tweet], list[Optional[str]], list[Optional[str]]]:
    """Read a trimmed CSV including its state and label columns."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return _read_trimmed(fh)


def _read_trimmed(fh):
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise CsvFormatError(0, "empty file (missing header)") from None
    if tuple(header) != CSV_COLUMNS:
        raise CsvFormatError(1, f"unexpected header: {header}")
    tweets: list[Tweet] = []
    states: list[Optional[str]] = []
    labels: list[Optional[str]] = []
    for rownum, row in enumerate(reader, start=2):
        if len(row) != len(CSV_COLUMNS):
            raise CsvFormatError(rownum, f"expected {len(CSV_COLUMNS)} columns, got {len(row)}")
        rid, ts_iso, text, lat, lon, state, label, hashtags, mentions = row
        try:
            ts = _parse_timestamp(ts_iso)
        except ValueError as exc:
            raise CsvFormatError(rownum, f"bad timestamp: {exc}") from None
        if (lat == "") != (lon == ""):
            raise CsvFormatError(rownum, "lat/lon must both be present or both empty")
        try:
            coords = None if lat == "" else (float(lat), float(lon))
        except ValueError:
            raise CsvFormatError(rownum, f"non-numeric coordinates: {lat!r},{lon!r}") from None
        try:
            tweets.append(
                Tweet(
                    id=rid,
                    text=text,
                    timestamp=ts,
                    coordinates=coords,
                    hashtags=tuple(h for h in hashtags.split(";") if h),
                    mentions=tuple(m for m in mentions.split(";") if m),
                )
            )
        except ValueError as exc:
            raise CsvFormatError(rownum, str(exc)) from None
        states.append(state or None)
        labels.append(label or None)
    return tweets, states, labels


def tweets_to_ndjson(tweets: Iterable[Tweet]) -> str:
    """Render tweets in the ingestion input format, one JSON object per line."""
    lines = []
    for tw in tweets:
        obj = {
            "id": tw.id,
            "text": tw.text,
            "timestamp": _epoch_to_iso(tw.timestamp),
            "lang": tw.lang,
            "is_retweet": tw.is_retweet,
        }
        if tw.coordinates is not None:
            obj["lat"], obj["lon"] = tw.coordinates
        if tw.hashtags:
            obj["hashtags"] = list(tw.hashtags)
        if tw.mentions:
            obj["mentions"] = list(tw.mentions)
        if tw.country_code:
            obj["country_code"] = tw.country_code
        lines.append(json.dumps(obj, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_tweet_json_text(text: str) -> tuple[list[Tweet], list[ParseIssue]]:
    """Convenience wrapper over parse_tweet_json for in-memory strings."""
    return parse_tweet_json(io.BytesIO(text.encode("utf-8")))
