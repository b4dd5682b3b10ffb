"""Deterministic synthetic labeled-corpus generator.

Stands in for a hand-labeled gold standard: token bags drawn from
class-specific and shared lexicons at a configurable signal rate, optional
class-indicative tags, timestamps over a window with an optional event-day
density spike, and coordinates sampled inside state boundary polygons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._util import substream
from .geo import StatePolygon, assign_point, load_default_fixture
from .ingest import CorpusWindow, Tweet
from .labels import ALL_LABELS, SentimentLabel

SECONDS_PER_DAY = 86_400


class InvalidSpec(ValueError):
    """A generator spec violating its invariants."""


@dataclass(frozen=True)
class GeneratorSpec:
    """Everything that determines a synthetic corpus, including the seed.

    Class lexicons must be pairwise disjoint and disjoint from the shared
    lexicon; each token of a tweet comes from the tweet's class lexicon
    with probability signal_rate and from the shared lexicon otherwise.
    class_tags maps a label to '#'/'@' tags attached (and appended to the
    text) with probability tag_rate.
    """

    n_per_class: dict
    class_lexicons: dict
    shared_lexicon: tuple[str, ...]
    time_window: CorpusWindow
    geo_distribution: dict
    signal_rate: float = 1.0
    tokens_per_tweet: tuple[int, int] = (8, 14)
    event_spike: Optional[tuple[int, float]] = None  # (timestamp, multiplier)
    class_tags: dict = field(default_factory=dict)
    tag_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not (0.0 <= self.signal_rate <= 1.0):
            raise InvalidSpec(f"signal_rate must be in [0,1], got {self.signal_rate}")
        if not (0.0 <= self.tag_rate <= 1.0):
            raise InvalidSpec(f"tag_rate must be in [0,1], got {self.tag_rate}")
        lo, hi = self.tokens_per_tweet
        if not (1 <= lo <= hi):
            raise InvalidSpec(f"bad tokens_per_tweet range: {self.tokens_per_tweet}")
        if any(n < 0 for n in self.n_per_class.values()):
            raise InvalidSpec("n_per_class counts must be nonnegative")
        seen: set[str] = set(self.shared_lexicon)
        if len(seen) != len(self.shared_lexicon):
            raise InvalidSpec("duplicate tokens in shared lexicon")
        for label, lex in self.class_lexicons.items():
            overlap = seen.intersection(lex)
            if overlap:
                raise InvalidSpec(f"lexicons are not disjoint: {sorted(overlap)}")
            if len(set(lex)) != len(lex):
                raise InvalidSpec(f"duplicate tokens in {label} lexicon")
            seen.update(lex)
        total_positive = sum(1 for n in self.n_per_class.values() if n > 0)
        if total_positive and self.signal_rate > 0 and any(
            not self.class_lexicons.get(lbl) for lbl, n in self.n_per_class.items() if n > 0
        ):
            raise InvalidSpec("every generated class needs a non-empty lexicon when signal_rate > 0")
        if self.signal_rate < 1.0 and not self.shared_lexicon:
            raise InvalidSpec("shared lexicon required when signal_rate < 1")
        if self.geo_distribution:
            weights = list(self.geo_distribution.values())
            if any(w < 0 for w in weights) or sum(weights) <= 0:
                raise InvalidSpec("geo weights must be nonnegative and not all zero")
        if self.event_spike is not None:
            ts, mult = self.event_spike
            if not self.time_window.contains(int(ts)):
                raise InvalidSpec("event_spike timestamp outside the time window")
            if mult <= 0:
                raise InvalidSpec("event_spike multiplier must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorSpec":
        window = d["time_window"]
        return cls(
            n_per_class={SentimentLabel.from_short_name(k): int(v) for k, v in d["n_per_class"].items()},
            class_lexicons={
                SentimentLabel.from_short_name(k): tuple(v) for k, v in d.get("class_lexicons", {}).items()
            },
            shared_lexicon=tuple(d.get("shared_lexicon", ())),
            time_window=CorpusWindow(int(window["start"]), int(window["end"])),
            geo_distribution=dict(d.get("geo_distribution", {})),
            signal_rate=float(d.get("signal_rate", 1.0)),
            tokens_per_tweet=tuple(d.get("tokens_per_tweet", (8, 14))),
            event_spike=tuple(d["event_spike"]) if d.get("event_spike") else None,
            class_tags={
                SentimentLabel.from_short_name(k): tuple(v) for k, v in d.get("class_tags", {}).items()
            },
            tag_rate=float(d.get("tag_rate", 0.0)),
            seed=int(d.get("seed", 0)),
        )

    @classmethod
    def from_json_file(cls, path) -> "GeneratorSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _sample_day(rng: np.random.Generator, window: CorpusWindow, spike: Optional[tuple[int, float]]) -> int:
    """Pick a UTC day start; the spike day's weight is multiplied."""
    first_day = window.start - (window.start % SECONDS_PER_DAY)
    n_days = (window.end - first_day) // SECONDS_PER_DAY + 1
    if spike is None:
        return first_day + int(rng.integers(0, n_days)) * SECONDS_PER_DAY
    spike_ts, mult = spike
    spike_day = (int(spike_ts) - first_day) // SECONDS_PER_DAY
    weights = np.ones(n_days)
    weights[spike_day] = mult
    weights /= weights.sum()
    return first_day + int(rng.choice(n_days, p=weights)) * SECONDS_PER_DAY


def _sample_point_in_state(
    rng: np.random.Generator, code: str, polygons: Sequence[StatePolygon], by_code: dict
) -> tuple[float, float]:
    """Uniform point whose assigned state is `code` (rejection sampling).

    Sampling from the state's bounding box and checking against the full
    assigner guarantees the point resolves back to the intended state even
    where simplified boundaries overlap.
    """
    poly = by_code[code]
    min_lon, min_lat, max_lon, max_lat = poly.bbox
    for _ in range(10_000):
        lon = rng.uniform(min_lon, max_lon)
        lat = rng.uniform(min_lat, max_lat)
        if assign_point(lon, lat, polygons) == code:
            return (lat, lon)
    raise InvalidSpec(f"could not sample a point resolving to state {code}")


def generate_corpus(
    spec: GeneratorSpec, polygons: Optional[Sequence[StatePolygon]] = None
) -> list[tuple[Tweet, SentimentLabel]]:
    """Generate the labeled corpus for `spec`; same seed, same corpus.

    Tweets carry sequential ids, timestamps inside the window (uniform over
    days, spike-day weight multiplied), and coordinates inside the sampled
    state when a geo distribution is configured.
    """
    if polygons is None and spec.geo_distribution:
        polygons, _ = load_default_fixture()
    by_code = {p.state_code: p for p in (polygons or ())}
    for code in spec.geo_distribution:
        if code not in by_code:
            raise InvalidSpec(f"geo_distribution references unknown state {code}")

    geo_codes = sorted(spec.geo_distribution) if spec.geo_distribution else []
    if geo_codes:
        geo_weights = np.asarray([spec.geo_distribution[c] for c in geo_codes], dtype=float)
        geo_weights /= geo_weights.sum()

    out: list[tuple[Tweet, SentimentLabel]] = []
    counter = 0
    for label in ALL_LABELS:
        count = int(spec.n_per_class.get(label, 0))
        rng = substream(spec.seed, int(label) + 1)
        lexicon = list(spec.class_lexicons.get(label, ()))
        shared = list(spec.shared_lexicon)
        tags = list(spec.class_tags.get(label, ()))
        for _ in range(count):
            n_tokens = int(rng.integers(spec.tokens_per_tweet[0], spec.tokens_per_tweet[1] + 1))
            tokens = []
            for _ in range(n_tokens):
                use_signal = lexicon and rng.random() < spec.signal_rate
                pool = lexicon if use_signal else shared
                tokens.append(pool[int(rng.integers(0, len(pool)))])
            hashtags: list[str] = []
            mentions: list[str] = []
            if tags and rng.random() < spec.tag_rate:
                tag = tags[int(rng.integers(0, len(tags)))]
                tokens.append(tag)
                (hashtags if tag.startswith("#") else mentions).append(tag.lower())

            day_start = _sample_day(rng, spec.time_window, spec.event_spike)
            ts = day_start + int(rng.integers(0, SECONDS_PER_DAY))
            ts = min(max(ts, spec.time_window.start), spec.time_window.end)

            coordinates = None
            state = None
            if geo_codes:
                state = geo_codes[int(rng.choice(len(geo_codes), p=geo_weights))]
                coordinates = _sample_point_in_state(rng, state, polygons, by_code)

            counter += 1
            out.append(
                (
                    Tweet(
                        id=f"synth-{counter:06d}",
                        text=" ".join(tokens),
                        timestamp=ts,
                        coordinates=coordinates,
                        hashtags=tuple(hashtags),
                        mentions=tuple(mentions),
                        lang="en",
                        country_code="US",
                        is_retweet=False,
                    ),
                    label,
                )
            )
    return out
