"""Shared fixtures: tiny corpora, generator specs, and the state fixture."""

from __future__ import annotations

import dataclasses
from datetime import datetime, timezone

import pytest

from gunpulse.corpusgen import GeneratorSpec, generate_corpus
from gunpulse.geo import load_default_fixture
from gunpulse.ingest import CorpusWindow, Tweet
from gunpulse.labels import SentimentLabel as L


def day(date: str) -> int:
    """UTC epoch seconds at the start of a YYYY-MM-DD date."""
    return int(datetime.strptime(date, "%Y-%m-%d").replace(tzinfo=timezone.utc).timestamp())


WINDOW = CorpusWindow(day("2012-12-07"), day("2013-01-15") + 86_399)
SPIKE_TS = day("2012-12-14") + 12 * 3_600

PRO_LEX = ("rights", "freedom", "amendment", "defend")
ANTI_LEX = ("ban", "control", "tragedy", "strict")
NEUTRAL_LEX = ("news", "visiting", "report", "update")
SHARED_LEX = ("the", "a", "of", "guns", "people", "today", "state")

# Long tweets over two-term lexicons: every document contains both of its
# class terms with probability ~1 - 2e-6, which is what lets a greedy
# purity-stopped tree reach exact 1.0 cross-validated accuracy.
SEPARABLE_LEXICONS = {
    L.PRO_GUN: PRO_LEX[:2],
    L.ANTI_GUN: ANTI_LEX[:2],
    L.NEUTRAL: NEUTRAL_LEX[:2],
}


def make_generator_spec(
    n_pro=100,
    n_anti=100,
    n_neutral=50,
    signal_rate=1.0,
    seed=1234,
    geo=None,
    spike=(SPIKE_TS, 6.0),
    tag_rate=0.25,
    tokens=(9, 13),
) -> GeneratorSpec:
    return GeneratorSpec(
        n_per_class={L.PRO_GUN: n_pro, L.ANTI_GUN: n_anti, L.NEUTRAL: n_neutral},
        class_lexicons={L.PRO_GUN: PRO_LEX, L.ANTI_GUN: ANTI_LEX, L.NEUTRAL: NEUTRAL_LEX},
        shared_lexicon=SHARED_LEX,
        time_window=WINDOW,
        geo_distribution=geo if geo is not None else {"CA": 5, "TX": 4, "NY": 4, "CT": 1, "WY": 0.5},
        signal_rate=signal_rate,
        tokens_per_tweet=tokens,
        event_spike=spike,
        class_tags={
            L.PRO_GUN: ("#2ndamendment", "@nra"),
            L.ANTI_GUN: ("#guncontrol", "#newtown"),
            L.NEUTRAL: ("@cnn",),
        },
        tag_rate=tag_rate,
        seed=seed,
    )


@pytest.fixture(scope="session")
def state_fixture():
    return load_default_fixture()


@pytest.fixture(scope="session")
def small_corpus():
    """250 separable tweets with coordinates, tags and an event spike."""
    return generate_corpus(make_generator_spec())


@pytest.fixture(scope="session")
def separable_300():
    """300 fully separable tweets without geo (fast to featurize)."""
    spec = make_generator_spec(n_pro=100, n_anti=100, n_neutral=100, geo={}, tag_rate=0.0, tokens=(18, 24))
    spec = dataclasses.replace(spec, class_lexicons=SEPARABLE_LEXICONS)
    return generate_corpus(spec)


@pytest.fixture(scope="session")
def chance_300():
    """300 tweets whose text carries no class signal; labels are quota-only."""
    return generate_corpus(
        make_generator_spec(n_pro=100, n_anti=100, n_neutral=100, signal_rate=0.0, geo={}, tag_rate=0.0)
    )


def simple_tweet(tid="t1", text="hello world", ts=WINDOW.start, **kwargs) -> Tweet:
    return Tweet(id=tid, text=text, timestamp=ts, **kwargs)
