"""Pro-Gun Public Sentiment Scores (PGPSS) and their normalization.

Three variants per (state, window):

    pgpss1 = pro / max(anti, 1)
    pgpss2 = pgpss1 * (state tweet volume / frame tweet volume)
    pgpss3 = pgpss2 * (state population / national population)

The max(anti, 1) denominator defines the otherwise-undefined anti == 0
case while leaving every anti > 0 value untouched. Neutral tweets count
toward the volume terms. Normalization divides each score column by its
maximum across states (all zeros stay zero).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ._util import ARTIFACT_VERSION, canonical_dumps
from .geo import PopulationTable
from .ingest import CorpusWindow


class ZeroFrameTotal(ValueError):
    """pgpss2 is undefined for an empty frame."""


class UnknownState(KeyError):
    """A state code absent from the population table."""


@dataclass(frozen=True)
class SentimentCounts:
    """Per-class tweet counts for one (state, window)."""

    pro: int = 0
    anti: int = 0
    neutral: int = 0

    def __post_init__(self):
        if min(self.pro, self.anti, self.neutral) < 0:
            raise ValueError("counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.pro + self.anti + self.neutral

    def __add__(self, other: "SentimentCounts") -> "SentimentCounts":
        return SentimentCounts(self.pro + other.pro, self.anti + other.anti, self.neutral + other.neutral)


@dataclass(frozen=True)
class StateScores:
    state_code: str
    raw1: float
    raw2: float
    raw3: float
    norm1: float
    norm2: float
    norm3: float


@dataclass(frozen=True)
class PGPSSResult:
    """All six score columns for every state in one window."""

    window: CorpusWindow
    states: tuple[StateScores, ...]

    def by_state(self) -> dict[str, StateScores]:
        return {s.state_code: s for s in self.states}

    def to_dict(self) -> dict:
        return {
            "version": ARTIFACT_VERSION,
            "window": {"start": self.window.start, "end": self.window.end},
            "states": [
                {
                    "code": s.state_code,
                    "raw1": s.raw1,
                    "raw2": s.raw2,
                    "raw3": s.raw3,
                    "norm1": s.norm1,
                    "norm2": s.norm2,
                    "norm3": s.norm3,
                }
                for s in self.states
            ],
        }

    def to_json(self) -> str:
        return canonical_dumps(self.to_dict())

    def to_csv(self) -> str:
        lines = ["state,raw1,raw2,raw3,norm1,norm2,norm3"]
        for s in self.states:
            lines.append(
                f"{s.state_code},{s.raw1!r},{s.raw2!r},{s.raw3!r},{s.norm1!r},{s.norm2!r},{s.norm3!r}"
            )
        return "\n".join(lines) + "\n"


def pgpss1(counts: SentimentCounts) -> float:
    """Baseline score: pro-gun tweets over anti-gun tweets."""
    return counts.pro / max(counts.anti, 1)


def pgpss2(counts: SentimentCounts, frame_total: int) -> float:
    """Baseline score corrected by the region's share of frame tweet volume."""
    if frame_total <= 0:
        raise ZeroFrameTotal("frame_total must be positive")
    if frame_total < counts.total:
        raise ValueError(f"frame_total {frame_total} < region total {counts.total}")
    return pgpss1(counts) * (counts.total / frame_total)


def pgpss3(counts: SentimentCounts, frame_total: int, pop: PopulationTable, state_code: str) -> float:
    """Volume-corrected score further corrected by population share."""
    if state_code not in pop:
        raise UnknownState(state_code)
    return pgpss2(counts, frame_total) * (pop.population(state_code) / pop.national_population)


def normalize_scores(values: Mapping[str, float]) -> dict[str, float]:
    """Divide every value by the maximum; an all-zero column stays zero."""
    if any(v < 0 for v in values.values()):
        raise ValueError("scores must be nonnegative")
    peak = max(values.values(), default=0.0)
    if peak == 0.0:
        return {k: 0.0 for k in values}
    return {k: v / peak for k, v in values.items()}


def score_all_states(
    counts: Mapping[str, SentimentCounts],
    window: CorpusWindow,
    pop: PopulationTable,
) -> PGPSSResult:
    """All six columns for every state present in `counts`.

    The frame total is the sum of state-resolved tweet volumes inside the
    window; with an empty frame every raw score is zero by definition.
    """
    unknown = sorted(code for code in counts if code not in pop)
    if unknown:
        raise UnknownState(unknown[0])
    frame_total = sum(c.total for c in counts.values())

    raw1: dict[str, float] = {}
    raw2: dict[str, float] = {}
    raw3: dict[str, float] = {}
    for code, c in sorted(counts.items()):
        raw1[code] = pgpss1(c)
        if frame_total == 0:
            raw2[code] = 0.0
            raw3[code] = 0.0
        else:
            raw2[code] = pgpss2(c, frame_total)
            raw3[code] = pgpss3(c, frame_total, pop, code)
    norm1 = normalize_scores(raw1)
    norm2 = normalize_scores(raw2)
    norm3 = normalize_scores(raw3)
    return PGPSSResult(
        window=window,
        states=tuple(
            StateScores(code, raw1[code], raw2[code], raw3[code], norm1[code], norm2[code], norm3[code])
            for code in sorted(counts)
        ),
    )
