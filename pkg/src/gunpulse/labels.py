"""The three sentiment classes and their stable encodings."""

from __future__ import annotations

import enum


class SentimentLabel(enum.IntEnum):
    """Three-way sentiment of a tweet about the gun debate.

    The integer values are the stable serialization encoding and also the
    tie-break order used by every classifier (lower value wins ties).
    """

    PRO_GUN = 0
    ANTI_GUN = 1
    NEUTRAL = 2

    @property
    def short_name(self) -> str:
        return _SHORT_NAMES[self]

    @classmethod
    def from_short_name(cls, name: str) -> "SentimentLabel":
        try:
            return _FROM_SHORT[name.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown sentiment label: {name!r}") from None


_SHORT_NAMES = {
    SentimentLabel.PRO_GUN: "pro",
    SentimentLabel.ANTI_GUN: "anti",
    SentimentLabel.NEUTRAL: "neutral",
}
_FROM_SHORT = {v: k for k, v in _SHORT_NAMES.items()}

#: All labels in tie-break order.
ALL_LABELS = (SentimentLabel.PRO_GUN, SentimentLabel.ANTI_GUN, SentimentLabel.NEUTRAL)
