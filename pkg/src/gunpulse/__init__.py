"""gunpulse: event-sentiment analytics over tweet streams.

Pipeline: ingest newline-delimited tweet JSON, extract N-gram/tag features,
classify into pro-gun / anti-gun / neutral with one of eight trainable
models, assign tweets to US states, score regional sentiment (PGPSS), and
serve temporal/geographic aggregates over HTTP.
"""

__version__ = "0.1.0"

from .labels import ALL_LABELS, SentimentLabel

__all__ = ["ALL_LABELS", "SentimentLabel", "__version__"]
