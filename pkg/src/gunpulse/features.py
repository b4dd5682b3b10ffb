"""Tokenization and sparse N-gram / tag feature extraction."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from ._util import ARTIFACT_VERSION, canonical_dumps

if TYPE_CHECKING:
    from .ingest import Tweet


class EmptyVocabulary(ValueError):
    """No term survived the document-frequency threshold."""


@dataclass(frozen=True)
class FeatureConfig:
    """Which features go into the document-term matrix.

    N-gram orders are exclusive: a bi-gram matrix contains bi-grams (plus
    enabled tag features), never a mix of orders. Feature values are raw
    term counts.
    """

    ngram_order: int = 1
    use_hashtags: bool = True
    use_mentions: bool = True
    min_doc_freq: int = 2
    lowercase: bool = True

    def __post_init__(self):
        if self.ngram_order not in (1, 2, 3):
            raise ValueError(f"ngram_order must be 1, 2 or 3, got {self.ngram_order}")
        if self.min_doc_freq < 1:
            raise ValueError(f"min_doc_freq must be >= 1, got {self.min_doc_freq}")

    def to_dict(self) -> dict:
        return {
            "ngram_order": self.ngram_order,
            "use_hashtags": self.use_hashtags,
            "use_mentions": self.use_mentions,
            "min_doc_freq": self.min_doc_freq,
            "lowercase": self.lowercase,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FeatureConfig":
        return cls(**d)


_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
# Letter runs longer than 3 collapse to 3 ("noooooooo" -> "nooo"); digits keep
# their length so numerals like 10000 survive.
_ELONGATION_RE = re.compile(r"([^\W\d_])\1{3,}", re.UNICODE)
# <url> sentinel | #tag/@mention kept whole | word with inner apostrophes.
_TOKEN_RE = re.compile(r"<url>|[#@]\w+|[^\W_]+(?:'[^\W_]+)*", re.UNICODE)

URL_SENTINEL = "<url>"


def tokenize(text: str) -> list[str]:
    """Split tweet text into normalized tokens.

    Rules: lowercase; URLs become the sentinel token "<url>"; '#'/'@'
    tokens keep their sigil; everything else splits on whitespace and
    punctuation, keeping inner apostrophes ("isn't" is one token); runs of
    the same letter longer than 3 collapse to 3. Re-tokenizing the joined
    token list is a no-op.
    """
    text = _URL_RE.sub(f" {URL_SENTINEL} ", text.lower())
    text = _ELONGATION_RE.sub(lambda m: m.group(1) * 3, text)
    return _TOKEN_RE.findall(text)


def extract_ngrams(tokens: Sequence[str], n: int) -> list[str]:
    """All contiguous n-token windows joined by single spaces, in order."""
    if n not in (1, 2, 3):
        raise ValueError(f"n must be 1, 2 or 3, got {n}")
    if n == 1:
        return list(tokens)
    return [" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def extract_tag_features(tweet: "Tweet") -> list[str]:
    """Hashtag/mention features in the "tag:" namespace, deduped and sorted.

    Whether they are actually counted is decided by the FeatureConfig flags
    at vocabulary/vectorization time.
    """
    tags = {f"tag:{h.lower()}" for h in tweet.hashtags}
    tags |= {f"tag:{m.lower()}" for m in tweet.mentions}
    return sorted(tags)


def document_terms(tweet: "Tweet", config: FeatureConfig) -> list[str]:
    """Every countable term of one tweet under `config` (n-grams + tags)."""
    terms = extract_ngrams(tokenize(tweet.text), config.ngram_order)
    if config.use_hashtags:
        terms.extend(f"tag:{h.lower()}" for h in sorted(set(tweet.hashtags)))
    if config.use_mentions:
        terms.extend(f"tag:{m.lower()}" for m in sorted(set(tweet.mentions)))
    return terms


@dataclass(frozen=True)
class Vocabulary:
    """Term -> dense column index map for one FeatureConfig."""

    terms: tuple[str, ...]
    config: FeatureConfig
    index: dict = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "index", {t: i for i, t in enumerate(self.terms)})
        if len(self.index) != len(self.terms):
            raise ValueError("duplicate terms in vocabulary")

    def __len__(self) -> int:
        return len(self.terms)

    def to_json(self) -> str:
        return canonical_dumps(
            {"version": ARTIFACT_VERSION, "config": self.config.to_dict(), "terms": list(self.terms)}
        )

    @classmethod
    def from_json(cls, payload: str) -> "Vocabulary":
        import json

        obj = json.loads(payload)
        if obj.get("version") != ARTIFACT_VERSION:
            raise ValueError(f"unsupported vocabulary version: {obj.get('version')}")
        return cls(terms=tuple(obj["terms"]), config=FeatureConfig.from_dict(obj["config"]))


@dataclass(frozen=True)
class DocumentTermMatrix:
    """Sparse docs x terms count matrix.

    Each row is a tuple of (column, count) pairs with strictly increasing
    columns and counts >= 1.
    """

    n_docs: int
    n_terms: int
    rows: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.n_docs:
            raise ValueError("row count does not match n_docs")
        for row in self.rows:
            prev = -1
            for col, count in row:
                if not (0 <= col < self.n_terms):
                    raise ValueError(f"column {col} out of range")
                if col <= prev:
                    raise ValueError("row columns must be strictly increasing")
                if count < 1:
                    raise ValueError("explicit zero/negative entries are not allowed")
                prev = col

    def to_dense(self, dtype=float):
        import numpy as np

        dense = np.zeros((self.n_docs, self.n_terms), dtype=dtype)
        for i, row in enumerate(self.rows):
            for col, count in row:
                dense[i, col] = count
        return dense


def build_vocabulary_from_terms(term_docs: Sequence[Sequence[str]], config: FeatureConfig) -> Vocabulary:
    """Vocabulary over precomputed per-document term lists."""
    if not term_docs:
        raise ValueError("corpus must be non-empty")
    doc_freq: dict[str, int] = {}
    for terms in term_docs:
        for t in set(terms):
            doc_freq[t] = doc_freq.get(t, 0) + 1
    surviving = sorted(t for t, df in doc_freq.items() if df >= config.min_doc_freq)
    if not surviving:
        raise EmptyVocabulary(
            f"no term reaches min_doc_freq={config.min_doc_freq} over {len(term_docs)} documents"
        )
    return Vocabulary(terms=tuple(surviving), config=config)


def build_vocabulary(corpus: Sequence["Tweet"], config: FeatureConfig) -> Vocabulary:
    """Vocabulary of all config-enabled terms with document frequency >= threshold.

    Terms are sorted lexicographically and indexed 0..k-1, so the result is
    independent of corpus order.
    """
    return build_vocabulary_from_terms([document_terms(tw, config) for tw in corpus], config)


def vectorize_terms(term_docs: Sequence[Sequence[str]], vocab: Vocabulary) -> DocumentTermMatrix:
    """Count in-vocabulary terms per document; out-of-vocabulary terms are ignored."""
    index = vocab.index
    rows = []
    for terms in term_docs:
        counts: dict[int, int] = {}
        for t in terms:
            col = index.get(t)
            if col is not None:
                counts[col] = counts.get(col, 0) + 1
        rows.append(tuple(sorted(counts.items())))
    return DocumentTermMatrix(n_docs=len(term_docs), n_terms=len(vocab), rows=tuple(rows))


def vectorize_corpus(corpus: Sequence["Tweet"], vocab: Vocabulary) -> DocumentTermMatrix:
    """Document-term matrix of `corpus` under an existing vocabulary."""
    return vectorize_terms([document_terms(tw, vocab.config) for tw in corpus], vocab)
