"""10-fold cross-validation harness and model-comparison grids.

Vocabularies are rebuilt from the training portion of every fold, so no
test-fold text can influence the features a model sees. Comparison grids
use nested training subsets (the 1000-tweet set is a subset of the
2000-tweet set, and so on) to keep rows comparable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._util import ARTIFACT_VERSION, canonical_dumps, substream
from .classifiers import (
    DISPLAY_NAMES,
    AlgorithmSpec,
    TrainedModel,
    predict,
    serialize_model,
    train,
)
from .features import (
    EmptyVocabulary,
    FeatureConfig,
    build_vocabulary_from_terms,
    document_terms,
    vectorize_terms,
)
from .ingest import Tweet
from .labels import ALL_LABELS, SentimentLabel


class InsufficientClassData(ValueError):
    def __init__(self, label: SentimentLabel, have: int, need: int):
        super().__init__(f"class {label.short_name}: have {have}, need {need}")
        self.label = label
        self.have = have
        self.need = need


class TooFewPerClass(ValueError):
    """Some class has fewer members than the number of folds."""


class FoldTrainingError(RuntimeError):
    """A training failure inside cross-validation, tagged with its fold."""

    def __init__(self, fold: int, cause: Exception):
        super().__init__(f"fold {fold}: {cause}")
        self.fold = fold
        self.cause = cause


@dataclass(frozen=True)
class CVReport:
    algorithm: AlgorithmSpec
    feature_config: FeatureConfig
    training_size: int
    fold_accuracies: tuple[float, ...]
    mean_accuracy: float
    seed: int


@dataclass(frozen=True)
class ComparisonTable:
    """Grid of mean CV accuracies: rows x algorithms; None marks N/A cells."""

    row_keys: tuple[str, ...]
    columns: tuple[str, ...]
    cells: tuple[tuple[Optional[float], ...], ...]

    NA = "N/A"

    def cell(self, row_key: str, column: str) -> Optional[float]:
        return self.cells[self.row_keys.index(row_key)][self.columns.index(column)]

    def to_json(self, provenance: Optional[dict] = None) -> str:
        doc = {
            "version": ARTIFACT_VERSION,
            "rows": list(self.row_keys),
            "columns": list(self.columns),
            "cells": [list(row) for row in self.cells],
        }
        if provenance:
            doc["provenance"] = provenance
        return canonical_dumps(doc)

    def to_csv(self) -> str:
        lines = ["row," + ",".join(self.columns)]
        for key, row in zip(self.row_keys, self.cells):
            rendered = [self.NA if v is None else repr(v) for v in row]
            lines.append(f"{key}," + ",".join(rendered))
        return "\n".join(lines) + "\n"

    def format_text(self) -> str:
        widths = [max(len("row"), *(len(k) for k in self.row_keys))]
        body = [[self.NA if v is None else f"{v:.3f}" for v in row] for row in self.cells]
        for j, col in enumerate(self.columns):
            widths.append(max(len(col), *(len(row[j]) for row in body)) if body else len(col))
        lines = ["  ".join(h.ljust(w) for h, w in zip(("row", *self.columns), widths))]
        for key, row in zip(self.row_keys, body):
            lines.append("  ".join(v.ljust(w) for v, w in zip((key, *row), widths)))
        return "\n".join(lines)


def compose_training_set(
    pool: Sequence[tuple[Tweet, SentimentLabel]],
    quota: dict,
    seed: int,
) -> list[tuple[Tweet, SentimentLabel]]:
    """Sample exactly quota[label] tweets per class, without replacement.

    Deterministic in `seed`; the returned order is a deterministic shuffle.
    """
    by_class: dict[SentimentLabel, list] = {label: [] for label in ALL_LABELS}
    for tw, label in pool:
        by_class[label].append((tw, label))
    picked: list[tuple[Tweet, SentimentLabel]] = []
    for label in ALL_LABELS:
        need = int(quota.get(label, 0))
        have = len(by_class[label])
        if need > have:
            raise InsufficientClassData(label, have, need)
        if need == 0:
            continue
        rng = substream(seed, 100 + int(label))
        order = rng.permutation(have)[:need]
        picked.extend(by_class[label][i] for i in order)
    if picked:
        rng = substream(seed, 199)
        picked = [picked[i] for i in rng.permutation(len(picked))]
    return picked


def stratified_kfold(labels: Sequence[SentimentLabel], k: int, seed: int) -> list[list[int]]:
    """k disjoint index folds with per-class counts differing by at most 1."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    by_class: dict[SentimentLabel, list[int]] = {}
    for i, label in enumerate(labels):
        by_class.setdefault(label, []).append(i)
    for label, idxs in by_class.items():
        if len(idxs) < k:
            raise TooFewPerClass(f"class {label.short_name} has {len(idxs)} members for {k} folds")
    folds: list[list[int]] = [[] for _ in range(k)]
    for label in sorted(by_class):
        idxs = by_class[label]
        rng = substream(seed, 300 + int(label))
        shuffled = [idxs[i] for i in rng.permutation(len(idxs))]
        for pos, idx in enumerate(shuffled):
            folds[pos % k].append(idx)
    return [sorted(f) for f in folds]


def _accuracy(predicted: Sequence[SentimentLabel], actual: Sequence[SentimentLabel]) -> float:
    return sum(1 for p, a in zip(predicted, actual) if p == a) / len(actual)


def cross_validate(
    spec: AlgorithmSpec,
    tweets: Sequence[Tweet],
    labels: Sequence[SentimentLabel],
    config: FeatureConfig,
    k: int = 10,
    seed: int = 0,
) -> CVReport:
    """Mean exact-match accuracy over stratified folds.

    Works from raw tweets (not a prebuilt matrix) because each fold's
    vocabulary must come from that fold's training texts only.
    """
    report, _ = cross_validate_details(spec, tweets, labels, config, k=k, seed=seed)
    return report


def cross_validate_details(
    spec: AlgorithmSpec,
    tweets: Sequence[Tweet],
    labels: Sequence[SentimentLabel],
    config: FeatureConfig,
    k: int = 10,
    seed: int = 0,
    term_docs: Optional[Sequence[Sequence[str]]] = None,
) -> tuple[CVReport, list[bytes]]:
    """cross_validate plus each fold's serialized model (for leakage checks)."""
    if len(tweets) != len(labels):
        raise ValueError("tweets and labels must have the same length")
    if term_docs is None:
        term_docs = [document_terms(tw, config) for tw in tweets]
    folds = stratified_kfold(labels, k, seed)
    accuracies: list[float] = []
    model_bytes: list[bytes] = []
    for fold_idx, test_idx in enumerate(folds):
        test_set = set(test_idx)
        train_idx = [i for i in range(len(labels)) if i not in test_set]
        try:
            vocab = build_vocabulary_from_terms([term_docs[i] for i in train_idx], config)
            dtm_train = vectorize_terms([term_docs[i] for i in train_idx], vocab)
            model = train(spec, dtm_train, [labels[i] for i in train_idx])
        except Exception as exc:
            raise FoldTrainingError(fold_idx, exc) from exc
        dtm_test = vectorize_terms([term_docs[i] for i in test_idx], vocab)
        predicted = predict(model, dtm_test)
        accuracies.append(_accuracy(predicted, [labels[i] for i in test_idx]))
        model_bytes.append(serialize_model(model))
    mean = sum(accuracies) / len(accuracies)
    report = CVReport(
        algorithm=spec,
        feature_config=config,
        training_size=len(tweets),
        fold_accuracies=tuple(accuracies),
        mean_accuracy=mean,
        seed=seed,
    )
    return report, model_bytes


def _scaled_quota(quota_max: dict, size: int, max_size: int) -> dict:
    """Largest-remainder scaling of the per-class quota to a smaller size."""
    shares = {label: quota_max.get(label, 0) * size / max_size for label in ALL_LABELS}
    floored = {label: int(np.floor(s)) for label, s in shares.items()}
    shortfall = size - sum(floored.values())
    remainders = sorted(ALL_LABELS, key=lambda l: (-(shares[l] - floored[l]), int(l)))
    for label in remainders[:shortfall]:
        floored[label] += 1
    return floored


def nested_training_sets(
    pool: Sequence[tuple[Tweet, SentimentLabel]],
    sizes: Sequence[int],
    quota_max: dict,
    seed: int,
) -> dict:
    """Deterministic nested subsets: smaller sizes are prefixes per class."""
    max_size = max(sizes)
    by_class: dict[SentimentLabel, list] = {label: [] for label in ALL_LABELS}
    for tw, label in pool:
        by_class[label].append((tw, label))
    class_order: dict[SentimentLabel, list] = {}
    for label in ALL_LABELS:
        need = _scaled_quota(quota_max, max_size, max_size).get(label, 0)
        have = len(by_class[label])
        if need > have:
            raise InsufficientClassData(label, have, need)
        rng = substream(seed, 400 + int(label))
        class_order[label] = [by_class[label][i] for i in rng.permutation(have)]
    out = {}
    for size in sizes:
        quota = _scaled_quota(quota_max, size, max_size)
        subset: list[tuple[Tweet, SentimentLabel]] = []
        for label in ALL_LABELS:
            subset.extend(class_order[label][: quota[label]])
        rng = substream(seed, 500 + size)
        out[size] = [subset[i] for i in rng.permutation(len(subset))]
    return out


_NGRAM_ROW_NAMES = {1: "uni-gram", 2: "bi-gram", 3: "tri-gram"}


def _evaluate_cell(args) -> Optional[float]:
    """One grid cell; failures that mean "no usable model" become None."""
    spec, tweets, labels, config, k, seed = args
    try:
        report, _ = cross_validate_details(spec, tweets, labels, config, k=k, seed=seed)
        return report.mean_accuracy
    except (FoldTrainingError, TooFewPerClass, EmptyVocabulary):
        return None


def compare_models(
    specs: Sequence[AlgorithmSpec],
    sizes: Sequence[int],
    configs: Sequence[FeatureConfig],
    pool: Sequence[tuple[Tweet, SentimentLabel]],
    quota_max: dict,
    seed: int,
    k: int = 10,
    n_jobs: int = 1,
) -> ComparisonTable:
    """Grid of cross-validated mean accuracies.

    Rows are training sizes when several sizes are given, N-gram orders
    when several configs are given, or "size/order" keys for a full cross
    product. Cells that fail to train (e.g. an empty vocabulary) become
    the N/A marker instead of aborting the grid. Cells are independent;
    n_jobs > 1 fans them out over worker processes, with identical results
    in any case because assembly is by cell index.
    """
    subsets = nested_training_sets(pool, sizes, quota_max, seed)
    columns = tuple(DISPLAY_NAMES[s.algorithm] for s in specs)
    row_keys: list[str] = []
    tasks = []
    for size in sizes:
        subset = subsets[size]
        tweets = [tw for tw, _ in subset]
        labels = [lbl for _, lbl in subset]
        for config in configs:
            if len(sizes) > 1 and len(configs) > 1:
                row_keys.append(f"{size}/{_NGRAM_ROW_NAMES[config.ngram_order]}")
            elif len(configs) > 1:
                row_keys.append(_NGRAM_ROW_NAMES[config.ngram_order])
            else:
                row_keys.append(str(size))
            for spec in specs:
                tasks.append((spec, tweets, labels, config, k, seed))
    if n_jobs > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=n_jobs) as executor:
            results = list(executor.map(_evaluate_cell, tasks))
    else:
        results = [_evaluate_cell(t) for t in tasks]
    n_cols = len(specs)
    cells = tuple(
        tuple(results[i : i + n_cols]) for i in range(0, len(results), n_cols)
    )
    return ComparisonTable(row_keys=tuple(row_keys), columns=columns, cells=cells)
