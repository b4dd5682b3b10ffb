"""Eight supervised classifiers behind one train/predict contract.

Every algorithm maps a document-term count matrix to one of the three
sentiment classes. Training is deterministic given (spec, data): all
randomized algorithms draw from counter-based substreams keyed by
spec.rng_seed, so identical inputs give byte-identical serialized models.

predict_scores semantics per algorithm:
  naive_bayes    posterior probabilities (rows sum to 1)
  maxent         softmax probabilities (rows sum to 1)
  neural_net     softmax probabilities (rows sum to 1)
  boosted_tree   normalized one-vs-rest logistic probabilities (sum to 1)
  tree           training class fractions at the reached leaf
  bagged_tree    per-tree majority-vote fractions
  random_forest  per-tree majority-vote fractions
  svm            raw one-vs-rest margins (unbounded)

predict is always argmax of predict_scores with ties broken by class
order (PRO_GUN < ANTI_GUN < NEUTRAL).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .._util import canonical_dumps, substream
from ..features import DocumentTermMatrix
from ..labels import ALL_LABELS, SentimentLabel
from . import _linear, _logitboost, _naive_bayes, _neural, _trees

MODEL_FORMAT_VERSION = 1


class InvalidHyperparameter(ValueError):
    """A hyperparameter outside its valid range, or an unknown key."""


class DimensionMismatch(ValueError):
    """Matrix width does not match the model, or labels do not match rows."""


class VersionMismatch(ValueError):
    """A serialized model from an unsupported format version."""


class CorruptPayload(ValueError):
    """A serialized model that cannot be decoded."""


class Algorithm(enum.Enum):
    NAIVE_BAYES = "naive_bayes"
    MAXENT = "maxent"
    TREE = "tree"
    BAGGED_TREE = "bagged_tree"
    BOOSTED_TREE = "boosted_tree"
    RANDOM_FOREST = "random_forest"
    SVM = "svm"
    NEURAL_NET = "neural_net"


#: Declared defaults; the paper-facing table columns use the short names.
DEFAULT_HYPERPARAMETERS = {
    Algorithm.NAIVE_BAYES: {"alpha": 1.0},
    Algorithm.MAXENT: {"l2": 1e-4, "learning_rate": 0.1, "epochs": 200},
    Algorithm.TREE: {"max_depth": 30, "min_samples_split": 2},
    Algorithm.BAGGED_TREE: {"n_estimators": 25},
    Algorithm.BOOSTED_TREE: {"n_rounds": 100},
    Algorithm.RANDOM_FOREST: {"n_trees": 200},
    Algorithm.SVM: {"C": 1.0, "epochs": 200},
    Algorithm.NEURAL_NET: {"hidden_units": 50, "learning_rate": 0.05, "epochs": 300},
}

_VALIDATORS = {
    "alpha": lambda v: v > 0,
    "l2": lambda v: v >= 0,
    "learning_rate": lambda v: v > 0,
    "epochs": lambda v: isinstance(v, int) and v >= 1,
    "max_depth": lambda v: v is None or (isinstance(v, int) and v >= 1),
    "min_samples_split": lambda v: isinstance(v, int) and v >= 2,
    "n_estimators": lambda v: isinstance(v, int) and v >= 1,
    "n_rounds": lambda v: isinstance(v, int) and v >= 1,
    "n_trees": lambda v: isinstance(v, int) and v >= 1,
    "C": lambda v: v > 0,
    "hidden_units": lambda v: isinstance(v, int) and v >= 1,
}

DISPLAY_NAMES = {
    Algorithm.SVM: "SVM",
    Algorithm.MAXENT: "ME",
    Algorithm.TREE: "Tree",
    Algorithm.BAGGED_TREE: "BaggedTree",
    Algorithm.BOOSTED_TREE: "BoostedTree",
    Algorithm.RANDOM_FOREST: "RF",
    Algorithm.NEURAL_NET: "NN",
    Algorithm.NAIVE_BAYES: "NB",
}


@dataclass(frozen=True)
class AlgorithmSpec:
    """An algorithm choice plus validated hyperparameters and an RNG seed."""

    algorithm: Algorithm
    hyperparameters: dict = field(default_factory=dict)
    rng_seed: int = 0

    def __post_init__(self):
        defaults = DEFAULT_HYPERPARAMETERS[self.algorithm]
        merged = dict(defaults)
        for key, value in self.hyperparameters.items():
            if key not in defaults:
                raise InvalidHyperparameter(f"{self.algorithm.value}: unknown hyperparameter {key!r}")
            if not _VALIDATORS[key](value):
                raise InvalidHyperparameter(f"{self.algorithm.value}: invalid {key}={value!r}")
            merged[key] = value
        object.__setattr__(self, "hyperparameters", merged)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm.value,
            "hyperparameters": self.hyperparameters,
            "rng_seed": self.rng_seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AlgorithmSpec":
        return cls(
            algorithm=Algorithm(d["algorithm"]),
            hyperparameters=dict(d.get("hyperparameters", {})),
            rng_seed=int(d.get("rng_seed", 0)),
        )


@dataclass(frozen=True)
class TrainedModel:
    spec: AlgorithmSpec
    vocab_size: int
    class_list: tuple[SentimentLabel, ...]
    parameters: dict
    version: int = MODEL_FORMAT_VERSION


def _to_dense(dtm: DocumentTermMatrix) -> np.ndarray:
    return dtm.to_dense(dtype=np.float64)


def train(spec: AlgorithmSpec, dtm: DocumentTermMatrix, labels: Sequence[SentimentLabel]) -> TrainedModel:
    """Fit one model. Deterministic given (spec, dtm, labels).

    A single-class training set short-circuits to a constant predictor for
    every algorithm.
    """
    if len(labels) != dtm.n_docs:
        raise DimensionMismatch(f"{len(labels)} labels for {dtm.n_docs} documents")
    if dtm.n_docs < 2:
        raise ValueError("training needs at least 2 documents")
    y = np.asarray([int(l) for l in labels], dtype=np.int64)

    distinct = np.unique(y)
    if len(distinct) == 1:
        parameters = {"kind": "constant", "label": int(distinct[0])}
        return TrainedModel(spec=spec, vocab_size=dtm.n_terms, class_list=ALL_LABELS, parameters=parameters)

    X = _to_dense(dtm)
    hp = spec.hyperparameters
    algo = spec.algorithm
    if algo is Algorithm.NAIVE_BAYES:
        payload = _naive_bayes.fit(X, y, alpha=hp["alpha"])
    elif algo is Algorithm.MAXENT:
        payload = _linear.fit_maxent(X, y, l2=hp["l2"], learning_rate=hp["learning_rate"], epochs=hp["epochs"])
    elif algo is Algorithm.TREE:
        payload = _trees.fit_tree(
            X, y, max_depth=hp["max_depth"], min_samples_split=hp["min_samples_split"]
        )
    elif algo is Algorithm.BAGGED_TREE:
        payload = _trees.fit_bagging(X, y, n_estimators=hp["n_estimators"], seed=spec.rng_seed)
    elif algo is Algorithm.BOOSTED_TREE:
        payload = _logitboost.fit(X, y, n_rounds=hp["n_rounds"])
    elif algo is Algorithm.RANDOM_FOREST:
        payload = _trees.fit_forest(X, y, n_trees=hp["n_trees"], seed=spec.rng_seed)
    elif algo is Algorithm.SVM:
        payload = _linear.fit_svm(X, y, C=hp["C"], epochs=hp["epochs"])
    elif algo is Algorithm.NEURAL_NET:
        payload = _neural.fit(
            X,
            y,
            hidden_units=hp["hidden_units"],
            learning_rate=hp["learning_rate"],
            epochs=hp["epochs"],
            rng=substream(spec.rng_seed, 0),
        )
    else:  # pragma: no cover
        raise AssertionError(f"unhandled algorithm {algo}")
    return TrainedModel(spec=spec, vocab_size=dtm.n_terms, class_list=ALL_LABELS, parameters=payload)


def predict_scores(model: TrainedModel, dtm: DocumentTermMatrix) -> np.ndarray:
    """Per-row class scores, shape (n_docs, 3). See module docstring."""
    if dtm.n_terms != model.vocab_size:
        raise DimensionMismatch(f"matrix has {dtm.n_terms} terms, model expects {model.vocab_size}")
    params = model.parameters
    if params.get("kind") == "constant":
        scores = np.zeros((dtm.n_docs, len(ALL_LABELS)))
        scores[:, params["label"]] = 1.0
        return scores
    X = _to_dense(dtm)
    algo = model.spec.algorithm
    if algo is Algorithm.NAIVE_BAYES:
        return _naive_bayes.scores(params, X)
    if algo is Algorithm.MAXENT:
        return _linear.scores_maxent(params, X)
    if algo is Algorithm.TREE:
        return _trees.scores_tree(params, X)
    if algo is Algorithm.BAGGED_TREE or algo is Algorithm.RANDOM_FOREST:
        return _trees.scores_ensemble(params, X)
    if algo is Algorithm.BOOSTED_TREE:
        return _logitboost.scores(params, X)
    if algo is Algorithm.SVM:
        return _linear.scores_svm(params, X)
    if algo is Algorithm.NEURAL_NET:
        return _neural.scores(params, X)
    raise AssertionError(f"unhandled algorithm {algo}")  # pragma: no cover


def predict(model: TrainedModel, dtm: DocumentTermMatrix) -> list[SentimentLabel]:
    """One label per row; ties broken by class order."""
    scores = predict_scores(model, dtm)
    return [SentimentLabel(int(i)) for i in np.argmax(scores, axis=1)]


def serialize_model(model: TrainedModel) -> bytes:
    """Canonical JSON bytes; identical models serialize identically."""
    doc = {
        "version": model.version,
        "spec": model.spec.to_dict(),
        "vocab_size": model.vocab_size,
        "class_list": [int(l) for l in model.class_list],
        "parameters": model.parameters,
    }
    return canonical_dumps(doc).encode("utf-8")


def deserialize_model(payload: bytes) -> TrainedModel:
    try:
        doc = json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptPayload(f"not a model file: {exc}") from None
    if not isinstance(doc, dict) or "version" not in doc:
        raise CorruptPayload("missing version field")
    if doc["version"] != MODEL_FORMAT_VERSION:
        raise VersionMismatch(f"unsupported model version {doc['version']}")
    try:
        return TrainedModel(
            spec=AlgorithmSpec.from_dict(doc["spec"]),
            vocab_size=int(doc["vocab_size"]),
            class_list=tuple(SentimentLabel(i) for i in doc["class_list"]),
            parameters=doc["parameters"],
            version=doc["version"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptPayload(f"malformed model payload: {exc}") from None
