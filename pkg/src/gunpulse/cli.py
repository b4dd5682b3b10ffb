"""Pipeline command line: gen, ingest, featurize, train, evaluate, classify,
score, snapshot, serve.

Subcommands compose through files: each stage's output is the next stage's
input. Configuration comes from one JSON file (--config) with flag
overrides; reruns with the same config and seed produce byte-identical
artifacts. Logs go to stderr, data to files or stdout. Exit codes: 0 ok,
1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from ._util import provenance
from .aggregate import DAY, build_snapshot, save_snapshot
from .classifiers import (
    Algorithm,
    AlgorithmSpec,
    deserialize_model,
    predict,
    serialize_model,
    train,
)
from .corpusgen import GeneratorSpec, generate_corpus
from .evaluation import compare_models, nested_training_sets
from .features import FeatureConfig, Vocabulary, build_vocabulary, vectorize_corpus
from .geo import assign_state, load_default_fixture, load_state_geo
from .ingest import (
    CorpusWindow,
    FilterRules,
    apply_filters,
    parse_tweet_json,
    read_trimmed_csv_rows,
    tweets_to_ndjson,
    write_trimmed_csv,
)
from .labels import ALL_LABELS, SentimentLabel


class DataError(Exception):
    """Anything that should abort with exit code 1."""


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load_config(path) -> dict:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"config: {exc}") from None


_ALGO_ALIASES = {
    "nb": Algorithm.NAIVE_BAYES,
    "naive_bayes": Algorithm.NAIVE_BAYES,
    "me": Algorithm.MAXENT,
    "maxent": Algorithm.MAXENT,
    "tree": Algorithm.TREE,
    "bagged_tree": Algorithm.BAGGED_TREE,
    "bagging": Algorithm.BAGGED_TREE,
    "boosted_tree": Algorithm.BOOSTED_TREE,
    "boosting": Algorithm.BOOSTED_TREE,
    "rf": Algorithm.RANDOM_FOREST,
    "random_forest": Algorithm.RANDOM_FOREST,
    "svm": Algorithm.SVM,
    "nn": Algorithm.NEURAL_NET,
    "neural_net": Algorithm.NEURAL_NET,
}


def _algorithm(name: str) -> Algorithm:
    try:
        return _ALGO_ALIASES[name.strip().lower()]
    except KeyError:
        raise DataError(f"unknown algorithm {name!r} (choose from {sorted(_ALGO_ALIASES)})") from None


def _feature_config(config: dict, args) -> FeatureConfig:
    section = dict(config.get("feature_config", {}))
    if getattr(args, "ngram", None):
        section["ngram_order"] = args.ngram
    if getattr(args, "min_doc_freq", None):
        section["min_doc_freq"] = args.min_doc_freq
    return FeatureConfig(**section)


def _seed(config: dict, args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    return int(config.get("seed", 0))


def _quota(config: dict) -> dict:
    raw = config.get("quota", {"pro": 2000, "anti": 2000, "neutral": 1000})
    return {SentimentLabel.from_short_name(k): int(v) for k, v in raw.items()}


def _read_labels_csv(path) -> dict:
    labels = {}
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            for row in csv.DictReader(fh):
                labels[row["id"]] = SentimentLabel.from_short_name(row["label"])
    except (OSError, KeyError, ValueError) as exc:
        raise DataError(f"labels file {path}: {exc}") from None
    return labels


def _write_labels_csv(path, pairs) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "label"])
        for tweet_id, label in pairs:
            writer.writerow([tweet_id, label.short_name])


def _labeled_corpus(input_csv, labels_csv):
    tweets, states, _ = read_trimmed_csv_rows(input_csv)
    label_map = _read_labels_csv(labels_csv)
    missing = [tw.id for tw in tweets if tw.id not in label_map]
    if missing:
        raise DataError(f"{len(missing)} tweets have no label (first: {missing[0]})")
    return tweets, states, [label_map[tw.id] for tw in tweets]


def _geo(args):
    pop_csv = getattr(args, "pop_csv", None)
    if getattr(args, "geo", None):
        return load_state_geo(args.geo, population_csv=pop_csv)
    if pop_csv:
        from .geo import default_fixture_path

        return load_state_geo(default_fixture_path(), population_csv=pop_csv)
    return load_default_fixture()


def _parse_date(value: str) -> int:
    try:
        return int(datetime.strptime(value, "%Y-%m-%d").replace(tzinfo=timezone.utc).timestamp())
    except ValueError as exc:
        raise DataError(f"bad date {value!r}: {exc}") from None


def _window_from(args, tweets) -> CorpusWindow:
    if getattr(args, "window_start", None) and getattr(args, "window_end", None):
        return CorpusWindow(_parse_date(args.window_start), _parse_date(args.window_end) + DAY - 1)
    if not tweets:
        raise DataError("cannot infer a window from an empty corpus")
    lo = min(tw.timestamp for tw in tweets)
    hi = max(tw.timestamp for tw in tweets)
    return CorpusWindow(lo - lo % DAY, hi - hi % DAY + DAY - 1)


# ---------------------------------------------------------------- commands


def _cmd_gen(args) -> int:
    config = _load_config(args.config)
    if args.spec:
        spec = GeneratorSpec.from_json_file(args.spec)
    elif "generator" in config:
        spec = GeneratorSpec.from_dict(config["generator"])
    else:
        raise DataError("gen needs --spec or a generator section in --config")
    if args.seed is not None:
        spec = GeneratorSpec.from_dict({**_genspec_dict(spec), "seed": args.seed})
    corpus = generate_corpus(spec)
    Path(args.out).write_text(tweets_to_ndjson([tw for tw, _ in corpus]), encoding="utf-8")
    if args.labels:
        _write_labels_csv(args.labels, [(tw.id, label) for tw, label in corpus])
    _log(f"gen: wrote {len(corpus)} tweets to {args.out}")
    return 0


def _genspec_dict(spec: GeneratorSpec) -> dict:
    return {
        "n_per_class": {k.short_name: v for k, v in spec.n_per_class.items()},
        "class_lexicons": {k.short_name: list(v) for k, v in spec.class_lexicons.items()},
        "shared_lexicon": list(spec.shared_lexicon),
        "time_window": {"start": spec.time_window.start, "end": spec.time_window.end},
        "geo_distribution": dict(spec.geo_distribution),
        "signal_rate": spec.signal_rate,
        "tokens_per_tweet": list(spec.tokens_per_tweet),
        "event_spike": list(spec.event_spike) if spec.event_spike else None,
        "class_tags": {k.short_name: list(v) for k, v in spec.class_tags.items()},
        "tag_rate": spec.tag_rate,
        "seed": spec.seed,
    }


def _cmd_ingest(args) -> int:
    config = _load_config(args.config)
    try:
        with open(args.input, "rb") as fh:
            tweets, issues = parse_tweet_json(fh)
    except OSError as exc:
        raise DataError(str(exc)) from None
    errors = [i for i in issues if i.severity == "error"]
    for issue in issues[:20]:
        _log(f"ingest: line {issue.line}: [{issue.severity}] {issue.reason}")
    rules_section = config.get("filter_rules")
    if args.rules:
        with open(args.rules, "r", encoding="utf-8") as fh:
            rules_section = json.load(fh)
    if rules_section:
        rules = FilterRules(
            keywords=tuple(rules_section.get("keywords", ())),
            phrases=tuple(rules_section.get("phrases", ())),
            hashtags=tuple(rules_section.get("hashtags", ())),
            mentions=tuple(rules_section.get("mentions", ())),
            country_code=rules_section.get("country_code"),
            lang=rules_section.get("lang"),
            exclude_retweets=bool(rules_section.get("exclude_retweets", False)),
        )
        kept = apply_filters(tweets, rules)
    else:
        kept = list(tweets)
    count = write_trimmed_csv(kept, args.out)
    _log(f"ingest: {len(tweets)} parsed, {len(errors)} bad lines, {count} kept -> {args.out}")
    return 0


def _cmd_featurize(args) -> int:
    config = _load_config(args.config)
    feature_config = _feature_config(config, args)
    tweets, _, _ = read_trimmed_csv_rows(args.input)
    vocab = build_vocabulary(tweets, feature_config)
    doc = json.loads(vocab.to_json())
    doc["provenance"] = provenance(_seed(config, args), feature_config.to_dict())
    Path(args.out).write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")), encoding="utf-8")
    _log(f"featurize: {len(vocab)} terms -> {args.out}")
    return 0


def _cmd_train(args) -> int:
    config = _load_config(args.config)
    feature_config = _feature_config(config, args)
    seed = _seed(config, args)
    tweets, _, labels = _labeled_corpus(args.input, args.labels)
    algo_section = config.get("algorithm", {})
    algorithm = _algorithm(args.algo or algo_section.get("algorithm", "random_forest"))
    spec = AlgorithmSpec(
        algorithm=algorithm,
        hyperparameters=dict(algo_section.get("hyperparameters", {})),
        rng_seed=seed,
    )
    vocab = build_vocabulary(tweets, feature_config)
    dtm = vectorize_corpus(tweets, vocab)
    model = train(spec, dtm, labels)
    Path(args.out).write_bytes(serialize_model(model))
    vocab_out = args.vocab_out or str(Path(args.out).with_suffix(".vocab.json"))
    doc = json.loads(vocab.to_json())
    doc["provenance"] = provenance(seed, {"features": feature_config.to_dict(), "spec": spec.to_dict()})
    Path(vocab_out).write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")), encoding="utf-8")
    _log(f"train: {algorithm.value} on {dtm.n_docs} docs x {dtm.n_terms} terms -> {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    config = _load_config(args.config)
    seed = _seed(config, args)
    quota = _quota(config)
    tweets, _, labels = _labeled_corpus(args.input, args.labels)
    pool = list(zip(tweets, labels))
    specs = [
        AlgorithmSpec(algorithm=_algorithm(name), rng_seed=seed)
        for name in (args.algos.split(",") if args.algos else
                     ["svm", "me", "tree", "bagged_tree", "boosted_tree", "rf", "nn", "nb"])
    ]
    if args.table1:
        sizes = [1000, 2000, 3000, 4000, 5000]
        configs = [FeatureConfig(ngram_order=1)]
    elif args.table2:
        sizes = [sum(quota.values())]
        configs = [FeatureConfig(ngram_order=n) for n in (1, 2, 3)]
    else:
        sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else [sum(quota.values())]
        orders = [int(o) for o in args.orders.split(",")] if args.orders else [1]
        configs = [FeatureConfig(ngram_order=n) for n in orders]
    table = compare_models(specs, sizes, configs, pool, quota, seed, k=args.k, n_jobs=args.jobs)
    print(table.format_text())
    if args.out_csv:
        Path(args.out_csv).write_text(table.to_csv(), encoding="utf-8")
    if args.out_json:
        meta = {"seed": seed, "sizes": sizes, "orders": [c.ngram_order for c in configs]}
        Path(args.out_json).write_text(table.to_json(provenance(seed, meta)), encoding="utf-8")
    return 0


def _cmd_classify(args) -> int:
    tweets, states, _ = read_trimmed_csv_rows(args.input)
    model = deserialize_model(Path(args.model).read_bytes())
    vocab_doc = json.loads(Path(args.vocab).read_text(encoding="utf-8"))
    vocab = Vocabulary.from_json(json.dumps({k: vocab_doc[k] for k in ("version", "config", "terms")}))
    dtm = vectorize_corpus(tweets, vocab)
    labels = predict(model, dtm)
    write_trimmed_csv(tweets, args.out, states=states, labels=[l.short_name for l in labels])
    _log(f"classify: {len(tweets)} tweets labeled -> {args.out}")
    return 0


def _cmd_score(args) -> int:
    from .scoring import SentimentCounts, score_all_states

    tweets, states, labels = _read_classified(args.input)
    polygons, pop = _geo(args)
    states = _fill_states(tweets, states, polygons)
    window = _window_from(args, tweets)
    counts: dict[str, list[int]] = {}
    for tw, state, label in zip(tweets, states, labels):
        if state is None or not window.contains(tw.timestamp):
            continue
        counts.setdefault(state, [0, 0, 0])[int(label)] += 1
    result = score_all_states(
        {code: SentimentCounts(*vals) for code, vals in counts.items()}, window, pop
    )
    doc = result.to_dict()
    doc["provenance"] = provenance(_seed(_load_config(args.config), args), doc["window"])
    Path(args.out).write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")), encoding="utf-8")
    if args.out_csv:
        Path(args.out_csv).write_text(result.to_csv(), encoding="utf-8")
    _log(f"score: {len(counts)} states -> {args.out}")
    return 0


def _read_classified(path):
    tweets, states, label_names = read_trimmed_csv_rows(path)
    labels = []
    for tw, name in zip(tweets, label_names):
        if not name:
            raise DataError(f"tweet {tw.id} has no label; run classify first")
        labels.append(SentimentLabel.from_short_name(name))
    return tweets, states, labels


def _fill_states(tweets, states, polygons):
    filled = []
    for tw, state in zip(tweets, states):
        filled.append(state if state else assign_state(tw, polygons))
    return filled


def _cmd_snapshot(args) -> int:
    config = _load_config(args.config)
    seed = _seed(config, args)
    tweets, states, labels = _read_classified(args.input)
    polygons, pop = _geo(args)
    states = _fill_states(tweets, states, polygons)
    window = _window_from(args, tweets)
    records = [
        (tw, label, state)
        for tw, label, state in zip(tweets, labels, states)
        if window.contains(tw.timestamp)
    ]
    snapshot = build_snapshot(
        records,
        pop,
        window,
        classifier_id=args.classifier_id,
        provenance=provenance(seed, {"window": [window.start, window.end]}),
    )
    snapshot.validate()
    save_snapshot(snapshot, args.out)
    _log(f"snapshot: {len(records)} tweets, {len(snapshot.series)} series points -> {args.out}")
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    try:
        serve(args.snapshot, host=args.host, port=args.port)
    except (OSError, ValueError) as exc:
        raise DataError(f"serve: {exc}") from None
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gunpulse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="pipeline config JSON")
        p.add_argument("--seed", type=int, help="override the config seed")

    p = sub.add_parser("gen", help="generate a synthetic labeled corpus")
    common(p)
    p.add_argument("--spec", help="generator spec JSON (overrides config section)")
    p.add_argument("--out", required=True, help="output NDJSON path")
    p.add_argument("--labels", help="output labels CSV path (id,label)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("ingest", help="parse NDJSON, filter, write trimmed CSV")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--rules", help="filter rules JSON (overrides config section)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("featurize", help="build and save a vocabulary")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ngram", type=int, choices=(1, 2, 3))
    p.add_argument("--min-doc-freq", type=int, dest="min_doc_freq")
    p.set_defaults(func=_cmd_featurize)

    p = sub.add_parser("train", help="train one model on a labeled corpus")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--algo", help="nb|me|tree|bagged_tree|boosted_tree|rf|svm|nn")
    p.add_argument("--ngram", type=int, choices=(1, 2, 3))
    p.add_argument("--min-doc-freq", type=int, dest="min_doc_freq")
    p.add_argument("--out", required=True)
    p.add_argument("--vocab-out", dest="vocab_out")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate", help="cross-validated model comparison grids")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--table1", action="store_true", help="5 training sizes x 8 algorithms, uni-gram")
    p.add_argument("--table2", action="store_true", help="3 N-gram orders x 8 algorithms")
    p.add_argument("--sizes", help="comma-separated training sizes")
    p.add_argument("--orders", help="comma-separated N-gram orders")
    p.add_argument("--algos", help="comma-separated algorithm names")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for grid cells")
    p.add_argument("--out-csv", dest="out_csv")
    p.add_argument("--out-json", dest="out_json")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("classify", help="label a trimmed CSV with a trained model")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("score", help="regional sentiment scores for a window")
    common(p)
    p.add_argument("--input", required=True, help="classified CSV")
    p.add_argument("--geo", help="state boundary GeoJSON (default: bundled fixture)")
    p.add_argument("--pop-csv", dest="pop_csv", help="population/ownership CSV override")
    p.add_argument("--window-start", dest="window_start", help="YYYY-MM-DD")
    p.add_argument("--window-end", dest="window_end", help="YYYY-MM-DD")
    p.add_argument("--out", required=True)
    p.add_argument("--out-csv", dest="out_csv")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("snapshot", help="build the snapshot served by the API")
    common(p)
    p.add_argument("--input", required=True, help="classified CSV")
    p.add_argument("--geo", help="state boundary GeoJSON (default: bundled fixture)")
    p.add_argument("--pop-csv", dest="pop_csv", help="population/ownership CSV override")
    p.add_argument("--window-start", dest="window_start", help="YYYY-MM-DD")
    p.add_argument("--window-end", dest="window_end", help="YYYY-MM-DD")
    p.add_argument("--classifier-id", dest="classifier_id", default="model")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_snapshot)

    p = sub.add_parser("serve", help="serve a snapshot over HTTP")
    common(p)
    p.add_argument("--snapshot", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"gunpulse-error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError) as exc:
        print(f"gunpulse-error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
