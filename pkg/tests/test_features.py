import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gunpulse.features import (
    DocumentTermMatrix,
    EmptyVocabulary,
    FeatureConfig,
    Vocabulary,
    build_vocabulary,
    document_terms,
    extract_ngrams,
    extract_tag_features,
    tokenize,
    vectorize_corpus,
)
from gunpulse.ingest import Tweet


def _tweet(text, hashtags=(), mentions=()):
    return Tweet(id="t", text=text, timestamp=0, hashtags=hashtags, mentions=mentions)


class TestTokenize:
    def test_progun_example_sentence(self):
        text = "Gun control isn't gonna help. God bless the 2nd amendment! #sorrynotsorry"
        assert tokenize(text) == [
            "gun", "control", "isn't", "gonna", "help", "god", "bless",
            "the", "2nd", "amendment", "#sorrynotsorry",
        ]

    def test_empty(self):
        assert tokenize("") == []

    def test_elongation_collapse(self):
        assert tokenize("noooooooo") == ["nooo"]
        assert tokenize("nooo") == ["nooo"]
        assert tokenize("10000") == ["10000"]  # digits keep their length

    def test_url_sentinel(self):
        assert tokenize("read this http://x.co/a?b=1 now") == ["read", "this", "<url>", "now"]
        assert tokenize("www.example.com wins") == ["<url>", "wins"]

    def test_tags_keep_sigils(self):
        assert tokenize("ask @NRA about #GunControl.") == ["ask", "@nra", "about", "#guncontrol"]

    def test_punctuation_split_and_inner_apostrophe(self):
        assert tokenize("it's a so-called 'fix'") == ["it's", "a", "so", "called", "fix"]

    @given(st.text(max_size=80))
    @settings(max_examples=100, deadline=None)
    def test_idempotent_under_rejoin(self, text):
        tokens = tokenize(text)
        assert tokenize(" ".join(tokens)) == tokens


class TestNgrams:
    def test_bigrams(self):
        assert extract_ngrams(["a", "b", "c"], 2) == ["a b", "b c"]

    def test_unigrams(self):
        assert extract_ngrams(["a", "b", "c"], 1) == ["a", "b", "c"]

    def test_window_longer_than_input(self):
        assert extract_ngrams(["a", "b"], 3) == []

    @given(st.lists(st.sampled_from("abc"), max_size=12), st.sampled_from([1, 2, 3]))
    def test_count(self, tokens, n):
        assert len(extract_ngrams(tokens, n)) == max(0, len(tokens) - n + 1)
        if n == 1:
            assert extract_ngrams(tokens, 1) == tokens


class TestTagFeatures:
    def test_hashtag(self):
        assert extract_tag_features(_tweet("x", hashtags=("#2ndamendment",))) == ["tag:#2ndamendment"]

    def test_mention_lowercased(self):
        tw = Tweet(id="t", text="x", timestamp=0, mentions=("@NRA",))
        assert extract_tag_features(tw) == ["tag:@nra"]

    def test_no_tags(self):
        assert extract_tag_features(_tweet("x")) == []

    def test_dedup_and_sort(self):
        tw = _tweet("x", hashtags=("#b", "#a", "#b"), mentions=("@c",))
        assert extract_tag_features(tw) == ["tag:#a", "tag:#b", "tag:@c"]


class TestVocabulary:
    def test_min_doc_freq_two(self):
        docs = [_tweet("a b"), _tweet("a c")]
        vocab = build_vocabulary(docs, FeatureConfig(ngram_order=1, min_doc_freq=2))
        assert dict(vocab.index) == {"a": 0}

    def test_min_doc_freq_one(self):
        docs = [_tweet("a b"), _tweet("a c")]
        vocab = build_vocabulary(docs, FeatureConfig(ngram_order=1, min_doc_freq=1))
        assert dict(vocab.index) == {"a": 0, "b": 1, "c": 2}

    def test_empty_vocabulary_error(self):
        with pytest.raises(EmptyVocabulary):
            build_vocabulary([_tweet(""), _tweet("")], FeatureConfig(min_doc_freq=1))

    def test_tags_gated_by_config(self):
        docs = [_tweet("a", hashtags=("#x",), mentions=("@y",))] * 2
        on = build_vocabulary(docs, FeatureConfig(min_doc_freq=2))
        assert set(on.terms) == {"a", "tag:#x", "tag:@y"}
        off = build_vocabulary(
            docs, FeatureConfig(min_doc_freq=2, use_hashtags=False, use_mentions=False)
        )
        assert set(off.terms) == {"a"}

    def test_permutation_invariance(self, small_corpus):
        tweets = [tw for tw, _ in small_corpus[:60]]
        config = FeatureConfig(ngram_order=2, min_doc_freq=2)
        forward = build_vocabulary(tweets, config)
        backward = build_vocabulary(list(reversed(tweets)), config)
        assert forward.terms == backward.terms

    def test_json_roundtrip(self):
        docs = [_tweet("a b"), _tweet("a b")]
        vocab = build_vocabulary(docs, FeatureConfig(min_doc_freq=2))
        again = Vocabulary.from_json(vocab.to_json())
        assert again.terms == vocab.terms
        assert again.config == vocab.config


class TestVectorize:
    def _vocab(self, terms):
        return Vocabulary(terms=tuple(terms), config=FeatureConfig(min_doc_freq=1))

    def test_counts(self):
        dtm = vectorize_corpus([_tweet("a a b")], self._vocab(["a", "b"]))
        assert dtm.rows == (((0, 2), (1, 1)),)

    def test_oov_ignored(self):
        dtm = vectorize_corpus([_tweet("z z")], self._vocab(["a"]))
        assert dtm.rows == ((),)

    def test_zero_docs(self):
        dtm = vectorize_corpus([], self._vocab(["a"]))
        assert dtm.n_docs == 0

    def test_matrix_invariants_enforced(self):
        with pytest.raises(ValueError):
            DocumentTermMatrix(n_docs=1, n_terms=2, rows=(((1, 1), (0, 1)),))  # not increasing
        with pytest.raises(ValueError):
            DocumentTermMatrix(n_docs=1, n_terms=1, rows=(((0, 0),),))  # explicit zero

    @given(st.lists(st.text(alphabet="abcd ", max_size=25), min_size=1, max_size=12))
    @settings(max_examples=50, deadline=None)
    def test_row_sums_equal_brute_force(self, texts):
        tweets = [Tweet(id=str(i), text=t, timestamp=0) for i, t in enumerate(texts)]
        config = FeatureConfig(ngram_order=1, min_doc_freq=1)
        try:
            vocab = build_vocabulary(tweets, config)
        except EmptyVocabulary:
            return
        dtm = vectorize_corpus(tweets, vocab)
        for tw, row in zip(tweets, dtm.rows):
            expected = sum(1 for term in document_terms(tw, config) if term in vocab.index)
            assert sum(count for _, count in row) == expected
