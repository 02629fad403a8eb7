import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from golden import PREPROCESS_GOLDEN
from microattrib.corpus import (
    HASHTAG_RE,
    MENTION_RE,
    URL_RE,
    Corpus,
    CorpusError,
    RawDocument,
    SplitCorpus,
    build_corpus,
    load_corpus,
    preprocess,
    split_corpus,
)


def write_jsonl(path, records):
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), encoding="utf-8")
    return path


def records(authors=("a1", "a2"), per_author=3):
    return [
        {"id": f"{a}-{i}", "author": a, "text": f"message {i} from {a}"}
        for a in authors
        for i in range(per_author)
    ]


@pytest.mark.parametrize("source,clean,counts", PREPROCESS_GOLDEN)
def test_preprocess_golden(source, clean, counts):
    text, removed = preprocess(source)
    assert text == clean
    assert (removed.mentions, removed.hashtags, removed.urls) == counts


@pytest.mark.parametrize("source", [g[0] for g in PREPROCESS_GOLDEN])
def test_preprocess_idempotent(source):
    clean, _ = preprocess(source)
    again, removed = preprocess(clean)
    assert again == clean
    assert removed.as_dict() == {"mentions": 0, "hashtags": 0, "urls": 0}


tweetish = st.lists(
    st.one_of(
        st.text(st.characters(blacklist_categories=("Cs",)), max_size=8),
        st.sampled_from(["@bob", "#tag", "http://x.co/a", "HTTPS://Y", "@", "#", "a@b", "#x@y", " ", "\n"]),
    ),
    max_size=12,
).map("".join)


@given(tweetish)
def test_clean_text_has_no_pattern_matches(text):
    clean, _ = preprocess(text)
    for pattern in (URL_RE, MENTION_RE, HASHTAG_RE):
        assert pattern.search(clean) is None
    assert clean == clean.strip()
    assert "  " not in clean


@given(tweetish)
def test_preprocess_idempotent_property(text):
    clean, _ = preprocess(text)
    assert preprocess(clean) == (clean, preprocess("x")[1])


@given(st.lists(st.sampled_from(["word", "@m", "#h", "http://u.rl"]), min_size=1, max_size=15))
def test_removed_counts_match_single_scan_when_space_separated(tokens):
    # space-separated tokens never interact, so one scan of the source gives the counts
    source = " ".join(tokens)
    _, removed = preprocess(source)
    assert removed.urls == len(URL_RE.findall(source))
    assert removed.mentions == len(MENTION_RE.findall(URL_RE.sub("", source)))
    assert removed.hashtags == tokens.count("#h")


def test_load_jsonl_two_authors(tmp_path):
    corpus = load_corpus(write_jsonl(tmp_path / "c.jsonl", records()))
    assert corpus.authors == ("a1", "a2")
    assert [len(corpus.documents[a]) for a in corpus.authors] == [3, 3]
    assert [d.doc_id for d in corpus.documents["a1"]] == ["a1-0", "a1-1", "a1-2"]


def test_load_preserves_first_appearance_order(tmp_path):
    recs = records(("zed", "amy"), 2)
    recs = [recs[2], recs[0], recs[3], recs[1]]
    assert load_corpus(write_jsonl(tmp_path / "c.jsonl", recs)).authors == ("amy", "zed")


def test_missing_text_cites_line(tmp_path):
    recs = records(per_author=3)
    del recs[4]["text"]
    with pytest.raises(CorpusError, match="line 5"):
        load_corpus(write_jsonl(tmp_path / "c.jsonl", recs))


def test_invalid_json_cites_line(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"id": "1", "author": "a", "text": "x"}\n{oops\n', encoding="utf-8")
    with pytest.raises(CorpusError, match="line 2"):
        load_corpus(path)


def test_empty_file(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text("", encoding="utf-8")
    with pytest.raises(CorpusError, match="empty"):
        load_corpus(path)


def test_author_with_single_document_is_named(tmp_path):
    recs = records() + [{"id": "solo", "author": "lonely", "text": "hi"}]
    with pytest.raises(CorpusError, match="lonely"):
        load_corpus(write_jsonl(tmp_path / "c.jsonl", recs))


def test_strict_length(tmp_path):
    long_text = "ab" * 150
    assert len(long_text) == 300
    recs = records() + [{"id": "x", "author": "a1", "text": long_text}]
    path = write_jsonl(tmp_path / "c.jsonl", recs)
    with pytest.raises(CorpusError, match="line 7"):
        load_corpus(path, strict_length=True)
    assert len(load_corpus(path).documents["a1"]) == 4


def test_strict_length_counts_scalar_values(tmp_path):
    # 280 emoji are 280 scalar values but 1120 UTF-8 bytes
    recs = records() + [{"id": "e", "author": "a1", "text": "😀" * 280}]
    corpus = load_corpus(write_jsonl(tmp_path / "c.jsonl", recs), strict_length=True)
    assert len(corpus.documents["a1"]) == 4


def test_nfc_normalisation(tmp_path):
    decomposed = "café time"
    recs = records() + [{"id": "n", "author": "a1", "text": decomposed}]
    corpus = load_corpus(write_jsonl(tmp_path / "c.jsonl", recs))
    assert corpus.documents["a1"][-1].clean_text == "café time"


def test_csv_ingest(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text(
        'id,author,text,created_at\n1,a,"hello, ""world""",2020-01-01T00:00:00Z\n2,a,bye,\n3,b,x y,\n4,b,z,\n',
        encoding="utf-8",
    )
    corpus = load_corpus(path)
    assert corpus.authors == ("a", "b")
    assert corpus.documents["a"][0].clean_text == 'hello, "world"'


def test_csv_missing_column(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("id,author\n1,a\n", encoding="utf-8")
    with pytest.raises(CorpusError, match="text"):
        load_corpus(path)


def test_empty_after_preprocessing_is_kept(tmp_path):
    recs = records() + [{"id": "m", "author": "a1", "text": "@a @b"}]
    corpus = load_corpus(write_jsonl(tmp_path / "c.jsonl", recs))
    last = corpus.documents["a1"][-1]
    assert last.is_empty and last.removed_counts.mentions == 2


def make_corpus(sizes):
    docs = [RawDocument(f"{a}-{i}", a, f"text {i}") for a, n in sizes.items() for i in range(n)]
    return build_corpus(docs)


def test_split_150_docs():
    split = split_corpus(make_corpus({"a": 150, "b": 10}), 0.7)
    assert len(split.known["a"]) == 105 and len(split.unknown["a"]) == 45


def test_split_in_order_takes_prefix():
    corpus = make_corpus({"a": 10, "b": 10})
    split = split_corpus(corpus, 0.7, mode="in_order")
    assert [d.doc_id for d in split.known["a"]] == [f"a-{i}" for i in range(7)]
    assert [d.doc_id for d in split.unknown["a"]] == ["a-7", "a-8", "a-9"]


def test_split_floor_uses_decimal_fraction():
    # 0.7 * 70 is 48.999... in binary floating point
    split = split_corpus(make_corpus({"a": 70, "b": 10}), 0.7)
    assert len(split.known["a"]) == 49


def test_shuffled_split_is_deterministic():
    corpus = make_corpus({"a": 30, "b": 25})
    first = split_corpus(corpus, 0.7, seed=5, mode="shuffled")
    second = split_corpus(corpus, 0.7, seed=5, mode="shuffled")
    assert first.to_json() == second.to_json()
    other = split_corpus(corpus, 0.7, seed=6, mode="shuffled")
    assert other.to_json() != first.to_json()


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.1, 1.5])
def test_split_rejects_fraction(fraction):
    with pytest.raises(CorpusError):
        split_corpus(make_corpus({"a": 10, "b": 10}), fraction)


def test_split_rejects_degenerate_author():
    with pytest.raises(CorpusError, match="'a'"):
        split_corpus(make_corpus({"a": 2, "b": 10}), 0.3)


@given(
    st.dictionaries(st.sampled_from("abcdef"), st.integers(2, 60), min_size=1),
    st.sampled_from(["in_order", "shuffled"]),
    st.integers(0, 2**32),
)
def test_split_partitions_documents(sizes, mode, seed):
    corpus = make_corpus(sizes)
    split = split_corpus(corpus, 0.7, seed, mode)
    for author, n in sizes.items():
        known = {d.doc_id for d in split.known[author]}
        unknown = {d.doc_id for d in split.unknown[author]}
        assert not known & unknown
        assert known | unknown == {d.doc_id for d in corpus.documents[author]}
        assert len(known) == 7 * n // 10


def test_split_json_round_trip():
    split = split_corpus(make_corpus({"a": 5, "b": 4}), 0.7)
    payload = json.loads(split.to_json())
    assert set(payload) == {"train_fraction", "seed", "mode", "known", "unknown"}
    assert SplitCorpus.from_json(split.to_json()).to_json() == split.to_json()


def test_corpus_subset():
    corpus = make_corpus({"a": 3, "b": 3, "c": 3})
    sub = corpus.subset(["c", "a"])
    assert isinstance(sub, Corpus) and sub.authors == ("c", "a")
    with pytest.raises(CorpusError):
        corpus.subset(["zz"])
