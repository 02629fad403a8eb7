import csv
import io
import json

import pytest

from microattrib.attribution import FeatureKind, ProfileConfig
from microattrib.corpus import RawDocument, build_corpus
from microattrib.evaluation import (
    EvaluationReport,
    SweepConfig,
    TableRow,
    render_report,
    run_sweep,
    select_authors,
)
from microattrib.synthgen import generate_corpus

CHAR3 = FeatureKind.parse("char3")


@pytest.fixture(scope="module")
def synth():
    return generate_corpus(12, (20, 30), seed=11)


@pytest.fixture(scope="module")
def report(synth):
    config = SweepConfig(author_counts=(4, 8, 12), seed=11)
    return run_sweep(synth.corpus(), config, ProfileConfig(dictionary=synth.dictionary, slang_lexicon=synth.slang_lexicon))


def hand_corpus():
    """Four authors with disjoint vocabularies; author a3's unknown part is a4's writing."""
    vocab = {
        "a1": ["apple", "banana", "cherry", "grape"],
        "a2": ["dog", "wolf", "fox", "hound"],
        "a3": ["river", "ocean", "lake", "pond"],
        "a4": ["piano", "violin", "cello", "flute"],
    }
    docs = []
    for author, words in vocab.items():
        for i in range(10):
            text = " ".join(words[(i + j) % 4] for j in range(5))
            if author == "a3" and i >= 7:
                text = " ".join(vocab["a4"][(i + j) % 4] for j in range(5))
            docs.append(RawDocument(f"{author}-{i}", author, text))
    return build_corpus(docs)


def test_planted_confusion_is_flagged():
    report = run_sweep(hand_corpus(), SweepConfig(author_counts=(4,), features=(CHAR3,), metrics=("cosine",)))
    rows = {r.true_author: r for r in report.tables[("char3", "cosine", 4)]}
    assert rows["a3"].predicted == "a4" and not rows["a3"].correct
    assert all(rows[a].correct for a in ("a1", "a2", "a4"))
    assert report.cells[("char3", "cosine", 4)] == 0.75
    assert "(mis-ID: a4)" in render_report(report, "markdown").decode()


def test_all_correct_is_accuracy_one():
    report = run_sweep(hand_corpus(), SweepConfig(author_counts=(2,), features=(CHAR3,), metrics=("cosine",)))
    assert report.cells[("char3", "cosine", 2)] == 1.0


def test_report_structure(report):
    assert {k for (_, _, k) in report.cells} == {4, 8, 12}
    for key, rows in report.tables.items():
        assert len(rows) == key[2]
        assert report.cells[key] == report.correct_count(key) / key[2]
        assert 0 <= report.cells[key] <= 1
    for (feature, k), total in report.totals.items():
        metrics = [m for (f, m, kk) in report.cells if f == feature and kk == k]
        assert total == pytest.approx(sum(report.cells[(feature, m, k)] for m in metrics) / len(metrics), abs=1e-12)
    assert report.totals[("idiosyncratic", 4)] == report.cells[("idiosyncratic", "overlap", 4)]


def test_selection_nests(report):
    rows4 = [r.true_author for r in report.tables[("char3", "cosine", 4)]]
    rows8 = [r.true_author for r in report.tables[("char3", "cosine", 8)]]
    assert rows8[:4] == rows4


def test_random_selection_nests(synth):
    corpus = synth.corpus()
    small, large = select_authors(corpus, 4, "random", 3), select_authors(corpus, 9, "random", 3)
    assert large[:4] == small and small != corpus.authors[:4]
    with pytest.raises(ValueError):
        select_authors(corpus, 13)


def test_deterministic(synth):
    config = SweepConfig(author_counts=(3, 6), features=(CHAR3, FeatureKind("lexical")), seed=2, selection="random",
                         split_mode="shuffled")
    a = run_sweep(synth.corpus(), config)
    b = run_sweep(synth.corpus(), config)
    for fmt in ("json", "csv", "table_csv", "markdown"):
        assert render_report(a, fmt) == render_report(b, fmt)


def test_insufficient_authors(synth):
    with pytest.raises(ValueError):
        run_sweep(synth.corpus(), SweepConfig(author_counts=(5, 40), features=(CHAR3,)))


def test_idiosyncratic_needs_dictionary(synth):
    with pytest.raises(ValueError):
        run_sweep(synth.corpus(), SweepConfig(author_counts=(4,), features=(FeatureKind("idiosyncratic"),)))


@pytest.mark.parametrize("counts", [(), (5, 5), (10, 5), (1, 4)])
def test_config_validation(counts):
    with pytest.raises(ValueError):
        SweepConfig(author_counts=counts)
    with pytest.raises(ValueError):
        SweepConfig(metrics=("overlap",))


def test_ngram_subset_and_fused(synth):
    config = SweepConfig(author_counts=(4, 8), features=(CHAR3, FeatureKind("structural")), ngram_author_counts=(8,),
                         fused=True)
    report = run_sweep(synth.corpus(), config)
    assert {k for (f, _, k) in report.cells if f == "char3"} == {8}
    assert {k for (f, _, k) in report.cells if f == "structural"} == {4, 8}
    assert ("char3", "fused", 8) in report.cells
    # fused is its own classifier and stays out of the per-distance mean
    expected = sum(report.cells[("char3", m, 8)] for m in ("cosine", "euclidean", "manhattan")) / 3
    assert report.totals[("char3", 8)] == pytest.approx(expected)


def test_config_round_trip():
    config = SweepConfig(author_counts=(2, 3), features=(CHAR3,), ngram_author_counts=(3,), fused=True)
    assert SweepConfig.from_dict(json.loads(json.dumps(config.to_dict()))) == config


def single_cell_report(tie=False, correct=True):
    row = TableRow("a1", "a1" if correct else "a2", 0.25, tie, correct)
    return EvaluationReport(
        cells={("char3", "cosine", 1): 1.0 if correct else 0.0},
        totals={("char3", 1): 1.0 if correct else 0.0},
        tables={("char3", "cosine", 1): [row]},
    )


def test_csv_single_cell():
    rows = list(csv.reader(io.StringIO(render_report(single_cell_report(), "csv").decode())))
    assert rows == [["feature", "metric", "author_count", "accuracy"], ["char3", "cosine", "1", "1.0"]]


def test_table_csv_schema(report):
    rows = list(csv.DictReader(io.StringIO(render_report(report, "table_csv").decode())))
    assert list(rows[0]) == ["feature", "metric", "author_count", "true_author", "predicted", "best_score", "tie", "correct"]
    assert len(rows) == sum(len(r) for r in report.tables.values())


def test_markdown_markers():
    assert "0.2500 (tie)" in render_report(single_cell_report(tie=True), "markdown").decode()
    assert "(mis-ID: a2)" in render_report(single_cell_report(correct=False), "markdown").decode()


def test_json_round_trip(report):
    restored = EvaluationReport.from_dict(json.loads(render_report(report, "json")))
    assert restored == report


def test_render_errors(report):
    with pytest.raises(ValueError):
        render_report(report, "xml")
    with pytest.raises(ValueError):
        render_report(EvaluationReport(), "csv")
