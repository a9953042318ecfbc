"""The release gate. One test per required behavior, each at its stated
tolerance and runtime bound; run with -v for a pass/fail line apiece."""

import itertools
import random
import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

from awegec.align import apply_edits, edits_between, extract_edits
from awegec.align import align as align_tokens
from awegec.corrector import CorrectorConfig, ExternalBackendConfig, RuleSet, correct
from awegec.feedback import (
    SentenceFeedback,
    make_document,
    reconstruct_corrected,
    reconstruct_source,
)
from awegec.features import frazier_score, yngve_depth
from awegec.geceval import make_report
from awegec.m2 import AnnotatedSentence, read_m2, write_m2
from awegec.scorer import (
    CrossPromptConfig,
    cross_prompt_eval,
    neutral_model,
    predict,
    qwk,
    ridge_solve,
)
from awegec.service import ServiceConfig, create_app
from awegec.synthetic import (
    make_planted_essays,
    make_spelling_corpus,
    random_m2_corpus,
    random_token_pair,
    random_tree,
)
from awegec.text import TokenizedSentence
from awegec.trees import parse_tree

from conftest import (
    DATA_DIR,
    EXAMPLE_DICTIONARY,
    EXAMPLE_SRC,
    EXAMPLE_TGT,
    REFERENCE_TREE,
)
from oracles import (
    fbeta_closed_form,
    min_alignment_cost,
    qwk_confusion_matrix,
    ridge_augmented_lstsq,
)


def test_alignment_cost_is_optimal_on_1000_random_pairs():
    rng = random.Random(20260822)
    started = time.monotonic()
    for _ in range(1000):
        src, tgt = random_token_pair(rng, max_len=8, vocab_size=5)
        script = align_tokens(src, tgt)
        assert script.total_cost == min_alignment_cost(src.tokens, tgt.tokens)
    assert time.monotonic() - started < 10.0


def test_edit_round_trip_on_10000_random_pairs():
    rng = random.Random(7)
    for _ in range(10_000):
        src, tgt = random_token_pair(rng)
        edits = extract_edits(align_tokens(src, tgt), src, tgt)
        assert apply_edits(src, edits).tokens == tgt.tokens


def test_example_sentence_edits_m2_block_and_reconstruction_laws():
    edits = edits_between(EXAMPLE_SRC, EXAMPLE_TGT, EXAMPLE_DICTIONARY)
    assert [(e.start, e.end, " ".join(e.replacement)) for e in edits] == [
        (1, 2, "guess"), (2, 3, "most"), (5, 6, "speak")]

    source = TokenizedSentence.from_tokens(EXAMPLE_SRC)
    entry = AnnotatedSentence(source, {0: tuple(edits)})
    golden = (DATA_DIR / "example_sentence.m2").read_bytes()
    assert write_m2([entry]).encode("utf-8") == golden

    scores = predict(neutral_model(), _neutral_features())
    doc = make_document("acc", [SentenceFeedback(
        source_tokens=tuple(EXAMPLE_SRC),
        edits=tuple(edits),
        corrected_tokens=tuple(EXAMPLE_TGT),
    )], scores)
    assert reconstruct_source(doc.segments) == list(EXAMPLE_SRC)
    assert reconstruct_corrected(doc.segments) == list(EXAMPLE_TGT)


def _neutral_features():
    from awegec.features import FEATURE_NAMES, FeatureVector
    return FeatureVector(values={name: 0.0 for name in FEATURE_NAMES})


def test_f05_matches_closed_form_over_all_counts_up_to_20():
    for tp, fp, fn in itertools.product(range(21), repeat=3):
        ours = make_report(tp, fp, fn, beta=0.5).f_beta
        assert abs(ours - fbeta_closed_form(tp, fp, fn, 0.5)) <= 1e-12
    assert round(make_report(2, 1, 1, beta=0.5).f_beta, 4) == 0.6667
    assert round(make_report(1, 0, 1, beta=0.5).f_beta, 4) == 0.8333


def test_qwk_matches_confusion_matrix_oracle_on_500_random_vectors():
    rng = random.Random(11)
    for _ in range(500):
        k = rng.randint(1, 10)
        low = rng.randint(-3, 3)
        high = low + k - 1
        n = rng.randint(1, 50)
        gold = [rng.randint(low, high) for _ in range(n)]
        pred = [rng.randint(low, high) for _ in range(n)]
        ours = qwk(gold, pred, (low, high))
        oracle = qwk_confusion_matrix(gold, pred, low, high)
        assert abs(ours - oracle) <= 1e-12
    assert qwk([1, 2, 3, 4], [1, 2, 3, 4], (1, 4)) == 1.0
    assert qwk([0, 1, 0, 1], [1, 0, 1, 0], (0, 1)) == -1.0


def test_ridge_agrees_with_independent_solver_on_100_problems():
    rng = np.random.default_rng(13)
    lambdas = (0.01, 0.1, 1.0, 10.0)
    for i in range(100):
        n = int(rng.integers(20, 60))
        d = int(rng.integers(2, 8))
        z = rng.normal(size=(n, d))
        y = rng.normal(size=n)
        lam = lambdas[i % len(lambdas)]
        assert np.allclose(ridge_solve(z, y, lam),
                           ridge_augmented_lstsq(z, y, lam), atol=1e-8)
    shrunk = ridge_solve(rng.normal(size=(30, 4)), rng.normal(size=30), 1e12)
    assert np.max(np.abs(shrunk)) < 1e-6


def test_planted_cross_prompt_run_reaches_qwk_095_on_every_fold():
    started = time.monotonic()
    data = make_planted_essays(seed=0)
    report = cross_prompt_eval(data.essays, data.features, CrossPromptConfig())
    elapsed = time.monotonic() - started
    assert len(report.rows) == 8
    assert [row.prompt_id for row in report.rows] == list(range(1, 9))
    for row in report.rows:
        assert row.qwk >= 0.95, f"prompt {row.prompt_id}: {row.qwk:.4f}"
    assert report.average == pytest.approx(
        sum(r.qwk for r in report.rows) / 8, abs=1e-12)
    assert elapsed < 60.0


def test_yngve_and_frazier_reference_values_and_rightmost_leaf_zero():
    tree = parse_tree(REFERENCE_TREE)
    mean_y, max_y = yngve_depth(tree)
    assert mean_y == 1.0
    assert max_y == 2.0
    mean_f, _ = frazier_score(tree)
    assert mean_f == 1.5

    from awegec.features import _yngve_word_depths
    for seed in range(1000):
        depths = _yngve_word_depths(random_tree(random.Random(seed)))
        assert depths[-1] == 0.0


def test_spelling_baseline_restores_99_percent_and_spares_dictionary_words():
    corpus = make_spelling_corpus(seed=0)
    config = CorrectorConfig(rules=RuleSet(dictionary=corpus.dictionary))
    results = correct(corpus.corrupted, config)
    planted = {(i, j): orig for i, j, orig in corpus.planted}
    restored = 0
    for (i, j), orig in planted.items():
        if results[i].corrected.tokens[j] == orig:
            restored += 1
    assert len(planted) > 0
    assert restored / len(planted) >= 0.99

    clean_changes = 0
    for i, result in enumerate(results):
        for j, token in enumerate(result.corrected.tokens):
            if (i, j) not in planted:
                if token != corpus.corrupted[i].tokens[j]:
                    clean_changes += 1
    assert clean_changes == 0
    clean_results = correct(corpus.clean, config)
    assert all(not r.edits for r in clean_results)


def test_service_end_to_end_with_review_gating_restart_and_fallback(tmp_path):
    rules = RuleSet(
        rules=(
            (("almost", "people"), ("most", "people")),
            (("cannot", "speaking"), ("cannot", "speak")),
        ),
        dictionary={
            "i": 100, "guess": 50, "most": 90, "almost": 80, "people": 95,
            "cannot": 70, "speak": 60, "speaking": 30, "english": 40,
        },
    )
    from awegec.engine import Engine
    engine = Engine(corrector_config=CorrectorConfig(rules=rules),
                    model=neutral_model())
    config = ServiceConfig(store_dir=str(tmp_path / "store"), review_mode=True)
    text = "I gess almost people cannot speaking English."

    with TestClient(create_app(config, engine=engine)) as client:
        sid = client.post("/api/submissions", json={
            "learner_id": "lrn-1", "prompt_id": 1, "text": text}).json()["id"]
        for _ in range(50):
            if client.get(f"/api/submissions/{sid}").json()["status"] == "processed":
                break
        assert client.get(f"/api/submissions/{sid}").json()["status"] == "processed"

        blocked = client.get(f"/api/submissions/{sid}/feedback")
        assert blocked.status_code == 409

        doc = client.get(f"/api/submissions/{sid}/feedback",
                         params={"role": "teacher"}).json()
        assert len(doc["scores"]) == 9
        assert all(0.0 <= v <= 100.0 for v in doc["scores"].values())
        source = [t for s in doc["sentences"] for t in s["source"]]
        corrected = [t for s in doc["sentences"] for t in s["corrected"]]
        assert [t for seg in doc["segments"] if seg["kind"] in ("plain", "deleted")
                for t in seg["text"].split()] == source
        assert [t for seg in doc["segments"] if seg["kind"] in ("plain", "inserted")
                for t in seg["text"].split()] == corrected

        released = client.post(f"/api/review/{sid}", json={
            "reviewer_id": "t-1", "edit_decisions": {"0:1:2": False}}).json()
        ids = [e["id"] for s in released["sentences"] for e in s["edits"]]
        assert "0:1:2" not in ids
        assert released["sentences"][0]["corrected"][1] == "gess"
        assert client.get(f"/api/submissions/{sid}/feedback").status_code == 200

    with TestClient(create_app(config, engine=engine)) as client:
        view = client.get(f"/api/submissions/{sid}").json()
        assert view["status"] == "released"
        doc = client.get(f"/api/submissions/{sid}/feedback").json()
        assert "0:1:2" not in [e["id"] for s in doc["sentences"] for e in s["edits"]]

    dead = CorrectorConfig(
        rules=rules, backend="external",
        external=ExternalBackendConfig(endpoint="http://127.0.0.1:1/correct",
                                       timeout_ms=300),
        fallback_to_rules=True)
    fallback_engine = Engine(corrector_config=dead, model=neutral_model())
    fb_config = ServiceConfig(store_dir=str(tmp_path / "store2"))
    with TestClient(create_app(fb_config, engine=fallback_engine)) as client:
        sid = client.post("/api/submissions", json={
            "prompt_id": 1, "text": text}).json()["id"]
        doc = client.get(f"/api/submissions/{sid}/feedback").json()
        assert {s["backend"] for s in doc["sentences"]} == {"fallback-rules"}


def test_m2_round_trip_is_byte_identical_on_50_entry_corpus():
    corpus = random_m2_corpus(seed=99, n_sentences=50)
    first = write_m2(corpus)
    second = write_m2(read_m2(first))
    assert second.encode("utf-8") == first.encode("utf-8")
