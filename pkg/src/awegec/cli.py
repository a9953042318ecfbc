"""Batch command-line entry points for every pipeline stage.

Exit codes: 0 success, 1 data error (malformed input, missing prompt,
backend failure), 2 usage error. Outputs are deterministic functions of
the input files, flags, and ``--seed``, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corrector, essays, features, geceval, m2, ngram, scorer
from .align import edits_between
from .errors import AwegecError, LengthMismatch
from .noise import NamePool, substitute_essay
from .text import TokenizedSentence, split_sentences, tokenize


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, contents: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(contents)


def _load_rules(path: str | None) -> corrector.RuleSet:
    if path is None:
        return corrector.RuleSet()
    return corrector.RuleSet.from_json(_read(path))


def _load_ngram(path: str | None) -> ngram.NgramModel:
    if path is None:
        return ngram.NgramModel()
    return ngram.NgramModel.from_json(_read(path))


def _tokenized_lines(path: str) -> list[TokenizedSentence]:
    sentences = []
    for line in _read(path).splitlines():
        tokens = line.split()
        if tokens:
            sentences.append(TokenizedSentence.from_tokens(tokens))
    return sentences


def _essay_sentences(text: str) -> list[TokenizedSentence]:
    out = []
    for raw in split_sentences(text):
        sentence = tokenize(raw)
        if sentence.tokens:
            out.append(sentence)
    return out


# -- subcommands -------------------------------------------------------------

def cmd_ingest(args) -> int:
    config = (essays.IngestConfig.from_json(_read(args.config))
              if args.config else essays.IngestConfig())
    records = essays.read_essay_tsv(_read(args.data), config)
    _write(args.out, essays.write_essay_jsonl(records))
    print(f"ingested {len(records)} essays -> {args.out}")
    return 0


def cmd_denoise(args) -> int:
    records = essays.read_essay_jsonl(_read(args.essays))
    pool = (NamePool.from_json(_read(args.name_pool))
            if args.name_pool else NamePool())
    cleaned = []
    for record in records:
        sentences = substitute_essay(_essay_sentences(record.text), pool, args.seed)
        text = " ".join(" ".join(s.tokens) for s in sentences)
        cleaned.append(essays.EssayRecord(
            record.essay_id, record.prompt_id, text, record.gold_scores))
    _write(args.out, essays.write_essay_jsonl(cleaned))
    print(f"denoised {len(cleaned)} essays -> {args.out}")
    return 0


def cmd_extract_edits(args) -> int:
    src = _tokenized_lines(args.src)
    tgt = _tokenized_lines(args.tgt)
    if len(src) != len(tgt):
        raise LengthMismatch(
            f"{len(src)} source lines but {len(tgt)} target lines")
    dictionary = None
    if args.dictionary:
        dictionary = set(corrector.RuleSet.from_json(_read(args.dictionary)).dictionary)
    entries = []
    total = 0
    for s, t in zip(src, tgt):
        edits = edits_between(s, t, dictionary)
        total += len(edits)
        entries.append(m2.AnnotatedSentence(s, {0: tuple(edits)}))
    _write(args.out, m2.write_m2(entries))
    print(f"extracted {total} edits over {len(entries)} sentences -> {args.out}")
    return 0


def _hyp_edits(entry: m2.AnnotatedSentence) -> list:
    merged = []
    for annotator in sorted(entry.annotations):
        merged.extend(entry.annotations[annotator])
    return merged


def cmd_evaluate_gec(args) -> int:
    hyp = m2.read_m2(_read(args.hyp))
    gold = m2.read_m2(_read(args.gold))
    if len(hyp) != len(gold):
        raise LengthMismatch(f"{len(hyp)} hypothesis sentences but {len(gold)} gold")
    for i, (h, g) in enumerate(zip(hyp, gold)):
        if h.source.tokens != g.source.tokens:
            raise LengthMismatch(f"source mismatch at sentence {i}")
    report = geceval.score_corpus(
        [(_hyp_edits(h), g) for h, g in zip(hyp, gold)], beta=args.beta)
    print(report.render())
    if args.out:
        _write(args.out, report.to_json() + "\n")
    return 0


def cmd_correct(args) -> int:
    sentences = _tokenized_lines(args.src)
    rules = _load_rules(args.rules)
    external = None
    if args.endpoint:
        external = corrector.ExternalBackendConfig(
            endpoint=args.endpoint, timeout_ms=args.timeout_ms,
            batch_size=args.batch_size)
    config = corrector.CorrectorConfig(
        backend=args.backend, rules=rules, external=external,
        fallback_to_rules=not args.no_fallback)
    results = corrector.correct(sentences, config)
    _write(args.out, "".join(" ".join(r.corrected.tokens) + "\n" for r in results))
    if args.m2_out:
        entries = [m2.AnnotatedSentence(r.source, {0: tuple(r.edits)})
                   for r in results]
        _write(args.m2_out, m2.write_m2(entries))
    changed = sum(1 for r in results if r.edits)
    print(f"corrected {len(results)} sentences ({changed} changed) -> {args.out}")
    return 0


def cmd_featurize(args) -> int:
    records = essays.read_essay_jsonl(_read(args.essays))
    rules = _load_rules(args.rules)
    lm = _load_ngram(args.ngram)
    config = corrector.CorrectorConfig(rules=rules)
    lines = []
    for record in records:
        sentences = _essay_sentences(record.text)
        results = corrector.correct(sentences, config)
        trees = None
        if args.trees:
            tree_path = Path(args.trees) / f"{record.essay_id}.trees"
            if tree_path.exists():
                from .trees import read_tree_file
                trees = read_tree_file(_read(str(tree_path)))
        fv = features.extract_features(sentences, results, lm, trees)
        lines.append(json.dumps({
            "essay_id": record.essay_id,
            "prompt_id": record.prompt_id,
            "schema_version": fv.schema_version,
            "features": fv.to_dict(),
        }, sort_keys=True))
    _write(args.out, "".join(line + "\n" for line in lines))
    print(f"featurized {len(lines)} essays -> {args.out}")
    return 0


def _read_features(path: str) -> tuple[list[str], list[int], list[features.FeatureVector]]:
    ids, prompts, vectors = [], [], []
    for line in _read(path).splitlines():
        if not line.strip():
            continue
        raw = json.loads(line)
        ids.append(raw["essay_id"])
        prompts.append(int(raw["prompt_id"]))
        vectors.append(features.FeatureVector(
            values={k: float(v) for k, v in raw["features"].items()},
            schema_version=raw.get("schema_version", features.SCHEMA_VERSION)))
    return ids, prompts, vectors


def _join_features(records, ids, vectors):
    by_id = {i: v for i, v in zip(ids, vectors)}
    joined = []
    for record in records:
        if record.essay_id not in by_id:
            raise LengthMismatch(f"no features for essay {record.essay_id!r}")
        joined.append(by_id[record.essay_id])
    return joined


def cmd_train_awe(args) -> int:
    records = essays.read_essay_jsonl(_read(args.essays))
    ids, _, vectors = _read_features(args.features)
    joined = _join_features(records, ids, vectors)
    model = scorer.train(records, joined, lam=args.lam)
    _write(args.out, model.to_json() + "\n")
    print(f"trained model on {len(records)} essays (lambda={args.lam:g}) -> {args.out}")
    return 0


def cmd_score(args) -> int:
    model = scorer.ScoreModel.from_json(_read(args.model))
    ids, prompts, vectors = _read_features(args.features)
    lines = []
    for essay_id, prompt_id, fv in zip(ids, prompts, vectors):
        scores = scorer.predict(model, fv, prompt_id)
        lines.append(json.dumps({
            "essay_id": essay_id,
            "prompt_id": prompt_id,
            "scores": scores.all_scores(),
        }, sort_keys=True))
    _write(args.out, "".join(line + "\n" for line in lines))
    print(f"scored {len(lines)} essays -> {args.out}")
    return 0


def cmd_eval_qwk(args) -> int:
    records = essays.read_essay_jsonl(_read(args.essays))
    predictions: dict[str, float] = {}
    for line in _read(args.scores).splitlines():
        if not line.strip():
            continue
        raw = json.loads(line)
        predictions[raw["essay_id"]] = float(raw["scores"][args.target])
    by_prompt: dict[int, list[tuple[float, float]]] = {}
    for record in records:
        if args.target not in record.gold_scores:
            continue
        if record.essay_id not in predictions:
            raise LengthMismatch(f"no prediction for essay {record.essay_id!r}")
        by_prompt.setdefault(record.prompt_id, []).append(
            (record.gold_scores[args.target], predictions[record.essay_id]))
    rows = []
    for prompt_id in sorted(by_prompt):
        pairs = by_prompt[prompt_id]
        gold_values = [g for g, _ in pairs]
        low_f, high_f = min(gold_values), max(gold_values)
        low = scorer.round_half_up(low_f)
        high = scorer.round_half_up(high_f)
        gold_ints = [min(high, max(low, scorer.round_half_up(g)))
                     for g in gold_values]
        pred_ints = [
            min(high, max(low, scorer.round_half_up(
                scorer.denorm(p / 100.0, low_f, high_f).value)))
            for _, p in pairs
        ]
        rows.append(scorer.QwkRow(prompt_id, scorer.qwk(
            gold_ints, pred_ints, (low, high)), 0.0, len(pairs)))
    if not rows:
        raise LengthMismatch(f"no essays with {args.target!r} gold scores")
    report = scorer.QwkReport(
        rows=tuple(rows), average=sum(r.qwk for r in rows) / len(rows))
    print(report.render())
    if args.out:
        _write(args.out, report.to_json() + "\n")
    return 0


def cmd_cross_prompt(args) -> int:
    records = essays.read_essay_jsonl(_read(args.essays))
    ids, _, vectors = _read_features(args.features)
    joined = _join_features(records, ids, vectors)
    config = scorer.CrossPromptConfig(
        target=args.target,
        lambda_grid=tuple(float(x) for x in args.lambdas.split(",")),
        prompts=tuple(int(p) for p in args.prompts.split(",")),
        scale=args.scale,
    )
    report = scorer.cross_prompt_eval(records, joined, config)
    print(report.render())
    if args.out:
        _write(args.out, report.to_json() + "\n")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    if args.config:
        config = ServiceConfig.from_json(_read(args.config))
    else:
        config = ServiceConfig(store_dir=args.store, review_mode=args.review_mode,
                               port=args.port)
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=config.port)
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="awegec",
        description="Integrated essay scoring and grammatical error correction.")
    parser.add_argument("--seed", type=int, default=0,
                        help="random seed for seeded stages (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="read an essay TSV into JSONL records")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--config", help="JSON column-mapping config")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("denoise",
                       help="replace entity placeholders with pool names")
    p.add_argument("--essays", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--name-pool", help="JSON name pool")
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("extract-edits",
                       help="align parallel token files into an M2 file")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dictionary", help="rules JSON supplying the word list")
    p.set_defaults(func=cmd_extract_edits)

    p = sub.add_parser("evaluate-gec",
                       help="score a hypothesis M2 file against a gold M2 file")
    p.add_argument("--hyp", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--beta", type=float, default=geceval.DEFAULT_BETA)
    p.add_argument("--out", help="optional JSON report path")
    p.set_defaults(func=cmd_evaluate_gec)

    p = sub.add_parser("correct", help="correct tokenized sentences")
    p.add_argument("--src", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rules", help="rules JSON (patterns + dictionary)")
    p.add_argument("--backend", default=corrector.RULES_BACKEND)
    p.add_argument("--endpoint", help="external backend URL")
    p.add_argument("--timeout-ms", type=int, default=10_000)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--no-fallback", action="store_true",
                   help="fail instead of falling back to rules")
    p.add_argument("--m2-out", help="also write extracted edits as M2")
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("featurize", help="extract feature vectors per essay")
    p.add_argument("--essays", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rules", help="rules JSON for the correction stage")
    p.add_argument("--ngram", help="n-gram model checkpoint")
    p.add_argument("--trees", help="directory of <essay_id>.trees files")
    p.set_defaults(func=cmd_featurize)

    p = sub.add_parser("train-awe", help="train the rubric scoring model")
    p.add_argument("--essays", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lam", type=float, default=1.0, help="ridge strength")
    p.set_defaults(func=cmd_train_awe)

    p = sub.add_parser("score", help="predict 0-100 scores for essays")
    p.add_argument("--model", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("eval-qwk",
                       help="QWK of predicted scores against gold, per prompt")
    p.add_argument("--essays", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--target", default=essays.OVERALL)
    p.add_argument("--out", help="optional JSON report path")
    p.set_defaults(func=cmd_eval_qwk)

    p = sub.add_parser("cross-prompt",
                       help="leave-one-prompt-out cross-prompt evaluation")
    p.add_argument("--essays", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--target", default=essays.OVERALL)
    p.add_argument("--lambdas", default="0,0.01,0.1,1,10")
    p.add_argument("--prompts", default="1,2,3,4,5,6,7,8")
    p.add_argument("--scale", default=scorer.PROMPT_SCALE,
                   choices=(scorer.PROMPT_SCALE, scorer.PERCENT_SCALE))
    p.add_argument("--out", help="optional JSON report path")
    p.set_defaults(func=cmd_cross_prompt)

    p = sub.add_parser("serve", help="run the feedback HTTP service")
    p.add_argument("--config", help="service JSON config")
    p.add_argument("--store", default="./substore")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--review-mode", action="store_true")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AwegecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
