#!/usr/bin/env python3
"""Fit the n-gram fluency model and write its checkpoint.

Input is either an essay JSONL file (each record's text is split and
tokenized with the package pipeline) or a plain text file with one
sentence per line (whitespace-tokenized as-is).
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from awegec.essays import read_essay_jsonl
from awegec.ngram import NgramModel
from awegec.text import split_sentences, tokenize


def sentences_from_essays(path: Path) -> list[list[str]]:
    out = []
    for record in read_essay_jsonl(path.read_text(encoding="utf-8")):
        for raw in split_sentences(record.text):
            tokens = list(tokenize(raw).tokens)
            if tokens:
                out.append(tokens)
    return out


def sentences_from_text(path: Path) -> list[list[str]]:
    lines = path.read_text(encoding="utf-8").splitlines()
    return [line.split() for line in lines if line.split()]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--essays", type=Path, help="essay JSONL input")
    source.add_argument("--text", type=Path, help="one tokenized sentence per line")
    parser.add_argument("--order", type=int, default=3)
    parser.add_argument("--k", type=float, default=1.0,
                        help="add-k smoothing constant")
    parser.add_argument("--out", type=Path, required=True)
    args = parser.parse_args(argv)

    sentences = (sentences_from_essays(args.essays) if args.essays
                 else sentences_from_text(args.text))
    if not sentences:
        parser.error("no sentences in input")
    model = NgramModel(order=args.order, k=args.k).fit(sentences)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(model.to_json() + "\n", encoding="utf-8")
    held_out = sentences[: max(1, len(sentences) // 10)]
    print(f"fit order-{args.order} model on {len(sentences)} sentences "
          f"({len(model.vocabulary)} types) -> {args.out}")
    print(f"self cross-entropy on first tenth: "
          f"{model.cross_entropy(held_out):.3f} bits/token")
    return 0


if __name__ == "__main__":
    sys.exit(main())
