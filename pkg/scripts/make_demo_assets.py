#!/usr/bin/env python3
"""Write a self-contained demo bundle: correction rules, a name pool, a
small essay TSV, a fitted n-gram checkpoint, and a service config wired
to all of them.

    python3 scripts/make_demo_assets.py --out demo
    awegec serve --config demo/service.json
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from awegec.ngram import NgramModel
from awegec.text import split_sentences, tokenize

PATTERN_RULES = [
    [["almost", "people"], ["most", "people"]],
    [["cannot", "speaking"], ["cannot", "speak"]],
    [["a", "lot", "of"], ["many"]],
    [["more", "better"], ["better"]],
]

# frequencies are rough relative weights, only their order matters
DICTIONARY = {
    "the": 1000, "a": 900, "an": 300, "i": 800, "you": 700, "he": 500,
    "she": 500, "it": 600, "we": 500, "they": 500, "is": 800, "are": 700,
    "was": 600, "were": 400, "be": 500, "been": 300, "am": 200,
    "do": 400, "does": 200, "did": 300, "n't": 500, "'m": 200, "'re": 200,
    "'ve": 200, "'ll": 200, "'d": 150, "'s": 600, "not": 500,
    "guess": 50, "most": 90, "almost": 80, "people": 95, "cannot": 70,
    "speak": 60, "speaking": 30, "english": 40, "language": 35,
    "school": 60, "student": 55, "students": 55, "teacher": 50,
    "write": 45, "writing": 40, "read": 45, "reading": 40, "learn": 50,
    "learning": 40, "think": 60, "thought": 30, "because": 70, "many": 65,
    "much": 50, "more": 70, "better": 45, "good": 65, "very": 60,
    "time": 70, "day": 55, "year": 50, "and": 900, "but": 500, "or": 400,
    "in": 800, "on": 600, "at": 500, "to": 900, "of": 850, "for": 600,
    "with": 500, "about": 300, "have": 600, "has": 400, "had": 350,
    "will": 300, "would": 250, "can": 400, "could": 250, "should": 200,
    "this": 500, "that": 600, "these": 200, "those": 150, "my": 400,
    "your": 300, "his": 250, "her": 250, "their": 250, "our": 200,
    "lot": 40, "book": 45, "books": 45, "essay": 30, "essays": 30,
    "every": 50, "best": 40, "way": 50, "things": 40, "thing": 40,
    "helps": 20, "help": 40, "club": 15, "important": 45, "fix": 20,
}

# names the pool can substitute in must count as known words, or the
# speller will try to "fix" them
POOL_NAME_TOKENS = {
    "alice": 10, "ben": 10, "carla": 10, "deepak": 10, "elena": 10,
    "farid": 10, "avonlea": 10, "brookfield": 10, "crestwood": 10,
    "northside": 10, "rex": 10, "marigold": 10, "quartz": 10,
}
DICTIONARY.update(POOL_NAME_TOKENS)

NAME_POOL = {
    "PERSON": ["Alice", "Ben", "Carla", "Deepak", "Elena", "Farid"],
    "LOCATION": ["Avonlea", "Brookfield", "Crestwood"],
    "ORGANIZATION": ["Northside School", "The Reading Club"],
    "OTHER": ["Rex", "Marigold", "Quartz"],
}

DEMO_ESSAYS = [
    ("demo-001", 1, "I gess almost people cannot speaking English. "
                    "They learn more better with a teacher.", 3),
    ("demo-002", 1, "@PERSON1 can not write good essays. "
                    "But @PERSON1 read a lot of books at @LOCATION1.", 2),
    ("demo-003", 2, "Writing every day is the best way to learn. "
                    "Students should read and write about many things.", 5),
    ("demo-004", 2, "I think school is very important because we learn "
                    "to think and speak.", 4),
]

LM_TEXT = """I guess most people cannot speak English.
They learn better with a teacher. Writing every day is the best way to learn.
Students should read and write about many things. I think school is very
important because we learn to think and speak. Most students can write good
essays. Reading many books helps. We speak and write more every year."""


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("demo"))
    parser.add_argument("--review-mode", action="store_true")
    args = parser.parse_args(argv)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)

    (out / "rules.json").write_text(json.dumps(
        {"rules": PATTERN_RULES, "dictionary": DICTIONARY, "spell_distance": 1},
        indent=2, sort_keys=True) + "\n", encoding="utf-8")
    (out / "name_pool.json").write_text(
        json.dumps(NAME_POOL, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    tsv_lines = ["essay_id\tessay_set\tessay\tdomain1_score"]
    for essay_id, prompt, text, score in DEMO_ESSAYS:
        tsv_lines.append(f"{essay_id}\t{prompt}\t{text}\t{score}")
    (out / "essays.tsv").write_text("\n".join(tsv_lines) + "\n", encoding="utf-8")

    sentences = [list(tokenize(s).tokens) for s in split_sentences(LM_TEXT)]
    lm = NgramModel(order=2).fit(sentences)
    (out / "lm.json").write_text(lm.to_json() + "\n", encoding="utf-8")

    service = {
        "store_dir": str(out / "store"),
        "review_mode": bool(args.review_mode),
        "rules_path": str(out / "rules.json"),
        "ngram_path": str(out / "lm.json"),
        "name_pool_path": str(out / "name_pool.json"),
    }
    (out / "service.json").write_text(
        json.dumps(service, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    for name in ("rules.json", "name_pool.json", "essays.tsv", "lm.json",
                 "service.json"):
        print(f"wrote {out / name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
