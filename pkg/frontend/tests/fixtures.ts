// Feedback documents shaped exactly like the service JSON, used by the
// render and review tests.

import type { FeedbackDocument } from "../src/types.js";

export const SCORE_NAMES = [
  "overall",
  "content",
  "organization",
  "word_choice",
  "sentence_fluency",
  "conventions",
  "prompt_adherence",
  "language",
  "narrativity",
];

function neutralScores(): Record<string, number> {
  const scores: Record<string, number> = {};
  for (const name of SCORE_NAMES) scores[name] = 50.0;
  return scores;
}

// Two-sentence essay with three corrections in the first sentence and a
// clean second sentence.
export function correctedDocument(): FeedbackDocument {
  return {
    submission_id: "sub001",
    sentences: [
      {
        source: ["I", "gess", "almost", "people", "cannot", "speaking", "English", "."],
        corrected: ["I", "guess", "most", "people", "cannot", "speak", "English", "."],
        backend: "rules",
        edits: [
          { id: "0:1:2", start: 1, end: 2, replacement: ["guess"], type: "R:SPELL" },
          { id: "0:2:3", start: 2, end: 3, replacement: ["most"], type: "R:OTHER" },
          { id: "0:5:6", start: 5, end: 6, replacement: ["speak"], type: "R:OTHER" },
        ],
      },
      {
        source: ["They", "is", "happy", "."],
        corrected: ["They", "is", "happy", "."],
        backend: "rules",
        edits: [],
      },
    ],
    scores: neutralScores(),
    segments: [
      { kind: "plain", text: "I" },
      { kind: "deleted", text: "gess" },
      { kind: "inserted", text: "guess" },
      { kind: "deleted", text: "almost" },
      { kind: "inserted", text: "most" },
      { kind: "plain", text: "people cannot" },
      { kind: "deleted", text: "speaking" },
      { kind: "inserted", text: "speak" },
      { kind: "plain", text: "English . They is happy ." },
    ],
    review: null,
  };
}

export function cleanDocument(): FeedbackDocument {
  return {
    submission_id: "sub002",
    sentences: [
      {
        source: ["All", "good", "here", "."],
        corrected: ["All", "good", "here", "."],
        backend: "rules",
        edits: [],
      },
    ],
    scores: neutralScores(),
    segments: [{ kind: "plain", text: "All good here ." }],
    review: null,
  };
}

// A pure insertion: a token added with nothing removed.
export function insertionDocument(): FeedbackDocument {
  return {
    submission_id: "sub003",
    sentences: [
      {
        source: ["She", "happy", "."],
        corrected: ["She", "is", "happy", "."],
        backend: "rules",
        edits: [
          { id: "0:1:1", start: 1, end: 1, replacement: ["is"], type: "M:OTHER" },
        ],
      },
    ],
    scores: neutralScores(),
    segments: [
      { kind: "plain", text: "She" },
      { kind: "inserted", text: "is" },
      { kind: "plain", text: "happy ." },
    ],
    review: null,
  };
}
