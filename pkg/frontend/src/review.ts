// Builds review request bodies from the teacher's in-page decisions.

import type { FeedbackDocument, ReviewAction, ReviewPayload } from "./types.js";

export interface ReviewFormState {
  reviewerId: string;
  action: ReviewAction;
  // edit id -> accepted; edits never touched are omitted (server keeps them)
  editDecisions: Map<string, boolean>;
  // score name -> override value, only for scores the teacher changed
  scoreOverrides: Map<string, number>;
  note: string;
}

export function emptyFormState(reviewerId: string): ReviewFormState {
  return {
    reviewerId,
    action: "release",
    editDecisions: new Map(),
    scoreOverrides: new Map(),
    note: "",
  };
}

export function buildReviewPayload(state: ReviewFormState): ReviewPayload {
  const editDecisions: Record<string, boolean> = {};
  for (const [id, accepted] of state.editDecisions) {
    editDecisions[id] = accepted;
  }
  const scoreOverrides: Record<string, number> = {};
  for (const [name, value] of state.scoreOverrides) {
    if (value < 0 || value > 100) {
      throw new Error(`override ${name}=${value} outside [0, 100]`);
    }
    scoreOverrides[name] = value;
  }
  return {
    reviewer_id: state.reviewerId,
    action: state.action,
    edit_decisions: editDecisions,
    score_overrides: scoreOverrides,
    note: state.note,
  };
}

// Every edit id the document carries, in sentence order, for rendering
// the per-edit accept/reject controls.
export function listEditIds(doc: FeedbackDocument): string[] {
  const ids: string[] = [];
  for (const sentence of doc.sentences) {
    for (const edit of sentence.edits) {
      ids.push(edit.id);
    }
  }
  return ids;
}

export function describeEdit(
  doc: FeedbackDocument,
  editId: string,
): string | null {
  for (const sentence of doc.sentences) {
    for (const edit of sentence.edits) {
      if (edit.id !== editId) continue;
      const removed = sentence.source.slice(edit.start, edit.end).join(" ");
      const added = edit.replacement.join(" ");
      if (removed && added) return `${removed} -> ${added} (${edit.type})`;
      if (removed) return `delete "${removed}" (${edit.type})`;
      return `insert "${added}" (${edit.type})`;
    }
  }
  return null;
}
