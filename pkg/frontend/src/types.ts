// Wire types mirroring the feedback service JSON, field for field.

export type SegmentKind = "plain" | "deleted" | "inserted";

export interface Segment {
  kind: SegmentKind;
  text: string;
}

export interface EditView {
  id: string;
  start: number;
  end: number;
  replacement: string[];
  type: string;
}

export interface SentenceView {
  source: string[];
  corrected: string[];
  backend: string;
  edits: EditView[];
}

export interface ReviewView {
  reviewer_id: string;
  edit_decisions: Record<string, boolean>;
  score_overrides: Record<string, number>;
  note: string;
  decided_at: string;
}

export interface FeedbackDocument {
  submission_id: string;
  sentences: SentenceView[];
  scores: Record<string, number>;
  segments: Segment[];
  review: ReviewView | null;
}

export interface SubmissionView {
  id: string;
  status: string;
  learner_id: string;
  prompt_id: number;
  created_at: string;
  error: { stage: string; message: string } | null;
  review_note?: string;
}

export interface ServiceError {
  code: string;
  message: string;
  status?: string;
}

export type ReviewAction = "release" | "return";

// Body for POST /api/review/{id}.
export interface ReviewPayload {
  reviewer_id: string;
  action: ReviewAction;
  edit_decisions: Record<string, boolean>;
  score_overrides: Record<string, number>;
  note: string;
}

// A styled span ready for rendering; order matches document segments.
export type SpanStyle = "plain" | "deleted" | "inserted";

export interface StyledSpan {
  text: string;
  style: SpanStyle;
}
