// Pure document-to-view transforms: styled diff spans and score bars.
// Everything here is testable from fixture documents, no backend needed.

import type { FeedbackDocument, StyledSpan } from "./types.js";

export function segmentsToSpans(doc: FeedbackDocument): StyledSpan[] {
  return doc.segments.map((segment) => ({
    text: segment.text,
    style: segment.kind,
  }));
}

// plain + deleted spans carry the source text, in order
export function reconstructSource(spans: StyledSpan[]): string {
  return spans
    .filter((s) => s.style === "plain" || s.style === "deleted")
    .map((s) => s.text)
    .join(" ");
}

// plain + inserted spans carry the corrected text, in order
export function reconstructCorrected(spans: StyledSpan[]): string {
  return spans
    .filter((s) => s.style === "plain" || s.style === "inserted")
    .map((s) => s.text)
    .join(" ");
}

export function scoreToBar(score: number): number {
  const clipped = Math.min(100, Math.max(0, score));
  return clipped / 100;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function spansToHtml(spans: StyledSpan[]): string {
  return spans
    .map((span) => {
      const esc = escapeHtml(span.text);
      if (span.style === "deleted") return `<del class="seg-del">${esc}</del>`;
      if (span.style === "inserted") return `<ins class="seg-ins">${esc}</ins>`;
      return `<span class="seg-plain">${esc}</span>`;
    })
    .join(" ");
}

export function scoreBarHtml(name: string, score: number): string {
  const fill = scoreToBar(score);
  const pct = (fill * 100).toFixed(0);
  return `<div class="score-row">
    <span class="score-name">${escapeHtml(name)}</span>
    <div class="score-track"><div class="score-fill" style="width: ${pct}%"></div></div>
    <span class="score-value">${score.toFixed(1)}</span>
  </div>`;
}

export function statusBanner(status: string, note?: string): string {
  const label: Record<string, string> = {
    received: "Submitted, waiting for processing",
    processed: "Feedback ready",
    released: "Feedback released by your teacher",
    returned: "Returned for revision",
  };
  const text = label[status] ?? status;
  const suffix = note ? `: ${escapeHtml(note)}` : "";
  return `<div class="banner banner-${escapeHtml(status)}">${text}${suffix}</div>`;
}
