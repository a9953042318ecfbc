import { describe, expect, it } from "vitest";

import {
  reconstructCorrected,
  reconstructSource,
  scoreBarHtml,
  scoreToBar,
  segmentsToSpans,
  spansToHtml,
} from "../src/render.js";
import type { FeedbackDocument } from "../src/types.js";
import {
  cleanDocument,
  correctedDocument,
  insertionDocument,
} from "./fixtures.js";

function sourceText(doc: FeedbackDocument): string {
  return doc.sentences.map((s) => s.source.join(" ")).join(" ");
}

function correctedText(doc: FeedbackDocument): string {
  return doc.sentences.map((s) => s.corrected.join(" ")).join(" ");
}

describe("segmentsToSpans", () => {
  it("maps segment kinds to span styles in document order", () => {
    const doc = correctedDocument();
    const spans = segmentsToSpans(doc);
    expect(spans.map((s) => s.style)).toEqual(doc.segments.map((s) => s.kind));
    expect(spans.map((s) => s.text)).toEqual(doc.segments.map((s) => s.text));
  });

  it("pairs each deleted span with the inserted span that follows it", () => {
    const spans = segmentsToSpans(correctedDocument());
    const deleted = spans.filter((s) => s.style === "deleted");
    const inserted = spans.filter((s) => s.style === "inserted");
    expect(deleted.map((s) => s.text)).toEqual(["gess", "almost", "speaking"]);
    expect(inserted.map((s) => s.text)).toEqual(["guess", "most", "speak"]);
    for (let i = 0; i < spans.length; i++) {
      if (spans[i].style === "deleted") {
        expect(spans[i + 1].style).toBe("inserted");
      }
    }
  });

  it("recovers the source from plain plus deleted spans", () => {
    for (const doc of [correctedDocument(), cleanDocument(), insertionDocument()]) {
      const spans = segmentsToSpans(doc);
      expect(reconstructSource(spans)).toBe(sourceText(doc));
    }
  });

  it("recovers the corrected text from plain plus inserted spans", () => {
    for (const doc of [correctedDocument(), cleanDocument(), insertionDocument()]) {
      const spans = segmentsToSpans(doc);
      expect(reconstructCorrected(spans)).toBe(correctedText(doc));
    }
  });

  it("renders an edit-free document as plain spans only", () => {
    const spans = segmentsToSpans(cleanDocument());
    expect(spans.length).toBeGreaterThan(0);
    expect(spans.every((s) => s.style === "plain")).toBe(true);
  });

  it("renders a pure insertion as a green span with no deletion", () => {
    const spans = segmentsToSpans(insertionDocument());
    expect(spans.filter((s) => s.style === "deleted")).toEqual([]);
    expect(spans.filter((s) => s.style === "inserted").map((s) => s.text)).toEqual([
      "is",
    ]);
  });
});

describe("scoreToBar", () => {
  it("maps the score range onto a unit fill fraction", () => {
    expect(scoreToBar(0)).toBe(0);
    expect(scoreToBar(50)).toBe(0.5);
    expect(scoreToBar(100)).toBe(1);
    expect(scoreToBar(72)).toBeCloseTo(0.72, 12);
  });

  it("clips out-of-range scores to the bar ends", () => {
    expect(scoreToBar(-5)).toBe(0);
    expect(scoreToBar(140)).toBe(1);
  });
});

describe("spansToHtml", () => {
  it("wraps deleted text in del and inserted text in ins", () => {
    const html = spansToHtml(segmentsToSpans(correctedDocument()));
    expect(html).toContain('<del class="seg-del">gess</del>');
    expect(html).toContain('<ins class="seg-ins">guess</ins>');
    expect(html).toContain('<span class="seg-plain">people cannot</span>');
  });

  it("escapes markup inside span text", () => {
    const html = spansToHtml([
      { text: '<script>alert("x")</script> & more', style: "plain" },
    ]);
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
    expect(html).toContain("&amp; more");
    expect(html).toContain("&quot;x&quot;");
  });
});

describe("scoreBarHtml", () => {
  it("sizes the fill from the clipped score", () => {
    expect(scoreBarHtml("overall", 72)).toContain("width: 72%");
    expect(scoreBarHtml("overall", 140)).toContain("width: 100%");
    expect(scoreBarHtml("overall", -3)).toContain("width: 0%");
  });

  it("shows the score name and value", () => {
    const html = scoreBarHtml("word_choice", 50);
    expect(html).toContain("word_choice");
    expect(html).toContain("50.0");
  });
});
