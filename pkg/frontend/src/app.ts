// Browser app for the essay feedback service. The hash picks the role:
// #teacher gets the review queue, anything else the learner view.

import { ApiError, FeedbackApi, pollStatus, PollHandle } from "./api.js";
import {
  scoreBarHtml,
  segmentsToSpans,
  spansToHtml,
  statusBanner,
} from "./render.js";
import {
  buildReviewPayload,
  describeEdit,
  emptyFormState,
  listEditIds,
  ReviewFormState,
} from "./review.js";
import type { FeedbackDocument, SubmissionView } from "./types.js";

// Same-origin by default; ?api=http://host:port points the client at a
// service hosted elsewhere.
const api = new FeedbackApi(
  new URLSearchParams(window.location.search).get("api") ?? "",
);

// State
let activePoll: PollHandle | null = null;
let teacherDoc: FeedbackDocument | null = null;
let reviewForm: ReviewFormState | null = null;

// DOM Elements
const appRoot = document.getElementById("app")!;

function show(html: string): void {
  appRoot.innerHTML = html;
}

function errorLine(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return String(err);
}

// ---------------------------------------------------------------- learner

function renderLearnerHome(message: string = ""): void {
  show(`
    <h1>Essay feedback</h1>
    ${message ? `<div class="notice">${message}</div>` : ""}
    <label for="prompt-id">Prompt</label>
    <input id="prompt-id" type="number" value="1" min="1">
    <label for="essay-text">Your essay</label>
    <textarea id="essay-text" rows="10" placeholder="Write your essay here"></textarea>
    <button id="submit-btn">Submit</button>
    <div id="learner-status"></div>
  `);
  const submitBtn = document.getElementById("submit-btn") as HTMLButtonElement;
  submitBtn.addEventListener("click", () => {
    const text = (document.getElementById("essay-text") as HTMLTextAreaElement)
      .value;
    const promptId = Number(
      (document.getElementById("prompt-id") as HTMLInputElement).value,
    );
    void submitEssay(text, promptId);
  });
}

async function submitEssay(text: string, promptId: number): Promise<void> {
  const statusBox = document.getElementById("learner-status")!;
  try {
    const created = await api.submit(text, promptId);
    statusBox.innerHTML = statusBanner(created.status);
    watchSubmission(created.id);
  } catch (err) {
    statusBox.innerHTML = `<div class="error">${errorLine(err)}</div>`;
  }
}

function watchSubmission(submissionId: string): void {
  if (activePoll) activePoll.stop();
  activePoll = pollStatus(
    api,
    submissionId,
    (view) => {
      const statusBox = document.getElementById("learner-status");
      if (statusBox) {
        statusBox.innerHTML = statusBanner(view.status, view.review_note);
      }
      if (view.status === "released") void showLearnerFeedback(submissionId);
      if (view.status === "returned") renderReturned(view);
      if (view.status === "processed") {
        // With review off the document is already visible; with review
        // on this just means a teacher has it.
        void tryLearnerFeedback(submissionId);
      }
    },
    (err) => {
      const statusBox = document.getElementById("learner-status");
      if (statusBox) {
        statusBox.innerHTML = `<div class="error">${errorLine(err)}</div>`;
      }
    },
    (view) => view.status === "released" || view.status === "returned",
  );
}

async function tryLearnerFeedback(submissionId: string): Promise<void> {
  try {
    const doc = await api.feedback(submissionId, "learner");
    if (activePoll) activePoll.stop();
    renderFeedback(doc);
  } catch (err) {
    if (err instanceof ApiError && err.code === "not_ready") return;
    const statusBox = document.getElementById("learner-status");
    if (statusBox) {
      statusBox.innerHTML = `<div class="error">${errorLine(err)}</div>`;
    }
  }
}

async function showLearnerFeedback(submissionId: string): Promise<void> {
  try {
    renderFeedback(await api.feedback(submissionId, "learner"));
  } catch (err) {
    show(`<div class="error">${errorLine(err)}</div>`);
  }
}

function renderFeedback(doc: FeedbackDocument): void {
  const spans = segmentsToSpans(doc);
  const bars = Object.entries(doc.scores)
    .map(([name, value]) => scoreBarHtml(name, value))
    .join("");
  const note =
    doc.review && doc.review.note
      ? `<div class="review-note">Teacher note: ${doc.review.note}</div>`
      : "";
  show(`
    <h1>Feedback</h1>
    <section class="essay-diff">${spansToHtml(spans)}</section>
    ${note}
    <h2>Scores</h2>
    <section class="scores">${bars}</section>
    <button id="back-btn">New submission</button>
  `);
  document.getElementById("back-btn")!.addEventListener("click", () => {
    renderLearnerHome();
  });
}

function renderReturned(view: SubmissionView): void {
  show(`
    <h1>Returned for revision</h1>
    ${statusBanner(view.status, view.review_note)}
    <textarea id="revised-text" rows="10" placeholder="Revise your essay"></textarea>
    <button id="resubmit-btn">Resubmit</button>
    <div id="learner-status"></div>
  `);
  document.getElementById("resubmit-btn")!.addEventListener("click", () => {
    const text = (document.getElementById("revised-text") as HTMLTextAreaElement)
      .value;
    void resubmitEssay(view.id, text);
  });
}

async function resubmitEssay(submissionId: string, text: string): Promise<void> {
  const statusBox = document.getElementById("learner-status")!;
  try {
    const updated = await api.resubmit(submissionId, text || undefined);
    statusBox.innerHTML = statusBanner(updated.status);
    watchSubmission(submissionId);
  } catch (err) {
    statusBox.innerHTML = `<div class="error">${errorLine(err)}</div>`;
  }
}

// ---------------------------------------------------------------- teacher

async function renderTeacherQueue(): Promise<void> {
  let rows: SubmissionView[] = [];
  let error = "";
  try {
    rows = (await api.reviewQueue()).submissions;
  } catch (err) {
    error = errorLine(err);
  }
  const items = rows
    .map(
      (row) => `
      <li>
        <button class="queue-item" data-id="${row.id}">
          ${row.id} (learner ${row.learner_id}, prompt ${row.prompt_id})
        </button>
      </li>`,
    )
    .join("");
  show(`
    <h1>Review queue</h1>
    ${error ? `<div class="error">${error}</div>` : ""}
    <ul class="queue">${items || "<li>No submissions waiting.</li>"}</ul>
    <button id="refresh-btn">Refresh</button>
  `);
  document.getElementById("refresh-btn")!.addEventListener("click", () => {
    void renderTeacherQueue();
  });
  for (const btn of appRoot.querySelectorAll<HTMLButtonElement>(".queue-item")) {
    btn.addEventListener("click", () => {
      void openReview(btn.dataset.id!);
    });
  }
}

async function openReview(submissionId: string): Promise<void> {
  try {
    teacherDoc = await api.feedback(submissionId, "teacher");
  } catch (err) {
    show(`<div class="error">${errorLine(err)}</div>`);
    return;
  }
  reviewForm = emptyFormState("teacher");
  renderReviewForm(submissionId);
}

function renderReviewForm(submissionId: string): void {
  const doc = teacherDoc!;
  const spans = segmentsToSpans(doc);
  const editRows = listEditIds(doc)
    .map(
      (id) => `
      <li>
        <label>
          <input type="checkbox" class="edit-accept" data-edit-id="${id}" checked>
          ${describeEdit(doc, id) ?? id}
        </label>
      </li>`,
    )
    .join("");
  const scoreRows = Object.entries(doc.scores)
    .map(
      ([name, value]) => `
      <li>
        <label>${name}
          <input type="number" class="score-override" data-score-name="${name}"
                 min="0" max="100" step="0.5" placeholder="${value.toFixed(1)}">
        </label>
      </li>`,
    )
    .join("");
  show(`
    <h1>Review ${submissionId}</h1>
    <section class="essay-diff">${spansToHtml(spans)}</section>
    <h2>Edits</h2>
    <ul class="edit-list">${editRows || "<li>No edits proposed.</li>"}</ul>
    <h2>Score overrides</h2>
    <ul class="override-list">${scoreRows}</ul>
    <label for="review-note">Note to learner</label>
    <textarea id="review-note" rows="3"></textarea>
    <button id="release-btn">Release</button>
    <button id="return-btn">Return for revision</button>
    <button id="queue-btn">Back to queue</button>
    <div id="review-status"></div>
  `);
  document.getElementById("release-btn")!.addEventListener("click", () => {
    void sendReview(submissionId, "release");
  });
  document.getElementById("return-btn")!.addEventListener("click", () => {
    void sendReview(submissionId, "return");
  });
  document.getElementById("queue-btn")!.addEventListener("click", () => {
    void renderTeacherQueue();
  });
}

function collectReviewForm(): void {
  const form = reviewForm!;
  form.editDecisions.clear();
  for (const box of appRoot.querySelectorAll<HTMLInputElement>(".edit-accept")) {
    if (!box.checked) form.editDecisions.set(box.dataset.editId!, false);
  }
  form.scoreOverrides.clear();
  for (const input of appRoot.querySelectorAll<HTMLInputElement>(
    ".score-override",
  )) {
    if (input.value !== "") {
      form.scoreOverrides.set(input.dataset.scoreName!, Number(input.value));
    }
  }
  form.note = (document.getElementById("review-note") as HTMLTextAreaElement)
    .value;
}

async function sendReview(
  submissionId: string,
  action: "release" | "return",
): Promise<void> {
  collectReviewForm();
  reviewForm!.action = action;
  const statusBox = document.getElementById("review-status")!;
  try {
    await api.review(submissionId, buildReviewPayload(reviewForm!));
    statusBox.innerHTML = `<div class="notice">Submission ${action === "release" ? "released" : "returned"}.</div>`;
    await renderTeacherQueue();
  } catch (err) {
    statusBox.innerHTML = `<div class="error">${errorLine(err)}</div>`;
  }
}

// ---------------------------------------------------------------- startup

function route(): void {
  if (activePoll) {
    activePoll.stop();
    activePoll = null;
  }
  if (window.location.hash === "#teacher") {
    void renderTeacherQueue();
  } else {
    renderLearnerHome();
  }
}

window.addEventListener("hashchange", route);
route();
