// Thin fetch client for the feedback service HTTP API.
// Every non-2xx response is surfaced as ApiError carrying the service's
// own error code, untouched.

import type {
  FeedbackDocument,
  ReviewPayload,
  ServiceError,
  SubmissionView,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly httpStatus: number;
  readonly submissionStatus?: string;

  constructor(httpStatus: number, body: ServiceError) {
    super(body.message);
    this.code = body.code;
    this.httpStatus = httpStatus;
    this.submissionStatus = body.status;
  }
}

async function request<T>(
  baseUrl: string,
  method: string,
  path: string,
  body?: unknown,
): Promise<T> {
  const response = await fetch(baseUrl + path, {
    method,
    headers: body === undefined ? {} : { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  let parsed: unknown = null;
  try {
    parsed = await response.json();
  } catch {
    parsed = null;
  }
  if (!response.ok) {
    const err = (parsed ?? {
      code: "bad_response",
      message: `HTTP ${response.status}`,
    }) as ServiceError;
    throw new ApiError(response.status, err);
  }
  return parsed as T;
}

export class FeedbackApi {
  constructor(private readonly baseUrl: string = "") {}

  submit(
    text: string,
    promptId: number,
    learnerId?: string,
  ): Promise<{ id: string; status: string }> {
    return request(this.baseUrl, "POST", "/api/submissions", {
      text,
      prompt_id: promptId,
      learner_id: learnerId,
    });
  }

  status(submissionId: string): Promise<SubmissionView> {
    return request(this.baseUrl, "GET", `/api/submissions/${submissionId}`);
  }

  feedback(
    submissionId: string,
    role: "learner" | "teacher",
  ): Promise<FeedbackDocument> {
    return request(
      this.baseUrl,
      "GET",
      `/api/submissions/${submissionId}/feedback?role=${role}`,
    );
  }

  reviewQueue(): Promise<{ submissions: SubmissionView[] }> {
    return request(this.baseUrl, "GET", "/api/review/queue");
  }

  review(
    submissionId: string,
    payload: ReviewPayload,
  ): Promise<FeedbackDocument | { id: string; status: string }> {
    return request(this.baseUrl, "POST", `/api/review/${submissionId}`, payload);
  }

  resubmit(
    submissionId: string,
    text?: string,
  ): Promise<{ id: string; status: string }> {
    return request(
      this.baseUrl,
      "POST",
      `/api/submissions/${submissionId}/resubmit`,
      text === undefined ? {} : { text },
    );
  }
}

export interface PollHandle {
  stop(): void;
}

// Polls a submission's status until `until` says stop or stop() is
// called. At most one request is in flight per submission: a tick that
// starts while the previous request is unresolved is skipped.
export function pollStatus(
  api: FeedbackApi,
  submissionId: string,
  onUpdate: (view: SubmissionView) => void,
  onError: (err: unknown) => void,
  until: (view: SubmissionView) => boolean,
  intervalMs: number = 1000,
): PollHandle {
  let stopped = false;
  let inFlight = false;
  let timer: ReturnType<typeof setTimeout> | null = null;

  const tick = async (): Promise<void> => {
    if (stopped || inFlight) {
      schedule();
      return;
    }
    inFlight = true;
    try {
      const view = await api.status(submissionId);
      if (stopped) return;
      onUpdate(view);
      if (until(view)) {
        stopped = true;
        return;
      }
    } catch (err) {
      if (!stopped) onError(err);
    } finally {
      inFlight = false;
    }
    schedule();
  };

  const schedule = (): void => {
    if (stopped) return;
    timer = setTimeout(tick, intervalMs);
  };

  void tick();
  return {
    stop(): void {
      stopped = true;
      if (timer !== null) clearTimeout(timer);
    },
  };
}
