// Thin typed client for the versioned HTTP API. fetch is injectable so tests
// can run without a server.

import type { ApiErrorBody, JobView, SessionView } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly field: string | null = null,
    readonly status: number = 0,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface GenerateResponse extends JobView {}

export class ApiClient {
  private fetchFn: FetchLike;

  constructor(
    readonly base: string = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private url(path: string): string {
    return `${this.base}/v1${path}`;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      if (body instanceof ArrayBuffer || body instanceof Blob) {
        init.body = body;
        init.headers = { "content-type": "application/octet-stream" };
      } else {
        init.body = JSON.stringify(body);
        init.headers = { "content-type": "application/json" };
      }
    }
    const response = await this.fetchFn(this.url(path), init);
    if (!response.ok) {
      let code = "http_error";
      let message = `${response.status} ${response.statusText}`;
      let field: string | null = null;
      try {
        const parsed = (await response.json()) as ApiErrorBody;
        code = parsed.error.code;
        message = parsed.error.message;
        field = parsed.error.field;
      } catch {
        // non-JSON failure body; keep the HTTP status text
      }
      throw new ApiError(code, message, field, response.status);
    }
    if (response.status === 204) {
      return undefined as T;
    }
    return (await response.json()) as T;
  }

  createSession(params: {
    width?: number;
    height?: number;
    d_min?: number;
    d_max?: number;
  } = {}): Promise<SessionView> {
    return this.request("POST", "/sessions", params);
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  deleteSession(sessionId: string): Promise<void> {
    return this.request("DELETE", `/sessions/${sessionId}`);
  }

  async uploadImage(sessionId: string, data: ArrayBuffer | Blob): Promise<string> {
    const result = await this.request<{ image: string }>(
      "POST",
      `/sessions/${sessionId}/images`,
      data,
    );
    return result.image;
  }

  setTarget(sessionId: string, image: string): Promise<SessionView> {
    return this.request("PUT", `/sessions/${sessionId}/target`, { image });
  }

  placeReference(sessionId: string, image: string, x: number, y: number): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/references`, { image, x, y });
  }

  moveReference(sessionId: string, image: string, x: number, y: number): Promise<SessionView> {
    return this.request("PUT", `/sessions/${sessionId}/references/${image}/position`, { x, y });
  }

  selectAttributes(sessionId: string, image: string, names: string[]): Promise<SessionView> {
    return this.request("PUT", `/sessions/${sessionId}/references/${image}/attributes`, { names });
  }

  removeReference(sessionId: string, image: string): Promise<SessionView> {
    return this.request("DELETE", `/sessions/${sessionId}/references/${image}`);
  }

  undo(sessionId: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/undo`);
  }

  redo(sessionId: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/redo`);
  }

  reset(sessionId: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/reset`);
  }

  generate(sessionId: string): Promise<GenerateResponse> {
    return this.request("POST", `/sessions/${sessionId}/generate`);
  }

  jobStatus(sessionId: string, jobId: string): Promise<JobView> {
    return this.request("GET", `/sessions/${sessionId}/jobs/${jobId}`);
  }

  restoreHistory(sessionId: string, entryId: number): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/history/${entryId}/restore`);
  }

  imageUrl(sessionId: string, ref: string): string {
    return this.url(`/sessions/${sessionId}/images/${ref}`);
  }

  historyImageUrl(sessionId: string, entryId: number): string {
    return this.url(`/sessions/${sessionId}/history/${entryId}/image`);
  }
}
