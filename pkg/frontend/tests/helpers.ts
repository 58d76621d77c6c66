// Test helpers: canned session views and a scripted fetch backend.

import type { FetchLike } from "../src/api.js";
import type { JobView, SessionView } from "../src/types.js";

export function sessionView(overrides: Partial<SessionView> = {}): SessionView {
  return {
    session_id: "abc123",
    canvas: { width: 1000, height: 700 },
    distance_model: { d_min: 96, d_max: 610.327780786685 },
    target: null,
    placements: [],
    undo_depth: 0,
    redo_depth: 0,
    history: [],
    images: [],
    backend: {
      name: "synthetic",
      latent_shape: [4, 8],
      image_size: [128, 128],
      deterministic: true,
      reentrant: true,
      synchronous: true,
    },
    attributes: {
      local: ["eyes", "nose", "mouth", "hair"],
      global: ["age", "faceshape", "headpose", "makeup"],
      layer_groups: { age: [3], faceshape: [3], headpose: [3], makeup: [3] },
      local_preblend: { eyes: [0], nose: [1], mouth: [2], hair: [3] },
    },
    ...overrides,
  };
}

export function jobView(overrides: Partial<JobView> = {}): JobView {
  return {
    job_id: "job-1",
    status: "done",
    entry_id: 1,
    error: null,
    created_at: "2026-01-01T00:00:00+00:00",
    ...overrides,
  };
}

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export type Route = (call: RecordedCall) => { status?: number; body?: unknown } | undefined;

/** Scripted fetch: routes are matched by "METHOD /path"; calls are recorded. */
export class FakeServer {
  calls: RecordedCall[] = [];
  private routes = new Map<string, Route>();

  on(method: string, path: string, route: Route | unknown): this {
    const handler: Route =
      typeof route === "function" ? (route as Route) : () => ({ body: route });
    this.routes.set(`${method} ${path}`, handler);
    return this;
  }

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const path = url.toString().replace(/^https?:\/\/[^/]+/, "");
    let body: unknown = undefined;
    if (typeof init?.body === "string") {
      body = JSON.parse(init.body);
    } else if (init?.body) {
      body = init.body;
    }
    const call = { method, path, body };
    this.calls.push(call);
    const route = this.routes.get(`${method} ${path}`);
    if (!route) {
      return new Response(
        JSON.stringify({ error: { code: "not_found", message: `no route ${method} ${path}`, field: null } }),
        { status: 404, headers: { "content-type": "application/json" } },
      );
    }
    const result = route(call) ?? {};
    const status = result.status ?? 200;
    if (status === 204) {
      return new Response(null, { status });
    }
    return new Response(JSON.stringify(result.body ?? {}), {
      status,
      headers: { "content-type": "application/json" },
    });
  };

  callsTo(method: string, pattern: RegExp): RecordedCall[] {
    return this.calls.filter((c) => c.method === method && pattern.test(c.path));
  }
}
