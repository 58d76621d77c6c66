// Generation-job polling for non-synchronous backends.

import type { ApiClient } from "./api.js";
import type { JobView } from "./types.js";

export const POLL_INTERVAL_MS = 500;

export type Sleep = (ms: number) => Promise<void>;

const defaultSleep: Sleep = (ms) => new Promise((resolve) => setTimeout(resolve, ms));

export interface PollOptions {
  intervalMs?: number;
  timeoutMs?: number;
  sleep?: Sleep;
}

/** Poll a job every half second until it is done or failed. */
export async function pollJob(
  client: ApiClient,
  sessionId: string,
  jobId: string,
  options: PollOptions = {},
): Promise<JobView> {
  const intervalMs = options.intervalMs ?? POLL_INTERVAL_MS;
  const timeoutMs = options.timeoutMs ?? 120_000;
  const sleep = options.sleep ?? defaultSleep;
  const started = Date.now();
  for (;;) {
    const job = await client.jobStatus(sessionId, jobId);
    if (job.status === "done" || job.status === "failed") {
      return job;
    }
    if (Date.now() - started > timeoutMs) {
      return { ...job, status: "failed", error: "client-side polling timeout" };
    }
    await sleep(intervalMs);
  }
}
