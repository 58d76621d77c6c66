// Workspace controller: turns user intents into API calls and replaces the
// view model with the server's response. At most one mutating request is in
// flight per session; API errors surface as non-blocking notices and leave
// the workspace untouched.

import { ApiClient, ApiError } from "./api.js";
import { pollJob, type PollOptions } from "./polling.js";
import { Store } from "./state.js";
import type { SessionView } from "./types.js";
import { previewWeight } from "./weights.js";

export class WorkspaceController {
  constructor(
    readonly client: ApiClient,
    readonly store: Store,
    private pollOptions: PollOptions = {},
  ) {}

  get sessionId(): string {
    const view = this.store.get().view;
    if (!view) {
      throw new Error("no active session");
    }
    return view.session_id;
  }

  async init(sessionId?: string | null): Promise<void> {
    if (sessionId) {
      try {
        this.store.applyView(await this.client.getSession(sessionId));
        return;
      } catch {
        // stale id: fall through to a fresh session
      }
    }
    this.store.applyView(await this.client.createSession());
  }

  /** Run one mutating call; ignored while another is pending. */
  private async mutate(work: () => Promise<SessionView>): Promise<boolean> {
    if (this.store.get().pending) {
      return false;
    }
    this.store.update({ pending: true });
    try {
      this.store.applyView(await work());
      return true;
    } catch (error) {
      this.reportError(error);
      return false;
    } finally {
      this.store.update({ pending: false });
    }
  }

  private reportError(error: unknown): void {
    if (error instanceof ApiError) {
      this.store.notify("error", error.field ? `${error.message} (${error.field})` : error.message);
    } else {
      this.store.notify("error", String(error));
    }
  }

  async uploadImage(data: ArrayBuffer | Blob): Promise<string | null> {
    try {
      const ref = await this.client.uploadImage(this.sessionId, data);
      // refresh the reference bar
      this.store.applyView(await this.client.getSession(this.sessionId));
      return ref;
    } catch (error) {
      this.reportError(error);
      return null;
    }
  }

  async uploadTarget(data: ArrayBuffer | Blob): Promise<void> {
    const ref = await this.uploadImage(data);
    if (ref) {
      await this.setTarget(ref);
    }
  }

  setTarget(image: string): Promise<boolean> {
    return this.mutate(() => this.client.setTarget(this.sessionId, image));
  }

  placeReference(image: string, x: number, y: number): Promise<boolean> {
    return this.mutate(() => this.client.placeReference(this.sessionId, image, x, y));
  }

  /** Live drag feedback: local math only, no server round-trip. */
  updateDragPreview(image: string, x: number, y: number): void {
    const view = this.store.get().view;
    if (!view) {
      return;
    }
    this.store.update({
      dragPreview: { image, x, y, weight: previewWeight(x, y, view) },
    });
  }

  /** Drag release: one move call per completed gesture. */
  async endDrag(image: string, x: number, y: number): Promise<boolean> {
    const moved = await this.mutate(() => this.client.moveReference(this.sessionId, image, x, y));
    if (!moved) {
      this.store.update({ dragPreview: null });
    }
    return moved;
  }

  selectAttributes(image: string, names: string[]): Promise<boolean> {
    return this.mutate(() => this.client.selectAttributes(this.sessionId, image, names));
  }

  removeReference(image: string): Promise<boolean> {
    return this.mutate(() => this.client.removeReference(this.sessionId, image));
  }

  undo(): Promise<boolean> {
    return this.mutate(() => this.client.undo(this.sessionId));
  }

  redo(): Promise<boolean> {
    return this.mutate(() => this.client.redo(this.sessionId));
  }

  reset(): Promise<boolean> {
    return this.mutate(() => this.client.reset(this.sessionId));
  }

  async generate(): Promise<boolean> {
    if (this.store.get().pending) {
      return false;
    }
    const sessionId = this.sessionId;
    this.store.update({ pending: true });
    try {
      let response = await this.client.generate(sessionId);
      if (response.status === "queued" || response.status === "running") {
        response = await pollJob(this.client, sessionId, response.job_id, this.pollOptions);
      }
      if (response.status === "failed" || response.entry_id === null) {
        // a failed generate leaves the workspace untouched
        this.store.notify("error", response.error ?? "generation failed");
        return false;
      }
      const entryId = response.entry_id;
      this.store.applyView(await this.client.getSession(sessionId));
      this.showResult(entryId);
      return true;
    } catch (error) {
      this.reportError(error);
      return false;
    } finally {
      this.store.update({ pending: false });
    }
  }

  /** History click: return the workspace to that point and show its result. */
  async restoreHistory(entryId: number): Promise<boolean> {
    const restored = await this.mutate(() =>
      this.client.restoreHistory(this.sessionId, entryId),
    );
    if (restored) {
      this.showResult(entryId);
    }
    return restored;
  }

  private showResult(entryId: number): void {
    this.store.update({
      resultUrl: this.client.historyImageUrl(this.sessionId, entryId),
      resultEntryId: entryId,
    });
  }

  toggleAttributeBox(image: string | null): void {
    const current = this.store.get().attributeBoxFor;
    this.store.update({ attributeBoxFor: current === image ? null : image });
  }
}
