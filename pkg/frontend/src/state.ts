// Minimal observable store. The session view inside is always the server's
// copy; the only client-side state is transient UI chrome (pending flag,
// drag preview, notices, which attribute box is open).

import type { SessionView } from "./types.js";

export interface Notice {
  id: number;
  kind: "error" | "info";
  text: string;
}

export interface DragPreview {
  image: string;
  x: number;
  y: number;
  weight: number;
}

export interface AppState {
  view: SessionView | null;
  pending: boolean;
  notices: Notice[];
  resultUrl: string | null;
  resultEntryId: number | null;
  dragPreview: DragPreview | null;
  attributeBoxFor: string | null; // one box at a time
}

export type Listener = (state: AppState) => void;

export function initialState(): AppState {
  return {
    view: null,
    pending: false,
    notices: [],
    resultUrl: null,
    resultEntryId: null,
    dragPreview: null,
    attributeBoxFor: null,
  };
}

export class Store {
  private state: AppState = initialState();
  private listeners = new Set<Listener>();
  private noticeSeq = 0;

  get(): AppState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  update(partial: Partial<AppState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  applyView(view: SessionView): void {
    this.update({ view, dragPreview: null });
  }

  notify(kind: Notice["kind"], text: string): void {
    const notice = { id: ++this.noticeSeq, kind, text };
    this.update({ notices: [...this.state.notices, notice] });
  }

  dismissNotice(id: number): void {
    this.update({ notices: this.state.notices.filter((n) => n.id !== id) });
  }
}
