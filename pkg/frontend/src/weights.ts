// Drag-preview weight math. Mirrors the server's formula exactly, using the
// server's own d_min/d_max from the session view; the server value stays
// authoritative and replaces the preview after every acknowledgment.

import type { LineStyle, SessionView } from "./types.js";

export function distanceToWeight(d: number, dMin: number, dMax: number): number {
  const w = (dMax - d) / (dMax - dMin);
  return Math.min(1, Math.max(0, w));
}

export function clampToCanvas(
  x: number,
  y: number,
  width: number,
  height: number,
): { x: number; y: number } {
  return {
    x: Math.min(Math.max(x, 0), width),
    y: Math.min(Math.max(y, 0), height),
  };
}

export function distanceFromCenter(x: number, y: number, width: number, height: number): number {
  return Math.hypot(x - width / 2, y - height / 2);
}

/** Weight the server would derive for a card dropped at (x, y). */
export function previewWeight(
  x: number,
  y: number,
  view: Pick<SessionView, "canvas" | "distance_model">,
): number {
  const { width, height } = view.canvas;
  const clamped = clampToCanvas(x, y, width, height);
  const d = distanceFromCenter(clamped.x, clamped.y, width, height);
  return distanceToWeight(d, view.distance_model.d_min, view.distance_model.d_max);
}

const LINE_GRAY = [128, 128, 128] as const;
const LINE_ACCENT = [59, 130, 246] as const;

/** Connection-line feedback: thickness 1..6, color gray -> accent. */
export function lineStyle(w: number): LineStyle {
  const rgb = LINE_GRAY.map((g, i) => Math.round(g + w * (LINE_ACCENT[i] - g)));
  const hex = rgb.map((v) => v.toString(16).padStart(2, "0")).join("");
  return { thickness: 1 + 5 * w, color: `#${hex}` };
}
