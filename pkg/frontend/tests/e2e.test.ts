// Live end-to-end check against a running latentcanvas service.
// Opt-in: LC_E2E_URL=http://127.0.0.1:8321 npx vitest run tests/e2e.test.ts

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { WorkspaceController } from "../src/controller.js";
import { Store } from "../src/state.js";
import { previewWeight } from "../src/weights.js";

const BASE = process.env.LC_E2E_URL;

// 1x1 PNG, enough for the upload/decode path.
const TINY_PNG = Uint8Array.from(
  atob("iVBORw0KGgoAAAANSUhEUgAAAAEAAAABCAYAAAAfFcSJAAAADUlEQVR42mP8z8BQDwAEhQGAhKmMIQAAAABJRU5ErkJggg=="),
  (c) => c.charCodeAt(0),
).buffer;

describe.skipIf(!BASE)("against a live service", () => {
  it("drives the full workspace flow through the real API", async () => {
    const client = new ApiClient(BASE!);
    const store = new Store();
    const controller = new WorkspaceController(client, store);

    await controller.init();
    const sid = store.get().view!.session_id;

    const target = await controller.uploadImage(TINY_PNG);
    expect(target).toBeTruthy();
    await controller.setTarget(target!);

    // a card may reuse the target's image; only duplicate placements are rejected
    const view = store.get().view!;
    const drop = { x: view.canvas.width * 0.7, y: view.canvas.height * 0.4 };
    await controller.placeReference(target!, drop.x, drop.y);

    // live preview/authority agreement
    const placed = store.get().view!.placements[0];
    const preview = previewWeight(drop.x, drop.y, store.get().view!);
    expect(Math.abs(preview - placed.weight)).toBeLessThanOrEqual(0.01);

    await controller.selectAttributes(placed.image, ["mouth", "age"]);
    await controller.endDrag(placed.image, view.canvas.width * 0.6, view.canvas.height * 0.5);

    const generated = await controller.generate();
    expect(generated).toBe(true);
    const history = store.get().view!.history;
    expect(history).toHaveLength(1);
    expect(store.get().resultUrl).toBe(client.historyImageUrl(sid, history[0].id));

    const image = await fetch(store.get().resultUrl!);
    expect(image.status).toBe(200);
    expect(image.headers.get("content-type")).toBe("image/png");

    await controller.undo();
    const restored = await controller.restoreHistory(history[0].id);
    expect(restored).toBe(true);
    expect(store.get().view!.history).toHaveLength(1);
  });
});
