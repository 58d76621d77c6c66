// DOM wiring: renders the four panels from the store and forwards user
// gestures to the controller. All workspace state lives server-side; a full
// refresh rebuilds everything from the session view.

import { ApiClient } from "./api.js";
import { WorkspaceController } from "./controller.js";
import { canvasToPixels, fitScale, pixelsToCanvas } from "./geometry.js";
import { Store, type AppState } from "./state.js";
import type { PlacementView, SessionView } from "./types.js";
import { lineStyle, previewWeight } from "./weights.js";

const store = new Store();
const client = new ApiClient("");
const controller = new WorkspaceController(client, store);

function el<T extends HTMLElement = HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

const workspace = el("workspace");
const lines = el("lines");
const referenceBar = el("reference-bar");
const historyStrip = el("history-strip");
const resultImage = el<HTMLImageElement>("result-image");
const resultDownload = el<HTMLAnchorElement>("result-download");
const resultEmpty = el("result-empty");
const noticeList = el("notices");
const attributeBox = el("attribute-box");
const targetSlot = el("target-slot");
const uploadInput = el<HTMLInputElement>("upload-input");
const targetInput = el<HTMLInputElement>("target-input");

interface DragGesture {
  image: string;
  pointerId: number;
  card: HTMLElement;
}

let gesture: DragGesture | null = null;

// -- rendering ----------------------------------------------------------------

function render(state: AppState): void {
  const view = state.view;
  renderNotices(state);
  if (!view) {
    return;
  }
  renderButtons(state);
  renderReferenceBar(view);
  renderWorkspace(state, view);
  renderHistory(view);
  renderResult(state);
  renderAttributeBox(state, view);
}

function renderButtons(state: AppState): void {
  const view = state.view!;
  el<HTMLButtonElement>("btn-undo").disabled = state.pending || view.undo_depth === 0;
  el<HTMLButtonElement>("btn-redo").disabled = state.pending || view.redo_depth === 0;
  el<HTMLButtonElement>("btn-reset").disabled = state.pending || view.target === null;
  el<HTMLButtonElement>("btn-generate").disabled = state.pending || view.target === null;
  el("session-label").textContent = `session ${view.session_id.slice(0, 8)} · ${view.backend.name}`;
}

function renderReferenceBar(view: SessionView): void {
  referenceBar.replaceChildren();
  const placed = new Set(view.placements.map((p) => p.image));
  for (const ref of view.images) {
    if (ref === view.target) {
      continue;
    }
    const thumb = document.createElement("img");
    thumb.className = "bar-thumb" + (placed.has(ref) ? " placed" : "");
    thumb.src = client.imageUrl(view.session_id, ref);
    thumb.title = placed.has(ref) ? "already on the canvas" : "drag onto the canvas";
    thumb.draggable = !placed.has(ref);
    thumb.addEventListener("dragstart", (event) => {
      event.dataTransfer?.setData("text/latentcanvas-ref", ref);
    });
    referenceBar.append(thumb);
  }
}

function workspaceBox() {
  return { width: workspace.clientWidth, height: workspace.clientHeight };
}

function renderWorkspace(state: AppState, view: SessionView): void {
  for (const node of workspace.querySelectorAll(".card")) {
    node.remove();
  }
  lines.replaceChildren();
  const box = workspaceBox();
  const scale = fitScale(view.canvas, box);
  const center = canvasToPixels(view.canvas.width / 2, view.canvas.height / 2, view.canvas, box);

  targetSlot.style.left = `${center.x}px`;
  targetSlot.style.top = `${center.y}px`;
  targetSlot.classList.toggle("empty", view.target === null);
  const targetImg = el<HTMLImageElement>("target-image");
  if (view.target) {
    targetImg.src = client.imageUrl(view.session_id, view.target);
    targetImg.hidden = false;
    el("target-hint").hidden = true;
  } else {
    targetImg.hidden = true;
    el("target-hint").hidden = false;
  }

  for (const placement of view.placements) {
    const preview =
      state.dragPreview && state.dragPreview.image === placement.image ? state.dragPreview : null;
    const x = preview ? preview.x : placement.position.x;
    const y = preview ? preview.y : placement.position.y;
    const weight = preview ? preview.weight : placement.weight;
    const style = preview ? lineStyle(preview.weight) : placement.line;
    const point = canvasToPixels(x, y, view.canvas, box);

    const line = document.createElementNS("http://www.w3.org/2000/svg", "line");
    line.setAttribute("x1", String(center.x));
    line.setAttribute("y1", String(center.y));
    line.setAttribute("x2", String(point.x));
    line.setAttribute("y2", String(point.y));
    line.setAttribute("stroke", style.color);
    line.setAttribute("stroke-width", String(style.thickness * Math.max(scale, 0.4)));
    lines.append(line);

    const card = document.createElement("div");
    card.className = "card";
    card.style.left = `${point.x}px`;
    card.style.top = `${point.y}px`;
    const img = document.createElement("img");
    img.src = client.imageUrl(view.session_id, placement.image);
    img.draggable = false;
    const badge = document.createElement("span");
    badge.className = "badge";
    badge.textContent = weight.toFixed(2);
    const tags = document.createElement("span");
    tags.className = "tags";
    tags.textContent = placement.selected_attributes.join(" · ") || "right-click to pick attributes";
    card.append(img, badge, tags);
    card.addEventListener("pointerdown", (event) => beginDrag(event, placement, card));
    card.addEventListener("contextmenu", (event) => {
      event.preventDefault();
      controller.toggleAttributeBox(placement.image);
    });
    workspace.append(card);
  }
}

function renderHistory(view: SessionView): void {
  historyStrip.replaceChildren();
  for (const entry of view.history) {
    const thumb = document.createElement("img");
    thumb.className = "history-thumb";
    thumb.src = client.historyImageUrl(view.session_id, entry.id);
    thumb.title = `#${entry.id} · ${entry.created_at}`;
    thumb.addEventListener("click", () => void controller.restoreHistory(entry.id));
    historyStrip.append(thumb);
  }
  el("history-empty").hidden = view.history.length > 0;
}

function renderResult(state: AppState): void {
  if (state.resultUrl) {
    resultImage.src = state.resultUrl;
    resultImage.hidden = false;
    resultDownload.href = state.resultUrl;
    resultDownload.hidden = false;
    resultEmpty.hidden = true;
  } else {
    resultImage.hidden = true;
    resultDownload.hidden = true;
    resultEmpty.hidden = false;
  }
}

function renderNotices(state: AppState): void {
  noticeList.replaceChildren();
  for (const notice of state.notices.slice(-4)) {
    const item = document.createElement("div");
    item.className = `notice ${notice.kind}`;
    item.textContent = notice.text;
    item.addEventListener("click", () => store.dismissNotice(notice.id));
    noticeList.append(item);
    setTimeout(() => store.dismissNotice(notice.id), 6000);
  }
}

function renderAttributeBox(state: AppState, view: SessionView): void {
  const image = state.attributeBoxFor;
  const placement = image ? view.placements.find((p) => p.image === image) : undefined;
  if (!image || !placement) {
    attributeBox.hidden = true;
    return;
  }
  const box = workspaceBox();
  const point = canvasToPixels(placement.position.x, placement.position.y, view.canvas, box);
  attributeBox.hidden = false;
  attributeBox.style.left = `${Math.min(point.x + 48, box.width - 180)}px`;
  attributeBox.style.top = `${Math.max(point.y - 48, 8)}px`;
  attributeBox.replaceChildren();

  const selected = new Set(placement.selected_attributes);
  const groups: Array<[string, string[]]> = [
    ["Local", view.attributes.local],
    ["Global", view.attributes.global],
  ];
  for (const [label, names] of groups) {
    const heading = document.createElement("h4");
    heading.textContent = label;
    attributeBox.append(heading);
    for (const name of names) {
      const row = document.createElement("label");
      const checkbox = document.createElement("input");
      checkbox.type = "checkbox";
      checkbox.value = name;
      checkbox.checked = selected.has(name);
      row.append(checkbox, document.createTextNode(name));
      attributeBox.append(row);
    }
  }
  const apply = document.createElement("button");
  apply.textContent = "Apply";
  apply.addEventListener("click", () => {
    const names = [...attributeBox.querySelectorAll<HTMLInputElement>("input:checked")].map(
      (input) => input.value,
    );
    controller.toggleAttributeBox(null);
    void controller.selectAttributes(image, names);
  });
  const remove = document.createElement("button");
  remove.textContent = "Remove card";
  remove.className = "danger";
  remove.addEventListener("click", () => {
    controller.toggleAttributeBox(null);
    void controller.removeReference(image);
  });
  const actions = document.createElement("div");
  actions.className = "actions";
  actions.append(apply, remove);
  attributeBox.append(actions);
}

// -- gestures ---------------------------------------------------------------------

function beginDrag(event: PointerEvent, placement: PlacementView, card: HTMLElement): void {
  if (event.button !== 0 || store.get().pending) {
    return;
  }
  event.preventDefault();
  gesture = { image: placement.image, pointerId: event.pointerId, card };
  card.setPointerCapture(event.pointerId);
}

function canvasPointFromEvent(event: PointerEvent | DragEvent): { x: number; y: number } {
  const view = store.get().view!;
  const rect = workspace.getBoundingClientRect();
  return pixelsToCanvas(
    event.clientX - rect.left,
    event.clientY - rect.top,
    view.canvas,
    workspaceBox(),
  );
}

workspace.addEventListener("pointermove", (event) => {
  if (!gesture || event.pointerId !== gesture.pointerId) {
    return;
  }
  const point = canvasPointFromEvent(event);
  controller.updateDragPreview(gesture.image, point.x, point.y);
});

workspace.addEventListener("pointerup", (event) => {
  if (!gesture || event.pointerId !== gesture.pointerId) {
    return;
  }
  const { image } = gesture;
  gesture = null;
  const point = canvasPointFromEvent(event);
  void controller.endDrag(image, point.x, point.y);
});

workspace.addEventListener("dragover", (event) => event.preventDefault());
workspace.addEventListener("drop", (event) => {
  event.preventDefault();
  const ref = event.dataTransfer?.getData("text/latentcanvas-ref");
  if (ref) {
    const point = canvasPointFromEvent(event);
    void controller.placeReference(ref, point.x, point.y);
  }
});

workspace.addEventListener("click", (event) => {
  if (event.target === workspace || event.target === lines) {
    controller.toggleAttributeBox(null);
  }
});

targetSlot.addEventListener("click", () => targetInput.click());

targetInput.addEventListener("change", async () => {
  const file = targetInput.files?.[0];
  targetInput.value = "";
  if (file) {
    await controller.uploadTarget(await file.arrayBuffer());
  }
});

el("btn-import").addEventListener("click", () => uploadInput.click());
uploadInput.addEventListener("change", async () => {
  const files = [...(uploadInput.files ?? [])];
  uploadInput.value = "";
  for (const file of files) {
    await controller.uploadImage(await file.arrayBuffer());
  }
});

el("btn-undo").addEventListener("click", () => void controller.undo());
el("btn-redo").addEventListener("click", () => void controller.redo());
el("btn-reset").addEventListener("click", () => void controller.reset());
el("btn-generate").addEventListener("click", () => void controller.generate());

window.addEventListener("resize", () => render(store.get()));

store.subscribe(render);

const params = new URLSearchParams(window.location.search);
void controller.init(params.get("session")).then(() => {
  const view = store.get().view;
  if (view) {
    const url = new URL(window.location.href);
    url.searchParams.set("session", view.session_id);
    window.history.replaceState(null, "", url.toString());
  }
});

export { controller, store, previewWeight };
