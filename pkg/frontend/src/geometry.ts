// Mapping between canvas units (server coordinates) and workspace pixels.

export interface CanvasSize {
  width: number;
  height: number;
}

export interface PixelBox {
  width: number;
  height: number;
}

/** Uniform scale that fits the canvas inside the workspace element. */
export function fitScale(canvas: CanvasSize, box: PixelBox): number {
  return Math.min(box.width / canvas.width, box.height / canvas.height);
}

export function canvasToPixels(
  x: number,
  y: number,
  canvas: CanvasSize,
  box: PixelBox,
): { x: number; y: number } {
  const scale = fitScale(canvas, box);
  return { x: x * scale, y: y * scale };
}

export function pixelsToCanvas(
  px: number,
  py: number,
  canvas: CanvasSize,
  box: PixelBox,
): { x: number; y: number } {
  const scale = fitScale(canvas, box);
  return { x: px / scale, y: py / scale };
}
