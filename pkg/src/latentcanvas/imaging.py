"""Image decode/encode and resize helpers.

Internally images are float64 RGB arrays of shape (H, W, 3) with channels in
[0, 1]. Results are persisted as 8-bit RGB PNG; any common raster format is
accepted on input. PNG encoding is deterministic within one Pillow version,
which the bit-identity guarantees elsewhere rely on.
"""

from __future__ import annotations

import io

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import InputError, ShapeError


def decode_image(data: bytes) -> np.ndarray:
    """Decode raster bytes to a float RGB array in [0, 1]."""
    try:
        with Image.open(io.BytesIO(data)) as img:
            rgb = img.convert("RGB")
            arr = np.asarray(rgb, dtype=np.float64) / 255.0
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise InputError(f"could not decode image: {exc}", field="image") from exc
    return arr


def encode_png(image: np.ndarray) -> bytes:
    """Quantize a float image to 8-bit RGB and return PNG bytes."""
    arr = _as_image(image)
    quantized = np.clip(np.round(arr * 255.0), 0, 255).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(quantized, mode="RGB").save(buf, format="PNG", optimize=False)
    return buf.getvalue()


def resize_image(image: np.ndarray, size: tuple[int, int]) -> np.ndarray:
    """Resize to (height, width); identity when dimensions already match."""
    arr = _as_image(image)
    height, width = size
    if arr.shape[:2] == (height, width):
        return arr
    quantized = np.clip(np.round(arr * 255.0), 0, 255).astype(np.uint8)
    resized = Image.fromarray(quantized, mode="RGB").resize((width, height), Image.BILINEAR)
    return np.asarray(resized, dtype=np.float64) / 255.0


def _as_image(image: np.ndarray) -> np.ndarray:
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ShapeError(f"expected an (H, W, 3) RGB image, got shape {arr.shape}")
    return arr
