"""Region-mask providers: a fixed geometric template and a parser adapter.

The fixed template targets the standard aligned face crop, expressed as
fractions of the image so it scales with backend resolution. Eyes, nose and
mouth rectangles never overlap; hair may overlap anything. Masks are
feathered with a Gaussian-profile band that stays inside the hard region
boundary, so supports remain disjoint and alpha-zero pixels are untouchable.
"""

from __future__ import annotations

import logging
from typing import Callable, Mapping

import numpy as np

from ..attributes import REGIONS, RegionMask
from ..errors import MaskError
from .base import MaskProvider

logger = logging.getLogger(__name__)

DEFAULT_FEATHER = 5.0

# (top, bottom, left, right) row/column fractions per rectangle.
TEMPLATE_RECTS = {
    "eyes": [(0.33, 0.45, 0.15, 0.85)],
    "nose": [(0.45, 0.62, 0.35, 0.65)],
    "mouth": [(0.62, 0.75, 0.30, 0.70)],
    # Top of the head plus side margins reaching down past the ears.
    "hair": [(0.00, 0.30, 0.00, 1.00), (0.30, 0.60, 0.00, 0.10), (0.30, 0.60, 0.90, 1.00)],
}


def feather_mask(binary: np.ndarray, feather: float) -> np.ndarray:
    """Gaussian-blur a binary mask, clipped to its own support.

    The result peaks at exactly 1.0, falls off inside a ~``feather``-pixel
    band at the boundary and is exactly 0.0 outside the original support.
    """
    mask = binary.astype(np.float64)
    if feather <= 0 or not mask.any():
        return mask
    sigma = feather / 3.0
    blurred = _gaussian_blur(mask, sigma)
    blurred *= mask  # keep the support; feather inward only
    peak = blurred.max()
    if peak > 0:
        blurred /= peak
    return np.clip(blurred, 0.0, 1.0)


def _gaussian_kernel(sigma: float) -> np.ndarray:
    radius = max(1, int(round(3.0 * sigma)))
    xs = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-0.5 * (xs / sigma) ** 2)
    return kernel / kernel.sum()


def _gaussian_blur(field: np.ndarray, sigma: float) -> np.ndarray:
    kernel = _gaussian_kernel(sigma)
    pad = len(kernel) // 2

    def blur_axis(arr: np.ndarray, axis: int) -> np.ndarray:
        moved = np.moveaxis(arr, axis, 0)
        padded = np.pad(moved, [(pad, pad)] + [(0, 0)] * (moved.ndim - 1), mode="constant")
        out = np.zeros_like(moved)
        for offset, weight in enumerate(kernel):
            out += weight * padded[offset : offset + moved.shape[0]]
        return np.moveaxis(out, 0, axis)

    return blur_axis(blur_axis(field, 0), 1)


class FixedTemplateMaskProvider(MaskProvider):
    """Image-independent masks from the aligned-crop template rectangles."""

    def __init__(self, feather: float = DEFAULT_FEATHER):
        self.feather = float(feather)
        self._cache: dict[tuple[int, int], dict[str, RegionMask]] = {}

    @property
    def regions(self) -> tuple[str, ...]:
        return REGIONS

    def masks_for(self, image: np.ndarray) -> Mapping[str, RegionMask]:
        size = (image.shape[0], image.shape[1])
        if size not in self._cache:
            self._cache[size] = {
                region: RegionMask(alpha=self._build(size, region), region=region)
                for region in REGIONS
            }
        return self._cache[size]

    def _build(self, size: tuple[int, int], region: str) -> np.ndarray:
        height, width = size
        binary = np.zeros((height, width), dtype=bool)
        for top, bottom, left, right in TEMPLATE_RECTS[region]:
            binary[
                int(np.floor(top * height)) : int(np.floor(bottom * height)),
                int(np.floor(left * width)) : int(np.floor(right * width)),
            ] = True
        return feather_mask(binary, self.feather)


class ParserMaskProvider(MaskProvider):
    """Masks from a pluggable face parser, falling back to the fixed template.

    ``parse_fn`` maps an (H, W, 3) image to {region: boolean membership map};
    which segmentation model backs it is the integrator's choice. Whenever the
    parser is missing or fails, the provider logs a warning and serves the
    fixed-template masks instead.
    """

    def __init__(
        self,
        parse_fn: Callable[[np.ndarray], Mapping[str, np.ndarray]] | None = None,
        feather: float = DEFAULT_FEATHER,
        fallback: MaskProvider | None = None,
    ):
        self.parse_fn = parse_fn
        self.feather = float(feather)
        self.fallback = fallback if fallback is not None else FixedTemplateMaskProvider(feather)

    @property
    def regions(self) -> tuple[str, ...]:
        return REGIONS

    def masks_for(self, image: np.ndarray) -> Mapping[str, RegionMask]:
        if self.parse_fn is None:
            logger.warning("no face parser configured; using fixed-template masks")
            return self.fallback.masks_for(image)
        try:
            parsed = self.parse_fn(image)
            masks = {}
            for region in REGIONS:
                if region not in parsed:
                    raise MaskError(f"parser produced no mask for region {region!r}", field="region")
                binary = np.asarray(parsed[region], dtype=bool)
                if binary.shape != image.shape[:2]:
                    raise MaskError(
                        f"parser mask for {region!r} has shape {binary.shape}, "
                        f"expected {image.shape[:2]}"
                    )
                masks[region] = RegionMask(alpha=feather_mask(binary, self.feather), region=region)
            return masks
        except Exception as exc:  # parser failure falls back, never aborts
            logger.warning("face parser failed (%s); using fixed-template masks", exc)
            return self.fallback.masks_for(image)
