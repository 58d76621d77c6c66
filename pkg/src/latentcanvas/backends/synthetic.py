"""Deterministic linear oracle backend.

The renderer is affine in the latent: image = base + sum(latent[l, k] *
basis[l, k]). Basis patterns have pairwise-disjoint pixel supports (hence
orthogonal) and are localized per layer: layer 0 covers the eyes band,
layer 1 the nose band, layer 2 the mouth band and layer 3 tints the rest of
the image. Linearity makes every blend property checkable in pixel space.

Exactness discipline: base, basis and sampled latents are quantized to the
dyadic grid 2**-GRID_BITS. All products and sums the blend/compose/render
identities need then stay inside the 53-bit double mantissa, so the
pixel-space interpolation oracle holds bitwise, not just approximately.
Every basis patch contains one probe pixel where the basis value is exactly
1 and the base image is exactly 0, which lets the encoder invert the
renderer by reading pixels.
"""

from __future__ import annotations

import numpy as np

from ..attributes import AttributeRegistry, GLOBAL_ATTRIBUTES, REGIONS
from ..errors import NumericError, ShapeError
from ..imaging import resize_image
from ..latent import LatentCode
from .base import GeneratorBackend

GRID_BITS = 22
_GRID = float(2**GRID_BITS)

LAYER_COUNT = 4
LATENT_DIM = 8
DEFAULT_IMAGE_SIZE = (128, 128)
DEFAULT_SEED = 20240117

# Row/column extents of the three facial bands, as fractions of (H, W).
BAND_FRACTIONS = {
    "eyes": (0.33, 0.45, 0.15, 0.85),
    "nose": (0.45, 0.62, 0.35, 0.65),
    "mouth": (0.62, 0.75, 0.30, 0.70),
}
LAYER_REGIONS = ("eyes", "nose", "mouth", "tint")


def quantize_grid(values: np.ndarray) -> np.ndarray:
    """Snap to the dyadic grid that keeps downstream arithmetic exact."""
    return np.round(np.asarray(values, dtype=np.float64) * _GRID) / _GRID


def band_slices(size: tuple[int, int], region: str) -> tuple[slice, slice]:
    height, width = size
    top, bottom, left, right = BAND_FRACTIONS[region]
    return (
        slice(int(np.floor(top * height)), int(np.floor(bottom * height))),
        slice(int(np.floor(left * width)), int(np.floor(right * width))),
    )


class SyntheticBackend(GeneratorBackend):
    """Linear renderer plus its analytic (pixel-reading) inverse."""

    name = "synthetic"
    deterministic = True
    reentrant = True
    synchronous = True

    def __init__(self, image_size: tuple[int, int] = DEFAULT_IMAGE_SIZE, seed: int = DEFAULT_SEED):
        height, width = image_size
        if height < 32 or width < 32:
            raise ShapeError("synthetic backend needs at least a 32x32 canvas")
        self._image_size = (int(height), int(width))
        self._seed = int(seed)
        self._build(np.random.default_rng(self._seed))

    # -- renderer construction -------------------------------------------------

    def _build(self, rng: np.random.Generator) -> None:
        height, width = self._image_size
        supports = self._layer_supports()

        base = np.empty((height, width, 3))
        ys = np.arange(height)[:, None] / height
        xs = np.arange(width)[None, :] / width
        for c, (wy, wx) in enumerate(((0.28, 0.10), (0.22, 0.14), (0.16, 0.20))):
            base[:, :, c] = 0.2 + wy * ys + wx * xs
        base = quantize_grid(base)

        basis = np.zeros((LAYER_COUNT, LATENT_DIM, height, width, 3))
        probes = np.zeros((LAYER_COUNT, LATENT_DIM, 2), dtype=np.int64)
        for layer in range(LAYER_COUNT):
            strips = self._split_support(supports[layer])
            for k, strip in enumerate(strips):
                amplitude = rng.uniform(0.15, 0.39)
                color = rng.uniform(0.5, 1.0, size=3)
                patch = np.zeros((height, width, 3))
                patch[strip] = amplitude * color
                patch = quantize_grid(patch)
                flat = np.flatnonzero(strip)
                probe = flat[len(flat) // 2]
                py, px = divmod(int(probe), width)
                patch[py, px, :] = 1.0
                base[py, px, :] = 0.0
                basis[layer, k] = patch
                probes[layer, k] = (py, px)

        base.setflags(write=False)
        basis.setflags(write=False)
        probes.setflags(write=False)
        self._base = base
        self._basis = basis
        self._probes = probes

    def _layer_supports(self) -> list[np.ndarray]:
        height, width = self._image_size
        supports = []
        occupied = np.zeros((height, width), dtype=bool)
        for region in ("eyes", "nose", "mouth"):
            mask = np.zeros((height, width), dtype=bool)
            rows, cols = band_slices(self._image_size, region)
            mask[rows, cols] = True
            supports.append(mask)
            occupied |= mask
        supports.append(~occupied)  # layer 3: global tint over the remainder
        return supports

    @staticmethod
    def _split_support(support: np.ndarray) -> list[np.ndarray]:
        """Partition a support into LATENT_DIM disjoint column bands."""
        cols = np.flatnonzero(support.any(axis=0))
        edges = np.linspace(cols[0], cols[-1] + 1, LATENT_DIM + 1).round().astype(int)
        strips = []
        for k in range(LATENT_DIM):
            strip = support.copy()
            strip[:, : edges[k]] = False
            strip[:, edges[k + 1] :] = False
            if not strip.any():
                raise ShapeError("synthetic canvas too narrow to split basis strips")
            strips.append(strip)
        return strips

    # -- backend interface -----------------------------------------------------

    @property
    def latent_shape(self) -> tuple[int, int]:
        return (LAYER_COUNT, LATENT_DIM)

    @property
    def image_size(self) -> tuple[int, int]:
        return self._image_size

    def encode(self, image: np.ndarray) -> LatentCode:
        arr = resize_image(image, self._image_size)
        if not np.all(np.isfinite(arr)):
            raise NumericError("image contains non-finite values")
        values = arr[self._probes[:, :, 0], self._probes[:, :, 1], 0]
        return LatentCode(np.clip(quantize_grid(values), 0.0, 1.0))

    def generate(self, latent: LatentCode) -> np.ndarray:
        return np.clip(self.generate_raw(latent), 0.0, 1.0)

    def generate_raw(self, latent: LatentCode) -> np.ndarray:
        """Pre-clipping render; the linearity oracle compares against this."""
        self.check_latent(latent)
        return self._base + np.tensordot(latent.layers, self._basis, axes=([0, 1], [0, 1]))

    def attribute_registry(self) -> AttributeRegistry:
        # Every global attribute steers the tint layer; each local region
        # pre-blends exactly its own layer (hair rides the tint layer, whose
        # support covers the hair area).
        return AttributeRegistry(
            LAYER_COUNT,
            global_groups={name: [3] for name in GLOBAL_ATTRIBUTES},
            local_preblend={region: [i] for i, region in enumerate(REGIONS)},
        )

    # -- helpers for tests and fixtures ----------------------------------------

    def random_latent(self, rng: np.random.Generator) -> LatentCode:
        """Grid-quantized uniform draw in [0, 1]; keeps oracle arithmetic exact."""
        ints = rng.integers(0, 2**GRID_BITS + 1, size=(LAYER_COUNT, LATENT_DIM))
        return LatentCode(ints / _GRID)

    @property
    def probe_pixels(self) -> np.ndarray:
        return self._probes
