"""Latent representation, the distance-to-weight ramp, and blending algebra.

Everything here is a pure function over immutable values. The blending
operations promise *bit-exact* behaviour at their endpoints (w = 0 keeps the
target untouched, w = 1 copies the reference) and on layers excluded by the
mask, so the arithmetic short-circuits those cases instead of trusting
floating point to cancel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError, NumericError, ShapeError, ValidationError

# Influence value in [0, 1]; plain float at runtime, validated at use sites.
Weight = float


def ensure_weight(w: float, field: str = "weight") -> float:
    w = float(w)
    if not np.isfinite(w) or w < 0.0 or w > 1.0:
        raise ValidationError(f"{field} must be a finite value in [0, 1], got {w!r}", field=field)
    return w


@dataclass(frozen=True)
class LatentCode:
    """Layered latent of one image: an (L, D) float64 matrix, read-only."""

    layers: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.layers, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"latent must be a 2-D (layers, dims) matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NumericError("latent contains non-finite values")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "layers", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.layers.shape  # type: ignore[return-value]

    @property
    def layer_count(self) -> int:
        return self.layers.shape[0]

    def same_shape_as(self, other: "LatentCode") -> bool:
        return self.shape == other.shape


@dataclass(frozen=True)
class LayerMask:
    """Boolean vector choosing which latent layers an operation may touch."""

    included: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.included, dtype=bool)
        if arr.ndim != 1 or arr.shape[0] < 1:
            raise ShapeError(f"layer mask must be a 1-D vector, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "included", arr)

    @classmethod
    def all_layers(cls, layer_count: int) -> "LayerMask":
        return cls(np.ones(layer_count, dtype=bool))

    @classmethod
    def from_indices(cls, layer_count: int, indices: Iterable[int]) -> "LayerMask":
        mask = np.zeros(layer_count, dtype=bool)
        for i in indices:
            if not 0 <= i < layer_count:
                raise ValidationError(f"layer index {i} out of range for {layer_count} layers", field="layers")
            mask[i] = True
        return cls(mask)

    @classmethod
    def from_range(cls, layer_count: int, start: int, stop: int) -> "LayerMask":
        """Layers ``start`` .. ``stop - 1``, clamped to the valid range."""
        return cls.from_indices(layer_count, range(max(0, start), min(layer_count, stop)))

    @property
    def layer_count(self) -> int:
        return self.included.shape[0]

    def indices(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.included)]

    def any(self) -> bool:
        return bool(self.included.any())


@dataclass(frozen=True)
class DistanceModel:
    """Maps canvas distance to influence: weight 1 at ``d_min``, 0 at ``d_max``."""

    d_min: float
    d_max: float

    def __post_init__(self):
        d_min = float(self.d_min)
        d_max = float(self.d_max)
        if not (np.isfinite(d_min) and np.isfinite(d_max)):
            raise ConfigurationError("distance model bounds must be finite", field="distance_model")
        if d_min < 0:
            raise ConfigurationError(f"d_min must be non-negative, got {d_min}", field="d_min")
        if d_min >= d_max:
            raise ConfigurationError(
                f"d_min must be strictly below d_max, got d_min={d_min}, d_max={d_max}",
                field="distance_model",
            )
        object.__setattr__(self, "d_min", d_min)
        object.__setattr__(self, "d_max", d_max)


def distance_to_weight(d: float, model: DistanceModel) -> Weight:
    """Linear ramp: 1 at ``model.d_min``, 0 at ``model.d_max``, clamped outside.

    Monotonically non-increasing and continuous in ``d``; the endpoints are
    exact because x/x divides to 1.0 and 0/x to 0.0 in IEEE arithmetic.
    """
    d = float(d)
    if not np.isfinite(d) or d < 0:
        raise ValidationError(f"distance must be finite and non-negative, got {d!r}", field="distance")
    w = (model.d_max - d) / (model.d_max - model.d_min)
    return min(1.0, max(0.0, w))


def _require_same_shape(target: LatentCode, reference: LatentCode, mask: LayerMask | None = None) -> None:
    if target.shape != reference.shape:
        raise ShapeError(f"latent shapes differ: target {target.shape} vs reference {reference.shape}")
    if mask is not None and mask.layer_count != target.layer_count:
        raise ShapeError(
            f"layer mask length {mask.layer_count} does not match latent layer count {target.layer_count}"
        )


def _lerp_rows(target_rows: np.ndarray, reference_rows: np.ndarray, w: float) -> np.ndarray:
    # Endpoints bypass arithmetic so they are exact to the last bit.
    if w == 0.0:
        return target_rows.copy()
    if w == 1.0:
        return reference_rows.copy()
    return target_rows + w * (reference_rows - target_rows)


def blend_layers(target: LatentCode, reference: LatentCode, mask: LayerMask, w: Weight) -> LatentCode:
    """Move the masked layers of ``target`` toward ``reference`` by fraction ``w``.

    Excluded layers are returned bit-identical to the target.
    """
    ensure_weight(w)
    _require_same_shape(target, reference, mask)
    out = target.layers.copy()
    sel = mask.included
    if sel.any():
        out[sel] = _lerp_rows(target.layers[sel], reference.layers[sel], float(w))
    return LatentCode(out)


def compose_weighted(
    target: LatentCode,
    contributions: Sequence[tuple[LatentCode, LayerMask, Weight]],
) -> LatentCode:
    """Resolve several references pulling on the same latent.

    Per layer, the displacement is the weighted mean of the per-reference
    displacements with the weight sum floored at 1, so the result never leaves
    the convex hull of target and references, and a single contribution
    reduces exactly to :func:`blend_layers`.
    """
    checked = []
    for ref, mask, w in contributions:
        ensure_weight(w)
        _require_same_shape(target, ref, mask)
        checked.append((ref, mask, float(w)))

    out = target.layers.copy()
    for layer in range(target.layer_count):
        active = [(ref, w) for ref, mask, w in checked if mask.included[layer] and w > 0.0]
        if not active:
            continue
        t_row = target.layers[layer]
        if len(active) == 1:
            ref, w = active[0]
            out[layer] = _lerp_rows(t_row, ref.layers[layer], w)
            continue
        total = sum(w for _, w in active)
        displacement = np.zeros_like(t_row)
        for ref, w in active:
            displacement += w * (ref.layers[layer] - t_row)
        out[layer] = t_row + displacement / max(1.0, total)
    return LatentCode(out)
