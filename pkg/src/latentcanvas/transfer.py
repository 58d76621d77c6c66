"""The two attribute-transfer paths and their composition into one render.

Global attributes move layer groups of the target latent toward the
reference. Local attributes blend a candidate latent, render it, and
feather-composite the candidate pixels into the base render inside the
attribute's region mask. ``render_result`` runs the full deterministic
pipeline: globals are resolved jointly first, then locals are composited in
the canonical region order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .attributes import AttributeRegistry, AttributeSpec, RegionMask, TransferMode
from .errors import MaskError, ModeError, ShapeError
from .latent import LatentCode, Weight, blend_layers, compose_weighted, ensure_weight


@dataclass(frozen=True)
class Contribution:
    """One (reference, attribute, weight) pull on the target."""

    reference_latent: LatentCode
    attribute: AttributeSpec
    weight: Weight
    source: str | None = None  # image ref or path, for reports only

    def __post_init__(self):
        ensure_weight(self.weight)


@dataclass(frozen=True)
class TransferRequest:
    target_latent: LatentCode
    target_image: np.ndarray
    contributions: tuple[Contribution, ...]

    def __post_init__(self):
        for contribution in self.contributions:
            if contribution.reference_latent.shape != self.target_latent.shape:
                raise ShapeError(
                    f"contribution latent shape {contribution.reference_latent.shape} "
                    f"does not match target {self.target_latent.shape}"
                )
        object.__setattr__(self, "contributions", tuple(self.contributions))


def transfer_global(
    target: LatentCode, reference: LatentCode, attr: AttributeSpec, w: Weight
) -> LatentCode:
    """Blend the attribute's layer group of the target toward the reference."""
    if attr.mode is not TransferMode.GLOBAL:
        raise ModeError(f"attribute {attr.name!r} is not a global attribute", field="attribute")
    return blend_layers(target, reference, attr.layer_group, w)


def transfer_local(
    target_image: np.ndarray, blended_image: np.ndarray, mask: RegionMask, w: Weight
) -> np.ndarray:
    """Feathered alpha composite of the blended image into the target.

    Pixels where the mask is zero (or w is zero) are copied from the target
    bit-exactly rather than recomputed.
    """
    ensure_weight(w)
    target_image = np.asarray(target_image, dtype=np.float64)
    blended_image = np.asarray(blended_image, dtype=np.float64)
    if target_image.shape != blended_image.shape:
        raise ShapeError(
            f"image shapes differ: {target_image.shape} vs {blended_image.shape}"
        )
    if mask.shape != target_image.shape[:2]:
        raise ShapeError(
            f"mask shape {mask.shape} does not match image shape {target_image.shape[:2]}"
        )
    if w == 0.0:
        return target_image.copy()
    alpha = (w * mask.alpha)[:, :, None]
    mixed = target_image + alpha * (blended_image - target_image)
    return np.where(alpha == 0.0, target_image, mixed)


def render_result(
    request: TransferRequest,
    backend,
    masks=None,
    registry: AttributeRegistry | None = None,
) -> np.ndarray:
    """Deterministic full-pipeline render.

    1. compose all global contributions into one latent;
    2. for each local contribution, render a candidate from a pre-blended latent;
    3. render the global-only latent;
    4. composite the candidates, region-masked, in canonical order.

    ``masks`` is a MaskProvider (region masks are taken from the target
    image) or a prebuilt {region: RegionMask} mapping.
    """
    registry = registry if registry is not None else backend.attribute_registry()
    backend.check_latent(request.target_latent)

    active = [c for c in request.contributions if c.weight > 0.0]
    globals_ = [c for c in active if c.attribute.mode is TransferMode.GLOBAL]
    locals_ = [c for c in active if c.attribute.mode is TransferMode.LOCAL]
    # Stable sort: canonical region order first, request order within a region.
    locals_.sort(key=lambda c: registry.canonical_index(c.attribute.name))

    base_latent = compose_weighted(
        request.target_latent,
        [(c.reference_latent, c.attribute.layer_group, c.weight) for c in globals_],
    )
    image = backend.generate(base_latent)

    if not locals_:
        return image

    if masks is None:
        raise MaskError("local contributions require a region-mask source", field="masks")
    mask_map: Mapping[str, RegionMask]
    if hasattr(masks, "masks_for"):
        mask_map = masks.masks_for(request.target_image)
    else:
        mask_map = masks
    for contribution in locals_:
        region = contribution.attribute.region
        if region not in mask_map:
            raise MaskError(f"no mask available for region {region!r}", field="region")
        candidate = blend_layers(
            base_latent,
            contribution.reference_latent,
            registry.local_preblend(region),
            contribution.weight,
        )
        candidate_image = backend.generate(candidate)
        image = transfer_local(image, candidate_image, mask_map[region], contribution.weight)
    return image


def describe_contributions(
    contributions: Sequence[Contribution], registry: AttributeRegistry
) -> list[dict]:
    """JSON-friendly report of what a render applied, one entry per pull."""
    rows = []
    for c in contributions:
        spec = c.attribute
        if spec.mode is TransferMode.GLOBAL:
            layers = spec.layer_group.indices()
            region = None
        else:
            layers = registry.local_preblend(spec.region).indices()
            region = spec.region
        rows.append(
            {
                "reference": c.source,
                "attribute": spec.name,
                "mode": spec.mode.value,
                "weight": c.weight,
                "layers": layers,
                "region": region,
            }
        )
    return rows
