"""Canvas-layout driven latent attribute transfer.

Arrange reference images around a target on a 2D canvas; per-reference
attribute selections plus canvas distances become inverse weights that drive
latent-space attribute transfer through a pluggable encoder/generator
backend, with full undo/redo and generation history.
"""

from .attributes import AttributeRegistry, AttributeSpec, RegionMask, TransferMode
from .latent import (
    DistanceModel,
    LatentCode,
    LayerMask,
    Weight,
    blend_layers,
    compose_weighted,
    distance_to_weight,
)
from .session import CanvasState, HistoryEntry, ReferencePlacement, SessionDocument
from .transfer import (
    Contribution,
    TransferRequest,
    render_result,
    transfer_global,
    transfer_local,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeRegistry",
    "AttributeSpec",
    "CanvasState",
    "Contribution",
    "DistanceModel",
    "HistoryEntry",
    "LatentCode",
    "LayerMask",
    "ReferencePlacement",
    "RegionMask",
    "SessionDocument",
    "TransferMode",
    "TransferRequest",
    "Weight",
    "blend_layers",
    "compose_weighted",
    "distance_to_weight",
    "render_result",
    "transfer_global",
    "transfer_local",
]
