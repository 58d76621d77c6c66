"""Attribute registry: which named attributes exist and how each transfers.

Local attributes (eyes, nose, mouth, hair) are applied by compositing a
region-masked candidate render; global attributes (age, faceshape, headpose,
makeup) are layer-restricted latent blends. Layer groups are configuration
carried by the registry, never hard-coded in operations, so backends with a
different layer layout can supply their own tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from .errors import ConfigurationError, ValidationError
from .latent import LayerMask

LOCAL_ATTRIBUTES = ("eyes", "nose", "mouth", "hair")
GLOBAL_ATTRIBUTES = ("age", "faceshape", "headpose", "makeup")

# Composition order: locals composited eyes -> hair after globals resolve jointly.
CANONICAL_ORDER = LOCAL_ATTRIBUTES + GLOBAL_ATTRIBUTES

REGIONS = LOCAL_ATTRIBUTES

# Layer groups for the 18-layer convention of the default generator:
# coarse layers steer pose/shape, middle layers age, fine layers color/makeup.
DEFAULT_GLOBAL_GROUPS_18 = {
    "headpose": range(0, 4),
    "faceshape": range(0, 6),
    "age": range(4, 10),
    "makeup": range(10, 18),
}
DEFAULT_LOCAL_PREBLEND_18 = range(4, 14)


class TransferMode(str, Enum):
    LOCAL = "local"
    GLOBAL = "global"


@dataclass(frozen=True)
class AttributeSpec:
    """One named attribute: its transfer mode plus mode-specific payload.

    Exactly one of ``layer_group`` (global mode) / ``region`` (local mode)
    is populated.
    """

    name: str
    mode: TransferMode
    layer_group: LayerMask | None = None
    region: str | None = None

    def __post_init__(self):
        if self.mode is TransferMode.GLOBAL:
            if self.layer_group is None or self.region is not None:
                raise ConfigurationError(f"global attribute {self.name!r} must carry a layer group only")
            if not self.layer_group.any():
                raise ConfigurationError(f"global attribute {self.name!r} must include at least one layer")
        else:
            if self.region is None or self.layer_group is not None:
                raise ConfigurationError(f"local attribute {self.name!r} must carry a region only")
            if self.region not in REGIONS:
                raise ConfigurationError(f"unknown region {self.region!r} for attribute {self.name!r}")


@dataclass(frozen=True)
class RegionMask:
    """Soft per-pixel membership map for one face region, feathered at the rim."""

    alpha: np.ndarray
    region: str

    def __post_init__(self):
        arr = np.asarray(self.alpha, dtype=np.float64)
        if arr.ndim != 2:
            raise ConfigurationError(f"region mask must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
            raise ConfigurationError(f"region mask values must lie in [0, 1] for region {self.region!r}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "alpha", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.alpha.shape  # type: ignore[return-value]

    def support(self) -> np.ndarray:
        return self.alpha > 0.0


class AttributeRegistry:
    """Maps attribute names to specs plus the local pre-blend layer groups."""

    def __init__(
        self,
        layer_count: int,
        global_groups: Mapping[str, Iterable[int]],
        local_preblend: Mapping[str, Iterable[int]],
    ):
        self.layer_count = layer_count
        specs: dict[str, AttributeSpec] = {}
        for name in LOCAL_ATTRIBUTES:
            specs[name] = AttributeSpec(name=name, mode=TransferMode.LOCAL, region=name)
        for name in GLOBAL_ATTRIBUTES:
            if name not in global_groups:
                raise ConfigurationError(f"missing layer group for global attribute {name!r}")
            group = LayerMask.from_indices(layer_count, global_groups[name])
            specs[name] = AttributeSpec(name=name, mode=TransferMode.GLOBAL, layer_group=group)
        self._specs = {name: specs[name] for name in CANONICAL_ORDER}
        self._local_preblend = {}
        for region in REGIONS:
            if region not in local_preblend:
                raise ConfigurationError(f"missing pre-blend layer group for region {region!r}")
            self._local_preblend[region] = LayerMask.from_indices(layer_count, local_preblend[region])

    @classmethod
    def default(cls, layer_count: int = 18) -> "AttributeRegistry":
        """Canonical table for the 18-layer convention, rescaled for other depths."""
        if layer_count == 18:
            global_groups = DEFAULT_GLOBAL_GROUPS_18
            preblend = DEFAULT_LOCAL_PREBLEND_18
        else:
            scale = layer_count / 18.0

            def rescale(r: range) -> range:
                start = int(np.floor(r.start * scale))
                stop = max(start + 1, int(np.ceil(r.stop * scale)))
                return range(start, min(stop, layer_count))

            global_groups = {name: rescale(r) for name, r in DEFAULT_GLOBAL_GROUPS_18.items()}
            preblend = rescale(DEFAULT_LOCAL_PREBLEND_18)
        return cls(
            layer_count,
            global_groups,
            {region: preblend for region in REGIONS},
        )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._specs)

    @property
    def local_names(self) -> tuple[str, ...]:
        return LOCAL_ATTRIBUTES

    @property
    def global_names(self) -> tuple[str, ...]:
        return GLOBAL_ATTRIBUTES

    def spec(self, name: str) -> AttributeSpec:
        try:
            return self._specs[name]
        except KeyError:
            raise ValidationError(f"unknown attribute {name!r}", field="attribute") from None

    def local_preblend(self, region: str) -> LayerMask:
        try:
            return self._local_preblend[region]
        except KeyError:
            raise ValidationError(f"unknown region {region!r}", field="region") from None

    def canonical_index(self, name: str) -> int:
        self.spec(name)
        return CANONICAL_ORDER.index(name)

    def validate_names(self, names: Iterable[str]) -> None:
        unknown = sorted(set(names) - set(self._specs))
        if unknown:
            raise ValidationError(
                "unknown attribute name(s): " + ", ".join(unknown),
                field="attributes",
            )

    def describe(self) -> dict:
        """JSON-friendly summary consumed by the API session view."""
        return {
            "local": list(self.local_names),
            "global": list(self.global_names),
            "layer_groups": {
                name: self._specs[name].layer_group.indices()
                for name in self.global_names
            },
            "local_preblend": {region: mask.indices() for region, mask in self._local_preblend.items()},
        }
