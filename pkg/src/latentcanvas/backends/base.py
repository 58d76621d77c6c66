"""Backend interfaces: encoder/generator pairs and region-mask providers.

Backends are immutable after load. Capability flags tell callers whether
outputs are reproducible (``deterministic``), whether concurrent calls are
safe (``reentrant``) and whether the service should run generation inline or
as a polled job (``synchronous``).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Mapping

import numpy as np

from ..attributes import AttributeRegistry, RegionMask
from ..errors import ShapeError
from ..latent import LatentCode


class GeneratorBackend(ABC):
    name: str = "abstract"
    deterministic: bool = False
    reentrant: bool = False
    synchronous: bool = True

    @property
    @abstractmethod
    def latent_shape(self) -> tuple[int, int]:
        """(layer count, per-layer width) of the latent this backend exchanges."""

    @property
    @abstractmethod
    def image_size(self) -> tuple[int, int]:
        """(height, width) of generated images."""

    @abstractmethod
    def encode(self, image: np.ndarray) -> LatentCode:
        """Invert an (H, W, 3) image in [0, 1] into the latent space."""

    @abstractmethod
    def generate(self, latent: LatentCode) -> np.ndarray:
        """Render a latent to an (H, W, 3) image with channels in [0, 1]."""

    @abstractmethod
    def attribute_registry(self) -> AttributeRegistry:
        """Attribute-to-layer-group table matching this backend's latent layout."""

    def check_latent(self, latent: LatentCode) -> None:
        if latent.shape != self.latent_shape:
            raise ShapeError(
                f"latent shape {latent.shape} does not match backend "
                f"{self.name!r} declared shape {self.latent_shape}"
            )

    def describe(self) -> dict:
        return {
            "name": self.name,
            "latent_shape": list(self.latent_shape),
            "image_size": list(self.image_size),
            "deterministic": self.deterministic,
            "reentrant": self.reentrant,
            "synchronous": self.synchronous,
        }


class MaskProvider(ABC):
    @property
    @abstractmethod
    def regions(self) -> tuple[str, ...]:
        """Region identifiers this provider can mask."""

    @abstractmethod
    def masks_for(self, image: np.ndarray) -> Mapping[str, RegionMask]:
        """One feathered mask per supported region, at the image's dimensions."""
