"""Pretrained encoder/generator backend.

Model weights are an optional download, never vendored: the backend consumes
a TorchScript-exported inversion encoder and face generator from paths given
in configuration (or the LATENTCANVAS_ENCODER / LATENTCANVAS_GENERATOR
environment variables). Without those assets every call raises a
backend-unavailable error that says how to install them; the rest of the
package, including the full test suite, runs on the synthetic backend alone.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from ..attributes import AttributeRegistry
from ..errors import BackendUnavailableError, GenerationError
from ..imaging import resize_image
from ..latent import LatentCode
from .base import GeneratorBackend

ENCODER_ENV = "LATENTCANVAS_ENCODER"
GENERATOR_ENV = "LATENTCANVAS_GENERATOR"

_REMEDIATION = (
    "export your pretrained inversion encoder and generator to TorchScript and point "
    f"{ENCODER_ENV} / {GENERATOR_ENV} (or the config file's encoder_path / generator_path) at them"
)


class PretrainedBackend(GeneratorBackend):
    """18x512 extended-latent backend around TorchScript modules."""

    name = "real"
    deterministic = True
    reentrant = False
    synchronous = False

    def __init__(
        self,
        encoder_path: str | Path | None = None,
        generator_path: str | Path | None = None,
        encoder_input_size: int = 256,
        image_size: tuple[int, int] = (1024, 1024),
    ):
        self._encoder_path = encoder_path or os.environ.get(ENCODER_ENV)
        self._generator_path = generator_path or os.environ.get(GENERATOR_ENV)
        self._encoder_input = int(encoder_input_size)
        self._image_size = (int(image_size[0]), int(image_size[1]))
        self._encoder = None
        self._generator = None

    @property
    def latent_shape(self) -> tuple[int, int]:
        return (18, 512)

    @property
    def image_size(self) -> tuple[int, int]:
        return self._image_size

    @classmethod
    def is_available(cls, encoder_path=None, generator_path=None) -> bool:
        encoder = encoder_path or os.environ.get(ENCODER_ENV)
        generator = generator_path or os.environ.get(GENERATOR_ENV)
        if not encoder or not generator:
            return False
        if not (Path(encoder).is_file() and Path(generator).is_file()):
            return False
        try:
            import torch  # noqa: F401
        except ImportError:
            return False
        return True

    def _torch(self):
        try:
            import torch
        except ImportError as exc:
            raise BackendUnavailableError(
                f"the real backend needs torch installed; {_REMEDIATION}", field="backend"
            ) from exc
        return torch

    def _load(self):
        if self._encoder is not None:
            return
        for label, path in (("encoder", self._encoder_path), ("generator", self._generator_path)):
            if not path or not Path(path).is_file():
                raise BackendUnavailableError(
                    f"pretrained {label} weights not found at {path!r}; {_REMEDIATION}",
                    field="backend",
                )
        torch = self._torch()
        try:
            self._encoder = torch.jit.load(str(self._encoder_path), map_location="cpu").eval()
            self._generator = torch.jit.load(str(self._generator_path), map_location="cpu").eval()
        except Exception as exc:
            raise BackendUnavailableError(
                f"failed to load TorchScript modules: {exc}; {_REMEDIATION}", field="backend"
            ) from exc

    def encode(self, image: np.ndarray) -> LatentCode:
        self._load()
        torch = self._torch()
        arr = resize_image(image, (self._encoder_input, self._encoder_input))
        tensor = torch.from_numpy((arr * 2.0 - 1.0).transpose(2, 0, 1)[None]).float()
        with torch.no_grad():
            latent = self._encoder(tensor)
        latent = latent.squeeze(0).detach().cpu().numpy().astype(np.float64)
        if latent.shape != self.latent_shape:
            raise GenerationError(
                f"encoder produced latent of shape {latent.shape}, expected {self.latent_shape}"
            )
        return LatentCode(latent)

    def generate(self, latent: LatentCode) -> np.ndarray:
        self._load()
        self.check_latent(latent)
        torch = self._torch()
        tensor = torch.from_numpy(np.asarray(latent.layers)[None]).float()
        try:
            with torch.no_grad():
                image = self._generator(tensor)
        except Exception as exc:
            raise GenerationError(f"generator failed: {exc}") from exc
        arr = image.squeeze(0).detach().cpu().numpy().astype(np.float64)
        arr = (arr.transpose(1, 2, 0) + 1.0) / 2.0
        if arr.shape[:2] != self._image_size:
            arr = resize_image(np.clip(arr, 0.0, 1.0), self._image_size)
        return np.clip(arr, 0.0, 1.0)

    def attribute_registry(self) -> AttributeRegistry:
        return AttributeRegistry.default(18)
