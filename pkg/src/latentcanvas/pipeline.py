"""Shared render path for the HTTP service and the CLI.

Both entry points build a transfer request and push it through
``render_result`` here, so a layout expressed as a scene file and the same
layout driven interactively produce bit-identical images under a
deterministic backend.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable

import numpy as np

from .attributes import AttributeRegistry
from .backends.base import GeneratorBackend, MaskProvider
from .errors import InputError, ValidationError
from .imaging import decode_image, resize_image
from .latent import LatentCode, ensure_weight
from .scene import SceneSpec
from .session import SessionDocument
from .store import ImageStore
from .transfer import Contribution, TransferRequest, describe_contributions, render_result


class RenderPipeline:
    """Backend + masks + registry bundle with per-reference latent caching."""

    def __init__(self, backend: GeneratorBackend, masks: MaskProvider, registry: AttributeRegistry | None = None):
        self.backend = backend
        self.masks = masks
        self.registry = registry if registry is not None else backend.attribute_registry()
        self._latents: dict[str, LatentCode] = {}
        self._images: dict[str, np.ndarray] = {}

    # -- resolution ---------------------------------------------------------------

    def prepared_image(self, ref: str, loader: Callable[[str], np.ndarray]) -> np.ndarray:
        if ref not in self._images:
            image = resize_image(loader(ref), self.backend.image_size)
            image.setflags(write=False)
            self._images[ref] = image
        return self._images[ref]

    def latent_for(self, ref: str, loader: Callable[[str], np.ndarray]) -> LatentCode:
        if ref not in self._latents:
            self._latents[ref] = self.backend.encode(self.prepared_image(ref, loader))
        return self._latents[ref]

    # -- session path ---------------------------------------------------------------

    def request_for_session(self, doc: SessionDocument, store: ImageStore, state=None) -> TransferRequest:
        loader = store.load_image
        return doc.build_transfer_request(
            encode_latent=lambda ref: self.latent_for(ref, loader),
            load_image=lambda ref: self.prepared_image(ref, loader),
            registry=self.registry,
            state=state,
        )

    def render_session(self, doc: SessionDocument, store: ImageStore, state=None) -> np.ndarray:
        return self.backend_render(self.request_for_session(doc, store, state=state))

    def backend_render(self, request: TransferRequest) -> np.ndarray:
        return render_result(request, self.backend, self.masks, self.registry)

    # -- scene path -------------------------------------------------------------------

    def request_for_scene(self, scene: SceneSpec) -> tuple[TransferRequest, list[dict]]:
        """Build the transfer request for a scene file.

        Position-mode references run through the same canvas-state weight
        derivation as interactive sessions; weight-mode references bypass
        geometry. Ordering is scene order, then canonical attribute order.
        """
        layout = scene.layout_state()
        self.registry_validate(scene)

        def load_path(path: str) -> np.ndarray:
            p = Path(path)
            if not p.is_file():
                raise InputError(f"image file not found: {path}", field="path")
            return decode_image(p.read_bytes())

        contributions: list[Contribution] = []
        for ref in scene.references:
            if not ref.attributes:
                continue
            if ref.position is not None:
                w = layout.weight(layout.find(ref.path))
            else:
                w = ensure_weight(ref.weight, field="weight")
            if w == 0.0:
                continue
            latent = self.latent_for(ref.path, load_path)
            for name in sorted(ref.attributes, key=self.registry.canonical_index):
                contributions.append(
                    Contribution(
                        reference_latent=latent,
                        attribute=self.registry.spec(name),
                        weight=w,
                        source=ref.path,
                    )
                )
        request = TransferRequest(
            target_latent=self.latent_for(scene.target, load_path),
            target_image=self.prepared_image(scene.target, load_path),
            contributions=tuple(contributions),
        )
        report = describe_contributions(request.contributions, self.registry)
        return request, report

    def render_scene(self, scene: SceneSpec) -> tuple[np.ndarray, list[dict]]:
        request, report = self.request_for_scene(scene)
        return render_result(request, self.backend, self.masks, self.registry), report

    def registry_validate(self, scene: SceneSpec) -> None:
        for ref in scene.references:
            try:
                self.registry.validate_names(ref.attributes)
            except ValidationError as exc:
                raise ValidationError(f"reference {ref.path!r}: {exc.message}", field="attributes") from exc
