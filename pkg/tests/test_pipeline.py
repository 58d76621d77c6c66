"""Shared render pipeline: session path vs scene path."""

from __future__ import annotations

import json

import numpy as np
import pytest

from latentcanvas.backends import FixedTemplateMaskProvider
from latentcanvas.errors import ValidationError
from latentcanvas.imaging import encode_png
from latentcanvas.pipeline import RenderPipeline
from latentcanvas.scene import SceneSpec
from latentcanvas.session import SessionDocument
from latentcanvas.store import ImageStore


@pytest.fixture()
def pipeline(backend, mask_provider):
    return RenderPipeline(backend, mask_provider)


@pytest.fixture()
def face_files(tmp_path, backend, rng):
    paths = {}
    for name in ("target", "ref_a", "ref_b"):
        image = backend.generate(backend.random_latent(rng))
        path = tmp_path / f"{name}.png"
        path.write_bytes(encode_png(image))
        paths[name] = path
    return paths


class TestScenePath:
    def test_render_matches_session_walkthrough(self, tmp_path, backend, mask_provider, face_files):
        scene = SceneSpec.from_dict(
            {
                "target": str(face_files["target"]),
                "canvas": {"width": 1000, "height": 700},
                "references": [
                    {
                        "path": str(face_files["ref_a"]),
                        "attributes": ["mouth", "age"],
                        "position": {"x": 620, "y": 350},
                    },
                    {
                        "path": str(face_files["ref_b"]),
                        "attributes": ["makeup"],
                        "position": {"x": 100, "y": 100},
                    },
                ],
            }
        )
        scene_image, report = RenderPipeline(backend, mask_provider).render_scene(scene)

        store = ImageStore(tmp_path / "store")
        refs = {name: store.put(path.read_bytes()) for name, path in face_files.items()}
        doc = SessionDocument.create("cmp", width=1000, height=700)
        registry = backend.attribute_registry()
        doc.set_target(refs["target"])
        doc.place_reference(refs["ref_a"], (620.0, 350.0))
        doc.select_attributes(refs["ref_a"], ["mouth", "age"], registry)
        doc.place_reference(refs["ref_b"], (100.0, 100.0))
        doc.select_attributes(refs["ref_b"], ["makeup"], registry)
        session_image = RenderPipeline(backend, mask_provider).render_session(doc, store)

        assert np.array_equal(scene_image, session_image)
        assert encode_png(scene_image) == encode_png(session_image)
        assert [row["attribute"] for row in report] == ["mouth", "age", "makeup"]

    def test_weight_mode_bypasses_geometry(self, backend, mask_provider, face_files):
        base = {
            "target": str(face_files["target"]),
            "references": [
                {"path": str(face_files["ref_a"]), "attributes": ["age"], "weight": 0.5}
            ],
        }
        pipeline = RenderPipeline(backend, mask_provider)
        request, report = pipeline.request_for_scene(SceneSpec.from_dict(base))
        assert [c.weight for c in request.contributions] == [0.5]
        assert report[0]["mode"] == "global"

    def test_zero_weight_and_empty_attribute_references_drop_out(self, backend, mask_provider, face_files):
        scene = SceneSpec.from_dict(
            {
                "target": str(face_files["target"]),
                "canvas": {"width": 1000, "height": 700, "d_min": 0, "d_max": 100},
                "references": [
                    {"path": str(face_files["ref_a"]), "attributes": ["age"], "position": {"x": 0, "y": 0}},
                    {"path": str(face_files["ref_b"]), "attributes": [], "weight": 1.0},
                ],
            }
        )
        request, report = RenderPipeline(backend, mask_provider).request_for_scene(scene)
        assert request.contributions == ()
        assert report == []

    def test_unknown_attribute_rejected_with_context(self, backend, mask_provider, face_files):
        scene = SceneSpec.from_dict(
            {
                "target": str(face_files["target"]),
                "references": [
                    {"path": str(face_files["ref_a"]), "attributes": ["sparkle"], "weight": 1.0}
                ],
            }
        )
        with pytest.raises(ValidationError) as err:
            RenderPipeline(backend, mask_provider).request_for_scene(scene)
        assert "sparkle" in str(err.value)

    def test_latents_cached_per_reference(self, backend, mask_provider, face_files):
        pipeline = RenderPipeline(backend, mask_provider)
        path = str(face_files["ref_a"])
        first = pipeline.latent_for(path, open_image)
        second = pipeline.latent_for(path, open_image)
        assert first is second


def open_image(path):
    from latentcanvas.imaging import decode_image

    return decode_image(open(path, "rb").read())
