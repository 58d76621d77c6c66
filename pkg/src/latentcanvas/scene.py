"""Scene files: the headless mirror of an interactive canvas layout.

A scene names a target image and a list of references; each reference
carries selected attributes and either a canvas position (weight derived
from distance, exactly as the interactive session does) or an explicit
weight. Scenes are JSON documents validated against the published schema in
``latentcanvas/schemas/scene.schema.json``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import InputError, ValidationError
from .latent import DistanceModel
from .session import DEFAULT_CANVAS, CanvasState, ReferencePlacement, default_distance_model


def scene_schema() -> dict:
    text = resources.files("latentcanvas.schemas").joinpath("scene.schema.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class SceneReference:
    path: str
    attributes: tuple[str, ...]
    position: tuple[float, float] | None = None
    weight: float | None = None


@dataclass(frozen=True)
class SceneSpec:
    target: str
    references: tuple[SceneReference, ...]
    canvas_size: tuple[float, float]
    d_min: float | None = None
    d_max: float | None = None
    backend: str | None = None

    def distance_model(self) -> DistanceModel:
        defaults = default_distance_model(*self.canvas_size)
        return DistanceModel(
            d_min=defaults.d_min if self.d_min is None else self.d_min,
            d_max=defaults.d_max if self.d_max is None else self.d_max,
        )

    def layout_state(self) -> CanvasState:
        """Canvas state holding the position-mode references; the weight math
        then runs through the very same code path as an interactive session."""
        state = CanvasState(
            canvas_size=self.canvas_size,
            target=self.target,
            placements=[],
            distance_model=self.distance_model(),
        )
        for ref in self.references:
            if ref.position is not None:
                state.placements.append(
                    ReferencePlacement(
                        image=ref.path,
                        position=state.clamp(ref.position),
                        selected_attributes=ref.attributes,
                    )
                )
        return state

    @classmethod
    def from_dict(cls, data: dict) -> "SceneSpec":
        validator = jsonschema.Draft202012Validator(scene_schema())
        errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
        if errors:
            first = errors[0]
            where = "/".join(str(p) for p in first.absolute_path) or "scene"
            raise ValidationError(f"invalid scene: {first.message}", field=where)
        canvas = data.get("canvas", {})
        references = []
        for entry in data["references"]:
            position = entry.get("position")
            references.append(
                SceneReference(
                    path=entry["path"],
                    attributes=tuple(entry["attributes"]),
                    position=(float(position["x"]), float(position["y"])) if position else None,
                    weight=entry.get("weight"),
                )
            )
        return cls(
            target=data["target"],
            references=tuple(references),
            canvas_size=(
                float(canvas.get("width", DEFAULT_CANVAS[0])),
                float(canvas.get("height", DEFAULT_CANVAS[1])),
            ),
            d_min=canvas.get("d_min"),
            d_max=canvas.get("d_max"),
            backend=data.get("backend"),
        )

    @classmethod
    def load(cls, path: str | Path) -> "SceneSpec":
        path = Path(path)
        if not path.is_file():
            raise InputError(f"scene file not found: {path}", field="spec")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"scene file is not valid JSON: {exc}", field="spec") from exc
        scene = cls.from_dict(data)
        # Resolve image paths relative to the scene file's directory.
        base = path.parent
        return SceneSpec(
            target=str((base / scene.target)) if not Path(scene.target).is_absolute() else scene.target,
            references=tuple(
                SceneReference(
                    path=str(base / r.path) if not Path(r.path).is_absolute() else r.path,
                    attributes=r.attributes,
                    position=r.position,
                    weight=r.weight,
                )
                for r in scene.references
            ),
            canvas_size=scene.canvas_size,
            d_min=scene.d_min,
            d_max=scene.d_max,
            backend=scene.backend,
        )
