"""Workspace state machine: target slot, placements, undo/redo, history.

A session's canvas states are treated as immutable once current: every edit
copies the state, mutates the copy and pushes the old object onto the undo
stack, so stack entries can never be corrupted by later edits. History
entries additionally deep-snapshot the state and carry a fingerprint taken
at commit time, making silent mutation detectable.

Derived weights are never stored; they are recomputed from geometry at read
time, so serializing and reloading a session reproduces them exactly.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Callable, Iterable

import numpy as np

from .attributes import AttributeRegistry
from .errors import (
    DuplicateReferenceError,
    NotFoundError,
    OrderingError,
    ValidationError,
)
from .latent import DistanceModel, LatentCode, Weight, distance_to_weight
from .transfer import Contribution, TransferRequest

# Display size of an image card in canvas units; two touching cards sit at
# exactly the default d_min, giving weight 1 on contact.
CARD_SIZE = 96.0

DEFAULT_CANVAS = (1200.0, 800.0)

LINE_GRAY = (128, 128, 128)
LINE_ACCENT = (59, 130, 246)


def default_distance_model(width: float, height: float) -> DistanceModel:
    return DistanceModel(d_min=CARD_SIZE, d_max=math.hypot(width, height) / 2.0)


def line_style(w: Weight) -> dict:
    """Connection-line feedback: thickness 1..6, color gray -> accent."""
    rgb = tuple(round(g + w * (a - g)) for g, a in zip(LINE_GRAY, LINE_ACCENT))
    return {"thickness": 1.0 + 5.0 * w, "color": "#{:02x}{:02x}{:02x}".format(*rgb)}


@dataclass(eq=True)
class ReferencePlacement:
    image: str
    position: tuple[float, float]
    selected_attributes: tuple[str, ...] = ()

    def copy(self) -> "ReferencePlacement":
        return replace(self)


@dataclass(eq=True)
class CanvasState:
    canvas_size: tuple[float, float]
    target: str | None
    placements: list[ReferencePlacement]
    distance_model: DistanceModel

    @property
    def target_position(self) -> tuple[float, float]:
        return (self.canvas_size[0] / 2.0, self.canvas_size[1] / 2.0)

    def copy(self) -> "CanvasState":
        return CanvasState(
            canvas_size=self.canvas_size,
            target=self.target,
            placements=[p.copy() for p in self.placements],
            distance_model=self.distance_model,
        )

    def clamp(self, position: tuple[float, float]) -> tuple[float, float]:
        x, y = float(position[0]), float(position[1])
        if not (np.isfinite(x) and np.isfinite(y)):
            raise ValidationError("position must be finite", field="position")
        return (
            min(max(x, 0.0), self.canvas_size[0]),
            min(max(y, 0.0), self.canvas_size[1]),
        )

    def find(self, image: str) -> ReferencePlacement:
        for placement in self.placements:
            if placement.image == image:
                return placement
        raise NotFoundError(f"no placement for image {image!r}", field="image")

    def has(self, image: str) -> bool:
        return any(p.image == image for p in self.placements)

    def distance(self, placement: ReferencePlacement) -> float:
        tx, ty = self.target_position
        return math.hypot(placement.position[0] - tx, placement.position[1] - ty)

    def weight(self, placement: ReferencePlacement) -> Weight:
        return distance_to_weight(self.distance(placement), self.distance_model)

    def to_dict(self) -> dict:
        return {
            "canvas_size": list(self.canvas_size),
            "target": self.target,
            "placements": [
                {
                    "image": p.image,
                    "position": list(p.position),
                    "selected_attributes": list(p.selected_attributes),
                }
                for p in self.placements
            ],
            "distance_model": {
                "d_min": self.distance_model.d_min,
                "d_max": self.distance_model.d_max,
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CanvasState":
        return cls(
            canvas_size=(float(data["canvas_size"][0]), float(data["canvas_size"][1])),
            target=data["target"],
            placements=[
                ReferencePlacement(
                    image=p["image"],
                    position=(float(p["position"][0]), float(p["position"][1])),
                    selected_attributes=tuple(p["selected_attributes"]),
                )
                for p in data["placements"]
            ],
            distance_model=DistanceModel(
                d_min=data["distance_model"]["d_min"],
                d_max=data["distance_model"]["d_max"],
            ),
        )


@dataclass(frozen=True)
class HistoryEntry:
    id: int
    state: CanvasState
    result_image: str
    created_at: str
    fingerprint: str

    @staticmethod
    def compute_fingerprint(state: CanvasState, result_image: str) -> str:
        payload = json.dumps(
            {"state": state.to_dict(), "result": result_image},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class SessionDocument:
    """One user's workspace plus its undo/redo stacks and generation history."""

    def __init__(
        self,
        session_id: str,
        current: CanvasState,
        undo_stack: list[CanvasState] | None = None,
        redo_stack: list[CanvasState] | None = None,
        history: list[HistoryEntry] | None = None,
        next_history_id: int = 1,
    ):
        self.session_id = session_id
        self.current = current
        self.undo_stack = undo_stack if undo_stack is not None else []
        self.redo_stack = redo_stack if redo_stack is not None else []
        self.history = history if history is not None else []
        self.next_history_id = next_history_id

    @classmethod
    def create(
        cls,
        session_id: str,
        width: float = DEFAULT_CANVAS[0],
        height: float = DEFAULT_CANVAS[1],
        d_min: float | None = None,
        d_max: float | None = None,
    ) -> "SessionDocument":
        defaults = default_distance_model(width, height)
        model = DistanceModel(
            d_min=defaults.d_min if d_min is None else d_min,
            d_max=defaults.d_max if d_max is None else d_max,
        )
        state = CanvasState(
            canvas_size=(float(width), float(height)),
            target=None,
            placements=[],
            distance_model=model,
        )
        return cls(session_id, state)

    # -- edits ------------------------------------------------------------------

    def _begin_edit(self) -> CanvasState:
        """Push the current state and hand back a fresh copy to mutate."""
        self.undo_stack.append(self.current)
        self.redo_stack.clear()
        self.current = self.current.copy()
        return self.current

    def set_target(self, image: str) -> "SessionDocument":
        state = self._begin_edit()
        state.target = image
        return self

    def place_reference(self, image: str, position: tuple[float, float]) -> "SessionDocument":
        if self.current.target is None:
            raise OrderingError("set a target before placing references", field="target")
        if self.current.has(image):
            raise DuplicateReferenceError(f"image {image!r} is already placed", field="image")
        clamped = self.current.clamp(position)
        state = self._begin_edit()
        state.placements.append(ReferencePlacement(image=image, position=clamped))
        return self

    def move_reference(self, image: str, position: tuple[float, float]) -> "SessionDocument":
        self.current.find(image)  # not-found surfaces before the undo point
        clamped = self.current.clamp(position)
        state = self._begin_edit()
        state.find(image).position = clamped
        return self

    def select_attributes(self, image: str, names: Iterable[str], registry: AttributeRegistry) -> "SessionDocument":
        names = list(names)
        registry.validate_names(names)
        self.current.find(image)
        canonical = tuple(sorted(set(names), key=registry.canonical_index))
        state = self._begin_edit()
        state.find(image).selected_attributes = canonical
        return self

    def remove_reference(self, image: str) -> "SessionDocument":
        self.current.find(image)
        state = self._begin_edit()
        state.placements = [p for p in state.placements if p.image != image]
        return self

    def undo(self) -> "SessionDocument":
        if self.undo_stack:
            self.redo_stack.append(self.current)
            self.current = self.undo_stack.pop()
        return self

    def redo(self) -> "SessionDocument":
        if self.redo_stack:
            self.undo_stack.append(self.current)
            self.current = self.redo_stack.pop()
        return self

    def reset(self) -> "SessionDocument":
        """Back to the state just after the current target was set; undoable."""
        state = self._begin_edit()
        state.placements = []
        return self

    # -- generation & history ----------------------------------------------------

    def commit_generation(self, result_image: str, state: CanvasState | None = None) -> HistoryEntry:
        snapshot = (state if state is not None else self.current).copy()
        entry = HistoryEntry(
            id=self.next_history_id,
            state=snapshot,
            result_image=result_image,
            created_at=datetime.now(timezone.utc).isoformat(),
            fingerprint=HistoryEntry.compute_fingerprint(snapshot, result_image),
        )
        self.next_history_id += 1
        self.history.append(entry)
        return entry

    def find_history(self, entry_id: int) -> HistoryEntry:
        for entry in self.history:
            if entry.id == entry_id:
                return entry
        raise NotFoundError(f"no history entry with id {entry_id}", field="entry_id")

    def restore_history(self, entry_id: int) -> "SessionDocument":
        entry = self.find_history(entry_id)
        self.undo_stack.append(self.current)
        self.redo_stack.clear()
        self.current = entry.state.copy()
        return self

    # -- transfer assembly --------------------------------------------------------

    def build_transfer_request(
        self,
        encode_latent: Callable[[str], LatentCode],
        load_image: Callable[[str], np.ndarray],
        registry: AttributeRegistry,
        state: CanvasState | None = None,
    ) -> TransferRequest:
        """One contribution per (placement, selected attribute), weight from geometry.

        Placements with no selection or zero weight contribute nothing.
        Ordering is placement insertion order, then canonical attribute order.
        """
        state = state if state is not None else self.current
        if state.target is None:
            raise OrderingError("set a target before generating", field="target")
        contributions: list[Contribution] = []
        for placement in state.placements:
            if not placement.selected_attributes:
                continue
            w = state.weight(placement)
            if w == 0.0:
                continue
            reference_latent = encode_latent(placement.image)
            for name in sorted(placement.selected_attributes, key=registry.canonical_index):
                contributions.append(
                    Contribution(
                        reference_latent=reference_latent,
                        attribute=registry.spec(name),
                        weight=w,
                        source=placement.image,
                    )
                )
        return TransferRequest(
            target_latent=encode_latent(state.target),
            target_image=load_image(state.target),
            contributions=tuple(contributions),
        )

    # -- serialization --------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "current": self.current.to_dict(),
            "undo_stack": [s.to_dict() for s in self.undo_stack],
            "redo_stack": [s.to_dict() for s in self.redo_stack],
            "history": [
                {
                    "id": e.id,
                    "state": e.state.to_dict(),
                    "result_image": e.result_image,
                    "created_at": e.created_at,
                    "fingerprint": e.fingerprint,
                }
                for e in self.history
            ],
            "next_history_id": self.next_history_id,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SessionDocument":
        return cls(
            session_id=data["session_id"],
            current=CanvasState.from_dict(data["current"]),
            undo_stack=[CanvasState.from_dict(s) for s in data["undo_stack"]],
            redo_stack=[CanvasState.from_dict(s) for s in data["redo_stack"]],
            history=[
                HistoryEntry(
                    id=e["id"],
                    state=CanvasState.from_dict(e["state"]),
                    result_image=e["result_image"],
                    created_at=e["created_at"],
                    fingerprint=e["fingerprint"],
                )
                for e in data["history"]
            ],
            next_history_id=data["next_history_id"],
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "SessionDocument":
        return cls.from_dict(json.loads(text))
