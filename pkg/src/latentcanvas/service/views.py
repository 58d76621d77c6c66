"""Server-authoritative JSON views of a session.

Every mutating endpoint returns this view so the UI can replace its state
wholesale: placements come with their derived weights and connection-line
styles, history with ids in ascending order.
"""

from __future__ import annotations

from ..attributes import AttributeRegistry
from ..backends.base import GeneratorBackend
from ..session import SessionDocument, line_style
from ..store import ImageStore


def session_view(
    doc: SessionDocument,
    store: ImageStore,
    backend: GeneratorBackend,
    registry: AttributeRegistry,
) -> dict:
    state = doc.current
    placements = []
    for placement in state.placements:
        weight = state.weight(placement)
        placements.append(
            {
                "image": placement.image,
                "position": {"x": placement.position[0], "y": placement.position[1]},
                "selected_attributes": list(placement.selected_attributes),
                "distance": state.distance(placement),
                "weight": weight,
                "weights": {name: weight for name in placement.selected_attributes},
                "line": line_style(weight),
            }
        )
    return {
        "session_id": doc.session_id,
        "canvas": {"width": state.canvas_size[0], "height": state.canvas_size[1]},
        "distance_model": {
            "d_min": state.distance_model.d_min,
            "d_max": state.distance_model.d_max,
        },
        "target": state.target,
        "placements": placements,
        "undo_depth": len(doc.undo_stack),
        "redo_depth": len(doc.redo_stack),
        "history": [history_entry_view(doc, i) for i in range(len(doc.history))],
        "images": store.uploads(),
        "backend": backend.describe(),
        "attributes": registry.describe(),
    }


def history_entry_view(doc: SessionDocument, index: int) -> dict:
    entry = doc.history[index]
    return {
        "id": entry.id,
        "result_image": entry.result_image,
        "created_at": entry.created_at,
        "fingerprint": entry.fingerprint,
    }


def job_view(record: dict) -> dict:
    return {
        "job_id": record["job_id"],
        "status": record["status"],
        "entry_id": record["entry_id"],
        "error": record["error"],
        "created_at": record["created_at"],
    }
