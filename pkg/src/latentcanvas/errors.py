"""Exception hierarchy shared by every layer of the package.

Each exception carries a stable machine-readable ``code`` so the HTTP layer
and the CLI can map failures to wire errors without string matching. The
optional ``field`` names the offending input when there is one.
"""

from __future__ import annotations


class LatentCanvasError(Exception):
    """Base class; ``code`` is a stable string identifier."""

    code = "internal_error"

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field

    @property
    def message(self) -> str:
        return str(self)


class ConfigurationError(LatentCanvasError):
    code = "config_error"


class ValidationError(LatentCanvasError):
    code = "validation_error"


class ShapeError(LatentCanvasError):
    code = "shape_error"


class NumericError(LatentCanvasError):
    code = "numeric_error"


class ModeError(LatentCanvasError):
    code = "mode_error"


class OrderingError(LatentCanvasError):
    """An operation arrived before its prerequisite (e.g. no target set)."""

    code = "ordering_error"


class DuplicateReferenceError(LatentCanvasError):
    code = "duplicate_reference"


class NotFoundError(LatentCanvasError):
    code = "not_found"


class InputError(LatentCanvasError):
    """Malformed user input such as an undecodable image."""

    code = "input_error"


class MaskError(LatentCanvasError):
    code = "mask_error"


class GenerationError(LatentCanvasError):
    """Backend failed while producing an image; carries the diagnostics."""

    code = "generation_error"


class BackendUnavailableError(LatentCanvasError):
    """A backend's model assets are not installed; message says how to fix."""

    code = "backend_unavailable"
