"""Backend construction and selection.

Selection is by explicit configuration key; an unknown or unavailable
backend is an error, never a silent substitution.
"""

from __future__ import annotations

from ..errors import ConfigurationError
from .base import GeneratorBackend, MaskProvider
from .masks import DEFAULT_FEATHER, FixedTemplateMaskProvider, ParserMaskProvider
from .pretrained import PretrainedBackend
from .synthetic import SyntheticBackend

BACKEND_NAMES = ("synthetic", "real")

__all__ = [
    "BACKEND_NAMES",
    "DEFAULT_FEATHER",
    "FixedTemplateMaskProvider",
    "GeneratorBackend",
    "MaskProvider",
    "ParserMaskProvider",
    "PretrainedBackend",
    "SyntheticBackend",
    "create_backend",
]


def create_backend(name: str, **kwargs) -> GeneratorBackend:
    if name == "synthetic":
        return SyntheticBackend(**kwargs)
    if name == "real":
        return PretrainedBackend(**kwargs)
    raise ConfigurationError(
        f"unknown backend {name!r}; expected one of {', '.join(BACKEND_NAMES)}",
        field="backend",
    )


def backend_from_config(config) -> GeneratorBackend:
    """Instantiate the configured backend; unknown names never fall back."""
    if config.backend == "real":
        return PretrainedBackend(
            encoder_path=config.encoder_path,
            generator_path=config.generator_path,
        )
    return create_backend(config.backend)
