from __future__ import annotations

import numpy as np
import pytest

from latentcanvas.backends import FixedTemplateMaskProvider, SyntheticBackend


@pytest.fixture(scope="session")
def backend() -> SyntheticBackend:
    return SyntheticBackend()


@pytest.fixture(scope="session")
def mask_provider() -> FixedTemplateMaskProvider:
    return FixedTemplateMaskProvider()


@pytest.fixture(scope="session")
def registry(backend):
    return backend.attribute_registry()


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240117)
