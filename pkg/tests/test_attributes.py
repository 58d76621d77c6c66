"""Attribute registry contents and validation."""

from __future__ import annotations

import numpy as np
import pytest

from latentcanvas.attributes import (
    AttributeRegistry,
    AttributeSpec,
    RegionMask,
    TransferMode,
)
from latentcanvas.errors import ConfigurationError, ValidationError
from latentcanvas.latent import LayerMask


class TestDefaultRegistry:
    def test_exactly_eight_attributes(self):
        reg = AttributeRegistry.default()
        assert reg.names == ("eyes", "nose", "mouth", "hair", "age", "faceshape", "headpose", "makeup")
        assert reg.local_names == ("eyes", "nose", "mouth", "hair")
        assert reg.global_names == ("age", "faceshape", "headpose", "makeup")

    def test_modes_and_payloads(self):
        reg = AttributeRegistry.default()
        for name in reg.local_names:
            spec = reg.spec(name)
            assert spec.mode is TransferMode.LOCAL
            assert spec.region == name
            assert spec.layer_group is None
        for name in reg.global_names:
            spec = reg.spec(name)
            assert spec.mode is TransferMode.GLOBAL
            assert spec.region is None
            assert spec.layer_group.any()

    def test_layer_groups_for_18_layers(self):
        reg = AttributeRegistry.default(18)
        assert reg.spec("headpose").layer_group.indices() == list(range(0, 4))
        assert reg.spec("faceshape").layer_group.indices() == list(range(0, 6))
        assert reg.spec("age").layer_group.indices() == list(range(4, 10))
        assert reg.spec("makeup").layer_group.indices() == list(range(10, 18))
        for region in reg.local_names:
            assert reg.local_preblend(region).indices() == list(range(4, 14))

    def test_rescaled_registry_stays_in_range(self):
        reg = AttributeRegistry.default(9)
        for name in reg.global_names:
            indices = reg.spec(name).layer_group.indices()
            assert indices
            assert min(indices) >= 0 and max(indices) < 9

    def test_canonical_order_is_locals_then_globals(self):
        reg = AttributeRegistry.default()
        order = sorted(reg.names, key=reg.canonical_index)
        assert order == list(reg.names)

    def test_validate_names_lists_offenders(self):
        reg = AttributeRegistry.default()
        with pytest.raises(ValidationError) as err:
            reg.validate_names(["eyes", "wings", "antenna"])
        assert "antenna" in str(err.value)
        assert "wings" in str(err.value)
        assert err.value.field == "attributes"

    def test_unknown_attribute_lookup(self):
        reg = AttributeRegistry.default()
        with pytest.raises(ValidationError):
            reg.spec("smile")

    def test_describe_groups_names(self):
        desc = AttributeRegistry.default().describe()
        assert desc["local"] == ["eyes", "nose", "mouth", "hair"]
        assert desc["global"] == ["age", "faceshape", "headpose", "makeup"]
        assert desc["layer_groups"]["makeup"] == list(range(10, 18))


class TestAttributeSpec:
    def test_global_requires_layer_group(self):
        with pytest.raises(ConfigurationError):
            AttributeSpec(name="age", mode=TransferMode.GLOBAL)

    def test_global_rejects_empty_group(self):
        with pytest.raises(ConfigurationError):
            AttributeSpec(name="age", mode=TransferMode.GLOBAL, layer_group=LayerMask(np.zeros(4, dtype=bool)))

    def test_local_requires_region(self):
        with pytest.raises(ConfigurationError):
            AttributeSpec(name="eyes", mode=TransferMode.LOCAL)

    def test_local_rejects_layer_group(self):
        with pytest.raises(ConfigurationError):
            AttributeSpec(
                name="eyes",
                mode=TransferMode.LOCAL,
                region="eyes",
                layer_group=LayerMask.all_layers(4),
            )

    def test_unknown_region_rejected(self):
        with pytest.raises(ConfigurationError):
            AttributeSpec(name="ears", mode=TransferMode.LOCAL, region="ears")


class TestRegionMask:
    def test_values_out_of_range_rejected(self):
        with pytest.raises(ConfigurationError):
            RegionMask(alpha=np.full((4, 4), 1.5), region="eyes")
        with pytest.raises(ConfigurationError):
            RegionMask(alpha=np.full((4, 4), -0.1), region="eyes")

    def test_support(self):
        alpha = np.zeros((4, 4))
        alpha[1:3, 1:3] = 0.5
        mask = RegionMask(alpha=alpha, region="mouth")
        assert mask.support().sum() == 4
        assert mask.shape == (4, 4)
