"""Distance ramp and blending algebra."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latentcanvas.errors import ConfigurationError, NumericError, ShapeError, ValidationError
from latentcanvas.latent import (
    DistanceModel,
    LatentCode,
    LayerMask,
    blend_layers,
    compose_weighted,
    distance_to_weight,
)


def latent(values) -> LatentCode:
    return LatentCode(np.asarray(values, dtype=np.float64))


class TestDistanceToWeight:
    def test_contact_gives_full_influence(self):
        model = DistanceModel(d_min=10.0, d_max=200.0)
        assert distance_to_weight(10.0, model) == 1.0

    def test_beyond_range_gives_none(self):
        model = DistanceModel(d_min=10.0, d_max=200.0)
        assert distance_to_weight(200.0, model) == 0.0
        assert distance_to_weight(500.0, model) == 0.0

    def test_quarter_distance(self):
        # (100 - 25) / (100 - 0) evaluated by hand.
        model = DistanceModel(d_min=0.0, d_max=100.0)
        assert distance_to_weight(25.0, model) == 0.75

    def test_closer_than_d_min_clamps_to_one(self):
        model = DistanceModel(d_min=50.0, d_max=100.0)
        assert distance_to_weight(0.0, model) == 1.0

    def test_invalid_model_rejected(self):
        with pytest.raises(ConfigurationError):
            DistanceModel(d_min=5.0, d_max=5.0)
        with pytest.raises(ConfigurationError):
            DistanceModel(d_min=9.0, d_max=3.0)
        with pytest.raises(ConfigurationError):
            DistanceModel(d_min=-1.0, d_max=3.0)
        with pytest.raises(ConfigurationError):
            DistanceModel(d_min=0.0, d_max=float("inf"))

    def test_bad_distance_rejected(self):
        model = DistanceModel(d_min=0.0, d_max=100.0)
        with pytest.raises(ValidationError):
            distance_to_weight(-1.0, model)
        with pytest.raises(ValidationError):
            distance_to_weight(float("nan"), model)

    @given(
        d1=st.floats(min_value=0, max_value=1e6),
        d2=st.floats(min_value=0, max_value=1e6),
        d_min=st.floats(min_value=0, max_value=1e3),
        span=st.floats(min_value=1e-3, max_value=1e6),
    )
    @settings(max_examples=200)
    def test_monotone_and_bounded(self, d1, d2, d_min, span):
        model = DistanceModel(d_min=d_min, d_max=d_min + span)
        lo, hi = sorted((d1, d2))
        w_lo, w_hi = distance_to_weight(lo, model), distance_to_weight(hi, model)
        assert 0.0 <= w_hi <= w_lo <= 1.0


class TestBlendLayers:
    def test_zero_weight_is_identity(self, rng):
        t = latent(rng.standard_normal((6, 5)))
        r = latent(rng.standard_normal((6, 5)))
        out = blend_layers(t, r, LayerMask.all_layers(6), 0.0)
        assert np.array_equal(out.layers, t.layers)

    def test_full_weight_copies_reference(self, rng):
        t = latent(rng.standard_normal((6, 5)))
        r = latent(rng.standard_normal((6, 5)))
        out = blend_layers(t, r, LayerMask.all_layers(6), 1.0)
        assert np.array_equal(out.layers, r.layers)

    def test_midpoint_on_masked_layer(self):
        t = latent(np.full((3, 4), 2.0))
        r = latent(np.full((3, 4), 4.0))
        out = blend_layers(t, r, LayerMask.from_indices(3, [1]), 0.5)
        assert np.array_equal(out.layers[1], np.full(4, 3.0))
        assert np.array_equal(out.layers[0], t.layers[0])
        assert np.array_equal(out.layers[2], t.layers[2])

    def test_excluded_layers_untouched(self, rng):
        t = latent(rng.standard_normal((8, 3)))
        r = latent(rng.standard_normal((8, 3)))
        mask = LayerMask.from_indices(8, [0, 3, 7])
        out = blend_layers(t, r, mask, 0.7)
        for layer in range(8):
            if layer in (0, 3, 7):
                assert not np.array_equal(out.layers[layer], t.layers[layer])
            else:
                assert np.array_equal(out.layers[layer], t.layers[layer])

    @given(
        w1=st.floats(min_value=0, max_value=1),
        w2=st.floats(min_value=0, max_value=1),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    @settings(max_examples=100)
    def test_affine_in_weight(self, w1, w2, seed):
        gen = np.random.default_rng(seed)
        t = latent(gen.standard_normal((4, 6)))
        r = latent(gen.standard_normal((4, 6)))
        mask = LayerMask.all_layers(4)
        lhs = blend_layers(t, r, mask, w1).layers + blend_layers(t, r, mask, w2).layers
        rhs = 2.0 * blend_layers(t, r, mask, (w1 + w2) / 2.0).layers
        np.testing.assert_allclose(lhs, rhs, rtol=1e-6, atol=1e-9)

    def test_shape_mismatch_rejected(self, rng):
        t = latent(rng.standard_normal((4, 6)))
        r = latent(rng.standard_normal((5, 6)))
        with pytest.raises(ShapeError):
            blend_layers(t, r, LayerMask.all_layers(4), 0.5)
        r2 = latent(rng.standard_normal((4, 6)))
        with pytest.raises(ShapeError):
            blend_layers(t, r2, LayerMask.all_layers(3), 0.5)

    def test_non_finite_latent_rejected(self):
        with pytest.raises(NumericError):
            latent([[1.0, float("nan")]])
        with pytest.raises(NumericError):
            latent([[float("inf"), 0.0]])

    def test_weight_out_of_range_rejected(self, rng):
        t = latent(rng.standard_normal((2, 2)))
        with pytest.raises(ValidationError):
            blend_layers(t, t, LayerMask.all_layers(2), 1.5)
        with pytest.raises(ValidationError):
            blend_layers(t, t, LayerMask.all_layers(2), -0.1)


class TestComposeWeighted:
    def test_empty_contributions_return_target(self, rng):
        t = latent(rng.standard_normal((4, 4)))
        out = compose_weighted(t, [])
        assert np.array_equal(out.layers, t.layers)

    def test_single_contribution_reduces_to_blend(self, rng):
        t = latent(rng.standard_normal((5, 3)))
        r = latent(rng.standard_normal((5, 3)))
        mask = LayerMask.from_indices(5, [1, 2])
        for w in (0.0, 0.3, 0.75, 1.0):
            composed = compose_weighted(t, [(r, mask, w)])
            blended = blend_layers(t, r, mask, w)
            assert np.array_equal(composed.layers, blended.layers)

    def test_two_half_weight_copies_equal_one_full(self):
        # Grid-friendly values so t + (r - t) is exact: sum of weights is 1,
        # so the displacement is exactly (r - t).
        t = latent(np.full((2, 3), 0.25))
        r = latent(np.full((2, 3), 0.875))
        mask = LayerMask.all_layers(2)
        two = compose_weighted(t, [(r, mask, 0.5), (r, mask, 0.5)])
        one = compose_weighted(t, [(r, mask, 1.0)])
        assert np.array_equal(two.layers, one.layers)

    def test_oversaturated_weights_take_weighted_mean(self):
        # Two full-weight pulls: displacement (2 + 4) / max(1, 2) = 3 by hand.
        t = latent(np.zeros((1, 2)))
        r1 = latent(np.full((1, 2), 2.0))
        r2 = latent(np.full((1, 2), 4.0))
        mask = LayerMask.all_layers(1)
        out = compose_weighted(t, [(r1, mask, 1.0), (r2, mask, 1.0)])
        assert np.array_equal(out.layers, np.full((1, 2), 3.0))

    def test_disjoint_masks_are_order_independent(self, rng):
        t = latent(rng.standard_normal((6, 4)))
        refs = [latent(rng.standard_normal((6, 4))) for _ in range(3)]
        masks = [
            LayerMask.from_indices(6, [0, 1]),
            LayerMask.from_indices(6, [2]),
            LayerMask.from_indices(6, [4, 5]),
        ]
        weights = [0.3, 0.9, 0.6]
        contributions = list(zip(refs, masks, weights))
        forward = compose_weighted(t, contributions)
        backward = compose_weighted(t, contributions[::-1])
        assert np.array_equal(forward.layers, backward.layers)

    def test_zero_weight_contributions_ignored(self, rng):
        t = latent(rng.standard_normal((3, 3)))
        r = latent(rng.standard_normal((3, 3)))
        out = compose_weighted(t, [(r, LayerMask.all_layers(3), 0.0)])
        assert np.array_equal(out.layers, t.layers)

    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=100)
    def test_never_leaves_bounding_box(self, seed):
        gen = np.random.default_rng(seed)
        t = latent(gen.standard_normal((4, 3)))
        n = int(gen.integers(1, 5))
        contributions = []
        for _ in range(n):
            ref = latent(gen.standard_normal((4, 3)))
            mask = LayerMask(gen.integers(0, 2, size=4).astype(bool)) if gen.random() < 0.8 else LayerMask.all_layers(4)
            contributions.append((ref, mask, float(gen.random())))
        out = compose_weighted(t, contributions)
        for layer in range(4):
            stack = [t.layers[layer]] + [
                ref.layers[layer] for ref, mask, w in contributions if mask.included[layer] and w > 0
            ]
            lo = np.min(stack, axis=0)
            hi = np.max(stack, axis=0)
            pad = 1e-9 * np.maximum(1.0, np.abs(hi - lo))
            assert np.all(out.layers[layer] >= lo - pad)
            assert np.all(out.layers[layer] <= hi + pad)

    def test_shape_mismatch_rejected(self, rng):
        t = latent(rng.standard_normal((4, 3)))
        r = latent(rng.standard_normal((4, 2)))
        with pytest.raises(ShapeError):
            compose_weighted(t, [(r, LayerMask.all_layers(4), 0.5)])
