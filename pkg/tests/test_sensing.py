import math

import numpy as np
import pytest

from wsncoverage.sensing import (
    BooleanModel,
    ElfesModel,
    ShadowFadingModel,
    detection_probability,
    q_function,
    support_radius,
)


def gaussian_tail_by_trapezoid(x: float) -> float:
    """Independent Q(x) oracle: trapezoid rule on the density over [x, 12]."""
    grid = np.arange(x, 12.0 + 1e-5, 1e-5)
    density = np.exp(-grid * grid / 2.0) / math.sqrt(2.0 * math.pi)
    return float(np.trapezoid(density, grid))


class TestQFunction:
    def test_symmetry_point(self):
        assert q_function(0.0) == pytest.approx(0.5, abs=1e-15)

    def test_deep_tail(self):
        assert q_function(8.0) < 1e-14

    def test_ten_percent_quantile(self):
        assert q_function(1.2816) == pytest.approx(0.1000, abs=1e-4)

    @pytest.mark.parametrize("x", [-8.0, -4.0, -1.0, -0.3, 0.0, 0.5, 1.2816, 2.0, 3.5, 6.0, 8.0])
    def test_against_integration_oracle(self, x):
        assert abs(q_function(x) - gaussian_tail_by_trapezoid(x)) <= 1e-10

    def test_complement_identity(self):
        rng = np.random.default_rng(5)
        xs = rng.uniform(-8.0, 8.0, 200)
        assert np.all(np.abs(q_function(xs) + q_function(-xs) - 1.0) <= 1e-12)

    def test_monotone_non_increasing(self):
        xs = np.sort(np.random.default_rng(6).uniform(-10.0, 10.0, 500))
        values = q_function(xs)
        assert np.all(np.diff(values) <= 1e-15)

    def test_rejects_non_finite(self):
        for bad in (math.inf, -math.inf, math.nan):
            with pytest.raises(ValueError):
                q_function(bad)

    def test_array_shape(self):
        out = q_function(np.zeros((3, 2)))
        assert out.shape == (3, 2)
        assert np.all(out == 0.5)


class TestModelValidation:
    def test_boolean_requires_positive_radius(self):
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                BooleanModel(bad)

    def test_shadow_defaults_and_bounds(self):
        model = ShadowFadingModel(radius=50.0, sigma_db=2.0)
        assert model.max_range == 50.0
        with pytest.raises(ValueError):
            ShadowFadingModel(radius=50.0, sigma_db=0.0)
        with pytest.raises(ValueError):
            ShadowFadingModel(radius=50.0, sigma_db=2.0, max_range=40.0)
        with pytest.raises(ValueError):
            ShadowFadingModel(radius=50.0, sigma_db=2.0, path_loss_exp=0.0)

    def test_shadow_warns_on_unusual_path_loss(self):
        with pytest.warns(UserWarning):
            ShadowFadingModel(radius=50.0, sigma_db=2.0, path_loss_exp=5.5)
        with pytest.warns(UserWarning):
            ShadowFadingModel(radius=50.0, sigma_db=2.0, path_loss_exp=1.0)

    def test_elfes_bounds(self):
        with pytest.raises(ValueError):
            ElfesModel(certain_range=-1.0, decay_rate=0.01, max_range=50.0)
        with pytest.raises(ValueError):
            ElfesModel(certain_range=0.0, decay_rate=0.0, max_range=50.0)
        with pytest.raises(ValueError):
            ElfesModel(certain_range=0.0, decay_rate=0.01, max_range=50.0, decay_exponent=0.0)
        with pytest.raises(ValueError):
            ElfesModel(certain_range=60.0, decay_rate=0.01, max_range=50.0)
        # equality degenerates to the Boolean disk and is allowed
        ElfesModel(certain_range=50.0, decay_rate=0.01, max_range=50.0)

    def test_support_radius(self):
        assert support_radius(BooleanModel(30.0)) == 30.0
        assert support_radius(ShadowFadingModel(radius=50.0, sigma_db=2.0, max_range=60.0)) == 60.0
        assert support_radius(ElfesModel(0.0, 0.01, 50.0)) == 50.0


class TestDetectionProbability:
    def test_boolean_step(self):
        model = BooleanModel(50.0)
        assert detection_probability(model, 0.0) == 1.0
        assert detection_probability(model, 50.0) == 1.0
        assert detection_probability(model, 50.0001) == 0.0

    def test_elfes_certain_zone_edge(self):
        model = ElfesModel(certain_range=10.0, decay_rate=0.03, max_range=50.0)
        assert detection_probability(model, 10.0) == 1.0

    def test_shadow_half_at_nominal_radius(self):
        model = ShadowFadingModel(radius=50.0, sigma_db=2.0, path_loss_exp=2.0, max_range=50.0)
        assert detection_probability(model, 50.0) == pytest.approx(0.5, abs=1e-15)

    def test_shadow_certain_at_origin(self):
        model = ShadowFadingModel(radius=50.0, sigma_db=8.0)
        assert detection_probability(model, 0.0) == 1.0

    def test_elfes_zero_at_max_range(self):
        model = ElfesModel(certain_range=0.0, decay_rate=0.01, max_range=50.0)
        assert detection_probability(model, 50.0) == 0.0

    def test_elfes_just_inside_max_range(self):
        model = ElfesModel(certain_range=0.0, decay_rate=0.01, max_range=50.0)
        expected = math.exp(-0.49999)
        assert detection_probability(model, 49.999) == pytest.approx(expected, abs=1e-5)
        assert expected == pytest.approx(0.60654, abs=1e-5)

    def test_rejects_bad_distances(self):
        model = BooleanModel(50.0)
        for bad in (-1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                detection_probability(model, bad)
        with pytest.raises(ValueError):
            detection_probability(model, np.array([1.0, -2.0]))

    def test_array_input_matches_scalars(self):
        model = ElfesModel(certain_range=5.0, decay_rate=0.05, max_range=40.0)
        xs = np.linspace(0.0, 60.0, 121)
        batch = detection_probability(model, xs)
        assert batch.shape == xs.shape
        for x, p in zip(xs, batch):
            assert detection_probability(model, float(x)) == p


def _random_models(rng, count):
    models = []
    for _ in range(count):
        kind = rng.integers(3)
        if kind == 0:
            models.append(BooleanModel(float(rng.uniform(1.0, 100.0))))
        elif kind == 1:
            radius = float(rng.uniform(5.0, 80.0))
            models.append(
                ShadowFadingModel(
                    radius=radius,
                    sigma_db=float(rng.uniform(0.5, 12.0)),
                    path_loss_exp=float(rng.uniform(2.0, 4.0)),
                    max_range=radius + float(rng.uniform(0.0, 40.0)),
                )
            )
        else:
            inner = float(rng.uniform(0.0, 30.0))
            models.append(
                ElfesModel(
                    certain_range=inner,
                    decay_rate=float(rng.uniform(1e-3, 0.3)),
                    max_range=inner + float(rng.uniform(0.5, 60.0)),
                    decay_exponent=float(rng.uniform(0.5, 2.5)),
                )
            )
    return models


class TestModelProperties:
    def test_monotone_non_increasing_in_distance(self):
        rng = np.random.default_rng(123)
        xs = np.linspace(0.0, 150.0, 1501)
        for model in _random_models(rng, 60):
            p = detection_probability(model, xs)
            assert np.all(np.diff(p) <= 1e-12), model

    def test_probability_bounds(self):
        rng = np.random.default_rng(321)
        xs = np.linspace(0.0, 200.0, 400)
        for model in _random_models(rng, 60):
            p = detection_probability(model, xs)
            assert np.all(p >= 0.0) and np.all(p <= 1.0), model

    def test_elfes_degenerates_to_boolean(self):
        # certain zone out to the cutoff behaves as a plain disk everywhere else
        limit = 35.0
        elfes = ElfesModel(certain_range=limit, decay_rate=0.2, max_range=limit)
        boolean = BooleanModel(limit)
        xs = np.concatenate([np.linspace(0.0, 34.999, 300), np.linspace(35.001, 80.0, 300)])
        assert np.array_equal(
            detection_probability(elfes, xs), detection_probability(boolean, xs)
        )

    def test_shadow_degenerates_to_boolean_as_sigma_vanishes(self):
        shadow = ShadowFadingModel(radius=50.0, sigma_db=1e-9)
        boolean = BooleanModel(50.0)
        xs = np.concatenate(
            [np.linspace(0.0, 50.0 - 0.05, 500), np.linspace(50.0 + 0.05, 120.0, 500)]
        )
        diff = np.abs(detection_probability(shadow, xs) - detection_probability(boolean, xs))
        assert np.max(diff) < 1e-6
