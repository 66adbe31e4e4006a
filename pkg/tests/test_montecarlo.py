import math

import numpy as np
import pytest

from wsncoverage.analytic import NodePopulation, Region, boolean_coverage
from wsncoverage.montecarlo import (
    SimulationPlan,
    analytic_reference,
    border_effect_gap,
    boundary_distance,
    estimate_coverage,
)
from wsncoverage.placement import torus_side
from wsncoverage.sensing import BooleanModel, ElfesModel, ShadowFadingModel

REGION = Region(1000.0)
ELFES = ElfesModel(certain_range=0.0, decay_rate=0.01, max_range=50.0)


def small_plan(**overrides):
    base = dict(
        region=REGION,
        model=ELFES,
        population=NodePopulation.from_count(800),
        n_trials=40,
        n_targets=2000,
        seed=7,
    )
    base.update(overrides)
    return SimulationPlan(**base)


class TestPlanValidation:
    def test_rejects_bad_enums(self):
        with pytest.raises(ValueError):
            small_plan(strategy="clustered")
        with pytest.raises(ValueError):
            small_plan(boundary_mode="mirror")
        with pytest.raises(ValueError):
            small_plan(detection_mode="fuzzy")
        with pytest.raises(ValueError):
            small_plan(target_sampling="sobol")

    def test_rejects_non_positive_counts(self):
        with pytest.raises(ValueError):
            small_plan(n_trials=0)
        with pytest.raises(ValueError):
            small_plan(n_targets=0)

    def test_rejects_support_beyond_half_torus_period(self):
        # support 50 vs half-period ~44.3 for a 50 m region
        with pytest.raises(ValueError):
            SimulationPlan(
                region=Region(50.0),
                model=BooleanModel(50.0),
                population=NodePopulation.from_count(10),
            )

    def test_rejects_hex_on_torus(self):
        with pytest.raises(ValueError):
            small_plan(strategy="hex", boundary_mode="torus", population=None)

    def test_requires_population_for_random_strategies(self):
        with pytest.raises(ValueError):
            small_plan(population=None)

    def test_stratified_needs_square_target_count(self):
        with pytest.raises(ValueError):
            small_plan(target_sampling="stratified", n_targets=2000)
        small_plan(target_sampling="stratified", n_targets=2025)


class TestBoundaryDistance:
    def test_torus_minimum_image(self):
        side = torus_side(1000.0)
        assert boundary_distance((0.0, 0.0), (side - 1.0, 0.0), "torus", REGION) == pytest.approx(
            1.0, rel=1e-12
        )

    def test_plain_euclidean(self):
        assert boundary_distance((0.0, 0.0), (3.0, 4.0), "none", REGION) == 5.0
        assert boundary_distance((1.0, 1.0), (4.0, 5.0), "buffer", REGION) == 5.0

    def test_torus_agrees_with_euclidean_for_close_points(self):
        rng = np.random.default_rng(8)
        side = torus_side(1000.0)
        for _ in range(100):
            a = rng.uniform(side * 0.3, side * 0.7, 2)
            b = a + rng.uniform(-50.0, 50.0, 2)
            expected = float(np.hypot(*(a - b)))
            assert boundary_distance(a, b, "torus", REGION) == pytest.approx(expected, rel=1e-12)

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            boundary_distance((0, 0), (1, 1), "wrap", REGION)


class TestEstimateCoverage:
    def test_empty_network_scores_zero_exactly(self):
        plan = small_plan(population=NodePopulation.from_count(0), n_trials=3, n_targets=50)
        estimate = estimate_coverage(plan)
        assert estimate.coverage == 0.0
        assert estimate.std_error == 0.0

    def test_worker_count_invariance(self):
        plan = small_plan()
        a = estimate_coverage(plan, n_workers=1)
        b = estimate_coverage(plan, n_workers=4)
        assert a.coverage == b.coverage
        assert a.std_error == b.std_error
        assert a.ci95 == b.ci95

    def test_matches_analytic_on_torus(self):
        estimate = estimate_coverage(small_plan(n_trials=80, n_targets=4000))
        reference = analytic_reference(small_plan())
        assert abs(estimate.coverage - reference) <= 3.0 * estimate.std_error

    def test_buffer_mode_matches_boundary_free_form(self):
        plan = SimulationPlan(
            region=REGION,
            model=BooleanModel(50.0),
            population=NodePopulation.from_count(949),
            boundary_mode="buffer",
            n_trials=100,
            n_targets=10_000,
            seed=0,
        )
        estimate = estimate_coverage(plan)
        reference = boolean_coverage(REGION, 949, 50.0)
        assert abs(estimate.coverage - reference) <= 3.0 * estimate.std_error

    def test_estimate_metadata(self):
        plan = small_plan(n_trials=2, n_targets=100)
        estimate = estimate_coverage(plan)
        assert estimate.seed == plan.seed
        assert estimate.boundary_mode == plan.boundary_mode
        assert estimate.generator == "philox4x64"
        lo, hi = estimate.ci95
        assert lo <= estimate.coverage <= hi
        assert 0.0 <= estimate.coverage <= 1.0
        assert "coverage" in estimate.summary()

    def test_single_trial_uses_within_trial_spread(self):
        estimate = estimate_coverage(small_plan(n_trials=1, n_targets=4000))
        assert estimate.std_error > 0.0

    def test_detection_modes_agree(self):
        expectation = estimate_coverage(small_plan(n_trials=60, n_targets=4000))
        bernoulli = estimate_coverage(
            small_plan(n_trials=60, n_targets=4000, detection_mode="bernoulli")
        )
        combined = math.hypot(expectation.std_error, bernoulli.std_error)
        assert abs(expectation.coverage - bernoulli.coverage) < 4.0 * combined

    @pytest.mark.parametrize(
        "model,count",
        [
            (BooleanModel(50.0), 500),
            (ShadowFadingModel(radius=50.0, sigma_db=8.0), 1000),
            (ElfesModel(10.0, 0.03, 50.0), 1500),
        ],
        ids=["boolean", "shadow", "elfes"],
    )
    def test_expectation_variance_never_worse_than_bernoulli(self, model, count):
        kwargs = dict(model=model, population=NodePopulation.from_count(count),
                      n_trials=50, n_targets=2500, seed=11)
        se_expectation = estimate_coverage(small_plan(**kwargs)).std_error
        se_bernoulli = estimate_coverage(
            small_plan(detection_mode="bernoulli", **kwargs)
        ).std_error
        assert se_expectation <= se_bernoulli + 1e-15

    def test_stratified_sampling_is_unbiased(self):
        plan = small_plan(target_sampling="stratified", n_targets=2500, seed=3)
        estimate = estimate_coverage(plan)
        assert abs(estimate.coverage - analytic_reference(plan)) <= 3.0 * estimate.std_error

    def test_poisson_deployment_matches_poisson_form(self):
        plan = SimulationPlan(
            region=REGION,
            model=ElfesModel(0.0, 0.03, 50.0),
            population=NodePopulation.from_density(1000.0 / REGION.area),
            strategy="poisson",
            n_trials=80,
            n_targets=4000,
            seed=0,
        )
        estimate = estimate_coverage(plan)
        assert abs(estimate.coverage - analytic_reference(plan)) <= 3.0 * estimate.std_error

    def test_hex_strategy_tracks_regular_law(self):
        from wsncoverage.placement import regular_coverage_fraction

        plan = SimulationPlan(
            region=REGION,
            model=BooleanModel(40.0),
            strategy="hex",
            boundary_mode="buffer",
            hex_cell_radius=50.0,
            n_trials=20,
            n_targets=10_000,
            seed=0,
        )
        estimate = estimate_coverage(plan)
        law = regular_coverage_fraction(40.0, 50.0)
        # the hex law is asymptotic; allow a small geometry margin on top of noise
        assert abs(estimate.coverage - law) < 0.01


class TestBorderEffect:
    def test_gap_requires_none_mode(self):
        with pytest.raises(ValueError):
            border_effect_gap(small_plan(boundary_mode="torus"))

    def test_empty_network_gap_is_zero(self):
        plan = SimulationPlan(
            region=REGION,
            model=BooleanModel(50.0),
            population=NodePopulation.from_count(0),
            boundary_mode="none",
            n_trials=3,
            n_targets=100,
        )
        assert border_effect_gap(plan) == 0.0

    def test_disk_confinement_loses_coverage(self):
        plan = SimulationPlan(
            region=REGION,
            model=BooleanModel(50.0),
            population=NodePopulation.from_count(949),
            boundary_mode="none",
            n_trials=100,
            n_targets=10_000,
            seed=0,
        )
        estimate = estimate_coverage(plan)
        gap = analytic_reference(plan) - estimate.coverage
        # positive with 95% confidence: the border band is real signal here
        assert gap > 1.96 * estimate.std_error

    def test_gap_vanishes_for_huge_region(self):
        # same node density, region 100x larger: border band becomes negligible
        region = Region(100_000.0)
        density = 949.0 / REGION.area
        plan = SimulationPlan(
            region=region,
            model=BooleanModel(50.0),
            population=NodePopulation.from_density(density),
            boundary_mode="none",
            n_trials=1,
            n_targets=400_000,
            seed=0,
        )
        estimate = estimate_coverage(plan)
        gap = analytic_reference(plan) - estimate.coverage
        assert abs(gap) < 0.002
