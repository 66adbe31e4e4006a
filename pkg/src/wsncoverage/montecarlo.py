"""Seeded Monte Carlo estimation of network coverage.

Each trial deploys nodes, samples target points over the region, and scores
the detected fraction. Trials use independent Philox substreams keyed by
(seed, trial index) and are reduced in trial order, so an estimate is
bit-identical for any worker count.

The default "expectation" detection mode scores each target with its exact
conditional detection probability given the node positions (1 minus the miss
product), which is unbiased and lower-variance than the "bernoulli" mode's
single coin flip per target.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .analytic import NodePopulation, Region, network_coverage, poisson_coverage
from .placement import (
    BOUNDARY_MODES,
    draw_random_positions,
    generate_hex_layout,
    torus_side,
)
from .sensing import SensingModel, detection_probability, support_radius
from .streams import GENERATOR_NAME, philox_stream

__all__ = [
    "CoverageEstimate",
    "SimulationPlan",
    "analytic_reference",
    "border_effect_gap",
    "boundary_distance",
    "estimate_coverage",
]


@dataclass(frozen=True)
class SimulationPlan:
    """Everything needed to reproduce one coverage estimate."""

    region: Region
    model: SensingModel
    population: NodePopulation | None = None
    strategy: str = "uniform"
    boundary_mode: str = "torus"
    n_trials: int = 200
    n_targets: int = 10_000
    target_sampling: str = "uniform"
    detection_mode: str = "expectation"
    seed: int = 0
    hex_cell_radius: float | None = None

    def __post_init__(self) -> None:
        if self.strategy not in ("uniform", "poisson", "hex"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.boundary_mode not in BOUNDARY_MODES:
            raise ValueError(f"unknown boundary mode {self.boundary_mode!r}")
        if self.target_sampling not in ("uniform", "stratified"):
            raise ValueError(f"unknown target sampling {self.target_sampling!r}")
        if self.detection_mode not in ("expectation", "bernoulli"):
            raise ValueError(f"unknown detection mode {self.detection_mode!r}")
        if self.n_trials < 1 or self.n_targets < 1:
            raise ValueError("trial and target counts must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.strategy == "hex":
            if self.boundary_mode == "torus":
                raise ValueError("hex deployments do not wrap; use 'none' or 'buffer'")
        elif self.population is None:
            raise ValueError("population is required for random deployments")
        support = support_radius(self.model)
        if self.boundary_mode == "torus" and support > torus_side(self.region.radius) / 2.0:
            raise ValueError(
                "model support exceeds half the torus period; wrapped distances "
                "would be ambiguous"
            )
        if self.target_sampling == "stratified":
            side = math.isqrt(self.n_targets)
            if side * side != self.n_targets:
                raise ValueError("stratified target sampling needs a square n_targets")


@dataclass(frozen=True)
class CoverageEstimate:
    """Monte Carlo coverage estimate with between-trial uncertainty."""

    coverage: float
    std_error: float
    ci95: tuple[float, float]
    n_trials: int
    n_targets: int
    seed: int
    boundary_mode: str
    generator: str = GENERATOR_NAME

    def summary(self) -> str:
        lo, hi = self.ci95
        return "\n".join(
            [
                f"coverage          {self.coverage:.6f}",
                f"std error         {self.std_error:.3e}",
                f"95% CI            [{lo:.6f}, {hi:.6f}]",
                f"trials x targets  {self.n_trials} x {self.n_targets}",
                f"boundary mode     {self.boundary_mode}",
                f"seed              {self.seed} ({self.generator})",
            ]
        )


def boundary_distance(a, b, boundary_mode: str, region: Region) -> float:
    """Distance between two points under the given boundary handling.

    torus wraps on the equal-area square (minimum image); buffer and none
    are plain Euclidean distances.
    """
    if boundary_mode not in BOUNDARY_MODES:
        raise ValueError(f"unknown boundary mode {boundary_mode!r}")
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    if boundary_mode == "torus":
        side = torus_side(region.radius)
        dx = abs(ax - bx) % side
        dy = abs(ay - by) % side
        return math.hypot(min(dx, side - dx), min(dy, side - dy))
    return math.hypot(ax - bx, ay - by)


def _draw_nodes(rng: np.random.Generator, plan: SimulationPlan) -> np.ndarray:
    if plan.strategy == "hex":
        cell = plan.hex_cell_radius
        if cell is None:
            cell = support_radius(plan.model)
        radius = plan.region.radius
        if plan.boundary_mode == "buffer":
            radius += support_radius(plan.model)
        return generate_hex_layout(radius, cell).centers
    return draw_random_positions(
        rng,
        plan.region,
        plan.population,
        plan.strategy,
        plan.boundary_mode,
        buffer_width=support_radius(plan.model),
    )


def _stratified_unit_square(rng: np.random.Generator, side: int) -> np.ndarray:
    jitter = rng.random((side * side, 2))
    ix, iy = np.meshgrid(np.arange(side), np.arange(side), indexing="ij")
    cells = np.column_stack((ix.ravel(), iy.ravel())).astype(float)
    return (cells + jitter) / side


def _draw_targets(rng: np.random.Generator, plan: SimulationPlan) -> np.ndarray:
    if plan.target_sampling == "stratified":
        u = _stratified_unit_square(rng, math.isqrt(plan.n_targets))
    else:
        u = rng.random((plan.n_targets, 2))
    if plan.boundary_mode == "torus":
        return u * torus_side(plan.region.radius)
    # strata in (u, v) map to equal-area annular sectors of the disk
    r = plan.region.radius * np.sqrt(u[:, 0])
    theta = 2.0 * math.pi * u[:, 1]
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def _miss_products(plan: SimulationPlan, nodes: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Per-target product of (1 - p(distance)) over all nodes in range."""
    n_targets = len(targets)
    survival = np.ones(n_targets)
    if len(nodes) == 0:
        return survival
    support = support_radius(plan.model)
    if plan.boundary_mode == "torus":
        side = torus_side(plan.region.radius)
        tree = cKDTree(nodes, boxsize=(side, side))
    else:
        side = None
        tree = cKDTree(nodes)
    neighbors = tree.query_ball_point(targets, support)
    counts = np.fromiter((len(lst) for lst in neighbors), dtype=np.intp, count=n_targets)
    total = int(counts.sum())
    if total == 0:
        return survival
    node_idx = np.fromiter(
        (i for lst in neighbors for i in lst), dtype=np.intp, count=total
    )
    target_idx = np.repeat(np.arange(n_targets), counts)
    delta = np.abs(nodes[node_idx] - targets[target_idx])
    if side is not None:
        delta = np.minimum(delta, side - delta)
    distances = np.hypot(delta[:, 0], delta[:, 1])
    p = detection_probability(plan.model, distances)
    np.multiply.at(survival, target_idx, 1.0 - p)
    return survival


def _trial_scores(plan: SimulationPlan, trial: int) -> np.ndarray:
    rng = philox_stream(plan.seed, trial)
    nodes = _draw_nodes(rng, plan)
    targets = _draw_targets(rng, plan)
    detected = 1.0 - _miss_products(plan, nodes, targets)
    if plan.detection_mode == "bernoulli":
        detected = (rng.random(plan.n_targets) < detected).astype(float)
    return detected


def _trial_mean(plan: SimulationPlan, trial: int) -> float:
    return float(_trial_scores(plan, trial).mean())


def estimate_coverage(plan: SimulationPlan, n_workers: int = 1) -> CoverageEstimate:
    """Run the plan and return the coverage estimate with its uncertainty.

    The standard error comes from the between-trial variance (falling back to
    the within-trial spread when there is only one trial) and the confidence
    interval is the usual 1.96-sigma band clipped to [0, 1].
    """
    if plan.n_trials == 1:
        scores = _trial_scores(plan, 0)
        coverage = float(scores.mean())
        if plan.n_targets > 1:
            std_error = float(scores.std(ddof=1) / math.sqrt(plan.n_targets))
        else:
            std_error = 0.0
    else:
        trials = range(plan.n_trials)
        if n_workers > 1:
            with ThreadPoolExecutor(max_workers=n_workers) as pool:
                means = np.fromiter(
                    pool.map(lambda t: _trial_mean(plan, t), trials),
                    dtype=float,
                    count=plan.n_trials,
                )
        else:
            means = np.fromiter(
                (_trial_mean(plan, t) for t in trials), dtype=float, count=plan.n_trials
            )
        coverage = float(means.mean())
        std_error = float(means.std(ddof=1) / math.sqrt(plan.n_trials))
    half = 1.96 * std_error
    ci = (max(0.0, coverage - half), min(1.0, coverage + half))
    return CoverageEstimate(
        coverage=coverage,
        std_error=std_error,
        ci95=ci,
        n_trials=plan.n_trials,
        n_targets=plan.n_targets,
        seed=plan.seed,
        boundary_mode=plan.boundary_mode,
    )


def analytic_reference(plan: SimulationPlan) -> float:
    """Boundary-free analytic coverage matching the plan's model and deployment."""
    region = plan.region
    if plan.strategy == "poisson":
        return poisson_coverage(region, plan.population.density_for(region.area), plan.model)
    if plan.strategy == "uniform":
        return network_coverage(region, plan.model, plan.population.count_for(region.area))
    raise ValueError("no boundary-free analytic reference for hex deployments")


def border_effect_gap(plan: SimulationPlan, n_workers: int = 1) -> float:
    """Analytic coverage minus the none-mode estimate; positive means border loss."""
    if plan.boundary_mode != "none":
        raise ValueError("border_effect_gap requires boundary_mode 'none'")
    estimate = estimate_coverage(plan, n_workers=n_workers)
    return analytic_reference(plan) - estimate.coverage
