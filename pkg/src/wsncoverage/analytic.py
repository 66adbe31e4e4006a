"""Network coverage fractions for randomly deployed sensors.

Closed forms for Boolean and unit-exponent Elfes sensing plus a quadrature
route that handles every model (the path shadow fading takes). All formulas
neglect the border effect; the Monte Carlo simulator provides the geometric
cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .quadrature import adaptive_simpson
from .sensing import (
    BooleanModel,
    ElfesModel,
    SensingModel,
    detection_probability,
    support_radius,
)

__all__ = [
    "CoverageFraction",
    "NodePopulation",
    "Region",
    "boolean_coverage",
    "detection_integral",
    "elfes_coverage",
    "elfes_single_node_detection",
    "network_coverage",
    "nodes_for_coverage",
    "poisson_coverage",
    "single_node_detection",
]

# Coverage fractions are plain floats in [0, 1].
CoverageFraction = float


@dataclass(frozen=True)
class Region:
    """Circular area of interest; radius in meters."""

    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"region radius must be positive, got {self.radius}")

    @property
    def area(self) -> float:
        """Region area in square meters."""
        return math.pi * self.radius**2


@dataclass(frozen=True)
class NodePopulation:
    """Node population, as either a count or a density in nodes per m^2."""

    count: int | None = None
    density: float | None = None

    def __post_init__(self) -> None:
        if (self.count is None) == (self.density is None):
            raise ValueError("specify exactly one of count or density")
        if self.count is not None:
            if self.count != int(self.count) or self.count < 0:
                raise ValueError(f"count must be a non-negative integer, got {self.count}")
            object.__setattr__(self, "count", int(self.count))
        if self.density is not None and not (
            math.isfinite(self.density) and self.density >= 0
        ):
            raise ValueError(f"density must be finite and >= 0, got {self.density}")

    @classmethod
    def from_count(cls, count: int) -> "NodePopulation":
        return cls(count=count)

    @classmethod
    def from_density(cls, density: float) -> "NodePopulation":
        return cls(density=density)

    def count_for(self, area: float) -> int:
        """Node count; density views convert as round(density * area)."""
        if self.count is not None:
            return self.count
        return int(round(self.density * area))

    def density_for(self, area: float) -> float:
        """Node density; count views convert as count / area."""
        if self.density is not None:
            return self.density
        return self.count / area


def _check_support(region: Region, radius: float) -> None:
    if radius > region.radius:
        raise ValueError(
            f"model support radius {radius} m exceeds the region radius "
            f"{region.radius} m"
        )


def _check_count(n_nodes) -> int:
    if n_nodes != int(n_nodes) or n_nodes < 0:
        raise ValueError(f"node count must be a non-negative integer, got {n_nodes}")
    return int(n_nodes)


def _covered_fraction(p_single: float, n_nodes: int, form: str) -> float:
    """Network coverage from a single-node detection probability.

    exact: 1 - (1 - p)^n, the n-node miss product.
    exponential: 1 - exp(-n*p), its large-n approximation.
    """
    if form not in ("exact", "exponential"):
        raise ValueError(f"unknown coverage form {form!r}")
    if n_nodes == 0 or p_single == 0.0:
        return 0.0
    if form == "exact":
        if p_single >= 1.0:
            return 1.0
        return -math.expm1(n_nodes * math.log1p(-p_single))
    return -math.expm1(-n_nodes * p_single)


def boolean_coverage(
    region: Region, n_nodes: int, sensing_radius: float, form: str = "exact"
) -> CoverageFraction:
    """Coverage fraction of ``n_nodes`` disk sensors dropped uniformly at random.

    The single-disk area fraction is (sensing_radius / region.radius)^2; the
    border effect is neglected. Sensing radii larger than the region are
    rejected because that fraction would exceed one.
    """
    n = _check_count(n_nodes)
    if not (math.isfinite(sensing_radius) and sensing_radius >= 0):
        raise ValueError(f"sensing radius must be >= 0, got {sensing_radius}")
    _check_support(region, sensing_radius)
    p = (sensing_radius / region.radius) ** 2
    return _covered_fraction(p, n, form)


@lru_cache(maxsize=256)
def detection_integral(model: SensingModel, rel_tol: float = 1e-9) -> float:
    """Integral of 2*pi*x*p(x) over the model's support disk, in m^2.

    Evaluated by adaptive Simpson quadrature and cached per model, since
    sweeps reuse the same integral for every node count.
    """
    limit = support_radius(model)
    return adaptive_simpson(
        lambda x: 2.0 * math.pi * x * detection_probability(model, x),
        0.0,
        limit,
        rel_tol=rel_tol,
    )


def elfes_single_node_detection(region: Region, model: ElfesModel) -> float:
    """Single-node detection probability for Elfes sensing, in closed form.

    Valid only for decay_exponent == 1, where the radial integral has an
    elementary antiderivative; other exponents take the quadrature route.
    Agrees with the quadrature of (1/A) * integral of p(x) * 2*pi*x dx.
    """
    if not isinstance(model, ElfesModel):
        raise TypeError(f"expected an Elfes model, got {type(model).__name__}")
    if model.decay_exponent != 1.0:
        raise ValueError("closed form requires decay_exponent == 1; use quadrature")
    _check_support(region, model.max_range)
    lam = model.decay_rate
    inner = model.certain_range
    tail = lam * (model.max_range - inner)
    # (1 + lam*r1) - exp(-tail) * (1 + lam*r_max), expm1 form avoids cancellation
    bracket = -(1.0 + lam * inner) * math.expm1(-tail) - tail * math.exp(-tail)
    return (math.pi * inner**2 + 2.0 * math.pi * bracket / lam**2) / region.area


def elfes_coverage(region: Region, n_nodes: int, model: ElfesModel) -> CoverageFraction:
    """Network coverage for unit-exponent Elfes sensing, ``n_nodes`` at random.

    With no certain-detection zone this is the closed form
    1 - exp[(2*pi*n / (A*lam^2)) * ((lam*R + 1)*exp(-lam*R) - 1)] with
    R = max_range; with a certain zone it composes the single-node closed form
    with the exponential coverage law. Both routes agree where they overlap.
    """
    n = _check_count(n_nodes)
    if not isinstance(model, ElfesModel):
        raise TypeError(f"expected an Elfes model, got {type(model).__name__}")
    if model.decay_exponent != 1.0:
        raise ValueError("closed form requires decay_exponent == 1; use quadrature")
    _check_support(region, model.max_range)
    if n == 0:
        return 0.0
    if model.certain_range == 0.0:
        lam = model.decay_rate
        a = lam * model.max_range
        bracket = -math.expm1(-a) - a * math.exp(-a)
        exponent = 2.0 * math.pi * n * bracket / (region.area * lam**2)
        return -math.expm1(-exponent)
    return _covered_fraction(elfes_single_node_detection(region, model), n, "exponential")


def single_node_detection(region: Region, model: SensingModel) -> float:
    """Probability that one uniformly placed node detects a fixed event.

    Uses the closed forms for Boolean and unit-exponent Elfes models and
    quadrature for everything else.
    """
    if isinstance(model, BooleanModel):
        _check_support(region, model.radius)
        return (model.radius / region.radius) ** 2
    if isinstance(model, ElfesModel) and model.decay_exponent == 1.0:
        return elfes_single_node_detection(region, model)
    _check_support(region, support_radius(model))
    return detection_integral(model) / region.area


def poisson_coverage(
    region: Region, density: float, model: SensingModel
) -> CoverageFraction:
    """Coverage under Poisson-deployed nodes of the given density (nodes/m^2).

    Returns 1 - exp(-density * integral of 2*pi*x*p(x) dx) over the model's
    support. The integral comes from the closed forms where they exist
    (Boolean, Elfes with unit exponent) and from adaptive quadrature
    otherwise, which is the route shadow fading takes.
    """
    if not (math.isfinite(density) and density >= 0):
        raise ValueError(f"density must be finite and >= 0, got {density}")
    exponent = density * region.area * single_node_detection(region, model)
    return -math.expm1(-exponent)


def network_coverage(
    region: Region, model: SensingModel, n_nodes: int, form: str | None = None
) -> CoverageFraction:
    """Coverage fraction for ``n_nodes`` of any sensing model, dropped uniformly.

    ``form`` defaults to "exact" for Boolean sensing (the miss-product
    expression) and "exponential" for the probabilistic models, matching the
    closed forms used throughout.
    """
    n = _check_count(n_nodes)
    if form is None:
        form = "exact" if isinstance(model, BooleanModel) else "exponential"
    return _covered_fraction(single_node_detection(region, model), n, form)


def nodes_for_coverage(
    region: Region,
    model: SensingModel,
    target_fraction: float,
    form: str | None = None,
) -> int:
    """Least node count whose analytic coverage reaches ``target_fraction``.

    The coverage exponent is linear in the node count, so the inverse is
    computed in closed form and then corrected by direct evaluation; the
    returned N satisfies f(N) >= target > f(N - 1).
    """
    if not 0.0 < target_fraction < 1.0:
        raise ValueError(
            f"target coverage must lie strictly between 0 and 1, got {target_fraction}"
        )
    p = single_node_detection(region, model)
    if p <= 0.0:
        raise ValueError("model has zero single-node detection probability")
    if form is None:
        form = "exact" if isinstance(model, BooleanModel) else "exponential"
    if form == "exact":
        estimate = 1.0 if p >= 1.0 else math.log1p(-target_fraction) / math.log1p(-p)
    elif form == "exponential":
        estimate = -math.log1p(-target_fraction) / p
    else:
        raise ValueError(f"unknown coverage form {form!r}")
    n = max(1, math.ceil(estimate))
    while n > 1 and network_coverage(region, model, n - 1, form) >= target_fraction:
        n -= 1
    while network_coverage(region, model, n, form) < target_fraction:
        n += 1
    return n
