"""Node placement: hex lattices, random deployments, and the regular-placement law.

Regular placement tiles the region with hexagonal cells of inscribed-circle
radius ``cell_radius`` and puts one node at each cell center. Random
deployments are seeded and reproducible; uniform sampling in a disk uses
inverse-CDF radial sampling, never rejection, so draw counts are fixed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .analytic import NodePopulation, Region
from .fileio import atomic_write_text
from .streams import philox_stream

__all__ = [
    "BOUNDARY_MODES",
    "Deployment",
    "HexLayout",
    "MAX_REGULAR_COVERAGE",
    "draw_random_positions",
    "export_positions_csv",
    "generate_hex_layout",
    "generate_random_deployment",
    "hex_cell_count",
    "hex_deployment",
    "regular_coverage_fraction",
    "torus_side",
    "uniform_disk_points",
    "uniform_square_points",
]

# Area fraction of a disk inscribed in its hexagonal cell: pi / (2*sqrt(3)).
MAX_REGULAR_COVERAGE = math.pi / (2.0 * math.sqrt(3.0))

BOUNDARY_MODES = ("torus", "buffer", "none")


@dataclass(frozen=True)
class HexLayout:
    """Hex lattice of cell centers inside a disk; spacing is 2 * cell_radius."""

    region_radius: float
    cell_radius: float
    centers: np.ndarray

    @property
    def cell_count(self) -> int:
        return len(self.centers)

    @property
    def boundary_cell_count(self) -> int:
        """Cells whose hexagon is not entirely inside the disk."""
        circumradius = 2.0 * self.cell_radius / math.sqrt(3.0)
        interior = self.region_radius - circumradius
        norms = np.hypot(self.centers[:, 0], self.centers[:, 1])
        return int(np.count_nonzero(norms > interior))


@dataclass(frozen=True)
class Deployment:
    """Concrete node positions (meters) plus what is needed to reproduce them."""

    positions: np.ndarray
    strategy: str
    boundary_mode: str
    region_radius: float
    seed: int | None = None
    buffer_width: float = 0.0

    @property
    def count(self) -> int:
        return len(self.positions)


def regular_coverage_fraction(
    sensing_radius: float, cell_radius: float, region_radius: float | None = None
) -> float:
    """Coverage fraction of one node per hex cell with the given sensing radius.

    The quadratic law (pi / (2*sqrt(3))) * (sensing_radius / cell_radius)^2
    holds for sensing radii up to the cell radius (the overlap regime is out
    of scope) and assumes the region is much larger than one cell. Pass
    ``region_radius`` to get a warning when that assumption is shaky.
    """
    if not cell_radius > 0:
        raise ValueError(f"cell_radius must be positive, got {cell_radius}")
    if not 0 <= sensing_radius <= cell_radius:
        raise ValueError(
            f"sensing radius must lie in [0, cell_radius={cell_radius}], "
            f"got {sensing_radius}"
        )
    if region_radius is not None and region_radius < 10.0 * cell_radius:
        warnings.warn(
            "region is not large relative to the hex cell; the regular "
            "coverage law is only approximate",
            stacklevel=2,
        )
    return MAX_REGULAR_COVERAGE * (sensing_radius / cell_radius) ** 2


def hex_cell_count(region_radius: float, cell_radius: float) -> int:
    """Number of hexagonal cells needed to tile a disk of ``region_radius``."""
    if not region_radius >= cell_radius > 0:
        raise ValueError(
            f"need region_radius >= cell_radius > 0, got {region_radius}, {cell_radius}"
        )
    return math.ceil(MAX_REGULAR_COVERAGE * (region_radius / cell_radius) ** 2)


def generate_hex_layout(region_radius: float, cell_radius: float) -> HexLayout:
    """Hex lattice of cell centers covering a disk, deterministically.

    Centers are spaced 2 * cell_radius apart, the lattice is centered on the
    region center, and only centers strictly inside the disk are kept.
    """
    if not region_radius >= cell_radius > 0:
        raise ValueError(
            f"need region_radius >= cell_radius > 0, got {region_radius}, {cell_radius}"
        )
    spacing = 2.0 * cell_radius
    row_height = spacing * math.sqrt(3.0) / 2.0
    limit_sq = region_radius**2
    rows = int(region_radius / row_height) + 1
    centers = []
    for j in range(-rows, rows + 1):
        y = j * row_height
        offset = 0.5 * spacing * (j & 1)
        span = int(region_radius / spacing) + 1
        for i in range(-span, span + 1):
            x = i * spacing + offset
            if x * x + y * y < limit_sq:
                centers.append((x, y))
    return HexLayout(region_radius, cell_radius, np.array(centers, dtype=float))


def torus_side(region_radius: float) -> float:
    """Side of the square torus whose area equals the disk region's."""
    return math.sqrt(math.pi) * region_radius


def uniform_disk_points(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    """n i.i.d. uniform points in a disk centered at the origin."""
    r = radius * np.sqrt(rng.random(n))
    theta = 2.0 * math.pi * rng.random(n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def uniform_square_points(rng: np.random.Generator, n: int, side: float) -> np.ndarray:
    """n i.i.d. uniform points in [0, side)^2."""
    return side * rng.random((n, 2))


def draw_random_positions(
    rng: np.random.Generator,
    region: Region,
    population: NodePopulation,
    strategy: str,
    boundary_mode: str,
    buffer_width: float = 0.0,
) -> np.ndarray:
    """Draw node positions from ``rng`` over the domain implied by the mode.

    torus: equal-area square [0, L)^2. none: the region disk. buffer: a disk
    enlarged by ``buffer_width``; fixed counts are rescaled with the enlarged
    area so the region density is preserved. The poisson strategy draws the
    count from Poisson(density * domain area) first, then places uniformly.
    """
    if strategy not in ("uniform", "poisson"):
        raise ValueError(f"unknown random strategy {strategy!r}")
    if boundary_mode not in BOUNDARY_MODES:
        raise ValueError(f"unknown boundary mode {boundary_mode!r}")
    if not (math.isfinite(buffer_width) and buffer_width >= 0):
        raise ValueError(f"buffer_width must be >= 0, got {buffer_width}")
    density = population.density_for(region.area)
    if boundary_mode == "torus":
        domain_area = region.area
    else:
        radius = region.radius + (buffer_width if boundary_mode == "buffer" else 0.0)
        domain_area = math.pi * radius**2
    if strategy == "poisson":
        n = int(rng.poisson(density * domain_area))
    elif population.count is not None and boundary_mode != "buffer":
        n = population.count
    else:
        n = int(round(density * domain_area))
    if boundary_mode == "torus":
        return uniform_square_points(rng, n, torus_side(region.radius))
    return uniform_disk_points(rng, n, radius)


def generate_random_deployment(
    region: Region,
    population: NodePopulation,
    strategy: str = "uniform",
    boundary_mode: str = "none",
    seed: int = 0,
    buffer_width: float = 0.0,
) -> Deployment:
    """Seeded random deployment; identical arguments give identical positions."""
    rng = philox_stream(seed)
    positions = draw_random_positions(
        rng, region, population, strategy, boundary_mode, buffer_width
    )
    return Deployment(positions, strategy, boundary_mode, region.radius, seed, buffer_width)


def hex_deployment(
    region: Region,
    cell_radius: float,
    boundary_mode: str = "none",
    buffer_width: float = 0.0,
) -> Deployment:
    """Deterministic hex-lattice deployment, one node per cell center."""
    if boundary_mode == "torus":
        raise ValueError("hex layouts do not wrap; use boundary mode 'none' or 'buffer'")
    radius = region.radius + (buffer_width if boundary_mode == "buffer" else 0.0)
    layout = generate_hex_layout(radius, cell_radius)
    return Deployment(layout.centers, "hex", boundary_mode, region.radius, None, buffer_width)


def export_positions_csv(deployment: Deployment, path) -> None:
    """Write node positions as CSV with columns index,x_m,y_m."""
    lines = ["index,x_m,y_m"]
    for index, (x, y) in enumerate(deployment.positions):
        lines.append(f"{index},{float(x)!r},{float(y)!r}")
    atomic_write_text(path, "\n".join(lines) + "\n")
