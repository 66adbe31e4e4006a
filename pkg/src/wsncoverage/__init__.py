"""Coverage analysis toolkit for wireless sensor networks.

Sensing models (Boolean, shadow fading, Elfes), closed-form and quadrature
coverage fractions for random deployments, hexagonal regular placement, and a
seeded Monte Carlo simulator that cross-checks every analytic result.
"""

from .analytic import (
    CoverageFraction,
    NodePopulation,
    Region,
    boolean_coverage,
    detection_integral,
    elfes_coverage,
    elfes_single_node_detection,
    network_coverage,
    nodes_for_coverage,
    poisson_coverage,
    single_node_detection,
)
from .montecarlo import (
    CoverageEstimate,
    SimulationPlan,
    analytic_reference,
    border_effect_gap,
    boundary_distance,
    estimate_coverage,
)
from .placement import (
    Deployment,
    HexLayout,
    MAX_REGULAR_COVERAGE,
    export_positions_csv,
    generate_hex_layout,
    generate_random_deployment,
    hex_cell_count,
    hex_deployment,
    regular_coverage_fraction,
    torus_side,
)
from .quadrature import adaptive_simpson
from .sensing import (
    BooleanModel,
    ElfesModel,
    SensingModel,
    ShadowFadingModel,
    detection_probability,
    q_function,
    support_radius,
)

__version__ = "0.1.0"

__all__ = [
    "BooleanModel",
    "CoverageEstimate",
    "CoverageFraction",
    "Deployment",
    "ElfesModel",
    "HexLayout",
    "MAX_REGULAR_COVERAGE",
    "NodePopulation",
    "Region",
    "SensingModel",
    "ShadowFadingModel",
    "SimulationPlan",
    "adaptive_simpson",
    "analytic_reference",
    "boolean_coverage",
    "border_effect_gap",
    "boundary_distance",
    "detection_integral",
    "detection_probability",
    "elfes_coverage",
    "elfes_single_node_detection",
    "estimate_coverage",
    "export_positions_csv",
    "generate_hex_layout",
    "generate_random_deployment",
    "hex_cell_count",
    "hex_deployment",
    "network_coverage",
    "nodes_for_coverage",
    "poisson_coverage",
    "q_function",
    "regular_coverage_fraction",
    "single_node_detection",
    "support_radius",
    "torus_side",
]
