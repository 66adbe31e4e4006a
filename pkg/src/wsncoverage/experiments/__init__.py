"""Experiment runner: configs, sweeps, planning queries, CSV/SVG output, CLI."""

from .config import ConfigError, ExperimentConfig, ModelSpec, parse_config, parse_config_text
from .runner import (
    CSV_HEADER,
    PlanReport,
    ResultRow,
    emit_csv,
    run_density_sweep,
    run_node_count_sweep,
    run_plan_query,
    run_radius_ratio_sweep,
    run_sweep,
)
from .svgplot import emit_svg_plot

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "ExperimentConfig",
    "ModelSpec",
    "PlanReport",
    "ResultRow",
    "emit_csv",
    "emit_svg_plot",
    "parse_config",
    "parse_config_text",
    "run_density_sweep",
    "run_node_count_sweep",
    "run_plan_query",
    "run_radius_ratio_sweep",
    "run_sweep",
]
