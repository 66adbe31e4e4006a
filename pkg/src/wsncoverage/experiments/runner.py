"""Sweep execution, placement planning, and CSV emission."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..analytic import (
    NodePopulation,
    Region,
    boolean_coverage,
    network_coverage,
    nodes_for_coverage,
    poisson_coverage,
)
from ..fileio import atomic_write_text
from ..montecarlo import SimulationPlan, estimate_coverage
from ..placement import MAX_REGULAR_COVERAGE, hex_cell_count, regular_coverage_fraction
from ..sensing import BooleanModel, SensingModel, support_radius
from .config import ExperimentConfig

__all__ = [
    "CSV_HEADER",
    "PlanReport",
    "ResultRow",
    "emit_csv",
    "run_density_sweep",
    "run_node_count_sweep",
    "run_plan_query",
    "run_radius_ratio_sweep",
    "run_sweep",
]

CSV_HEADER = "experiment,model,sweep_param,sweep_value,f_analytic,f_mc,std_error,ci_lo,ci_hi,seed,wall_ms"

# Reachability of the hex-packing maximum is judged at the precision the
# constant is usually quoted with (0.9069), not to machine epsilon.
REGULAR_REACHABILITY_TOL = 1e-4


@dataclass
class ResultRow:
    """One sweep point for one curve; analytic and Monte Carlo columns are optional."""

    experiment: str
    model: str
    sweep_param: str
    sweep_value: float
    f_analytic: float | None = None
    f_mc: float | None = None
    std_error: float | None = None
    ci_lo: float | None = None
    ci_hi: float | None = None
    seed: int | None = None
    wall_ms: float | None = None


@dataclass(frozen=True)
class PlanReport:
    """Node budgets needed to hit a target coverage, random versus regular."""

    region_radius: float
    model_label: str
    target_coverage: float
    random_nodes: int
    regular_cells: int
    cell_radius: float
    regular_max_coverage: float
    regular_reachable: bool

    def summary(self) -> str:
        lines = [
            f"target coverage    {self.target_coverage:g}",
            f"region radius      {self.region_radius:g} m",
            f"model              {self.model_label}",
            f"random placement   {self.random_nodes} nodes",
            f"regular placement  {self.regular_cells} cells (cell radius {self.cell_radius:g} m)",
            f"regular max f_a    {self.regular_max_coverage:.4f}",
        ]
        if not self.regular_reachable:
            lines.append(
                "note: target exceeds the hex-packing maximum; unreachable by "
                "regular placement at any cell size"
            )
        return "\n".join(lines)


def run_sweep(config: ExperimentConfig, n_workers: int = 1) -> list[ResultRow]:
    """Run the sweep described by the config and return one row per point."""
    if config.sweep == "nodes":
        return run_node_count_sweep(config, n_workers)
    if config.sweep == "radius_ratio":
        return run_radius_ratio_sweep(config, n_workers)
    return run_density_sweep(config, n_workers)


def run_node_count_sweep(config: ExperimentConfig, n_workers: int = 1) -> list[ResultRow]:
    """Coverage versus node count, one curve per configured sensing model."""
    rows = []
    for spec in config.models:
        for value in config.grid:
            n = int(value)
            row = ResultRow(config.name, spec.label, "nodes", float(value))
            if config.methods in ("analytic", "both"):
                row.f_analytic = network_coverage(config.region, spec.model, n)
            if config.methods in ("mc", "both"):
                _attach_estimate(
                    row, config, spec.model, NodePopulation.from_count(n), n_workers
                )
            rows.append(row)
    return rows


def run_radius_ratio_sweep(config: ExperimentConfig, n_workers: int = 1) -> list[ResultRow]:
    """Coverage versus normalized sensing radius for random and regular placement.

    Random series evaluate the Boolean coverage law at r = ratio * cell_radius
    for their fixed node count; the regular series evaluates the hex placement
    law, which peaks at the packing fraction when the ratio reaches one.
    """
    cell = config.cell_radius
    rows = []
    for spec in config.models:
        for ratio in config.grid:
            r = ratio * cell
            row = ResultRow(config.name, spec.label, "radius_ratio", float(ratio))
            if spec.kind == "regular":
                row.f_analytic = regular_coverage_fraction(
                    r, cell, region_radius=config.region.radius
                )
            else:
                if config.methods in ("analytic", "both"):
                    row.f_analytic = boolean_coverage(config.region, spec.nodes, r)
                if config.methods in ("mc", "both") and r > 0:
                    _attach_estimate(
                        row,
                        config,
                        BooleanModel(r),
                        NodePopulation.from_count(spec.nodes),
                        n_workers,
                    )
            rows.append(row)
    return rows


def run_density_sweep(config: ExperimentConfig, n_workers: int = 1) -> list[ResultRow]:
    """Coverage versus node density under Poisson deployment."""
    rows = []
    for spec in config.models:
        for density in config.grid:
            row = ResultRow(config.name, spec.label, "density", float(density))
            if config.methods in ("analytic", "both"):
                row.f_analytic = poisson_coverage(config.region, density, spec.model)
            if config.methods in ("mc", "both"):
                _attach_estimate(
                    row,
                    config,
                    spec.model,
                    NodePopulation.from_density(density),
                    n_workers,
                )
            rows.append(row)
    return rows


def _attach_estimate(row, config, model, population, n_workers) -> None:
    plan = SimulationPlan(
        region=config.region,
        model=model,
        population=population,
        strategy=config.strategy,
        boundary_mode=config.boundary_mode,
        n_trials=config.trials,
        n_targets=config.targets,
        seed=config.seed,
    )
    start = time.perf_counter()
    estimate = estimate_coverage(plan, n_workers=n_workers)
    row.wall_ms = 1000.0 * (time.perf_counter() - start)
    row.f_mc = estimate.coverage
    row.std_error = estimate.std_error
    row.ci_lo, row.ci_hi = estimate.ci95
    row.seed = estimate.seed


def run_plan_query(
    region: Region,
    model: SensingModel,
    target_coverage: float,
    cell_radius: float | None = None,
) -> PlanReport:
    """Compare node budgets: random placement versus one node per hex cell.

    ``cell_radius`` defaults to the model's support radius, i.e. hex cells
    sized so a node can just cover its own cell.
    """
    if not 0.0 < target_coverage < 1.0:
        raise ValueError(
            f"target coverage must lie strictly between 0 and 1, got {target_coverage}"
        )
    cell = cell_radius if cell_radius is not None else support_radius(model)
    return PlanReport(
        region_radius=region.radius,
        model_label=repr(model),
        target_coverage=target_coverage,
        random_nodes=nodes_for_coverage(region, model, target_coverage),
        regular_cells=hex_cell_count(region.radius, cell),
        cell_radius=cell,
        regular_max_coverage=MAX_REGULAR_COVERAGE,
        regular_reachable=target_coverage
        <= MAX_REGULAR_COVERAGE + REGULAR_REACHABILITY_TOL,
    )


def emit_csv(rows, path, include_timing: bool = False) -> None:
    """Write rows as CSV, sorted by (model label, sweep value).

    Written atomically with LF endings. The wall_ms column stays empty unless
    ``include_timing`` is set, so reruns of the same config and seed produce
    byte-identical files; timings are for console reporting.
    """
    if not rows:
        raise ValueError("no rows to write")
    lines = [CSV_HEADER]
    for row in sorted(rows, key=lambda r: (r.model, r.sweep_value)):
        if row.f_analytic is None and row.f_mc is None:
            raise ValueError(
                f"row {row.model}@{row.sweep_value:g} has neither analytic nor MC value"
            )
        lines.append(
            ",".join(
                [
                    row.experiment,
                    row.model,
                    row.sweep_param,
                    f"{row.sweep_value:g}",
                    _fmt(row.f_analytic),
                    _fmt(row.f_mc),
                    _fmt(row.std_error),
                    _fmt(row.ci_lo),
                    _fmt(row.ci_hi),
                    "" if row.seed is None else str(row.seed),
                    _fmt(row.wall_ms) if include_timing else "",
                ]
            )
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def _fmt(value) -> str:
    return "" if value is None else repr(float(value))
