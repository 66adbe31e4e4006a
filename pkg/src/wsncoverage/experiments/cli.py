"""Command line interface.

Subcommands:
  analytic            one-shot coverage formula evaluation
  simulate            one Monte Carlo plan
  sweep               config-driven sweep with CSV (and optional SVG) output
  plan                node budgets for a target coverage, random vs regular
  export-deployment   node positions as CSV

Exit codes: 0 success, 1 config error, 2 runtime/numeric error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from ..analytic import NodePopulation, Region, network_coverage, poisson_coverage
from ..montecarlo import SimulationPlan, estimate_coverage
from ..placement import export_positions_csv, generate_random_deployment, hex_deployment
from ..sensing import BooleanModel, ElfesModel, ShadowFadingModel
from .config import ConfigError, parse_config
from .runner import ResultRow, emit_csv, run_plan_query, run_sweep
from .svgplot import emit_svg_plot

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    """Parser whose usage errors exit with the config-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("sensing model")
    group.add_argument(
        "--model", choices=("boolean", "shadow", "elfes"), default="boolean"
    )
    group.add_argument("--radius", type=float, help="sensing radius in m (boolean, shadow)")
    group.add_argument("--sigma-db", type=float, help="shadowing std dev in dB (shadow)")
    group.add_argument("--path-loss-exp", type=float, default=2.0)
    group.add_argument("--max-range", type=float, help="hard sensing cutoff in m")
    group.add_argument("--certain-range", type=float, default=0.0, help="certain zone in m (elfes)")
    group.add_argument("--decay-rate", type=float, help="decay rate in 1/m (elfes)")
    group.add_argument("--decay-exponent", type=float, default=1.0)


def _model_from_args(args):
    try:
        if args.model == "boolean":
            if args.radius is None:
                raise ConfigError("boolean model needs --radius")
            return BooleanModel(args.radius)
        if args.model == "shadow":
            if args.radius is None or args.sigma_db is None:
                raise ConfigError("shadow model needs --radius and --sigma-db")
            return ShadowFadingModel(
                radius=args.radius,
                sigma_db=args.sigma_db,
                path_loss_exp=args.path_loss_exp,
                max_range=args.max_range,
            )
        if args.decay_rate is None or args.max_range is None:
            raise ConfigError("elfes model needs --decay-rate and --max-range")
        return ElfesModel(
            certain_range=args.certain_range,
            decay_rate=args.decay_rate,
            max_range=args.max_range,
            decay_exponent=args.decay_exponent,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _population_from_args(args) -> NodePopulation:
    if (args.nodes is None) == (args.density is None):
        raise ConfigError("specify exactly one of --nodes or --density")
    if args.nodes is not None:
        return NodePopulation.from_count(args.nodes)
    return NodePopulation.from_density(args.density)


def build_parser() -> _Parser:
    parser = _Parser(prog="wsncov", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_analytic = sub.add_parser("analytic", help="evaluate a coverage formula")
    _add_model_arguments(p_analytic)
    p_analytic.add_argument("--region-radius", type=float, default=1000.0)
    p_analytic.add_argument("--nodes", type=int)
    p_analytic.add_argument("--density", type=float, help="nodes per m^2 (Poisson route)")
    p_analytic.add_argument("--form", choices=("exact", "exponential"))
    p_analytic.add_argument("--quiet", action="store_true")
    p_analytic.set_defaults(handler=_cmd_analytic)

    p_sim = sub.add_parser("simulate", help="run one Monte Carlo plan")
    _add_model_arguments(p_sim)
    p_sim.add_argument("--region-radius", type=float, default=1000.0)
    p_sim.add_argument("--nodes", type=int)
    p_sim.add_argument("--density", type=float)
    p_sim.add_argument("--strategy", choices=("uniform", "poisson", "hex"), default="uniform")
    p_sim.add_argument("--boundary", choices=("torus", "buffer", "none"), default="torus")
    p_sim.add_argument("--trials", type=int, default=200)
    p_sim.add_argument("--targets", type=int, default=10_000)
    p_sim.add_argument("--sampling", choices=("uniform", "stratified"), default="uniform")
    p_sim.add_argument("--mode", choices=("expectation", "bernoulli"), default="expectation")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.add_argument("--cell-radius", type=float, help="hex cell radius for --strategy hex")
    p_sim.add_argument("--out", help="append-free CSV row output path")
    p_sim.add_argument("--quiet", action="store_true")
    p_sim.set_defaults(handler=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="run a config-driven sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", help="CSV path (overrides the config)")
    p_sweep.add_argument("--svg", help="SVG path (overrides the config)")
    p_sweep.add_argument("--seed", type=int)
    p_sweep.add_argument("--trials", type=int)
    p_sweep.add_argument("--targets", type=int)
    p_sweep.add_argument("--boundary", choices=("torus", "buffer", "none"))
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument("--quiet", action="store_true")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_plan = sub.add_parser("plan", help="node budgets for a target coverage")
    _add_model_arguments(p_plan)
    p_plan.add_argument("--region-radius", type=float, default=1000.0)
    p_plan.add_argument("--target-coverage", type=float, required=True)
    p_plan.add_argument("--cell-radius", type=float)
    p_plan.add_argument("--quiet", action="store_true")
    p_plan.set_defaults(handler=_cmd_plan)

    p_export = sub.add_parser("export-deployment", help="write node positions as CSV")
    p_export.add_argument("--region-radius", type=float, default=1000.0)
    p_export.add_argument("--strategy", choices=("uniform", "poisson", "hex"), default="uniform")
    p_export.add_argument("--nodes", type=int)
    p_export.add_argument("--density", type=float)
    p_export.add_argument("--boundary", choices=("torus", "buffer", "none"), default="none")
    p_export.add_argument("--buffer-width", type=float, default=0.0)
    p_export.add_argument("--cell-radius", type=float, help="hex cell radius for --strategy hex")
    p_export.add_argument("--seed", type=int, default=0)
    p_export.add_argument("--out", required=True)
    p_export.add_argument("--quiet", action="store_true")
    p_export.set_defaults(handler=_cmd_export)

    return parser


def _cmd_analytic(args) -> int:
    region = Region(args.region_radius)
    model = _model_from_args(args)
    if args.density is not None and args.nodes is not None:
        raise ConfigError("specify exactly one of --nodes or --density")
    if args.density is not None:
        value = poisson_coverage(region, args.density, model)
    elif args.nodes is not None:
        value = network_coverage(region, model, args.nodes, form=args.form)
    else:
        raise ConfigError("specify exactly one of --nodes or --density")
    if args.quiet:
        print(f"{value:.10g}")
    else:
        print(f"coverage fraction  {value:.6f}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    population = None
    if args.strategy != "hex":
        population = _population_from_args(args)
    elif args.cell_radius is None and args.max_range is None and args.radius is None:
        raise ConfigError("hex strategy needs --cell-radius or a model range")
    try:
        plan = SimulationPlan(
            region=Region(args.region_radius),
            model=_model_from_args(args),
            population=population,
            strategy=args.strategy,
            boundary_mode=args.boundary,
            n_trials=args.trials,
            n_targets=args.targets,
            target_sampling=args.sampling,
            detection_mode=args.mode,
            seed=args.seed,
            hex_cell_radius=args.cell_radius,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    estimate = estimate_coverage(plan, n_workers=args.workers)
    if args.out:
        if population is not None and population.density is not None:
            sweep_param, sweep_value = "density", population.density
        elif population is not None:
            sweep_param, sweep_value = "nodes", float(population.count)
        else:
            sweep_param, sweep_value = "nodes", 0.0
        row = ResultRow(
            experiment="simulate",
            model=args.model,
            sweep_param=sweep_param,
            sweep_value=sweep_value,
            f_mc=estimate.coverage,
            std_error=estimate.std_error,
            ci_lo=estimate.ci95[0],
            ci_hi=estimate.ci95[1],
            seed=estimate.seed,
        )
        emit_csv([row], args.out)
    if args.quiet:
        print(f"{estimate.coverage:.10g}")
    else:
        print(estimate.summary())
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = parse_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.targets is not None:
        overrides["targets"] = args.targets
    if args.boundary is not None:
        overrides["boundary_mode"] = args.boundary
    if overrides:
        config = replace(config, **overrides)
    csv_path = args.out or config.csv_path
    if not csv_path:
        raise ConfigError("no CSV output path: set 'csv' in the config or pass --out")
    rows = run_sweep(config, n_workers=args.workers)
    emit_csv(rows, csv_path)
    svg_path = args.svg or config.svg_path
    if svg_path:
        emit_svg_plot(rows, svg_path, title=config.name)
    if not args.quiet:
        print(f"wrote {len(rows)} rows to {csv_path}")
        if svg_path:
            print(f"wrote plot to {svg_path}")
    return EXIT_OK


def _cmd_plan(args) -> int:
    report = run_plan_query(
        Region(args.region_radius),
        _model_from_args(args),
        args.target_coverage,
        cell_radius=args.cell_radius,
    )
    if args.quiet:
        print(f"{report.random_nodes} {report.regular_cells}")
    else:
        print(report.summary())
    return EXIT_OK


def _cmd_export(args) -> int:
    region = Region(args.region_radius)
    if args.strategy == "hex":
        if args.cell_radius is None:
            raise ConfigError("hex strategy needs --cell-radius")
        deployment = hex_deployment(
            region, args.cell_radius, boundary_mode=args.boundary, buffer_width=args.buffer_width
        )
    else:
        try:
            deployment = generate_random_deployment(
                region,
                _population_from_args(args),
                strategy=args.strategy,
                boundary_mode=args.boundary,
                seed=args.seed,
                buffer_width=args.buffer_width,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    export_positions_csv(deployment, args.out)
    if not args.quiet:
        print(f"wrote {deployment.count} positions to {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
