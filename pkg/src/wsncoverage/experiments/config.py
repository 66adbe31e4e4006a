"""Experiment configs: INI files with an [experiment] section and [model <label>] sections.

Example (node-count sweep):

    [experiment]
    name = model_comparison
    region_radius = 1000
    sweep = nodes
    grid = 0:3000:100
    methods = analytic
    csv = out/model_comparison.csv

    [model boolean]
    type = boolean
    radius = 50

Radius-ratio sweeps instead use ``type = random`` (with ``nodes = N``) and
``type = regular`` sections, plus a top-level ``cell_radius``.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass

from ..analytic import Region
from ..sensing import BooleanModel, ElfesModel, SensingModel, ShadowFadingModel

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ModelSpec",
    "parse_config",
    "parse_config_text",
]

SWEEPS = ("nodes", "radius_ratio", "density")
METHODS = ("analytic", "mc", "both")
BOUNDARIES = ("torus", "buffer", "none")

_EXPERIMENT_KEYS = {
    "name",
    "region_radius",
    "sweep",
    "grid",
    "methods",
    "cell_radius",
    "strategy",
    "trials",
    "targets",
    "boundary",
    "seed",
    "csv",
    "svg",
}

_MODEL_KEYS = {
    "boolean": {"radius"},
    "shadow_fading": {"radius", "sigma_db", "path_loss_exp", "max_range"},
    "elfes": {"certain_range", "decay_rate", "decay_exponent", "max_range"},
    "random": {"nodes"},
    "regular": set(),
}


class ConfigError(Exception):
    """Invalid or unparsable experiment configuration."""


@dataclass(frozen=True)
class ModelSpec:
    """One labelled curve: a sensing model, or a placement series for radius sweeps."""

    label: str
    kind: str
    model: SensingModel | None = None
    nodes: int | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    region: Region
    sweep: str
    grid: tuple[float, ...]
    methods: str
    models: tuple[ModelSpec, ...]
    cell_radius: float | None = None
    strategy: str = "uniform"
    trials: int = 200
    targets: int = 10_000
    boundary_mode: str = "torus"
    seed: int = 0
    csv_path: str | None = None
    svg_path: str | None = None


def parse_config(path) -> ExperimentConfig:
    """Parse and validate an experiment config file."""
    parser = _new_parser()
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle, source=str(path))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    return _build(parser, str(path))


def parse_config_text(text: str, source: str = "<config>") -> ExperimentConfig:
    """Parse a config from a string (tests, generated configs)."""
    parser = _new_parser()
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    return _build(parser, source)


def _new_parser() -> configparser.ConfigParser:
    return configparser.ConfigParser(inline_comment_prefixes=("#", ";"))


def _build(parser: configparser.ConfigParser, source: str) -> ExperimentConfig:
    if "experiment" not in parser:
        raise ConfigError(f"{source}: missing [experiment] section")
    exp = parser["experiment"]
    unknown = set(exp) - _EXPERIMENT_KEYS
    if unknown:
        raise ConfigError(f"{source}: unknown [experiment] keys: {sorted(unknown)}")

    name = exp.get("name", "experiment").strip()
    region = _wrap(source, "experiment", lambda: Region(_float(exp, "region_radius", source)))
    sweep = _choice(exp, "sweep", SWEEPS, source)
    methods = _choice(exp, "methods", METHODS, source, default="analytic")
    boundary = _choice(exp, "boundary", BOUNDARIES, source, default="torus")
    grid = _parse_grid(exp.get("grid", ""), source)
    default_strategy = "poisson" if sweep == "density" else "uniform"
    strategy = _choice(
        exp, "strategy", ("uniform", "poisson"), source, default=default_strategy
    )
    trials = _int(exp, "trials", source, default=200, minimum=1)
    targets = _int(exp, "targets", source, default=10_000, minimum=1)
    seed = _int(exp, "seed", source, default=0, minimum=0)
    cell_radius = _float(exp, "cell_radius", source, required=False)

    models = []
    for section in parser.sections():
        if section == "experiment":
            continue
        if not section.startswith("model "):
            raise ConfigError(f"{source}: unexpected section [{section}]")
        label = section[len("model "):].strip()
        if not label or "," in label:
            raise ConfigError(f"{source}: bad model label in [{section}]")
        models.append(_parse_model(parser[section], section, label, source))
    if not models:
        raise ConfigError(f"{source}: at least one [model <label>] section is required")

    _validate_sweep(sweep, grid, models, cell_radius, source)
    return ExperimentConfig(
        name=name,
        region=region,
        sweep=sweep,
        grid=grid,
        methods=methods,
        models=tuple(models),
        cell_radius=cell_radius,
        strategy=strategy,
        trials=trials,
        targets=targets,
        boundary_mode=boundary,
        seed=seed,
        csv_path=exp.get("csv", "").strip() or None,
        svg_path=exp.get("svg", "").strip() or None,
    )


def _parse_model(section, section_name: str, label: str, source: str) -> ModelSpec:
    kind = section.get("type", "").strip()
    if kind not in _MODEL_KEYS:
        raise ConfigError(
            f"{source}: [{section_name}] has unknown type {kind!r}; expected one of "
            f"{sorted(_MODEL_KEYS)}"
        )
    unknown = set(section) - _MODEL_KEYS[kind] - {"type"}
    if unknown:
        raise ConfigError(f"{source}: [{section_name}] has unknown keys {sorted(unknown)}")
    if kind == "boolean":
        model = _wrap(source, section_name, lambda: BooleanModel(_float(section, "radius", source, section_name)))
        return ModelSpec(label, kind, model=model)
    if kind == "shadow_fading":
        model = _wrap(
            source,
            section_name,
            lambda: ShadowFadingModel(
                radius=_float(section, "radius", source, section_name),
                sigma_db=_float(section, "sigma_db", source, section_name),
                path_loss_exp=_float(
                    section, "path_loss_exp", source, section_name, required=False, default=2.0
                ),
                max_range=_float(section, "max_range", source, section_name, required=False),
            ),
        )
        return ModelSpec(label, kind, model=model)
    if kind == "elfes":
        model = _wrap(
            source,
            section_name,
            lambda: ElfesModel(
                certain_range=_float(
                    section, "certain_range", source, section_name, required=False, default=0.0
                ),
                decay_rate=_float(section, "decay_rate", source, section_name),
                max_range=_float(section, "max_range", source, section_name),
                decay_exponent=_float(
                    section, "decay_exponent", source, section_name, required=False, default=1.0
                ),
            ),
        )
        return ModelSpec(label, kind, model=model)
    if kind == "random":
        nodes = _int(section, "nodes", source, minimum=0, required=True, section_name=section_name)
        return ModelSpec(label, kind, nodes=nodes)
    return ModelSpec(label, kind)  # regular


def _validate_sweep(sweep, grid, models, cell_radius, source) -> None:
    placement_kinds = {"random", "regular"}
    kinds = {spec.kind for spec in models}
    if sweep == "radius_ratio":
        if cell_radius is None or cell_radius <= 0:
            raise ConfigError(f"{source}: radius_ratio sweeps need a positive cell_radius")
        if not kinds <= placement_kinds:
            raise ConfigError(
                f"{source}: radius_ratio sweeps use model types 'random'/'regular' only"
            )
        bad = [v for v in grid if not 0.0 <= v <= 1.0]
        if bad:
            raise ConfigError(f"{source}: radius ratios must lie in [0, 1], got {bad}")
    else:
        if kinds & placement_kinds:
            raise ConfigError(
                f"{source}: model types 'random'/'regular' are only valid for "
                f"radius_ratio sweeps"
            )
        if sweep == "nodes":
            bad = [v for v in grid if v < 0 or v != int(v)]
            if bad:
                raise ConfigError(
                    f"{source}: node counts must be non-negative integers, got {bad}"
                )
        elif any(v < 0 for v in grid):
            raise ConfigError(f"{source}: densities must be >= 0")


def _parse_grid(text: str, source: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        raise ConfigError(f"{source}: [experiment] grid is required")
    try:
        if ":" in text:
            parts = [float(tok) for tok in text.split(":")]
            if len(parts) != 3:
                raise ValueError("expected start:stop:step")
            start, stop, step = parts
            if step <= 0 or stop < start:
                raise ValueError("need step > 0 and stop >= start")
            values = []
            k = 0
            while True:
                value = start + k * step
                if value > stop + 1e-9 * max(1.0, abs(stop)):
                    break
                values.append(round(value, 12))
                k += 1
            return tuple(values)
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
        if not values:
            raise ValueError("empty grid")
        return values
    except ValueError as exc:
        raise ConfigError(f"{source}: bad grid {text!r}: {exc}") from exc


def _wrap(source, section, build):
    try:
        return build()
    except ValueError as exc:
        raise ConfigError(f"{source}: [{section}]: {exc}") from exc


def _float(section, key, source, section_name="experiment", required=True, default=None):
    raw = section.get(key, "").strip() if hasattr(section, "get") else ""
    if not raw:
        if required:
            raise ConfigError(f"{source}: [{section_name}] is missing key {key!r}")
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(
            f"{source}: [{section_name}] key {key!r} is not a number: {raw!r}"
        ) from exc


def _int(section, key, source, default=None, minimum=None, required=False, section_name="experiment"):
    raw = section.get(key, "").strip()
    if not raw:
        if required:
            raise ConfigError(f"{source}: [{section_name}] is missing key {key!r}")
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(
            f"{source}: [{section_name}] key {key!r} is not an integer: {raw!r}"
        ) from exc
    if minimum is not None and value < minimum:
        raise ConfigError(f"{source}: [{section_name}] key {key!r} must be >= {minimum}")
    return value


def _choice(section, key, choices, source, default=None):
    raw = section.get(key, "").strip()
    if not raw:
        if default is not None:
            return default
        raise ConfigError(f"{source}: [experiment] is missing key {key!r}")
    if raw not in choices:
        raise ConfigError(
            f"{source}: [experiment] key {key!r} must be one of {choices}, got {raw!r}"
        )
    return raw
