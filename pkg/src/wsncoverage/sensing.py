"""Sensing models: probability that a node detects an event at a given distance.

Three single-node models are provided. The Boolean model is a deterministic
disk; the shadow-fading and Elfes models are probabilistic, with detection
probability decaying with distance. All distances are in meters.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

__all__ = [
    "BooleanModel",
    "ElfesModel",
    "SensingModel",
    "ShadowFadingModel",
    "TYPICAL_PATH_LOSS_RANGE",
    "detection_probability",
    "q_function",
    "support_radius",
]

_SQRT2 = math.sqrt(2.0)

# Path-loss exponents reported for typical propagation environments.
TYPICAL_PATH_LOSS_RANGE = (2.0, 4.0)


@dataclass(frozen=True)
class BooleanModel:
    """Deterministic disk sensing: certain detection within ``radius`` meters."""

    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"sensing radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class ShadowFadingModel:
    """Probabilistic sensing under log-normal shadowing.

    Detection probability at distance x is the Gaussian upper tail
    Q(10 * path_loss_exp * log10(x / radius) / sigma_db): exactly 0.5 at the
    nominal ``radius`` and approaching 1 close to the node. ``max_range`` is
    a hard cutoff beyond which the probability is zero; it defaults to
    ``radius``.
    """

    radius: float
    sigma_db: float
    path_loss_exp: float = 2.0
    max_range: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not (math.isfinite(self.sigma_db) and self.sigma_db > 0):
            raise ValueError(f"sigma_db must be positive, got {self.sigma_db}")
        if not (math.isfinite(self.path_loss_exp) and self.path_loss_exp > 0):
            raise ValueError(f"path_loss_exp must be positive, got {self.path_loss_exp}")
        lo, hi = TYPICAL_PATH_LOSS_RANGE
        if not lo <= self.path_loss_exp <= hi:
            warnings.warn(
                f"path_loss_exp={self.path_loss_exp} is outside the typical "
                f"range [{lo}, {hi}]",
                stacklevel=2,
            )
        if self.max_range is None:
            object.__setattr__(self, "max_range", self.radius)
        elif not (math.isfinite(self.max_range) and self.max_range >= self.radius):
            raise ValueError(
                f"max_range must be >= radius ({self.radius}), got {self.max_range}"
            )


@dataclass(frozen=True)
class ElfesModel:
    """Probabilistic sensing with a certain zone and exponential decay.

    Detection is certain up to ``certain_range``, decays as
    exp(-decay_rate * (x - certain_range) ** decay_exponent) out to
    ``max_range``, and is impossible beyond. ``certain_range == max_range``
    degenerates to the Boolean model.
    """

    certain_range: float
    decay_rate: float
    max_range: float
    decay_exponent: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.certain_range) and self.certain_range >= 0):
            raise ValueError(f"certain_range must be >= 0, got {self.certain_range}")
        if not (math.isfinite(self.decay_rate) and self.decay_rate > 0):
            raise ValueError(f"decay_rate must be positive, got {self.decay_rate}")
        if not (math.isfinite(self.decay_exponent) and self.decay_exponent > 0):
            raise ValueError(
                f"decay_exponent must be positive, got {self.decay_exponent}"
            )
        if not (
            math.isfinite(self.max_range)
            and self.max_range > 0
            and self.max_range >= self.certain_range
        ):
            raise ValueError(
                f"max_range must be positive and >= certain_range, got {self.max_range}"
            )


SensingModel = BooleanModel | ShadowFadingModel | ElfesModel


def support_radius(model: SensingModel) -> float:
    """Distance beyond which the model's detection probability is zero."""
    if isinstance(model, BooleanModel):
        return model.radius
    return model.max_range


def q_function(x):
    """Upper-tail probability of the standard normal, Q(x) = P(Z > x).

    Accepts a scalar or an array. The absolute error is that of the
    underlying erfc implementation, far below 1e-10 over |x| <= 8.
    """
    xs = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xs)):
        raise ValueError("q_function requires finite input")
    out = 0.5 * erfc(xs / _SQRT2)
    return float(out) if out.ndim == 0 else out


def detection_probability(model: SensingModel, x):
    """Probability that ``model`` detects an event at distance ``x`` meters.

    ``x`` may be a scalar or an array of non-negative finite distances; the
    result matches the input shape and always lies in [0, 1].
    """
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    if not np.all(np.isfinite(xs)) or np.any(xs < 0):
        raise ValueError("distance must be finite and non-negative")
    if isinstance(model, BooleanModel):
        p = np.where(xs <= model.radius, 1.0, 0.0)
    elif isinstance(model, ShadowFadingModel):
        p = _shadow_fading_probability(model, xs)
    elif isinstance(model, ElfesModel):
        p = _elfes_probability(model, xs)
    else:
        raise TypeError(f"not a sensing model: {model!r}")
    return float(p[0]) if scalar else p


def _shadow_fading_probability(model: ShadowFadingModel, xs: np.ndarray) -> np.ndarray:
    p = np.zeros(xs.shape)
    inside = (xs > 0) & (xs <= model.max_range)
    arg = (
        10.0
        * model.path_loss_exp
        * np.log10(xs[inside] / model.radius)
        / model.sigma_db
    )
    p[inside] = 0.5 * erfc(arg / _SQRT2)
    # limit of the Q argument as x -> 0 is -inf, so detection is certain there
    p[xs == 0.0] = 1.0
    return p


def _elfes_probability(model: ElfesModel, xs: np.ndarray) -> np.ndarray:
    p = np.zeros(xs.shape)
    certain = xs <= model.certain_range
    decaying = ~certain & (xs < model.max_range)
    gap = xs[decaying] - model.certain_range
    p[decaying] = np.exp(-model.decay_rate * gap**model.decay_exponent)
    p[certain] = 1.0
    return p
