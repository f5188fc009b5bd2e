"""Parameter vectors and domain descriptors for the BGEV family."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

__all__ = [
    "BgevParams",
    "GevParams",
    "Support",
    "SupportKind",
    "CriticalPoints",
    "Modality",
    "ParameterError",
]


class ParameterError(ValueError):
    """Raised when a parameter vector violates its admissibility constraints."""


@dataclass(frozen=True)
class BgevParams:
    """Parameter vector (xi, mu, sigma, delta) of the bimodal GEV distribution.

    xi is the shape parameter (nonzero), mu the location, sigma the scale of
    the power transformation (positive), and delta the bimodality shape
    (greater than -1; at -1 the transformation stops being invertible).
    """

    xi: float
    mu: float
    sigma: float
    delta: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.xi, self.mu, self.sigma, self.delta)):
            raise ParameterError("parameters must be finite")
        if self.xi == 0.0:
            raise ParameterError("xi must be nonzero")
        if self.sigma <= 0.0:
            raise ParameterError(f"sigma must be > 0, got {self.sigma}")
        if self.delta <= -1.0:
            raise ParameterError(f"delta must be > -1, got {self.delta}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.xi, self.mu, self.sigma, self.delta)


@dataclass(frozen=True)
class GevParams:
    """Baseline GEV triple (xi, mu, sigma).  sigma defaults to the unit scale."""

    xi: float
    mu: float
    sigma: float = 1.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.xi, self.mu, self.sigma)):
            raise ParameterError("parameters must be finite")
        if self.sigma <= 0.0:
            raise ParameterError(f"sigma must be > 0, got {self.sigma}")


class SupportKind(Enum):
    LEFT_BOUNDED = "left_bounded"
    RIGHT_BOUNDED = "right_bounded"


@dataclass(frozen=True)
class Support:
    """Half-line on which the BGEV density is positive.

    For xi > 0 the density lives on (lower, +inf); for xi < 0 on (-inf, upper).
    """

    lower: float
    upper: float
    kind: SupportKind

    def contains(self, x: float, strict: bool = True) -> bool:
        if strict:
            return self.lower < x < self.upper
        return self.lower <= x <= self.upper

    @property
    def finite_endpoint(self) -> float:
        return self.lower if self.kind is SupportKind.LEFT_BOUNDED else self.upper


class Modality(Enum):
    UNIMODAL = "unimodal"
    BIMODAL = "bimodal"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class CriticalPoints:
    """Stationary points of the density, sorted ascending, plus a shape verdict.

    classification is DEGENERATE when the stationary structure could not be
    resolved (bracketing failed or an unexpected number of maxima was found);
    it is never silently dropped.
    """

    points: tuple[float, ...]
    classification: Modality
    maxima: tuple[float, ...] = field(default=())
