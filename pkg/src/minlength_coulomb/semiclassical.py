"""
Deformed Bohr-Sommerfeld quantization.

With X = (1 + beta p^2) x and canonical [x, p] = i the classical Hamiltonian
is H = p^2 - alpha / ((1 + beta p^2) x).  Solving H = E for x and sweeping p
from +inf through 0 to -inf gives

    oint p dx = int alpha / ((1 + beta p^2)(p^2 + eps)) dp = pi alpha / (sqrt(eps) + eps sqrt(beta)),

and 2 pi (n + delta) = oint p dx fixes the levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    DEFAULT_ROOT_TOL,
    BoundState,
    DomainError,
    ModelParams,
    SpectralFamily,
    solve_decreasing,
)
from .quadrature import IntegralResult, QuadratureSpec, integrate_real_line

__all__ = [
    "ClassicalConfig",
    "classical_hamiltonian",
    "orbit_x_of_p",
    "action_integral_numeric",
    "action_integral_closed",
    "wkb_spectrum",
]


@dataclass(frozen=True)
class ClassicalConfig:
    params: ModelParams
    energy: float

    def __post_init__(self) -> None:
        if not self.energy < 0:
            raise DomainError(f"bound orbits need E < 0, got {self.energy!r}")

    @classmethod
    def from_epsilon(cls, params: ModelParams, epsilon: float) -> "ClassicalConfig":
        return cls(params, -float(epsilon))

    @property
    def epsilon(self) -> float:
        return -self.energy


def classical_hamiltonian(cfg: ClassicalConfig, x, p):
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(x == 0):
        raise DomainError("the Hamiltonian is singular at x = 0")
    beta = cfg.params.beta
    val = p * p - cfg.params.alpha / ((1.0 + beta * p * p) * x)
    return val[()] if val.ndim == 0 else val


def orbit_x_of_p(cfg: ClassicalConfig, p):
    """Position on the orbit H(x, p) = E; even in p, largest (alpha/eps) at p = 0."""
    p = np.asarray(p, dtype=float)
    beta = cfg.params.beta
    val = cfg.params.alpha / ((1.0 + beta * p * p) * (p * p - cfg.energy))
    return val[()] if val.ndim == 0 else val


def action_integral_numeric(cfg: ClassicalConfig, spec: QuadratureSpec | None = None) -> IntegralResult:
    return integrate_real_line(lambda p: orbit_x_of_p(cfg, p), spec)


def action_integral_closed(cfg: ClassicalConfig) -> float:
    eps = cfg.epsilon
    return math.pi * cfg.params.alpha / (math.sqrt(eps) + eps * cfg.params.sqrt_beta)


def wkb_spectrum(
    params: ModelParams,
    family: SpectralFamily,
    n_max: int,
    tol: float = DEFAULT_ROOT_TOL,
) -> list[BoundState]:
    """Levels n = min_level..n_max from 2 pi (n + delta) = closed-form action."""

    def action_quanta(eps: float) -> float:
        return action_integral_closed(ClassicalConfig.from_epsilon(params, eps)) / (2.0 * math.pi)

    levels = []
    for n in range(family.min_level, n_max + 1):
        nu = family.nu(n)
        eps = solve_decreasing(action_quanta, nu, params.alpha**2 / (4.0 * nu * nu), tol)
        levels.append(BoundState(n, eps, "wkb", family.delta))
    return levels
