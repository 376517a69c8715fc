"""
Momentum-space eigenfunctions

    psi(p) = C / (eps + p^2) * exp(i phi(p)),
    phi(p) = -a [ arctan(p/sqrt(eps))/sqrt(eps) - sqrt(beta) arctan(sqrt(beta) p) ],
    a = alpha / (1 - eps beta),

normalized against the deformed measure dp / (1 + beta p^2).

Only this real-phase form is evaluated.  The equivalent product of complex
powers ((sqrt(eps)+ip)/(sqrt(eps)-ip))^(...) ((1+i sqrt(beta) p)/(1-i sqrt(beta) p))^(...)
depends on branch choices and is not used numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    SINGULAR_MARGIN,
    DomainError,
    ModelParams,
    SpectralFamily,
    epsilon_of_nu,
    quantization_value,
)
from .quadrature import CumulativeIntegral, IntegralResult, QuadratureSpec, cumulative_to

__all__ = [
    "SingularRegimeError",
    "Wavefunction",
    "normalization_constant",
    "inverse_x_apply",
    "inverse_x_grid",
    "eigen_residual",
    "standard_grid",
]


class SingularRegimeError(DomainError):
    """eps * beta too close to 1; the phase prefactor alpha/(1 - eps beta) blows up."""


def standard_grid(p_max: float = 50.0, points: int = 1001) -> np.ndarray:
    return np.linspace(-p_max, p_max, points)


def normalization_constant(params: ModelParams, epsilon: float) -> float:
    """C_eps = sqrt(2/pi) eps^(3/4) (1 + sqrt(eps beta)) / sqrt(1 + 2 sqrt(eps beta))."""
    if not epsilon > 0:
        raise DomainError(f"binding energy must be positive, got {epsilon!r}")
    s = math.sqrt(epsilon * params.beta)
    return math.sqrt(2.0 / math.pi) * epsilon**0.75 * (1.0 + s) / math.sqrt(1.0 + 2.0 * s)


@dataclass(frozen=True)
class Wavefunction:
    params: ModelParams
    epsilon: float

    def __post_init__(self) -> None:
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise DomainError(f"binding energy must be positive, got {self.epsilon!r}")
        if self.epsilon * self.params.beta >= 1.0 - SINGULAR_MARGIN:
            raise SingularRegimeError(
                f"eps*beta = {self.epsilon * self.params.beta:.6g} is at or beyond the "
                "singular value 1; refusing to build the eigenfunction"
            )

    @classmethod
    def for_level(cls, params: ModelParams, family: SpectralFamily, n: int) -> "Wavefunction":
        return cls(params, epsilon_of_nu(params, family.nu(n)))

    @property
    def energy(self) -> float:
        return -self.epsilon

    @property
    def norm_const(self) -> float:
        return normalization_constant(self.params, self.epsilon)

    @property
    def phase_prefactor(self) -> float:
        return self.params.alpha / (1.0 - self.epsilon * self.params.beta)

    @property
    def q(self) -> float:
        return quantization_value(self.params, self.epsilon)

    def phase(self, p):
        sb = self.params.sqrt_beta
        re = math.sqrt(self.epsilon)
        p = np.asarray(p, dtype=float)
        val = -self.phase_prefactor * (np.arctan(p / re) / re - sb * np.arctan(sb * p))
        return val[()] if val.ndim == 0 else val

    def phase_limit(self, sign: int = 1) -> float:
        """phi(+inf) for sign > 0, phi(-inf) for sign < 0."""
        lim = -self.phase_prefactor * 0.5 * math.pi * (
            1.0 / math.sqrt(self.epsilon) - self.params.sqrt_beta
        )
        return lim if sign > 0 else -lim

    def modulus(self, p):
        p = np.asarray(p, dtype=float)
        val = self.norm_const / (self.epsilon + p * p)
        return val[()] if val.ndim == 0 else val

    def evaluate(self, p):
        return self.modulus(p) * np.exp(1j * self.phase(p))

    __call__ = evaluate

    def phase_derivative(self, p):
        p = np.asarray(p, dtype=float)
        beta = self.params.beta
        val = -self.phase_prefactor * (
            1.0 / (self.epsilon + p * p) - beta / (1.0 + beta * p * p)
        )
        return val[()] if val.ndim == 0 else val

    def derivative(self, p):
        """psi'(p) = psi(p) (i phi'(p) - 2p/(eps + p^2)), analytic."""
        p = np.asarray(p, dtype=float)
        val = self.evaluate(p) * (1j * self.phase_derivative(p) - 2.0 * p / (self.epsilon + p * p))
        return val[()] if np.ndim(val) == 0 else val

    def ode_residual(self, p, energy: float | None = None):
        """R(p) = i(1 + beta p^2)[p^2 psi' + 2p psi - E psi'] - alpha psi.

        ``energy`` defaults to this state's own E = -eps; passing another
        value tests psi against a mismatched equation.
        """
        E = self.energy if energy is None else energy
        p = np.asarray(p, dtype=float)
        psi = self.evaluate(p)
        dpsi = self.derivative(p)
        beta = self.params.beta
        return 1j * (1.0 + beta * p * p) * ((p * p - E) * dpsi + 2.0 * p * psi) - self.params.alpha * psi

    def ode_residual_scale(self, p):
        """Pointwise scale |psi| (1 + p^2) max(1, alpha) used to normalize residuals."""
        p = np.asarray(p, dtype=float)
        return self.modulus(p) * (1.0 + p * p) * max(1.0, self.params.alpha)

    def boundary_constant(self) -> complex:
        """c[psi] = (C/alpha) exp(i pi q(eps)), the integration constant of 1/X."""
        return self.norm_const / self.params.alpha * complex(
            math.cos(math.pi * self.q), math.sin(math.pi * self.q)
        )

    def boundary_constant_limit(self, p: float) -> complex:
        """(1/alpha)(p^2 + eps) psi(p); tends to c[psi] as p -> -infinity."""
        return complex((p * p + self.epsilon) * self.evaluate(p) / self.params.alpha)

    def measure_integrand(self, p):
        p = np.asarray(p, dtype=float)
        return self.evaluate(p) / (1.0 + self.params.beta * p * p)


def inverse_x_apply(
    wf: Wavefunction,
    p: float,
    quad: QuadratureSpec | None = None,
    with_constant: bool = True,
) -> complex:
    """(1/X) psi (p) = -i int_{-inf}^p psi(q)/(1 + beta q^2) dq + c[psi].

    ``with_constant=False`` gives the naive operator without the constant.
    Raises QuadratureError if the cumulative integral does not converge.
    """
    if p == -math.inf:
        res = IntegralResult(0j, 0.0, True, 0)
    else:
        res = cumulative_to(wf.measure_integrand, p, quad)
    value = -1j * res.require("cumulative integral of psi")
    if with_constant:
        value += wf.boundary_constant()
    return complex(value)


def inverse_x_grid(
    wf: Wavefunction, p, quad: QuadratureSpec | None = None, with_constant: bool = True
) -> np.ndarray:
    """Vectorized :func:`inverse_x_apply` over an array of momenta (one sweep)."""
    F = CumulativeIntegral(wf.measure_integrand, quad)
    F.total.require("cumulative integral of psi")
    value = -1j * F(p)
    if with_constant:
        value = value + wf.boundary_constant()
    return value


def eigen_residual(wf: Wavefunction, p, quad: QuadratureSpec | None = None) -> np.ndarray:
    """p^2 psi + alpha (1/X) psi - E psi, computed with the cumulative integral.

    Equivalently p^2 psi + i alpha int_{-inf}^p psi w dq - alpha c - E psi,
    since -alpha/X psi contributes -alpha(-i F + c).
    """
    p = np.asarray(p, dtype=float)
    psi = wf.evaluate(p)
    inv = inverse_x_grid(wf, p, quad)
    return p * p * psi - wf.params.alpha * inv - wf.energy * psi
