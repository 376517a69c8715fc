"""
Bound-state spectrum of the 1D potential -alpha/X with [X, P] = i(1 + beta P^2).

Units: hbar = 1, 2m = 1.  Bound states are labelled by the binding energy
epsilon = -E > 0 and satisfy the quantization condition

    q(epsilon) = alpha / (2 (sqrt(epsilon) + sqrt(beta) epsilon)) = n + delta

where delta in [0, 1) selects one hermitian family of spectra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "DomainError",
    "NoFiniteSolutionError",
    "BracketError",
    "ModelParams",
    "SpectralFamily",
    "BoundState",
    "RegimeDiagnostics",
    "METHODS",
    "quantization_value",
    "epsilon_of_nu",
    "energy_closed_form",
    "energy_root_find",
    "energy_series",
    "family_from_reference",
    "validate_regime",
    "solve_decreasing",
]

METHODS = ("closed", "root", "series", "wkb")

DEFAULT_ROOT_TOL = 1e-12
# epsilon * beta above this is treated as singular by the wavefunction module
SINGULAR_MARGIN = 1e-9


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class NoFiniteSolutionError(DomainError):
    """The quantization condition has no finite root (n + delta == 0)."""


class BracketError(RuntimeError):
    """Bracket expansion failed to enclose a root."""


@dataclass(frozen=True)
class ModelParams:
    alpha: float
    beta: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha!r}")
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise DomainError(f"beta must be non-negative and finite, got {self.beta!r}")

    @property
    def sqrt_beta(self) -> float:
        return math.sqrt(self.beta)

    @property
    def minimal_length(self) -> float:
        """Smallest resolvable position uncertainty, sqrt(beta) with hbar = 1."""
        return self.sqrt_beta


@dataclass(frozen=True)
class SpectralFamily:
    delta: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.delta < 1.0):
            raise DomainError(f"delta must lie in [0, 1), got {self.delta!r}")

    @property
    def min_level(self) -> int:
        return 1 if self.delta == 0.0 else 0

    def nu(self, n: int) -> float:
        """Effective quantum number n + delta, checking n against the level domain."""
        if int(n) != n:
            raise DomainError(f"level index must be an integer, got {n!r}")
        n = int(n)
        if n < 0:
            raise DomainError(f"level index must be non-negative, got {n}")
        if n == 0 and self.delta == 0.0:
            raise NoFiniteSolutionError(
                "n = 0 with delta = 0 has no finite solution (binding energy diverges)"
            )
        return n + self.delta

    def levels(self, count: int) -> list[int]:
        """The first ``count`` admissible level indices."""
        return list(range(self.min_level, self.min_level + max(count, 0)))


@dataclass(frozen=True)
class BoundState:
    n: int
    epsilon: float
    method: str
    delta: float = 0.0

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise DomainError(f"unknown method tag {self.method!r}")
        if not self.epsilon > 0:
            raise DomainError(f"binding energy must be positive, got {self.epsilon!r}")

    @property
    def energy(self) -> float:
        return -self.epsilon


@dataclass(frozen=True)
class RegimeDiagnostics:
    epsilon_beta: float
    one_minus_epsilon_beta: float
    alpha_sqrt_beta: float
    limit: float  # 4 (n + delta); epsilon*beta < 1 iff alpha*sqrt(beta) < limit
    flagged: bool
    message: str

    @property
    def ok(self) -> bool:
        return not self.flagged


def _check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise DomainError(f"binding energy must be positive and finite, got {epsilon!r}")
    return epsilon


def quantization_value(params: ModelParams, epsilon: float) -> float:
    """q(epsilon) = alpha / (2 (sqrt(eps) + sqrt(beta) eps)); strictly decreasing."""
    epsilon = _check_epsilon(epsilon)
    root = math.sqrt(epsilon)
    return params.alpha / (2.0 * (root + params.sqrt_beta * epsilon))


def epsilon_of_nu(params: ModelParams, nu: float) -> float:
    """Binding energy solving q(epsilon) = nu, in cancellation-free form.

    (1/4beta)(1 - sqrt(1 + 2 alpha sqrt(beta)/nu))^2 is rewritten as
    alpha^2 / (nu + sqrt(nu^2 + 2 alpha sqrt(beta) nu))^2, which is exact at
    beta = 0 and loses no digits for small beta.
    """
    if not nu > 0:
        raise NoFiniteSolutionError(f"n + delta must be positive, got {nu!r}")
    a = params.alpha
    denom = nu + math.sqrt(nu * nu + 2.0 * a * params.sqrt_beta * nu)
    return (a / denom) ** 2


def energy_closed_form(params: ModelParams, family: SpectralFamily, n: int) -> BoundState:
    nu = family.nu(n)
    return BoundState(int(n), epsilon_of_nu(params, nu), "closed", family.delta)


def solve_decreasing(
    func: Callable[[float], float],
    target: float,
    guess: float,
    tol: float = DEFAULT_ROOT_TOL,
    max_expand: int = 2000,
    max_iter: int = 400,
) -> float:
    """Find x > 0 with func(x) = target for a strictly decreasing positive func.

    The bracket is grown geometrically from ``guess`` and then bisected at
    geometric midpoints.  Terminates once |func(x) - target| <= tol*min(1, target)
    or the bracket can no longer be split in floating point.
    """
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    lo = hi = float(guess)
    for _ in range(max_expand):
        if func(lo) > target:
            break
        lo *= 0.5
    else:
        raise BracketError(f"no lower bracket for target {target!r}")
    for _ in range(max_expand):
        if func(hi) < target:
            break
        hi *= 2.0
    else:
        raise BracketError(f"no upper bracket for target {target!r}")

    stop = tol * min(1.0, target)
    best, best_gap = lo, abs(func(lo) - target)
    for _ in range(max_iter):
        mid = math.sqrt(lo) * math.sqrt(hi)
        if not (lo < mid < hi):
            mid = 0.5 * (lo + hi)
            if not (lo < mid < hi):
                break
        value = func(mid)
        gap = abs(value - target)
        if gap < best_gap:
            best, best_gap = mid, gap
        if gap <= stop:
            break
        if value > target:
            lo = mid
        else:
            hi = mid
    if best_gap > tol:
        raise BracketError(f"bisection stalled at |residual| = {best_gap:.3e} > {tol:.3e}")
    return best


def energy_root_find(
    params: ModelParams, family: SpectralFamily, n: int, tol: float = DEFAULT_ROOT_TOL
) -> BoundState:
    nu = family.nu(n)
    guess = params.alpha**2 / (4.0 * nu * nu)
    eps = solve_decreasing(lambda e: quantization_value(params, e), nu, guess, tol)
    return BoundState(int(n), eps, "root", family.delta)


def energy_series(params: ModelParams, nu: float, order: int = 2) -> float:
    """Small-beta expansion of E in powers of sqrt(beta), truncated at ``order``."""
    if not nu > 0:
        raise DomainError(f"nu must be positive, got {nu!r}")
    if order not in (0, 1, 2):
        raise DomainError(f"order must be 0, 1 or 2, got {order!r}")
    a = params.alpha
    terms = (
        -(a**2) / (4.0 * nu**2),
        a**3 / (4.0 * nu**3) * params.sqrt_beta,
        -5.0 * a**4 / (16.0 * nu**4) * params.beta,
    )
    return math.fsum(terms[: order + 1])


def family_from_reference(params: ModelParams, epsilon0: float) -> SpectralFamily:
    """The family containing a level with binding energy ``epsilon0``."""
    q = quantization_value(params, epsilon0)
    delta = q - math.floor(q)
    if delta >= 1.0:  # q just below an integer can round up
        delta = 0.0
    return SpectralFamily(delta)


def validate_regime(params: ModelParams, family: SpectralFamily, n: int) -> RegimeDiagnostics:
    nu = family.nu(n)
    eps = epsilon_of_nu(params, nu)
    eb = eps * params.beta
    a_sb = params.alpha * params.sqrt_beta
    limit = 4.0 * nu
    flagged = a_sb >= limit or eb >= 1.0 - SINGULAR_MARGIN
    if flagged:
        msg = (
            f"alpha*sqrt(beta) = {a_sb:.6g} >= 4(n+delta) = {limit:.6g}: "
            f"epsilon*beta = {eb:.6g}, eigenfunction phase prefactor diverges"
        )
    else:
        msg = "ok"
    return RegimeDiagnostics(eb, 1.0 - eb, a_sb, limit, flagged, msg)
