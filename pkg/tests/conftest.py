import math

import pytest

from minlength_coulomb.model import ModelParams, SpectralFamily
from minlength_coulomb.wavefunction import Wavefunction

# Frozen oracle values: 40-digit mpmath bisection on
# alpha / (2 (sqrt(e) + sqrt(beta) e)) = nu, independent of the closed form.
EPS_A1_B01_NU1 = 0.22774424948338865
EPS_A1_B01_NU05 = 0.83920216900383957
EPS_A1_B01_NU2 = 0.05955759149242265
# normalization constant at EPS_A1_B01_NU1 from 1/sqrt(mpmath quadrature of the norm)
C_A1_B01_NU1 = 0.26331561203960667
C_A1_B01_NU05 = 0.70206076342016245


def bisect_epsilon(alpha, beta, nu, iters=300):
    """Plain linear bisection on the quantization condition (test oracle)."""
    f = lambda e: alpha / (2.0 * (math.sqrt(e) + math.sqrt(beta) * e)) - nu
    lo, hi = 1e-300, 1e300
    for _ in range(iters):
        mid = math.sqrt(lo * hi) if hi / lo > 4 else 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.fixture
def deformed():
    return ModelParams(1.0, 0.01)


@pytest.fixture
def ground(deformed):
    return Wavefunction.for_level(deformed, SpectralFamily(0.0), 1)


@pytest.fixture
def half_family_ground(deformed):
    return Wavefunction.for_level(deformed, SpectralFamily(0.5), 0)


STATE_GRID = [
    (1.0, 0.0, 0.0, 1),
    (1.0, 0.0, 0.0, 3),
    (1.0, 0.0, 0.5, 0),
    (1.0, 0.01, 0.0, 1),
    (1.0, 0.01, 0.0, 2),
    (1.0, 0.01, 0.5, 0),
    (0.5, 1e-4, 0.25, 2),
    (2.0, 1e-2, 0.9, 1),
    (2.0, 1e-6, 0.0, 5),
    (5.0, 1e-2, 0.25, 0),
    (5.0, 1e-4, 0.0, 10),
    (3.0, 0.04, 0.25, 1),
]


def make_state(alpha, beta, delta, n):
    return Wavefunction.for_level(ModelParams(alpha, beta), SpectralFamily(delta), n)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS

    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
