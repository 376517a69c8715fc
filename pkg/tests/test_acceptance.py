"""
Acceptance criteria, one test per criterion.

Every test records a single PASS/FAIL line through :func:`verdict`; the lines
are echoed immediately (visible with ``-s``) and repeated in the terminal
summary by ``conftest.py``.  Thresholds are hard-coded here on purpose so the
criteria cannot drift with library defaults.
"""

import itertools
import math

import numpy as np
import pytest

from minlength_coulomb.model import (
    ModelParams,
    NoFiniteSolutionError,
    SpectralFamily,
    energy_closed_form,
    energy_root_find,
    validate_regime,
)
from minlength_coulomb.quadrature import (
    QuadratureSpec,
    hermiticity_defect,
    inner_product,
    integrate_real_line,
    measure_integral,
    measure_integral_closed,
)
from minlength_coulomb.semiclassical import (
    ClassicalConfig,
    action_integral_closed,
    action_integral_numeric,
    wkb_spectrum,
)
from minlength_coulomb.wavefunction import Wavefunction, eigen_residual, standard_grid

from conftest import STATE_GRID, make_state
from testbed import TESTBED

VERDICTS: list[str] = []

GRID = standard_grid()
ALPHAS = (0.5, 1.0, 2.0, 5.0)
BETAS = (0.0, 1e-6, 1e-4, 1e-2)
DELTAS = (0.0, 0.25, 0.5, 0.9)
N_MAX = 10


def verdict(label: str, ok: bool, detail: str) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    VERDICTS.append(line)
    print(line)
    return ok


def spectral_grid():
    """Unflagged (params, family, n) over the shared parameter grid."""
    for a, b, d in itertools.product(ALPHAS, BETAS, DELTAS):
        params, fam = ModelParams(a, b), SpectralFamily(d)
        for n in range(fam.min_level, N_MAX + 1):
            if not validate_regime(params, fam, n).flagged:
                yield params, fam, n


@pytest.fixture(scope="module")
def states():
    return [make_state(*args) for args in STATE_GRID]


def test_c01_hydrogen_limit():
    params, fam = ModelParams(1.0, 0.0), SpectralFamily(0.0)
    worst = max(
        abs(energy_closed_form(params, fam, n).energy + 1 / (4 * n * n)) * 4 * n * n for n in range(1, 11)
    )
    assert verdict("C01 hydrogen limit n=1..10", worst <= 1e-12, f"max rel dev {worst:.3e} <= 1e-12")


def test_c02_closed_vs_root():
    worst, count = 0.0, 0
    for params, fam, n in spectral_grid():
        exact = energy_closed_form(params, fam, n).epsilon
        root = energy_root_find(params, fam, n).epsilon
        worst = max(worst, abs(root - exact) / exact)
        count += 1
    assert verdict("C02 closed form vs root finder", worst <= 1e-10, f"{count} levels, max rel dev {worst:.3e} <= 1e-10")


def test_c03_wkb_coincidence():
    worst, count = 0.0, 0
    for a, b, d in itertools.product(ALPHAS, BETAS, DELTAS):
        params, fam = ModelParams(a, b), SpectralFamily(d)
        for s in wkb_spectrum(params, fam, N_MAX):
            if validate_regime(params, fam, s.n).flagged:
                continue
            exact = energy_closed_form(params, fam, s.n).epsilon
            worst = max(worst, abs(s.epsilon - exact) / exact)
            count += 1
    assert verdict("C03 WKB equals exact spectrum", worst <= 1e-10, f"{count} levels, max rel dev {worst:.3e} <= 1e-10")


def test_c04_action_identity():
    betas = (0.0, 1e-6, 1e-2, 0.5, 4.0)
    epsilons = (1e-3, 0.2277, 1.0, 9.0)
    worst, count = 0.0, 0
    for b, e in itertools.product(betas, epsilons):
        cfg = ClassicalConfig.from_epsilon(ModelParams(1.0, b), e)
        res = action_integral_numeric(cfg)
        closed = action_integral_closed(cfg)
        assert res.converged
        worst = max(worst, abs(res.value.real - closed) / closed)
        count += 1
    assert count == 20
    assert verdict("C04 action integral identity", worst <= 1e-9, f"{count} (beta, eps) pairs, max rel dev {worst:.3e} <= 1e-9")


@pytest.mark.parametrize("beta,bound", [(1e-6, 1e-2), (1e-8, 1e-4)])
def test_c05_sqrt_beta_correction(beta, bound):
    fam = SpectralFamily(0.0)
    e0 = energy_closed_form(ModelParams(1.0, 0.0), fam, 1).energy
    e1 = energy_closed_form(ModelParams(1.0, beta), fam, 1).energy
    ratio = (e1 - e0) / math.sqrt(beta)
    dev = abs(ratio - 0.25) / 0.25
    assert verdict(
        f"C05 sqrt(beta) slope at beta={beta:g}",
        dev <= bound,
        f"ratio {ratio:.12f}, rel dev {dev:.4e} <= {bound:g}",
    )


def test_c06_ode_residual(states):
    worst = max(float(np.max(np.abs(wf.ode_residual(GRID)) / wf.ode_residual_scale(GRID))) for wf in states)
    # negative control: an eigenfunction built at eps + 1e-3 tested against the original energy
    ref = states[3]
    wrong = Wavefunction(ref.params, ref.epsilon + 1e-3)
    control = float(np.max(np.abs(wrong.ode_residual(GRID, energy=ref.energy)) / wrong.ode_residual_scale(GRID)))
    ok = worst <= 1e-9 and control >= 1e-4
    assert verdict(
        "C06 ODE residual",
        ok,
        f"{len(states)} states, max {worst:.3e} <= 1e-9; negative control {control:.3e} >= 1e-4",
    )


def test_c07_normalization(states):
    results = [inner_product(wf, wf) for wf in states]
    worst = max(abs(r.value.real - 1.0) for r in results)
    ok = worst <= 1e-8 and all(r.converged for r in results)
    assert verdict("C07 normalization", ok, f"{len(states)} states, max |<psi|psi> - 1| {worst:.3e} <= 1e-8")


def test_c08_measure_identity(states):
    dev, zero = 0.0, 0.0
    for wf, args in zip(states, STATE_GRID):
        res = measure_integral(wf)
        assert res.converged
        dev = max(dev, abs(res.value - measure_integral_closed(wf)))
        if args[2] == 0.0:
            zero = max(zero, abs(res.value))
    ok = dev <= 1e-8 and zero <= 1e-9
    assert verdict("C08 measure integral identity", ok, f"max abs dev {dev:.3e} <= 1e-8; delta=0 max |I| {zero:.3e} <= 1e-9")


def test_c09_hermiticity_defect():
    families = {}
    for args in STATE_GRID:
        families.setdefault(args[:3], []).append(args[3])
    same = 0.0
    pairs = 0
    for (a, b, d), levels in families.items():
        params, fam = ModelParams(a, b), SpectralFamily(d)
        levels = sorted(set(levels) | {fam.min_level, fam.min_level + 1})
        for n, m in itertools.combinations(levels, 2):
            res = hermiticity_defect(Wavefunction.for_level(params, fam, n), Wavefunction.for_level(params, fam, m))
            assert res.converged
            same = max(same, abs(res.value))
            pairs += 1
    params = ModelParams(1.0, 0.01)
    res = hermiticity_defect(
        Wavefunction.for_level(params, SpectralFamily(0.0), 1),
        Wavefunction.for_level(params, SpectralFamily(0.5), 0),
    )
    cross = abs(res.value)
    ok = same <= 1e-6 and cross >= 1e-3
    assert verdict(
        "C09 hermiticity defect",
        ok,
        f"{pairs} same-family pairs max {same:.3e} <= 1e-6; cross-family {cross:.6f} >= 1e-3",
    )


def test_c10_eigen_equation(states):
    worst = max(float(np.max(np.abs(eigen_residual(wf, GRID)))) for wf in states)
    assert verdict("C10 eigen-equation residual", worst <= 1e-7, f"{len(states)} states, max {worst:.3e} <= 1e-7")


def test_c11_degenerate_contract():
    params = ModelParams(1.0, 0.01)
    with pytest.raises(NoFiniteSolutionError):
        energy_closed_form(params, SpectralFamily(0.0), 0)
    eps = [energy_closed_form(params, SpectralFamily(10.0**-k), 0).epsilon for k in range(1, 7)]
    ok = all(b > a for a, b in zip(eps, eps[1:]))
    assert verdict(
        "C11 degenerate level contract",
        ok,
        f"(0, 0) rejected; eps(delta=1e-1..1e-6) = {eps[0]:.4g} .. {eps[-1]:.4g}, monotone={ok}",
    )


def test_c12_quadrature_testbed():
    spec = QuadratureSpec()
    worst_ratio, within, converged = 0.0, 0, 0
    for name, (f, exact) in TESTBED.items():
        res = integrate_real_line(f, spec)
        err = abs(res.value - exact)
        converged += res.converged
        within += err <= res.error_estimate
        worst_ratio = max(worst_ratio, err / res.error_estimate if res.error_estimate > 0 else math.inf)
    ok = len(TESTBED) == 20 and converged == 20 and worst_ratio <= 10.0
    assert verdict(
        "C12 quadrature testbed",
        ok,
        f"{converged}/20 converged, {within}/20 within estimate, max true/estimate {worst_ratio:.3g} <= 10",
    )
