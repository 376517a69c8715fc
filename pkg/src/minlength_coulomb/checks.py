"""
Verification suites run by ``minlength-coulomb verify``.

Each suite returns a list of :class:`CheckRecord`; thresholds are the
defaults below and are reported alongside every measurement.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Sequence

import numpy as np

from .model import ModelParams, SpectralFamily, energy_closed_form
from .quadrature import (
    QuadratureSpec,
    hermiticity_defect,
    hermiticity_defect_closed,
    inner_product,
    measure_integral,
    measure_integral_closed,
)
from .report import CheckRecord
from .semiclassical import (
    ClassicalConfig,
    action_integral_closed,
    action_integral_numeric,
    wkb_spectrum,
)
from .wavefunction import Wavefunction, eigen_residual, standard_grid

__all__ = ["SUITES", "TOLERANCES", "run_suite"]

TOLERANCES = {
    "ode": 1e-9,
    "norm": 1e-8,
    "ortho": 1e-6,
    "x6": 1e-8,
    "x6_zero": 1e-9,
    "hermiticity": 1e-6,
    "cross_family": 1e-3,
    "inverse_x": 1e-7,
    "boundary_limit": 1e-6,
    "wkb": 1e-10,
    "action": 1e-9,
}

# far enough that phi(p) - phi(-inf) ~ alpha/(eps |p|) is below the tolerance
_FAR_LEFT = -1e10


def _states(params: ModelParams, family: SpectralFamily, levels: Sequence[int]) -> list[tuple[int, Wavefunction]]:
    return [(n, Wavefunction.for_level(params, family, n)) for n in levels]


def _tag(family: SpectralFamily, n: int) -> str:
    return f"delta={family.delta:g},n={n}"


def check_ode(params, family, levels, spec, grid) -> list[CheckRecord]:
    out = []
    for n, wf in _states(params, family, levels):
        r = np.abs(wf.ode_residual(grid)) / wf.ode_residual_scale(grid)
        out.append(CheckRecord.close(f"ode_residual[{_tag(family, n)}]", float(r.max()), 0.0, TOLERANCES["ode"]))
    return out


def check_norm(params, family, levels, spec, grid) -> list[CheckRecord]:
    out = []
    for n, wf in _states(params, family, levels):
        res = inner_product(wf, wf, spec)
        out.append(
            CheckRecord.close(
                f"norm[{_tag(family, n)}]",
                float(res.value.real),
                1.0,
                TOLERANCES["norm"],
                note=f"quad_err={res.error_estimate:.3e}",
                converged=res.converged,
            )
        )
    return out


def check_ortho(params, family, levels, spec, grid) -> list[CheckRecord]:
    out = []
    states = _states(params, family, levels)
    for (n, a), (m, b) in itertools.combinations(states, 2):
        res = inner_product(a, b, spec)
        out.append(
            CheckRecord.close(
                f"overlap[{_tag(family, n)};n={m}]", abs(res.value), 0.0, TOLERANCES["ortho"], converged=res.converged
            )
        )
    return out


def check_x6(params, family, levels, spec, grid) -> list[CheckRecord]:
    out = []
    for n, wf in _states(params, family, levels):
        res = measure_integral(wf, spec)
        expected = measure_integral_closed(wf)
        if family.delta == 0.0:
            out.append(
                CheckRecord.close(
                    f"measure_integral[{_tag(family, n)}]", abs(res.value), 0.0, TOLERANCES["x6_zero"],
                    converged=res.converged,
                )
            )
        else:
            out.append(
                CheckRecord.close(
                    f"measure_integral_dev[{_tag(family, n)}]",
                    abs(res.value - expected),
                    0.0,
                    TOLERANCES["x6"],
                    note=f"closed_form={expected:.17g}",
                    converged=res.converged,
                )
            )
    return out


def check_hermiticity(
    params, family, levels, spec, grid, pairs=None, cross_family=None
) -> list[CheckRecord]:
    out = []
    if pairs is None:
        pairs = list(zip(levels, levels[1:])) or [(levels[0], levels[0])] if levels else []
    for n, m in pairs:
        a = Wavefunction.for_level(params, family, n)
        b = Wavefunction.for_level(params, family, m)
        d = hermiticity_defect(a, b, spec)
        out.append(
            CheckRecord.close(
                f"hermiticity_defect[{_tag(family, n)};n={m}]", abs(d.value), 0.0, TOLERANCES["hermiticity"],
                converged=d.converged,
            )
        )
    if cross_family is not None:
        fa, fb = (SpectralFamily(d) for d in cross_family)
        a = Wavefunction.for_level(params, fa, fa.min_level)
        b = Wavefunction.for_level(params, fb, fb.min_level)
        d = hermiticity_defect(a, b, spec)
        predicted = hermiticity_defect_closed(a, b)
        out.append(
            CheckRecord.at_least(
                f"hermiticity_defect_cross[{_tag(fa, fa.min_level)};{_tag(fb, fb.min_level)}]",
                abs(d.value),
                TOLERANCES["cross_family"],
                note=f"expected-violation; closed_form={predicted:.17g}",
                converged=d.converged,
            )
        )
    return out


def check_inverse_x(params, family, levels, spec, grid) -> list[CheckRecord]:
    out = []
    for n, wf in _states(params, family, levels):
        r = np.abs(eigen_residual(wf, grid, spec))
        out.append(CheckRecord.close(f"eigen_equation_residual[{_tag(family, n)}]", float(r.max()), 0.0, TOLERANCES["inverse_x"]))
        c = wf.boundary_constant()
        lim = wf.boundary_constant_limit(_FAR_LEFT)
        out.append(
            CheckRecord.close(
                f"boundary_constant_limit[{_tag(family, n)}]",
                abs(lim - c) / abs(c),
                0.0,
                TOLERANCES["boundary_limit"],
                note=f"p={_FAR_LEFT:g}",
            )
        )
    return out


def check_wkb(params, family, levels, spec, grid) -> list[CheckRecord]:
    out = []
    if not levels:
        return out
    wkb = {s.n: s for s in wkb_spectrum(params, family, max(levels))}
    devs = []
    for n in levels:
        exact = energy_closed_form(params, family, n)
        devs.append(abs(wkb[n].epsilon - exact.epsilon) / exact.epsilon)
        cfg = ClassicalConfig.from_epsilon(params, exact.epsilon)
        closed = action_integral_closed(cfg)
        numeric = action_integral_numeric(cfg, spec)
        out.append(
            CheckRecord.close(
                f"action_rel_dev[{_tag(family, n)}]", abs(numeric.value.real - closed) / closed, 0.0,
                TOLERANCES["action"], converged=numeric.converged,
            )
        )
    out.insert(0, CheckRecord.close("wkb_vs_exact_max_rel_dev", max(devs), 0.0, TOLERANCES["wkb"]))
    return out


SUITES: dict[str, Callable[..., list[CheckRecord]]] = {
    "ode": check_ode,
    "norm": check_norm,
    "ortho": check_ortho,
    "x6": check_x6,
    "hermiticity": check_hermiticity,
    "inverse-x": check_inverse_x,
    "wkb": check_wkb,
}


def run_suite(
    name: str,
    params: ModelParams,
    family: SpectralFamily,
    levels: Sequence[int],
    spec: QuadratureSpec | None = None,
    grid: np.ndarray | None = None,
    pairs=None,
    cross_family=None,
) -> list[CheckRecord]:
    spec = spec or QuadratureSpec()
    grid = standard_grid() if grid is None else grid
    levels = list(levels)
    names = list(SUITES) if name == "all" else [name]
    records: list[CheckRecord] = []
    for suite in names:
        fn = SUITES[suite]
        if suite == "hermiticity":
            records += fn(params, family, levels, spec, grid, pairs=pairs, cross_family=cross_family)
        else:
            records += fn(params, family, levels, spec, grid)
    return records
