"""
Command-line interface.

Usage:
    minlength-coulomb spectrum --alpha 1 --beta 0.01 --levels 5
    minlength-coulomb wavefunction --alpha 1 --beta 0.01 --n 1 --format json
    minlength-coulomb verify --suite all --alpha 1 --beta 0.01
    minlength-coulomb families --alpha 1 --beta 0 --epsilon0 1
    minlength-coulomb expand --alpha 1 --n 1

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 regime refusal.
"""

from __future__ import annotations

import math
import sys

import click

from .checks import SUITES, run_suite
from .model import (
    DomainError,
    ModelParams,
    SpectralFamily,
    energy_closed_form,
    energy_root_find,
    energy_series,
    epsilon_of_nu,
    family_from_reference,
    quantization_value,
    validate_regime,
)
from .quadrature import QuadratureSpec
from .report import RunReport, render_table
from .semiclassical import wkb_spectrum
from .wavefunction import Wavefunction, standard_grid

__all__ = ["main"]

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_REGIME = 0, 1, 2, 3

DEFAULT_BETAS = (0.0, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)


def _shared_options(func):
    options = [
        click.option("--alpha", type=float, default=1.0, show_default=True, help="Coupling strength (> 0)."),
        click.option("--beta", type=float, default=0.0, show_default=True, help="Deformation parameter (>= 0)."),
        click.option("--delta", type=float, default=0.0, show_default=True, help="Family offset in [0, 1)."),
        click.option("--levels", type=click.IntRange(min=0), default=5, show_default=True),
        click.option("--n", "level", type=click.IntRange(min=0), default=None, help="Single level index."),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True),
        click.option("--abs-tol", type=float, default=1e-11, show_default=True),
        click.option("--rel-tol", type=float, default=1e-10, show_default=True),
        click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None),
        click.option("--allow-flagged", is_flag=True, help="Proceed in the eps*beta >= 1 regime."),
    ]
    for opt in reversed(options):
        func = opt(func)
    return func


def _setup(alpha, beta, delta, abs_tol, rel_tol):
    try:
        return ModelParams(alpha, beta), SpectralFamily(delta), QuadratureSpec(abs_tol, rel_tol)
    except (DomainError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _meta(command: str, params: ModelParams, family: SpectralFamily, **extra) -> dict:
    return {"command": command, "alpha": params.alpha, "beta": params.beta, "delta": family.delta, **extra}


def _refuse(message: str, overridable: bool = True) -> None:
    hint = " (use --allow-flagged to override)" if overridable else ""
    click.echo(f"Error: {message}{hint}", err=True)
    sys.exit(EXIT_REGIME)


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Bound states of -alpha/X with a minimal-length deformed algebra."""


@main.command()
@_shared_options
def spectrum(alpha, beta, delta, levels, level, fmt, abs_tol, rel_tol, out, allow_flagged):
    """Levels by closed form, root finding, WKB and the small-beta series."""
    params, family, _ = _setup(alpha, beta, delta, abs_tol, rel_tol)
    ns = [level] if level is not None else family.levels(levels)
    try:
        wkb = {s.n: s for s in wkb_spectrum(params, family, max(ns))} if ns else {}
        rows = []
        for n in ns:
            diag = validate_regime(params, family, n)
            if diag.flagged and not allow_flagged:
                _refuse(f"level n={n}: {diag.message}")
            rows.append({
                "n": n,
                "E_closed": energy_closed_form(params, family, n).energy,
                "E_root": energy_root_find(params, family, n).energy,
                "E_wkb": wkb[n].energy,
                "E_series": energy_series(params, n + family.delta, 2),
                "eps_beta": diag.epsilon_beta,
                "regime_flag": diag.flagged,
            })
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    columns = ("n", "E_closed", "E_root", "E_wkb", "E_series", "eps_beta", "regime_flag")
    _emit(render_table(columns, rows, fmt, _meta("spectrum", params, family)), out)


@main.command()
@_shared_options
@click.option("--p-max", type=float, default=50.0, show_default=True)
@click.option("--points", type=click.IntRange(min=2), default=1001, show_default=True)
def wavefunction(alpha, beta, delta, levels, level, fmt, abs_tol, rel_tol, out, allow_flagged, p_max, points):
    """Tabulate psi(p) for one level on a symmetric momentum grid."""
    params, family, _ = _setup(alpha, beta, delta, abs_tol, rel_tol)
    n = family.min_level if level is None else level
    try:
        diag = validate_regime(params, family, n)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    if diag.flagged:
        # the eigenfunction itself is undefined here, so the override cannot help
        _refuse(f"level n={n}: {diag.message}", overridable=False)
    wf = Wavefunction.for_level(params, family, n)
    grid = standard_grid(p_max, points)
    psi = wf.evaluate(grid)
    phase = wf.phase(grid)
    rows = [
        {"p": float(p), "re": float(v.real), "im": float(v.imag), "abs": float(abs(v)), "phase": float(f)}
        for p, v, f in zip(grid, psi, phase)
    ]
    meta = _meta("wavefunction", params, family, n=n, epsilon=wf.epsilon, norm_const=wf.norm_const)
    _emit(render_table(("p", "re", "im", "abs", "phase"), rows, fmt, meta), out)


def _parse_pair(text: str | None, cast):
    if text is None:
        return None
    try:
        a, b = (cast(x) for x in text.split(","))
    except ValueError as exc:
        raise click.BadParameter(f"expected two comma-separated values, got {text!r}") from exc
    return a, b


@main.command()
@_shared_options
@click.option("--suite", type=click.Choice([*SUITES, "all"]), default="all", show_default=True)
@click.option("--pair", default=None, help="Level pair 'n,m' for the hermiticity suite.")
@click.option("--cross-family", default=None, help="Family pair 'delta1,delta2' expected to violate hermiticity.")
def verify(alpha, beta, delta, levels, level, fmt, abs_tol, rel_tol, out, allow_flagged, suite, pair, cross_family):
    """Run numerical identity checks; exit 1 if any check fails."""
    params, family, spec = _setup(alpha, beta, delta, abs_tol, rel_tol)
    pairs = [_parse_pair(pair, int)] if pair else None
    cross = _parse_pair(cross_family, float)
    ns = [level] if level is not None else family.levels(levels)
    if pairs:
        ns = sorted(set(ns) | set(pairs[0]))
    try:
        for n in ns:
            diag = validate_regime(params, family, n)
            if diag.flagged:
                _refuse(f"level n={n}: {diag.message}", overridable=False)
        if cross is not None:
            for d in cross:
                fam = SpectralFamily(d)
                if validate_regime(params, fam, fam.min_level).flagged:
                    _refuse(f"family delta={d}: flagged regime", overridable=False)
        records = run_suite(suite, params, family, ns, spec, pairs=pairs, cross_family=cross)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    report = RunReport(
        "verify",
        {"suite": suite, "alpha": params.alpha, "beta": params.beta, "delta": family.delta,
         "levels": ns, "pair": pair, "cross_family": cross_family,
         "abs_tol": spec.abs_tol, "rel_tol": spec.rel_tol},
        records,
    )
    _emit(report.render(fmt), out)
    sys.exit(EXIT_OK if report.passed else EXIT_CHECK_FAILED)


@main.command()
@_shared_options
@click.option("--epsilon0", type=float, required=True, help="Binding energy declared to be a level.")
def families(alpha, beta, delta, levels, level, fmt, abs_tol, rel_tol, out, allow_flagged, epsilon0):
    """Family offset delta fixed by one reference level."""
    params, _, _ = _setup(alpha, beta, delta, abs_tol, rel_tol)
    try:
        fam = family_from_reference(params, epsilon0)
        q = quantization_value(params, epsilon0)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    row = {"epsilon0": epsilon0, "q": q, "delta": fam.delta, "n": int(math.floor(q))}
    meta = {"command": "families", "alpha": params.alpha, "beta": params.beta}
    _emit(render_table(("epsilon0", "q", "delta", "n"), [row], fmt, meta), out)


@main.command()
@_shared_options
@click.option("--betas", default=None, help="Comma-separated beta values (default 0,1e-2..1e-8).")
def expand(alpha, beta, delta, levels, level, fmt, abs_tol, rel_tol, out, allow_flagged, betas):
    """Compare one exact level with its small-beta series over a sweep of beta."""
    params, family, _ = _setup(alpha, beta, delta, abs_tol, rel_tol)
    n = family.min_level if level is None else level
    try:
        beta_list = DEFAULT_BETAS if betas is None else tuple(float(b) for b in betas.split(","))
    except ValueError as exc:
        raise click.BadParameter(f"invalid --betas {betas!r}") from exc
    try:
        nu = family.nu(n)
        e0 = -epsilon_of_nu(ModelParams(params.alpha, 0.0), nu)
        rows = []
        for b in beta_list:
            p = ModelParams(params.alpha, b)
            exact = -epsilon_of_nu(p, nu)
            series = energy_series(p, nu, 2)
            rem = exact - series
            rows.append({
                "beta": b,
                "E_exact": exact,
                "E_series": series,
                "remainder": rem,
                "remainder_over_beta32": rem / b**1.5 if b > 0 else float("nan"),
                "shift_over_sqrt_beta": (exact - e0) / math.sqrt(b) if b > 0 else float("nan"),
            })
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    columns = ("beta", "E_exact", "E_series", "remainder", "remainder_over_beta32", "shift_over_sqrt_beta")
    _emit(render_table(columns, rows, fmt, _meta("expand", params, family, n=n)), out)


if __name__ == "__main__":
    main()
