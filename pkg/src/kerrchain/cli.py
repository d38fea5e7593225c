"""Command-line interface: batch runs emitting CSV/JSON tables and optional
rendered figures.

Exit codes: 0 success, 2 configuration errors, 3 numerical failures.
"""

from __future__ import annotations

import json
import sys
from dataclasses import replace
from pathlib import Path

import click
import numpy as np

from .closed import NormDriftError, period, resonant_epsilon
from .entanglement import DEFAULT_ZERO_THRESHOLD, entanglement_report
from .experiments import (
    PRESETS,
    REGIME_COLUMNS,
    extract_regime_table,
    run_preset,
    run_time_series,
    run_validate_truncation,
    steady_state_row,
    sweep_steady_state,
)
from .hilbert import SystemParams
from .lindblad import DegenerateSteadyStateError, PositivityError
from .plots import plot_table
from .reporting import emit_table

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_config_file(path: str | None, known: set[str]) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_CONFIG, f"cannot read config file {path}: {exc}")
    if not isinstance(data, dict):
        _fail(EXIT_CONFIG, f"config file {path} must hold a JSON object")
    unknown = set(data) - known
    if unknown:
        _fail(EXIT_CONFIG, f"unknown config keys: {sorted(unknown)}")
    return data


def _resolve(ctx: click.Context, config_file: str | None, keys: dict) -> tuple[dict, dict]:
    """Merge defaults < config file < explicit flags; track provenance."""
    file_values = _load_config_file(config_file, set(keys))
    resolved, provenance = {}, {}
    for key, flag_value in keys.items():
        source = ctx.get_parameter_source(key)
        explicit = source is not None and source.name != "DEFAULT"
        if explicit:
            resolved[key], provenance[key] = flag_value, "flag"
        elif key in file_values:
            resolved[key], provenance[key] = file_values[key], "file"
        else:
            resolved[key], provenance[key] = flag_value, "default"
    return resolved, provenance


def _build_params(cfg: dict) -> tuple[SystemParams, float]:
    """SystemParams plus the reference period T from a resolved config."""
    alpha = cfg["alpha_over_chi"]  # chi == 1 internally
    branch = cfg["epsilon_branch"]
    try:
        if branch == "explicit":
            if cfg.get("epsilon_over_alpha") is None:
                raise ValueError("epsilon-branch 'explicit' requires --epsilon-over-alpha")
            eps = cfg["epsilon_over_alpha"] * alpha
            t_unit = period(alpha, "minus")
        else:
            eps = resonant_epsilon(alpha, branch)
            t_unit = period(alpha, branch)
        kq = cfg["kappa_over_alpha"] * alpha
        params = SystemParams(
            alpha=alpha,
            epsilon=eps,
            delta=cfg["delta_over_alpha"] * alpha,
            kappa=(kq, kq, kq),
            damping=cfg["damping"],
        )
    except ValueError as exc:
        _fail(EXIT_CONFIG, str(exc))
    return params, t_unit


def _emit(rows, cfg: dict, provenance: dict, output: str, fmt: str,
          figure: str | None, title: str = ""):
    config_block = dict(cfg)
    config_block.update({f"provenance_{k}": v for k, v in provenance.items()})
    try:
        emit_table(rows, output, fmt, config_block)
    except OSError as exc:
        _fail(EXIT_CONFIG, f"cannot write {output}: {exc}")
    click.echo(f"wrote {output} ({len(rows)} rows)")
    if figure:
        plot_table(rows, figure, title)
        click.echo(f"wrote {figure}")


def _numerical_guard(fn):
    try:
        return fn()
    except (NormDriftError, PositivityError, DegenerateSteadyStateError) as exc:
        _fail(EXIT_NUMERICAL, str(exc))
    except np.linalg.LinAlgError as exc:
        _fail(EXIT_NUMERICAL, f"linear-algebra failure: {exc}")


def common_options(fn):
    fn = click.option("--alpha-over-chi", type=float, default=0.001, show_default=True,
                      help="Pump strength in units of the Kerr nonlinearity.")(fn)
    fn = click.option("--epsilon-branch", type=click.Choice(["plus", "minus", "explicit"]),
                      default="minus", show_default=True,
                      help="Resonant coupling branch, or 'explicit' to set it directly.")(fn)
    fn = click.option("--epsilon-over-alpha", type=float, default=None,
                      help="Coupling in units of alpha (with --epsilon-branch explicit).")(fn)
    fn = click.option("--delta-over-alpha", type=float, default=0.0, show_default=True,
                      help="Detuning added to epsilon, in units of alpha.")(fn)
    fn = click.option("--kappa-over-alpha", type=float, default=0.0, show_default=True,
                      help="Per-mode damping constant in units of alpha.")(fn)
    fn = click.option("--n-max", type=int, default=1, show_default=True,
                      help="Per-mode photon-number cutoff.")(fn)
    fn = click.option("--t-end-in-T", "t_end_in_t", type=float, default=1.0,
                      show_default=True, help="Evolution length in periods T.")(fn)
    fn = click.option("--n-points", type=int, default=201, show_default=True)(fn)
    fn = click.option("--output", "-o", type=click.Path(), default="out.csv",
                      show_default=True)(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                      default="csv", show_default=True)(fn)
    fn = click.option("--figure", type=click.Path(), default=None,
                      help="Also render the table to this image file.")(fn)
    fn = click.option("--config", "config_file", type=click.Path(exists=False),
                      default=None, help="JSON file with default option values.")(fn)
    return fn


def _collect_cfg(ctx, config_file, **kwargs):
    return _resolve(ctx, config_file, kwargs)


@click.group(invoke_without_command=True)
@click.version_option()
@click.pass_context
def main(ctx):
    """Dynamics and entanglement of a pumped chain of three Kerr oscillators."""
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())
        ctx.exit(0)


@main.command("evolve-closed")
@common_options
@click.pass_context
def evolve_closed(ctx, config_file, **kwargs):
    """Undamped time series of correlations and negativities."""
    cfg, prov = _collect_cfg(ctx, config_file, **kwargs)
    cfg["damping"] = "none"
    cfg["kappa_over_alpha"] = 0.0
    params, t_unit = _build_params(cfg)
    rows = _numerical_guard(lambda: run_time_series(
        params, t_unit, cfg["t_end_in_t"], cfg["n_points"], n_max=cfg["n_max"]))
    _emit(rows, cfg, prov, cfg["output"], cfg["fmt"], cfg["figure"], "closed evolution")


@main.command("evolve-open")
@common_options
@click.option("--damping", type=click.Choice(["amplitude", "phase"]),
              default="amplitude", show_default=True)
@click.pass_context
def evolve_open(ctx, config_file, **kwargs):
    """Damped (master equation) time series."""
    cfg, prov = _collect_cfg(ctx, config_file, **kwargs)
    if cfg["kappa_over_alpha"] <= 0:
        _fail(EXIT_CONFIG, "evolve-open requires --kappa-over-alpha > 0")
    params, t_unit = _build_params(cfg)
    rows = _numerical_guard(lambda: run_time_series(
        params, t_unit, cfg["t_end_in_t"], cfg["n_points"], n_max=cfg["n_max"]))
    _emit(rows, cfg, prov, cfg["output"], cfg["fmt"], cfg["figure"],
          f"{cfg['damping']} damping")


@main.command("steady-state")
@common_options
@click.option("--damping", type=click.Choice(["amplitude", "phase"]),
              default="amplitude", show_default=True)
@click.pass_context
def steady_state_cmd(ctx, config_file, **kwargs):
    """Single steady-state solution at the given damping constant."""
    cfg, prov = _collect_cfg(ctx, config_file, **kwargs)
    if cfg["kappa_over_alpha"] <= 0:
        _fail(EXIT_CONFIG, "steady-state requires --kappa-over-alpha > 0")
    params, _ = _build_params(cfg)
    row = _numerical_guard(lambda: steady_state_row(params, cfg["kappa_over_alpha"]))
    _emit([row], cfg, prov, cfg["output"], cfg["fmt"], None)


@main.command("sweep-kappa")
@common_options
@click.option("--damping", type=click.Choice(["amplitude", "phase"]),
              default="amplitude", show_default=True)
@click.option("--kappa-lo", type=float, default=0.05, show_default=True)
@click.option("--kappa-hi", type=float, default=10.0, show_default=True)
@click.option("--sweep-points", type=int, default=120, show_default=True)
@click.option("--regime-output", type=click.Path(), default=None,
              help="Also extract and write the regime table to this path.")
@click.pass_context
def sweep_kappa(ctx, config_file, **kwargs):
    """Steady-state sweep over the damping constant, with optional regime
    table extraction."""
    cfg, prov = _collect_cfg(ctx, config_file, **kwargs)
    params, _ = _build_params(cfg)
    grid = np.geomspace(cfg["kappa_lo"], cfg["kappa_hi"], cfg["sweep_points"])

    def work():
        rows = sweep_steady_state(params, grid)
        regime_rows = None
        if cfg["regime_output"]:
            table = extract_regime_table(
                rows, classify_at=lambda ka: str(
                    steady_state_row(params, ka)["subtype"]))
            regime_rows = table.rows()
        return rows, regime_rows

    rows, regime_rows = _numerical_guard(work)
    _emit(rows, cfg, prov, cfg["output"], cfg["fmt"], cfg["figure"],
          "steady-state sweep")
    if regime_rows:
        emit_table(regime_rows, cfg["regime_output"], cfg["fmt"],
                   dict(cfg), columns=list(REGIME_COLUMNS))
        click.echo(f"wrote {cfg['regime_output']} ({len(regime_rows)} rows)")


@main.command("classify-state")
@click.option("--state-file", type=click.Path(exists=True), required=True,
              help="JSON list of 8 amplitudes ([re, im] pairs or numbers).")
@click.option("--zero-threshold", type=float, default=DEFAULT_ZERO_THRESHOLD,
              show_default=True)
def classify_state(state_file, zero_threshold):
    """Negativities and tripartite subtype of a supplied qubit-truncated
    state."""
    try:
        raw = json.loads(Path(state_file).read_text())
        amps = np.array([complex(v[0], v[1]) if isinstance(v, list) else complex(v)
                         for v in raw])
        if amps.shape != (8,):
            raise ValueError(f"expected 8 amplitudes, got {amps.shape}")
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        _fail(EXIT_CONFIG, f"bad state file: {exc}")
    norm = np.linalg.norm(amps)
    if norm < 1e-12:
        _fail(EXIT_CONFIG, "state vector has zero norm")
    amps = amps / norm
    rho = np.outer(amps, amps.conj())
    report = entanglement_report(rho, dims=(2, 2, 2), zero_threshold=zero_threshold)
    click.echo(json.dumps(report.as_dict(), indent=2))


@main.command("validate-truncation")
@common_options
@click.pass_context
def validate_truncation(ctx, config_file, **kwargs):
    """Fidelity deviation of the truncated closed form against full
    propagation."""
    cfg, prov = _collect_cfg(ctx, config_file, **kwargs)
    branch = cfg["epsilon_branch"]
    if branch == "explicit":
        _fail(EXIT_CONFIG, "validate-truncation requires a resonant branch")
    n_max = cfg["n_max"] if cfg["n_max"] > 1 else 9
    rows = _numerical_guard(lambda: run_validate_truncation(
        cfg["alpha_over_chi"], branch, n_max, cfg["t_end_in_t"], cfg["n_points"]))
    _emit(rows, cfg, prov, cfg["output"], cfg["fmt"], cfg["figure"],
          f"truncation validity ({branch} branch)")


@main.command("preset")
@click.argument("name", type=click.Choice(sorted(PRESETS)))
@click.option("--output", "-o", type=click.Path(), default=None,
              help="Defaults to <name>.csv")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--figure", type=click.Path(), default=None,
              help="Defaults to <name>.png; pass 'none' to skip.")
def preset(name, output, fmt, figure):
    """Reproduce a named reference figure: table plus rendered image."""
    output = output or f"{name}.{fmt}"
    if figure is None:
        figure = f"{name}.png"
    elif figure == "none":
        figure = None
    rows, resolved = _numerical_guard(lambda: run_preset(name))
    emit_table(rows, output, fmt, resolved)
    click.echo(f"wrote {output} ({len(rows)} rows)")
    if figure:
        plot_table(rows, figure, name)
        click.echo(f"wrote {figure}")


if __name__ == "__main__":
    main()
