"""Matplotlib rendering of emitted tables: negativity/correlation time
series, steady-state damping sweeps, and auxiliary curves."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

Row = dict[str, float | str]

_NEG_SERIES = (
    ("N_12", r"$N_{12}=N_{23}$"),
    ("N_13", r"$N_{13}$"),
    ("N_tri", r"$N$"),
)
_CORR_SERIES = (
    ("g1_12", r"$g^{(1)}_{12}$"),
    ("g1_13", r"$g^{(1)}_{13}$"),
    ("g2_12", r"$g^{(2)}_{12}$"),
    ("g2_13", r"$g^{(2)}_{13}$"),
)


def _series(rows: list[Row], key: str) -> list[float]:
    return [float(r[key]) for r in rows]


def plot_time_series(rows: list[Row], path: str | Path, title: str = "") -> Path:
    """Correlations on top, negativities on the bottom, against t/T."""
    t = _series(rows, "t_over_T")
    fig, (ax_corr, ax_neg) = plt.subplots(2, 1, figsize=(7, 7), sharex=True)
    for key, label in _CORR_SERIES:
        if key in rows[0]:
            ax_corr.plot(t, _series(rows, key), label=label)
    ax_corr.set_ylabel("correlation functions")
    ax_corr.legend(loc="best", fontsize=8)
    for key, label in _NEG_SERIES:
        ax_neg.plot(t, _series(rows, key), label=label)
    ax_neg.set_xlabel(r"$t/T$")
    ax_neg.set_ylabel("negativities")
    ax_neg.legend(loc="best", fontsize=8)
    if title:
        ax_corr.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_sweep(rows: list[Row], path: str | Path, title: str = "") -> Path:
    """Steady-state correlations and negativities against kappa/alpha."""
    ka = _series(rows, "kappa_over_alpha")
    fig, (ax_corr, ax_neg) = plt.subplots(2, 1, figsize=(7, 7), sharex=True)
    for key, label in _CORR_SERIES:
        ax_corr.plot(ka, _series(rows, key), label=label)
    ax_corr.set_ylabel("correlation functions")
    ax_corr.legend(loc="best", fontsize=8)
    for key, label in _NEG_SERIES:
        ax_neg.plot(ka, _series(rows, key), label=label)
    ax_neg.set_xlabel(r"$\kappa/\alpha$")
    ax_neg.set_ylabel("negativities")
    ax_neg.legend(loc="best", fontsize=8)
    if title:
        ax_corr.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_scalar_curve(rows: list[Row], x_key: str, y_key: str,
                      path: str | Path, logy: bool = False, title: str = "") -> Path:
    """Single-curve helper for ratio and truncation-validation tables."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(_series(rows, x_key), _series(rows, y_key))
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(x_key)
    ax.set_ylabel(y_key)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_table(rows: list[Row], path: str | Path, title: str = "") -> Path:
    """Dispatch on the table schema."""
    first = rows[0]
    if "t_over_T" in first and "N_tri" in first:
        return plot_time_series(rows, path, title)
    if "kappa_over_alpha" in first:
        return plot_sweep(rows, path, title)
    if "one_minus_F" in first:
        return plot_scalar_curve(rows, "t_over_T", "one_minus_F", path,
                                 logy=True, title=title)
    if "alpha_over_epsilon" in first:
        return plot_scalar_curve(rows, "alpha_over_epsilon",
                                 "omega1_over_omega2", path, title=title)
    raise ValueError("table schema not recognized for plotting")
