"""First- and second-order intermode correlation functions."""

from __future__ import annotations

import numpy as np

from .hilbert import HilbertSpace, mode_operator

# Below this mean occupation the denominators are treated as degenerate and
# the conventional limits are returned: g1 -> 0 (no coherence), g2 -> 1
# (uncorrelated).  The evolution passes through the vacuum periodically, so
# the convention must be fixed rather than left to 0/0 noise.
OCCUPATION_FLOOR = 1e-12


def _expect(rho: np.ndarray, op: np.ndarray) -> complex:
    return complex(np.trace(op @ rho))


def occupations(rho: np.ndarray, space: HilbertSpace) -> np.ndarray:
    """Mean photon numbers of the three modes."""
    return np.array([
        _expect(rho, mode_operator(space, m, "number")).real for m in (1, 2, 3)
    ])


def g1(rho: np.ndarray, space: HilbertSpace, j: int, k: int) -> float:
    """Degree of first-order coherence between modes j and k, in [0, 1]."""
    if j == k:
        raise ValueError("g1 is defined between distinct modes")
    aj = mode_operator(space, j, "annihilation")
    ak = mode_operator(space, k, "annihilation")
    nj = _expect(rho, aj.conj().T @ aj).real
    nk = _expect(rho, ak.conj().T @ ak).real
    if nj < OCCUPATION_FLOOR or nk < OCCUPATION_FLOOR:
        return 0.0
    cross = abs(_expect(rho, aj.conj().T @ ak))
    return float(cross / np.sqrt(nj * nk))


def g2(rho: np.ndarray, space: HilbertSpace, j: int, k: int) -> float:
    """Second-order (intensity) cross-correlation between modes j and k.

    Unity for uncorrelated modes, above one for correlated intensities,
    below one for anticorrelated ones.
    """
    if j == k:
        raise ValueError("g2 is defined between distinct modes")
    aj = mode_operator(space, j, "annihilation")
    ak = mode_operator(space, k, "annihilation")
    nj = _expect(rho, aj.conj().T @ aj).real
    nk = _expect(rho, ak.conj().T @ ak).real
    if nj < OCCUPATION_FLOOR or nk < OCCUPATION_FLOOR:
        return 1.0
    num = _expect(rho, aj.conj().T @ ak.conj().T @ aj @ ak).real
    return float(num / (nj * nk))


def correlation_report(rho: np.ndarray, space: HilbertSpace) -> dict[str, float]:
    """All pairwise g1 and g2 values plus mean occupations, keyed by column
    name."""
    out: dict[str, float] = {}
    for j, k in ((1, 2), (2, 3), (1, 3)):
        out[f"g1_{j}{k}"] = g1(rho, space, j, k)
        out[f"g2_{j}{k}"] = g2(rho, space, j, k)
    n = occupations(rho, space)
    for m in (1, 2, 3):
        out[f"n_{m}"] = float(n[m - 1])
    return out
