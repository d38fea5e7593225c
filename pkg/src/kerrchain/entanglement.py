"""Partial traces, partial transposes, negativities, tripartite-entanglement
classification and target-state fidelities.

Negativity convention: N = ||rho^T_part||_1 - 1, i.e. twice the sum of the
absolute values of the negative eigenvalues of the partial transpose.  A
maximally entangled two-qubit state then scores exactly 1 and separable
states 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Reduced negativities below this value are treated as zero when assigning a
#: tripartite subtype: well above integrator noise, well below the smallest
#: physical plateau in the studied regimes (~0.16).
DEFAULT_ZERO_THRESHOLD = 1e-4

SUBTYPES = ("none", "III-0", "III-1", "III-2", "III-3")


def _mode_dims(rho: np.ndarray, dims: tuple[int, ...] | None) -> tuple[int, ...]:
    if dims is not None:
        return tuple(dims)
    d = rho.shape[0]
    per = round(d ** (1.0 / 3.0))
    if per**3 != d:
        raise ValueError(f"cannot infer three equal mode dimensions from size {d}")
    return (per, per, per)


def reduce_modes(rho: np.ndarray, keep: tuple[int, ...],
                 dims: tuple[int, ...] | None = None) -> np.ndarray:
    """Partial trace keeping the 1-based modes in ``keep`` (order preserved)."""
    dims = _mode_dims(rho, dims)
    n = len(dims)
    keep0 = [m - 1 for m in keep]
    if not keep0 or len(set(keep0)) != len(keep0) or any(not 0 <= m < n for m in keep0):
        raise ValueError(f"keep must be distinct modes out of 1..{n}, got {keep}")
    if len(keep0) >= n:
        raise ValueError("keep must be a strict subset of the modes")
    tensor = rho.reshape(*dims, *dims)
    bra = list(range(n))
    ket = list(range(n, 2 * n))
    for m in range(n):
        if m not in keep0:
            ket[m] = bra[m]
    out_axes = [bra[m] for m in keep0] + [ket[m] for m in keep0]
    reduced = np.einsum(tensor, bra + ket, out_axes)
    d_out = int(np.prod([dims[m] for m in keep0]))
    return reduced.reshape(d_out, d_out)


def partial_transpose(rho: np.ndarray, part: tuple[int, ...],
                      dims: tuple[int, ...] | None = None) -> np.ndarray:
    """Transpose the indices of the 1-based modes in ``part`` only."""
    dims = _mode_dims(rho, dims)
    n = len(dims)
    part0 = sorted({m - 1 for m in part})
    if not part0 or any(not 0 <= m < n for m in part0) or len(part0) >= n:
        raise ValueError(f"part must be a nonempty strict subset of 1..{n}, got {part}")
    tensor = rho.reshape(*dims, *dims)
    for m in part0:
        tensor = np.swapaxes(tensor, m, m + n)
    d = int(np.prod(dims))
    return tensor.reshape(d, d)


def negativity(rho: np.ndarray, part: tuple[int, ...],
               dims: tuple[int, ...] | None = None) -> float:
    """Negativity of the bipartition (part | rest): twice the absolute sum of
    the negative eigenvalues of the partial transpose."""
    pt = partial_transpose(rho, part, dims)
    evals = np.linalg.eigvalsh((pt + pt.conj().T) / 2.0)
    return float(2.0 * np.sum(np.abs(evals[evals < 0.0])))


def negativity_trace_norm(rho: np.ndarray, part: tuple[int, ...],
                          dims: tuple[int, ...] | None = None) -> float:
    """Same quantity via ||rho^T||_1 - 1; used as an independent cross-check."""
    pt = partial_transpose(rho, part, dims)
    sv = np.linalg.svd((pt + pt.conj().T) / 2.0, compute_uv=False)
    return float(np.sum(sv) - 1.0)


def tripartite_negativity(rho: np.ndarray, dims: tuple[int, ...] | None = None) -> float:
    """Geometric mean of the three one-vs-rest negativities."""
    factors = [negativity(rho, (m,), dims) for m in (1, 2, 3)]
    if any(f <= 0.0 for f in factors):
        return 0.0
    return float(math.prod(factors) ** (1.0 / 3.0))


@dataclass(frozen=True)
class EntanglementReport:
    """All negativities of one three-mode state plus the assigned subtype."""

    n_12: float
    n_23: float
    n_13: float
    n_1_23: float
    n_2_13: float
    n_3_12: float
    tripartite: float
    subtype: str

    def as_dict(self) -> dict[str, float | str]:
        return {
            "N_12": self.n_12,
            "N_23": self.n_23,
            "N_13": self.n_13,
            "N_1_23": self.n_1_23,
            "N_2_13": self.n_2_13,
            "N_3_12": self.n_3_12,
            "N_tri": self.tripartite,
            "subtype": self.subtype,
        }


def classify(n_12: float, n_23: float, n_13: float, tripartite: float,
             zero_threshold: float = DEFAULT_ZERO_THRESHOLD) -> str:
    """Tripartite subtype from the zero-pattern of the reduced negativities.

    III-c counts the nonzero reduced pairwise negativities; 'none' is assigned
    only when no negativity of any kind survives the threshold.  Limiting
    product states (a central-mode superposition times a boundary Bell pair)
    keep their III-1 label this way even though the geometric-mean tripartite
    measure vanishes on them.
    """
    count = sum(x > zero_threshold for x in (n_12, n_23, n_13))
    if tripartite <= zero_threshold and count == 0:
        return "none"
    return f"III-{count}"


def entanglement_report(rho: np.ndarray, dims: tuple[int, ...] | None = None,
                        zero_threshold: float = DEFAULT_ZERO_THRESHOLD) -> EntanglementReport:
    dims = _mode_dims(rho, dims)
    pair_dims = {
        (1, 2): (dims[0], dims[1]),
        (2, 3): (dims[1], dims[2]),
        (1, 3): (dims[0], dims[2]),
    }
    reduced = {}
    for pair, pdims in pair_dims.items():
        r = reduce_modes(rho, pair, dims)
        reduced[pair] = negativity(r, (1,), pdims)
    one_vs_rest = [negativity(rho, (m,), dims) for m in (1, 2, 3)]
    tri = 0.0 if any(f <= 0.0 for f in one_vs_rest) else float(
        math.prod(one_vs_rest) ** (1.0 / 3.0))
    subtype = classify(reduced[(1, 2)], reduced[(2, 3)], reduced[(1, 3)], tri,
                       zero_threshold)
    return EntanglementReport(
        n_12=reduced[(1, 2)],
        n_23=reduced[(2, 3)],
        n_13=reduced[(1, 3)],
        n_1_23=one_vs_rest[0],
        n_2_13=one_vs_rest[1],
        n_3_12=one_vs_rest[2],
        tripartite=tri,
        subtype=subtype,
    )


def state_fidelity(rho: np.ndarray, target: np.ndarray) -> float:
    """<target| rho |target> for a normalized target vector."""
    if rho.shape[0] != len(target):
        raise ValueError(
            f"dimension mismatch: rho is {rho.shape[0]}-dim, target {len(target)}-dim")
    return float(np.real(np.vdot(target, rho @ target)))


def _ket(*labels: str) -> np.ndarray:
    """Equal-weight superposition of computational-basis labels; '-' prefix
    flips the sign of a component."""
    v = np.zeros(8, dtype=complex)
    for lab in labels:
        sign = 1.0
        if lab.startswith("-"):
            sign, lab = -1.0, lab[1:]
        v[int(lab, 2)] += sign
    return v / np.linalg.norm(v)


def target_states() -> dict[str, np.ndarray]:
    """Named 8-dimensional target vectors used for fidelity tracking.

    Includes the two GHZ-type pairs, the four products of a mode-2
    superposition with a Bell state of the boundary modes, the W state and its
    spin flip, and boundary-mode Bell states with the central mode in vacuum.
    """
    targets = {
        "ghz_plus": _ket("000", "111"),
        "ghz_minus": _ket("000", "-111"),
        "ghz_star_plus": _ket("010", "101"),
        "ghz_star_minus": _ket("010", "-101"),
        "w": _ket("001", "010", "100"),
        "w_flip": _ket("110", "101", "011"),
        "bell13_vac_plus": _ket("000", "101"),
        "bell13_vac_minus": _ket("000", "-101"),
    }
    # (|0>_2 + s2 |1>_2)(|00>_13 + s13 |11>_13) / 2 in |m1 m2 m3> labels:
    # |000>, s13 |101>, s2 |010>, s2 s13 |111>
    for s2, tag2 in ((1, "p"), (-1, "m")):
        for s13, tag13 in ((1, "p"), (-1, "m")):
            v = np.zeros(8, dtype=complex)
            v[int("000", 2)] = 1.0
            v[int("101", 2)] = s13
            v[int("010", 2)] = s2
            v[int("111", 2)] = s2 * s13
            targets[f"bell2_{tag2}{tag13}"] = v / 2.0
    return targets
