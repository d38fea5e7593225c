"""Truncated three-mode Fock spaces, ladder operators and the chain Hamiltonian.

Basis convention: composite index runs over occupation triples (i, j, k) with
mode 1 slowest-varying and mode 3 fastest, i.e. index = i*d^2 + j*d + k for
per-mode dimension d = n_max + 1.  Every module in this package relies on this
ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DAMPING_KINDS = ("none", "amplitude", "phase")
OPERATOR_KINDS = ("annihilation", "creation", "number")


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of the chain, all in units of the Kerr strength chi.

    ``epsilon`` is the internal 1-2 / 2-3 hopping strength and ``delta`` an
    additive detuning on it; the Hamiltonian uses ``epsilon + delta``.
    ``kappa`` holds the three per-mode damping constants as quoted alongside
    the reference results: for amplitude damping this is the field decay rate
    (energy decays at 2*kappa), for phase damping the dephasing rate itself.
    """

    chi: float = 1.0
    alpha: float = 0.0
    epsilon: float = 0.0
    delta: float = 0.0
    kappa: tuple[float, float, float] = (0.0, 0.0, 0.0)
    damping: str = "none"

    def __post_init__(self):
        if self.chi <= 0:
            raise ValueError(f"chi must be positive, got {self.chi}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")
        if len(self.kappa) != 3 or any(k < 0 for k in self.kappa):
            raise ValueError(f"kappa must be three nonnegative rates, got {self.kappa}")
        if self.damping not in DAMPING_KINDS:
            raise ValueError(f"damping must be one of {DAMPING_KINDS}, got {self.damping!r}")

    @property
    def epsilon_total(self) -> float:
        return self.epsilon + self.delta


@dataclass(frozen=True)
class HilbertSpace:
    """Three-mode Fock space truncated at ``n_max`` photons per mode."""

    n_max: int
    mode_dims: tuple[int, int, int] = field(init=False)
    total_dim: int = field(init=False)

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(
                f"n_max must be at least 1 (one-photon states required), got {self.n_max}"
            )
        d = self.n_max + 1
        object.__setattr__(self, "mode_dims", (d, d, d))
        object.__setattr__(self, "total_dim", d**3)

    def index(self, i: int, j: int, k: int) -> int:
        """Composite basis index of the occupation triple |ijk>."""
        d = self.n_max + 1
        for n in (i, j, k):
            if not 0 <= n <= self.n_max:
                raise ValueError(f"occupation {(i, j, k)} outside [0, {self.n_max}]")
        return (i * d + j) * d + k

    def occupations(self, index: int) -> tuple[int, int, int]:
        """Occupation triple (i, j, k) of a composite basis index."""
        d = self.n_max + 1
        if not 0 <= index < self.total_dim:
            raise ValueError(f"index {index} outside [0, {self.total_dim})")
        i, rest = divmod(index, d * d)
        j, k = divmod(rest, d)
        return (i, j, k)

    def basis_state(self, i: int, j: int, k: int) -> np.ndarray:
        psi = np.zeros(self.total_dim, dtype=complex)
        psi[self.index(i, j, k)] = 1.0
        return psi


def build_space(n_max: int) -> HilbertSpace:
    return HilbertSpace(n_max)


def _single_mode_annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def mode_operator(space: HilbertSpace, mode: int, kind: str = "annihilation") -> np.ndarray:
    """Ladder or number operator for one mode, embedded in the composite space.

    ``mode`` is 1-based.  Operators are truncated hard at the cutoff, so the
    canonical commutator holds only below the top occupation level.
    """
    if mode not in (1, 2, 3):
        raise ValueError(f"mode must be 1, 2 or 3, got {mode}")
    if kind not in OPERATOR_KINDS:
        raise ValueError(f"kind must be one of {OPERATOR_KINDS}, got {kind!r}")
    d = space.n_max + 1
    a = _single_mode_annihilation(d)
    if kind == "creation":
        op = a.conj().T
    elif kind == "number":
        op = a.conj().T @ a
    else:
        op = a
    eye = np.eye(d, dtype=complex)
    factors = [eye, eye, eye]
    factors[mode - 1] = op
    return np.kron(factors[0], np.kron(factors[1], factors[2]))


def build_hamiltonian(space: HilbertSpace, params: SystemParams) -> np.ndarray:
    """Chain Hamiltonian: Kerr self-interaction, nearest-neighbour hopping with
    strength epsilon (+delta), and coherent pumping of the boundary modes 1 and
    3 with strength alpha.  Exactly hermitian by symmetric assembly."""
    a = [mode_operator(space, m, "annihilation") for m in (1, 2, 3)]
    ad = [x.conj().T for x in a]

    h_nl = sum((params.chi / 2.0) * (ad[m] @ ad[m] @ a[m] @ a[m]) for m in range(3))

    eps = params.epsilon_total
    h_i = eps * (ad[0] @ a[1] + ad[1] @ a[0] + ad[1] @ a[2] + ad[2] @ a[1])

    h_e = params.alpha * (ad[0] + a[0] + ad[2] + a[2])

    return h_nl + h_i + h_e


def mode_exchange_13(space: HilbertSpace) -> np.ndarray:
    """Permutation matrix swapping modes 1 and 3; the Hamiltonian commutes
    with it for any parameters."""
    dim = space.total_dim
    p = np.zeros((dim, dim))
    for idx in range(dim):
        i, j, k = space.occupations(idx)
        p[space.index(k, j, i), idx] = 1.0
    return p


def embed_state(psi: np.ndarray, src: HilbertSpace, dst: HilbertSpace) -> np.ndarray:
    """Zero-pad a state from a smaller truncation into a larger one, matching
    amplitudes by occupation triple (raw index maps differ between spaces)."""
    if dst.n_max < src.n_max:
        raise ValueError("destination space must be at least as large as the source")
    out = np.zeros(dst.total_dim, dtype=complex)
    for idx in range(src.total_dim):
        out[dst.index(*src.occupations(idx))] = psi[idx]
    return out
