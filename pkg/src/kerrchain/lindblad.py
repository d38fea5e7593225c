"""Lindblad master equation for amplitude and phase damping: right-hand side,
propagation, and steady-state extraction from the Liouvillian null space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .hilbert import HilbertSpace, SystemParams, build_hamiltonian, mode_operator

# The reference results quote amplitude-damping constants as field decay
# rates: the energy relaxation rate entering the dissipator below is twice
# the quoted kappa.  Phase-damping constants are the dephasing rates
# themselves.  Validated against the published steady-state regime
# boundaries, which reproduce only under this reading.
AMPLITUDE_RATE_FACTOR = 2.0
PHASE_RATE_FACTOR = 1.0


@dataclass(frozen=True)
class LindbladGenerator:
    """Hamiltonian plus a list of (jump operator, rate) pairs.

    The dissipator applied for each pair (L, r) is
    (r/2) * (2 L rho L^dag - L^dag L rho - rho L^dag L).
    """

    hamiltonian: np.ndarray
    jump_operators: tuple[tuple[np.ndarray, float], ...]
    kind: str = "none"

    @classmethod
    def from_params(cls, space: HilbertSpace, params: SystemParams) -> "LindbladGenerator":
        h = build_hamiltonian(space, params)
        if params.damping == "none" or all(k == 0 for k in params.kappa):
            return cls(h, (), "none")
        jumps = []
        for mode in (1, 2, 3):
            kq = params.kappa[mode - 1]
            if kq == 0:
                continue
            if params.damping == "amplitude":
                op = mode_operator(space, mode, "annihilation")
                rate = AMPLITUDE_RATE_FACTOR * kq
            elif params.damping == "phase":
                op = mode_operator(space, mode, "number")
                rate = PHASE_RATE_FACTOR * kq
            else:
                raise ValueError(f"unknown damping kind {params.damping!r}")
            jumps.append((op, rate))
        return cls(h, tuple(jumps), params.damping)

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


def lindblad_rhs(gen: LindbladGenerator, rho: np.ndarray) -> np.ndarray:
    """d rho / dt for the given generator; traceless and hermitian."""
    out = -1j * (gen.hamiltonian @ rho - rho @ gen.hamiltonian)
    for op, rate in gen.jump_operators:
        op_dag = op.conj().T
        opdop = op_dag @ op
        out += (rate / 2.0) * (2.0 * op @ rho @ op_dag - opdop @ rho - rho @ opdop)
    return out


def liouvillian_matrix(gen: LindbladGenerator) -> np.ndarray:
    """Dense superoperator acting on row-major vectorized density matrices."""
    d = gen.dim
    eye = np.eye(d, dtype=complex)
    h = gen.hamiltonian
    liou = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for op, rate in gen.jump_operators:
        opdop = op.conj().T @ op
        liou += (rate / 2.0) * (
            2.0 * np.kron(op, op.conj())
            - np.kron(opdop, eye)
            - np.kron(eye, opdop.T)
        )
    return liou


class PositivityError(RuntimeError):
    """Raised when a propagated density matrix loses positivity beyond
    tolerance."""


def check_density_matrix(rho: np.ndarray, herm_tol: float = 1e-10,
                         trace_tol: float = 1e-8, psd_tol: float = 1e-7) -> None:
    """Validate hermiticity, unit trace and numerical positivity; raises on
    violation."""
    herm_dev = float(np.max(np.abs(rho - rho.conj().T)))
    if herm_dev > herm_tol:
        raise ValueError(f"hermiticity violation {herm_dev:.3e} > {herm_tol:.1e}")
    trace_dev = abs(np.trace(rho) - 1.0)
    if trace_dev > trace_tol:
        raise ValueError(f"trace deviation {trace_dev:.3e} > {trace_tol:.1e}")
    min_eig = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0).min())
    if min_eig < -psd_tol:
        raise PositivityError(f"minimum eigenvalue {min_eig:.3e} < -{psd_tol:.1e}")


def propagate_lindblad(
    gen: LindbladGenerator,
    rho0: np.ndarray,
    t_grid: np.ndarray,
    validate: bool = True,
) -> list[np.ndarray]:
    """Evolve rho0 through the master equation, returning the density matrix
    at each grid time.

    The time-independent generator is exponentiated per distinct grid spacing
    and applied step by step, which is exact, deterministic, and preserves
    trace and hermiticity to roundoff.  The hermitian part is retained after
    each step to suppress roundoff asymmetry.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) == 0:
        raise ValueError("t_grid must be a nonempty 1-d array")
    if np.any(np.diff(t_grid) < 0):
        raise ValueError("t_grid must be nondecreasing")

    d = gen.dim
    liou = liouvillian_matrix(gen)
    prop_cache: dict[float, np.ndarray] = {}

    vec = rho0.astype(complex).reshape(-1)
    out = []
    t = 0.0
    for t_target in t_grid:
        span = round(t_target - t, 12)
        if span > 0:
            if span not in prop_cache:
                prop_cache[span] = expm(liou * span)
            vec = prop_cache[span] @ vec
            t = t_target
        rho = vec.reshape(d, d)
        rho = (rho + rho.conj().T) / 2.0
        if validate:
            check_density_matrix(rho, herm_tol=1e-9, trace_tol=1e-8, psd_tol=1e-6)
        out.append(rho)
        vec = rho.reshape(-1)
    return out


class DegenerateSteadyStateError(RuntimeError):
    def __init__(self, null_dim: int):
        super().__init__(f"Liouvillian null space has dimension {null_dim}; "
                         "steady state is not unique")
        self.null_dim = null_dim


def steady_state(
    gen: LindbladGenerator,
    residual_tol: float = 1e-10,
    degeneracy_tol: float = 1e-10,
) -> np.ndarray:
    """Unique stationary density matrix of the generator.

    Computed as the null eigenvector of the dense Liouvillian, hermitized and
    normalized to unit trace.  A null space of dimension > 1 is reported as an
    error, never resolved silently.
    """
    if not gen.jump_operators:
        raise ValueError("steady state requires at least one jump operator")
    liou = liouvillian_matrix(gen)
    evals, evecs = np.linalg.eig(liou)
    scale = max(1.0, float(np.max(np.abs(evals))))
    null_idx = np.where(np.abs(evals) <= degeneracy_tol * scale)[0]
    if len(null_idx) > 1:
        raise DegenerateSteadyStateError(len(null_idx))
    idx = null_idx[0] if len(null_idx) == 1 else int(np.argmin(np.abs(evals)))

    d = gen.dim
    rho = evecs[:, idx].reshape(d, d)
    rho = (rho + rho.conj().T) / 2.0
    tr = np.trace(rho).real
    if abs(tr) < 1e-14:
        raise RuntimeError("null eigenvector is traceless; not a valid state")
    rho = rho / tr

    residual = float(np.max(np.abs(lindblad_rhs(gen, rho))))
    if residual > residual_tol:
        raise RuntimeError(f"steady-state residual {residual:.3e} > {residual_tol:.1e}")
    check_density_matrix(rho, herm_tol=1e-10, trace_tol=1e-8, psd_tol=1e-7)
    return rho
