"""Undamped evolution: closed-form qubit-truncated solution and a full
numerical Schroedinger propagator, plus the fidelity between the two."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import HilbertSpace, SystemParams, build_hamiltonian, embed_state

#: Basis order of the 8 truncated amplitudes: |000>, |001>, ..., |111>
#: (mode 1 slowest), matching HilbertSpace(n_max=1) indexing.
QUBIT_LABELS = ("000", "001", "010", "011", "100", "101", "110", "111")


def omega_frequencies(alpha: float, epsilon: float) -> tuple[float, float]:
    """The two angular frequencies governing the truncated dynamics."""
    w1 = math.sqrt(4 * alpha**2 + 4 * alpha * epsilon + 2 * epsilon**2)
    w2 = math.sqrt(4 * alpha**2 - 4 * alpha * epsilon + 2 * epsilon**2)
    return w1, w2


def frequency_ratio(alpha: float, epsilon: float) -> float:
    w1, w2 = omega_frequencies(alpha, epsilon)
    if w2 == 0.0:
        raise ValueError("frequency ratio undefined: omega2 = 0")
    return w1 / w2


def resonant_epsilon(alpha: float, branch: str) -> float:
    """Coupling strength for which the frequency ratio is exactly 2.

    branch 'plus' gives the weaker coupling 12a/(10+sqrt(28)), 'minus' the
    stronger 12a/(10-sqrt(28)).
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if branch == "plus":
        return 12.0 * alpha / (10.0 + math.sqrt(28.0))
    if branch == "minus":
        return 12.0 * alpha / (10.0 - math.sqrt(28.0))
    raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")


def period(alpha: float, branch: str) -> float:
    """Oscillation period at the resonant coupling of the given branch."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if branch == "plus":
        return math.sqrt(5.0 + math.sqrt(7.0)) * math.pi / (2.0 * alpha)
    if branch == "minus":
        return math.sqrt(5.0 - math.sqrt(7.0)) * math.pi / (2.0 * alpha)
    raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")


@dataclass(frozen=True)
class NqsSolution:
    """Frequencies and cosine coefficients of the closed-form truncated
    solution for one parameter set."""

    alpha: float
    epsilon: float
    omega1: float
    omega2: float
    a1: float
    a2: float
    a3: float
    a4: float
    a5: float

    @classmethod
    def from_params(cls, params: SystemParams) -> "NqsSolution":
        al, ep = params.alpha, params.epsilon_total
        w1, w2 = omega_frequencies(al, ep)
        return cls(
            alpha=al,
            epsilon=ep,
            omega1=w1,
            omega2=w2,
            a1=2 * al**2 - 2 * al * ep + ep**2,
            a2=2 * al**2 + 2 * al * ep + ep**2,
            a3=2 * al**3 - al * ep**2 + ep**3,
            a4=-2 * al**3 + al * ep**2 + ep**3,
            a5=2 * al**3 - al * ep**2 - ep**3,
        )


def nqs_amplitudes(params: SystemParams, t: float) -> np.ndarray:
    """Closed-form probability amplitudes of the 8 qubit-truncated states at
    time t, starting from the vacuum, in QUBIT_LABELS order.

    The sin(w t)/w factors are evaluated through np.sinc, which is exact in
    the w -> 0 limit, so alpha = epsilon = 0 is handled without a special
    branch.
    """
    sol = NqsSolution.from_params(params)
    al, ep = sol.alpha, sol.epsilon
    den = 8 * al**4 + 2 * ep**4
    cos1 = math.cos(sol.omega1 * t)
    cos2 = math.cos(sol.omega2 * t)
    # sin(w t)/w, finite at w = 0
    s1 = t * np.sinc(sol.omega1 * t / math.pi)
    s2 = t * np.sinc(sol.omega2 * t / math.pi)

    if den == 0.0:
        # alpha = epsilon = 0: no dynamics at all within the truncation
        c = np.zeros(8, dtype=complex)
        c[0] = 1.0
        return c

    c000 = (4 * al**4 - 2 * al**2 * ep**2 + 2 * ep**4 + al**2 * (sol.a1 * cos1 + sol.a2 * cos2)) / den
    c001 = -0.5j * al * (s1 + s2)
    c010 = al / den * (-2 * ep**3 + sol.a3 * cos1 + sol.a4 * cos2)
    c011 = -0.5j * al * (s1 - s2)
    c101 = al / den * (-4 * al**3 + 2 * al * ep**2 + sol.a3 * cos1 + sol.a5 * cos2)
    c111 = al**2 / den * (4 * al * ep + sol.a1 * cos1 - sol.a2 * cos2)

    return np.array([c000, c001, c010, c011, c001, c101, c011, c111])


def nqs_state(params: SystemParams, t: float, space: HilbertSpace | None = None) -> np.ndarray:
    """Closed-form state vector, optionally zero-padded into a larger space."""
    c = nqs_amplitudes(params, t)
    if space is None or space.n_max == 1:
        return c
    return embed_state(c, HilbertSpace(1), space)


class NormDriftError(RuntimeError):
    """Raised when the numerical propagator loses more norm than allowed."""


def propagate_schrodinger(
    space: HilbertSpace,
    params: SystemParams,
    t_grid: np.ndarray,
    method: str = "auto",
    max_step: float | None = None,
    norm_tol: float = 1e-6,
) -> list[np.ndarray]:
    """Propagate the vacuum state through the full Hamiltonian and return the
    state at each requested time.

    method 'rk4' uses a fixed-step classical Runge-Kutta integration of the
    Schroedinger equation with a norm-drift guard that raises (never silently
    renormalizes).  method 'eigh' diagonalizes the Hamiltonian once and
    evaluates the exact propagator at each time; 'auto' picks 'rk4' when the
    step satisfies the RK4 stability bound for the spectral radius of H and
    'eigh' otherwise (large truncations make fixed-step RK4 impractically
    slow at a stable step size).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) == 0:
        raise ValueError("t_grid must be a nonempty 1-d array")
    if np.any(np.diff(t_grid) < 0):
        raise ValueError("t_grid must be nondecreasing")

    h_mat = build_hamiltonian(space, params)
    psi0 = space.basis_state(0, 0, 0)

    if max_step is None:
        # default contract: at least 20000 steps per characteristic period
        w1, w2 = omega_frequencies(params.alpha, params.epsilon_total)
        w_char = max(w1, w2)
        t_char = 2 * math.pi / w_char if w_char > 0 else max(t_grid[-1], 1.0)
        max_step = t_char / 20000.0

    if method == "auto":
        spectral = float(np.linalg.norm(h_mat, ord=np.inf))
        method = "rk4" if spectral * max_step <= 0.1 else "eigh"

    if method == "eigh":
        evals, evecs = np.linalg.eigh(h_mat)
        coeff = evecs.conj().T @ psi0
        return [evecs @ (np.exp(-1j * evals * t) * coeff) for t in t_grid]

    if method != "rk4":
        raise ValueError(f"unknown method {method!r}")

    def rhs(psi):
        return -1j * (h_mat @ psi)

    out = []
    psi = psi0.astype(complex)
    t = 0.0
    for t_target in t_grid:
        span = t_target - t
        if span > 0:
            n_steps = max(1, math.ceil(span / max_step))
            h = span / n_steps
            for _ in range(n_steps):
                k1 = rhs(psi)
                k2 = rhs(psi + 0.5 * h * k1)
                k3 = rhs(psi + 0.5 * h * k2)
                k4 = rhs(psi + h * k3)
                psi = psi + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            t = t_target
        drift = abs(np.linalg.norm(psi) - 1.0)
        if drift > norm_tol:
            raise NormDriftError(
                f"norm drift {drift:.3e} exceeds {norm_tol:.1e} at t={t:g}; reduce max_step"
            )
        out.append(psi.copy())
    return out


def fidelity(a: np.ndarray, b: np.ndarray, space_a: HilbertSpace | None = None,
             space_b: HilbertSpace | None = None) -> float:
    """Overlap modulus |<a|b>| between two pure states.

    States living in different truncations are compared by zero-padding the
    smaller one by occupation triple; pass the two spaces in that case.
    """
    if len(a) != len(b):
        if space_a is None or space_b is None:
            raise ValueError("dimension mismatch: pass both spaces for embedding")
        if space_a.n_max < space_b.n_max:
            a = embed_state(a, space_a, space_b)
        else:
            b = embed_state(b, space_b, space_a)
        if len(a) != len(b):
            raise ValueError("dimension mismatch after embedding")
    return float(abs(np.vdot(a, b)))
