"""Simulation toolkit for a coherently pumped chain of three Kerr-nonlinear
oscillators: closed-form truncated dynamics, full numerical propagation,
amplitude/phase-damped master-equation evolution, intermode correlation
functions, and tripartite-entanglement classification."""

__version__ = "0.1.0"

from .hilbert import (  # noqa: F401
    HilbertSpace,
    SystemParams,
    build_hamiltonian,
    build_space,
    embed_state,
    mode_exchange_13,
    mode_operator,
)
from .closed import (  # noqa: F401
    NqsSolution,
    fidelity,
    frequency_ratio,
    nqs_amplitudes,
    nqs_state,
    period,
    propagate_schrodinger,
    resonant_epsilon,
)
from .lindblad import (  # noqa: F401
    LindbladGenerator,
    lindblad_rhs,
    liouvillian_matrix,
    propagate_lindblad,
    steady_state,
)
from .correlations import correlation_report, g1, g2, occupations  # noqa: F401
from .entanglement import (  # noqa: F401
    EntanglementReport,
    classify,
    entanglement_report,
    negativity,
    partial_transpose,
    reduce_modes,
    state_fidelity,
    target_states,
    tripartite_negativity,
)
from .experiments import (  # noqa: F401
    RegimeTable,
    extract_regime_table,
    run_preset,
    run_ratio_curve,
    run_time_series,
    run_validate_truncation,
    steady_state_row,
    sweep_steady_state,
)
