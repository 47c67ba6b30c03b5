"""Certifying checker for local-unitary equivalence of n-qubit states."""

from .engine import (
    BY_GLOBAL_SPECTRUM,
    BY_MARGINAL_SPECTRA,
    BY_TRACE_FORM,
    EQUIVALENT,
    INDETERMINATE,
    NOT_EQUIVALENT,
    EngineConfig,
    EngineInconsistencyError,
    PhaseAssignment,
    PhaseMatchResult,
    Verdict,
    WitnessLU,
    assemble_witness,
    decide_lu_equivalence,
    normalize_special,
    phase_match,
    preflight_invariants,
    su2_fallback,
)
from .linalg import (
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    EigenPair2,
    eig_hermitian_2x2,
    frobenius_distance,
    kron,
    kron_all,
    partial_trace,
)
from .oracle import (
    OracleFit,
    apply_local_unitaries,
    euler_unitary,
    haar_local_unitary,
    lu_fit_oracle,
    make_rng,
    random_mixed_state,
    random_pure_state,
    random_state_with_bloch_floor,
)
from .pauli import PauliCoefficients, expand, reconstruct, rotate_phase
from .serialize import (
    StateFileError,
    emit_mixed_state_file,
    emit_pure_state_file,
    matrix_pairs,
    parse_state_file,
    render_report,
    sha256_digest,
    verdict_report,
)
from .states import (
    BlochVector,
    NQubitState,
    StateValidationError,
    bloch_vector,
    from_pure_amplitudes,
    global_spectrum,
    reduced_qubit,
    validate_state,
)
from .traceform import LocalEigenframe, TraceForm, local_eigenframes, to_trace_form

__version__ = "0.1.0"

__all__ = [
    "BY_GLOBAL_SPECTRUM",
    "BY_MARGINAL_SPECTRA",
    "BY_TRACE_FORM",
    "BlochVector",
    "EQUIVALENT",
    "EigenPair2",
    "EngineConfig",
    "EngineInconsistencyError",
    "INDETERMINATE",
    "LocalEigenframe",
    "NOT_EQUIVALENT",
    "NQubitState",
    "OracleFit",
    "PAULI_I",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "PauliCoefficients",
    "PhaseAssignment",
    "PhaseMatchResult",
    "StateFileError",
    "StateValidationError",
    "TraceForm",
    "Verdict",
    "WitnessLU",
    "apply_local_unitaries",
    "assemble_witness",
    "bloch_vector",
    "decide_lu_equivalence",
    "eig_hermitian_2x2",
    "emit_mixed_state_file",
    "emit_pure_state_file",
    "euler_unitary",
    "expand",
    "frobenius_distance",
    "from_pure_amplitudes",
    "global_spectrum",
    "haar_local_unitary",
    "kron",
    "kron_all",
    "local_eigenframes",
    "lu_fit_oracle",
    "make_rng",
    "matrix_pairs",
    "parse_state_file",
    "render_report",
    "sha256_digest",
    "partial_trace",
    "normalize_special",
    "phase_match",
    "preflight_invariants",
    "random_mixed_state",
    "random_pure_state",
    "random_state_with_bloch_floor",
    "reconstruct",
    "reduced_qubit",
    "rotate_phase",
    "su2_fallback",
    "to_trace_form",
    "validate_state",
    "verdict_report",
]
