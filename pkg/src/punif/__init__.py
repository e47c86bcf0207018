"""Qudit Weyl algebra, Pauli uniformity norms, Clifford-hierarchy membership
and fidelity, and measurement-level simulation of hierarchy testers."""

from .galois import Fp, PhaseExp, SympVector, check_prime, phase_modulus, symplectic_form
from .matcore import (
    DEFAULT_UNITARY_TOL,
    NonUnitaryError,
    Operator,
    Unitary,
    frob_norm,
    haar_random_unitary,
    hs_inner,
    identity,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    phase_min_distance,
    save_matrix,
)
from .pauligroup import (
    PauliElement,
    commutator_phase,
    omega,
    product_phase,
    product_phase_dense,
    tau,
    weil_rep,
    weyl_family,
    weyl_matrix,
)
from .uniformity import (
    BudgetExceededError,
    FourierTable,
    NormReport,
    fourier_coeffs,
    p2_via_fourier,
    pauli_derivative,
    pnorm_exact,
    pnorm_sampled,
)
from .hierarchy import (
    FidelityResult,
    LevelSet,
    OutOfScopeError,
    Verdict,
    battery,
    enumerate_level,
    fidelity,
    in_level,
    inverse_constant,
    is_pauli,
    is_phase_identity,
    near_extremal_epsilon,
    separation_check,
    verify_inverse_bounds,
)
from .gates import (
    ParseError,
    cnot_gate,
    cz_gate,
    fourier_gate,
    hadamard,
    parse_gate,
    pauli_x,
    pauli_y,
    pauli_z,
    phase_gate,
    phase_s,
    t_gate,
)
from .testersim import (
    EntangledState,
    OracleHandle,
    QueryCounter,
    TesterConfig,
    TesterReport,
    c3_tester,
    derivative_oracle,
    oracle_pair,
    pnorm_bias,
    prepare_max_entangled,
    swap_test,
    swap_test_probability,
)

__version__ = "0.1.0"
