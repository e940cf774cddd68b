"""Symmetry-constrained two-body qubit Hamiltonians and the minimal times
to reach GHZ, W, Dicke and AME(5,2) targets under bandwidth-normalized
evolution."""

from qsl._core import (  # noqa: F401
    Axis,
    CombinationNotInCatalog,
    FidelityCurve,
    InteractionGraph,
    OptimizeConfig,
    ParameterSpace,
    ReferenceEntry,
    SymmetryClass,
    ZeroBandwidthError,
    __version__,
    ame52,
    component_fidelities,
    dicke,
    eigendecompose,
    energy_for_deadline,
    energy_stddev,
    evolve,
    fidelity,
    ghz,
    ghz_two_body_time,
    hadamard_hamiltonian,
    is_invariant,
    maximize_at_time,
    minimal_time,
    mt_bound,
    normalize_bandwidth,
    objective,
    parameter_count,
    pauli_embed,
    reference_catalog,
    reference_hamiltonian,
    sequential_ghz_time,
    swap_operator,
    sweep,
    symmetric3_spectrum,
    three_body_hamiltonian,
    threshold_time,
    two_eigenvalue_hxx,
    two_level_time,
    unnormalized_family,
    verify_entry,
    w_state,
    zero_state,
)
