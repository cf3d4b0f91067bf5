"""declab: qubit-environment decoherence scaling laboratory."""

from ._core import (
    CapacityError,
    DeclabError,
    InsufficientDataError,
    Model,
    component_norms,
    dyson_truncated,
    exact_propagator,
    factorization_residual,
    fit_exponent,
    interaction_propagator,
    log_spaced_times,
    model_from_json,
    pauli_component_norms,
    preset_model,
    qecc_experiment,
    weight_spectrum,
)

__all__ = [
    "CapacityError",
    "DeclabError",
    "InsufficientDataError",
    "Model",
    "component_norms",
    "dyson_truncated",
    "exact_propagator",
    "factorization_residual",
    "fit_exponent",
    "interaction_propagator",
    "log_spaced_times",
    "model_from_json",
    "pauli_component_norms",
    "preset_model",
    "qecc_experiment",
    "weight_spectrum",
]
