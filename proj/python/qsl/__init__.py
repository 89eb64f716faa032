"""Quantum speed limit bounds and state-space geometry."""

from _qsl import (
    DensityOperator,
    Trajectory,
    ValidationError,
    affinity,
    average_energy_uncertainty,
    bures_angle,
    bures_geodesic_hamiltonian,
    bures_speed,
    compare_bounds,
    evolve,
    expectation,
    expm_skew,
    fidelity_sqrt,
    gp_distance,
    grassmann_distance,
    involution_hamiltonian,
    isospectral,
    j_functional,
    metric_speed,
    principal_angles,
    product_grassmann_distance,
    product_plucker_distance,
    quantum_fisher_information,
    skew_information,
    split_observable,
    sqrtm_psd,
    tau_fs,
    tau_frowis,
    tau_g,
    tau_mt,
    tau_u,
    tau_wy,
    variance,
    wy_distance,
)

__all__ = [
    "DensityOperator",
    "Trajectory",
    "ValidationError",
    "affinity",
    "average_energy_uncertainty",
    "bures_angle",
    "bures_geodesic_hamiltonian",
    "bures_speed",
    "compare_bounds",
    "evolve",
    "expectation",
    "expm_skew",
    "fidelity_sqrt",
    "gp_distance",
    "grassmann_distance",
    "involution_hamiltonian",
    "isospectral",
    "j_functional",
    "metric_speed",
    "principal_angles",
    "product_grassmann_distance",
    "product_plucker_distance",
    "quantum_fisher_information",
    "skew_information",
    "split_observable",
    "sqrtm_psd",
    "tau_fs",
    "tau_frowis",
    "tau_g",
    "tau_mt",
    "tau_u",
    "tau_wy",
    "variance",
    "wy_distance",
]
