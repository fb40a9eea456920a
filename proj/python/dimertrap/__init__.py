"""Double-well condensate self-trapping toolkit.

Exact Fock-basis dynamics, mean-field two-mode integration and closed-form
semiclassical estimates of the time-averaged population imbalance, backed by
the C++ core in :mod:`dimertrap._core`.
"""

from dimertrap._core import (
    CapacityError,
    DimerParams,
    FockHamiltonian,
    GpeTrajectory,
    IntegrationError,
    MeanFieldState,
    Method,
    SweepCell,
    SweepResult,
    ValidationError,
    __version__,
    build_hamiltonian,
    cubic_residual,
    exact_imbalance_trajectory,
    exact_zbar,
    heuristic_p_amp,
    heuristic_p_of_t,
    integrate_gpe,
    lambda_critical,
    meanfield_energy_per_particle,
    meanfield_zbar,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    number_fluctuation_std,
    rabi_amplitude,
    rabi_population,
    reproduce_figure,
    run_sweep,
    zbar_closed_form,
    zbar_closed_form_corrected,
    zbar_fluct,
    zbar_mc_average,
    zbar_meanfield_closed,
)

__all__ = [
    "CapacityError",
    "DimerParams",
    "FockHamiltonian",
    "GpeTrajectory",
    "IntegrationError",
    "MeanFieldState",
    "Method",
    "SweepCell",
    "SweepResult",
    "ValidationError",
    "__version__",
    "build_hamiltonian",
    "cubic_residual",
    "exact_imbalance_trajectory",
    "exact_zbar",
    "heuristic_p_amp",
    "heuristic_p_of_t",
    "integrate_gpe",
    "lambda_critical",
    "meanfield_energy_per_particle",
    "meanfield_zbar",
    "normal_cdf",
    "normal_pdf",
    "normal_quantile",
    "number_fluctuation_std",
    "rabi_amplitude",
    "rabi_population",
    "reproduce_figure",
    "run_sweep",
    "zbar_closed_form",
    "zbar_closed_form_corrected",
    "zbar_fluct",
    "zbar_mc_average",
    "zbar_meanfield_closed",
]
