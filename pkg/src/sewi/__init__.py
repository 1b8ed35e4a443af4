"""sewi: a symmetric exponential wave integrator with Fourier spectral space
discretization for the nonlinear Schrodinger equation on periodic boxes,
built for low-regularity potentials and fractional power nonlinearities.
"""

from .spectral import (
    Grid,
    SpectralField,
    GridMismatchError,
    DomainError,
    analyze,
    synthesize,
    project_from_function,
    free_propagator,
    apply_filter,
    sobolev_norm,
    truncate_modes,
    pad_modes,
    phi1,
    phi_s,
    phi_c,
)
from .model import (
    NonlinearitySpec,
    Potential,
    InitialDatum,
    ConfigurationError,
    apply_B,
    gateaux_dB,
    mass,
    energy,
    make_potential,
    make_initial_datum,
)
from .integrator import (
    SolverConfig,
    SolverState,
    BlowUpError,
    RunReport,
    StabilityReport,
    first_step,
    sewi_step,
    evolve,
    stability_check,
)
from .harness import (
    ExperimentSpec,
    ConvergenceTable,
    reference_solution,
    temporal_convergence,
    spatial_convergence,
    coupled_convergence,
    conservation_run,
    conservation_pair,
    benchmark_soliton,
)
from .fieldio import save_field, load_field, density_csv

__version__ = "0.1.0"
