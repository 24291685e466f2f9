"""fracdrift: fractional-diffusion kernels, Volterra Green functions, and
anomalous-diffusion Monte Carlo with a coupled particle-field simulator.
"""

from .errors import (ConvergenceError, DomainError, FracdriftError,
                     InsufficientData, PoleError, PrecisionError)
from .grids import TimeGrid
from .kernels import (Divergent, IteratedKernel, KernelSpec, c_gamma,
                      iterated_kernel_closed, iterated_kernel_numeric,
                      moment, rho, rho_fourier, rho_laplace_oracle,
                      rho_table_csv)
from .policies import SeriesPolicy
from .specfun import (gamma_real, mainardi, mittag_leffler,
                      mittag_leffler_wide, reciprocal_gamma)
from .stochastic import (FieldState, PathEnsemble, RngSpec,
                         brownian_increments, coupled_ensemble,
                         h_mass_residual, reconstruct_field, sample_xi_paths,
                         simulate_coupled, xi_covariance_exact,
                         xi_variance_exact, xi_variance_limit, z_covariance)
from .volterra import (GreenTable, VolterraProblem, green_asymptotic_constant,
                       green_function, green_function_ml, resolvent_series,
                       solve_volterra)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ConvergenceError", "DomainError", "FracdriftError", "InsufficientData",
    "PoleError", "PrecisionError",
    "TimeGrid", "SeriesPolicy",
    "gamma_real", "reciprocal_gamma", "mittag_leffler",
    "mittag_leffler_wide", "mainardi",
    "KernelSpec", "IteratedKernel", "Divergent", "c_gamma", "rho",
    "rho_fourier", "rho_laplace_oracle", "moment", "iterated_kernel_closed",
    "iterated_kernel_numeric", "rho_table_csv",
    "VolterraProblem", "GreenTable", "solve_volterra", "green_function",
    "green_function_ml", "green_asymptotic_constant", "resolvent_series",
    "RngSpec", "PathEnsemble", "FieldState", "brownian_increments",
    "sample_xi_paths", "xi_variance_exact", "xi_variance_limit",
    "xi_covariance_exact", "z_covariance", "simulate_coupled",
    "coupled_ensemble", "reconstruct_field", "h_mass_residual",
]
