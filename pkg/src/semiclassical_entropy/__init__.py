"""Semiclassical hbar-expansion of the von Neumann entropy in phase space."""

from .carnot import (CarnotSpec, WorkSeries, carnot_work_exact, carnot_work_series,
                     harmonic_carnot_w2)
from .entropy_expansion import (EntropySeries, aw_terms, entropy_order0, entropy_order1,
                                entropy_order2, entropy_series, entropy_series_via_fw,
                                fw_terms, verify_star_identity)
from .errors import (ConfigError, ConvergenceError, CoverageError, LeakageError,
                     NumericalError, SemiclassicalError)
from .oracle import (DensityMatrix, Grid1D, SpectralDecomposition, diagonalize, displace,
                     log_z_quantum, mix, thermal_density_matrix, thermal_entropy_exact,
                     von_neumann_entropy, wigner_transform, z_quantum)
from .phase_space import (Field2D, Grid2D, bilinear_j2, g_functional, integrate,
                          moyal_star_truncated, partial_derivative, poisson_bracket)
from .potentials import PotentialSpec, ThermalSpec, suggest_grid
from .thermal import (canonical_expectation, harmonic_entropy, harmonic_log_z, log_z_classical,
                      s_classical, s_thermal_series, z_classical, zq_expansion)
from .wigner_states import (WignerSeries, classical_boltzmann, classical_hamiltonian_field,
                            custom_series, displaced_mixture_series, eta_field,
                            thermal_wigner_series)

__version__ = "0.1.0"
