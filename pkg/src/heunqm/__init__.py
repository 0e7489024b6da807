"""Exactly solvable quantum systems from a nine-parameter Heun-type equation.

Maps potentials to equation parameters, assembles series wavefunctions from
orthogonal-polynomial recursions, computes bound-state spectra, and checks
every output against an independent finite-difference oracle.
"""

from .errors import (
    BreakdownError,
    ConstraintError,
    DomainError,
    HeunqmError,
    InadmissibleError,
    NumericError,
    PoleError,
)
from .heun import (
    AuxConstants,
    BasisParams,
    Classification,
    HeunParams,
    SolutionClass,
    aux_constants,
    basis_param_branches,
    basis_params,
    classify,
    normalize_d,
)
from .orthopoly import (
    ClassFamily,
    JacobiMatrix,
    RacahHeunFamily,
    VPolyFamily,
    WilsonFamily,
    class_recursion_coeffs,
    eval_class_polynomial,
    identity_14_residual,
    jacobi_matrix,
    numeric_discrete_spectrum,
    racah_heun_eval,
    v_poly_eval,
    wilson_discrete_spectrum,
    wilson_eval,
    wilson_from_hypergeometric,
    wilson_weight,
)
from .potentials import (
    PhysicalSystem,
    build_system,
    energy_param,
    potential_value,
    restricted_x_potential,
    solve_row_params,
    strengths_from_heun,
    system_from_heun,
)
from .quantize import bound_state_systems, refine_dial, secular_residual
from .specfun import (
    JacobiIndex,
    gauss_2f1,
    incomplete_beta_lower,
    jacobi_norm,
    jacobi_poly,
    log_gamma,
    log_gamma_complex,
)
from .transforms import CASES, CoordinateCase, case_by_name, dy_dx, x_of_y, y_of_x, y_pair
from .verifier import Grid, default_grid, numeric_eigenvalues, schrodinger_residual
from .wavefunction import (
    SpectrumResult,
    WavefunctionSeries,
    build_series,
    map_params_general,
    map_params_restricted,
    map_params_special,
    psi_series,
    psi_series_grid,
    restricted_spectrum,
)

__version__ = "0.1.0"
