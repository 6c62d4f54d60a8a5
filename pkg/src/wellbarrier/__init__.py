"""Spectral decomposition of the radial Schrodinger operator with a square
well-barrier potential: piecewise eigenfunctions, Green functions, spectral
measures, diagonalizing transforms and the associated test-function machinery.
"""

from .domain import PotentialSpec, UnitSystem, WaveNumbers, branch_sqrt, validate, wavenumbers
from .coeffs import CoefficientQuad, SingularEnergy, nudge
from .eigenfunctions import (
    BoundStateFunction,
    PiecewiseWave,
    bound_state_function,
    chi,
    chi_k,
    chi_tilde,
    f_of_k,
    momentum_ket,
    phi_delta,
    sigma1_neg,
    sigma2_pos,
    theta_minus,
    theta_plus,
    theta_tilde,
    wronskian,
)
from .green import JostZero, SpectrumHit, apply_resolvent, green_e, green_k
from .spectrum import (
    BoundState,
    DegenerateRoot,
    ScanTooCoarse,
    direct_normalization,
    find_bound_states,
    find_jost_zeros,
    jost,
    residue_normalization,
    rho,
    s_matrix,
    theta_minus_matrix,
    theta_plus_matrix,
    tk_measure,
)
from .transform import (
    ContinuumGrid,
    DecomposedState,
    SmoothBump,
    decompose,
    energy_grid,
    forward_bound,
    forward_continuum,
    functional_bound_check,
    inverse_continuum,
    matrix_element_h_power,
    momentum_forward,
    norm_nm,
    parseval,
    phi_membership,
    reconstruct,
)

__version__ = "0.1.0"
