"""Free-particle coherent states, their symmetry-transformed and Darboux-transformed families."""
from .basis import UniformGrid, basis_momentum, basis_position, gauss_hermite
from .coherent import CoherentExpansion, classify, psi_z
from .darboux import apply_L, apply_L_plus, bound_states, soliton_potential
from .models import RunConfig, SolitonSpec, StateFamily, Tolerances
from .resolution import build_rho_density, moment_check_rho, moment_check_xi, solve_omega_xi
from .symmetry import partial_fractions, poly_from_alphas, s_inverse_block, s_matrix
from .utils import InvalidParameterError, NumericalFailure, SolitonCSError

__version__ = "0.1.0"
