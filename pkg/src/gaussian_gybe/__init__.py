"""Parameter-dependent Gaussian (z, N)-generalized Yang-Baxter operators.

Build the Fateev-Zamolodchikov spectral coefficients, the qudit site operator
``M_{m^N}`` and its embedded quantum-torus generators, the operators
``R~_i(a)`` and ``S_i``, and check every relation they are claimed to satisfy.
"""

from .entangled_states import (GhzLikeState, Trajectory, analytic_amplitudes, apply_to_product_state,
                               evolve, reduced_density_check, verify_state_formula)
from .errors import (DimensionCapExceeded, DimensionMismatch, DomainError, GybeError,
                     NotDiagonalSupport, SingularDenominator, UnsupportedParity, WindowViolation)
from .fz_coefficients import (CoefficientKind, ModulusConfig, SpectralCoefficients,
                              normalization_factor, verify_star_triangle_scalar,
                              verify_unitarity_sum, x_additive, x_multiplicative, x_tilde)
from .gybe_solutions import (ParamOperatorFamily, Residual, check_additive_ybe, check_braid_relations,
                             check_far_commutativity, check_gybe, check_mult_ybe,
                             check_unitary_family, gaussian_s, make_family, r_tilde)
from .matrix_core import StateVector
from .torus_rep import (PauliPair, SiteSystem, build_paulis, build_site_operator, build_site_system,
                        verify_torus_relations)

__version__ = "0.1.0"
