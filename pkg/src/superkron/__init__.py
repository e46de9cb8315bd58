"""superkron: a numerical verification lab for the elliptic Kronecker
function, its odd supersymmetric generalization with free coefficients,
and the (super) Baxter-Belavin elliptic R-matrices.

The package certifies, at configurable tolerance, every identity of the
construction: the Fay trisecant identity and heat equation for the
scalar Kronecker function, the coefficient constraints of the odd
ansatz, the sine-algebra basis relations, and the associative, quantum
and classical Yang-Baxter equations with their supersymmetric
modifications.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .elliptic import (
    DerivOrder,
    EllipticContext,
    Residual,
    contour_residue,
    fay_residual,
    heat_residual,
    kronecker,
    kronecker_value,
    lattice_distance,
    theta,
    weierstrass,
)
from .grassmann import (
    MU1,
    MU2,
    OMEGA,
    ZETA1,
    ZETA2,
    ZETA3,
    Generator,
    GrassmannElement,
    Monomial,
    Parity,
    gadd,
    gcoeff,
    gderiv,
    gexp,
    gmul,
    gscale,
    parity,
)
from .ansatz import (
    CANONICAL,
    TRUNCATED,
    AnsatzCoefficients,
    HeatParams,
    SuperArgument,
    constraint_scan,
    super_boundary_residuals,
    super_fay_residual,
    super_heat_residual,
    super_phi,
)
from .rmatrix import (
    BasisIndex,
    SquareOperator,
    aybe_residual,
    classical_r,
    cubic_identity_residual,
    cybe_residual,
    permutation_operator,
    quantum_R,
    qybe_residual,
    structure_constant,
    t_matrix,
    unitarity_residual,
    varphi,
)
from .super_rmatrix import (
    SuperBasisParams,
    SuperOperator,
    modified_qybe_residuals,
    shift_residual,
    super_R,
    super_aybe_residual,
    super_classical_r,
    super_cybe_residual,
    super_symmetry_residual,
    super_unitarity_residual,
    super_basis_phi,
)
from .verifier import RunConfig, VerificationReport, emit, run
