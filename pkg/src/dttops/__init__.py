"""dttops: sparse graph operators and polynomial filters for the 16 DTTs.

The package covers four layers:

* transform bases and spectra for the 8 DCT / 8 DST types (:mod:`.basis`),
* the sparse commuting operator families and general-graph operator helpers
  (:mod:`.operators`),
* polynomial / multivariate-polynomial filter design under least-squares,
  sparsity-constrained, and minimax criteria (:mod:`.design`, backed by the
  simplex solver in :mod:`.simplex`),
* vertex-domain filter application and transform-cost proxies with pruning
  (:mod:`.filters`, :mod:`.costs`).

Hot kernels run through a compiled extension when built, with a NumPy
fallback (:mod:`.backend`).  The `dttops` CLI exposes the verification,
design, benchmark, and pruning-simulation harnesses.
"""

from .backend import active_backend_name, available_backends, use_backend
from .basis import (
    basis_matrix,
    forward,
    graph_frequencies,
    inverse,
    line_laplacian_dct2,
    line_laplacian_dst4,
    operator_eigenvalues,
)
from .costs import (
    BlockCosts,
    axis_cost_model,
    block_transform_costs,
    default_cost_weights,
    prune,
    quadratic_cost_exact,
    quadratic_cost_proxy,
)
from .design import (
    DesignProblem,
    FilterDesign,
    design_lasso,
    design_ls,
    design_minimax_mpgf,
    design_minimax_pgf,
    design_omp,
    enumerate_terms,
    exhaustive_sparse_fit,
    mpgf_matrix_pi,
    parse_design,
    serialize_design,
    vandermonde_psi,
)
from .filters import (
    OpCounter,
    apply_mpgf,
    apply_pgf,
    apply_pgf_chebyshev,
    chebyshev_to_monomial,
    frequency_response,
    monomial_to_chebyshev,
)
from .kinds import ALL_KINDS, DttKind
from .operators import (
    ConeCheck,
    OperatorConstructionError,
    OperatorSet,
    SparseOperator,
    build_dct2,
    build_dct5,
    build_dst4,
    build_dst7,
    build_operator,
    check_laplacian_cone,
    complement_laplacian,
    eigen_residual,
    family_report,
    gallery_text,
    kron_2d,
    operator_set,
    symmetry_operator,
    synthesize_operator,
    to_laplacian,
)
from .simplex import LpProblem, LpResult, LpStatus, SimplexError, solve

__version__ = "0.1.0"
