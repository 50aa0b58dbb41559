"""Einstein-product calculus of even-order tensors: generalized inverses and solvers."""

from .errors import (
    CandidateInvalid,
    ConvergenceFailure,
    Diverged,
    Inconsistent,
    IndexNotOne,
    NotConvergent,
    ShapeMismatch,
    TensorError,
    Unsupported,
    ZeroDiagonal,
    ZeroTensor,
)
from .gen_inverse import (
    CoreNilpotent,
    FullRankFactors,
    IndexResult,
    core_nilpotent,
    drazin,
    drazin_from_candidate,
    drazin_residuals,
    drazin_via_dual,
    full_rank_decomposition,
    group_inverse,
    group_via_one_inverse,
    index,
    moore_penrose,
    one_inverse,
    penrose_residuals,
    rshrank,
)
from .poisson import PoissonSpec, consistent_rhs, generate
from .solvers import (
    ConvergenceDiagnosis,
    DrazinSolution,
    IterationReport,
    convergence_check,
    drazin_solve,
    gauss_seidel,
    general_solution,
    is_drazin_consistent,
    jacobi,
    neumann_inverse,
    normal_solve,
    spectral_radius,
)
from .tensor_core import (
    DenseTensor,
    Shape,
    SplitOperator,
    conj_transpose,
    einstein_product,
    identity,
    is_diagonally_dominant,
    kron_lift,
    norm,
    power,
    rsh,
    rsh_inv,
    split_dlu,
    zeros,
)
from .weighted import WeightedPair, verify_w_drazin, w_drazin

__version__ = "0.1.0"
