"""Public package exports."""

__version__ = "0.1.0"

from .config import FlowSettings, RunConfig
from .exceptions import (
    BandwidthError,
    DegenerateFitError,
    DimensionMismatchError,
    InstabilityError,
    InvalidConfigError,
    OracleMismatchError,
    ResolutionError,
    SingularSymbolError,
    Vects1Error,
    VerificationFailure,
)
from .expressions import parse_series
from .flows import FlowTrace, burgers_characteristics, evolve, evolve_many
from .fourier import FourierSeries, differentiate, grid_transform, inverse_grid_transform, l2_pair, multiply
from .lie_poisson import (
    CocycleSpec,
    RegularFunctional,
    cocycle_report,
    gradient_audit,
    hamiltonian_field,
    lie_bracket,
    op_J,
    op_K,
    poisson_bracket,
)
from .obstruction import (
    ClassificationResult,
    classify_k,
    crosscheck_matrix,
    defect_n,
    m0_leading_term,
    pairing_closed_form,
    scan,
)
from .operators import OperatorMatrix, compose, op_from_symbol, op_mult
from .sobolev import X_k_field, apply_A, apply_A_inv, f_k, h_k_eval, sobolev_inner
from .types import ArithmeticMode, KernelKind

__all__ = [
    "__version__",
    # Core classes
    "CocycleSpec",
    "ClassificationResult",
    "FlowTrace",
    "FourierSeries",
    "OperatorMatrix",
    "RegularFunctional",
    # Configuration
    "FlowSettings",
    "RunConfig",
    # Types & Enums
    "ArithmeticMode",
    "KernelKind",
    # Series and operators
    "compose",
    "differentiate",
    "grid_transform",
    "inverse_grid_transform",
    "l2_pair",
    "multiply",
    "op_from_symbol",
    "op_mult",
    "parse_series",
    # Structures and Hamiltonians
    "X_k_field",
    "apply_A",
    "apply_A_inv",
    "cocycle_report",
    "f_k",
    "gradient_audit",
    "h_k_eval",
    "hamiltonian_field",
    "lie_bracket",
    "op_J",
    "op_K",
    "poisson_bracket",
    "sobolev_inner",
    # Obstruction
    "classify_k",
    "crosscheck_matrix",
    "defect_n",
    "m0_leading_term",
    "pairing_closed_form",
    "scan",
    # Flows
    "burgers_characteristics",
    "evolve",
    "evolve_many",
    # Errors
    "BandwidthError",
    "DegenerateFitError",
    "DimensionMismatchError",
    "InstabilityError",
    "InvalidConfigError",
    "OracleMismatchError",
    "ResolutionError",
    "SingularSymbolError",
    "Vects1Error",
    "VerificationFailure",
]
