"""Exact arithmetic in Cayley-Dickson algebras A_n."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    ComplexScalar,
    Element,
    associator_of_triple,
    basis_product,
    conjugate,
    hermitian_inner_product,
    i_element,
    inner_product_real,
    make_element,
    multiply,
    real_imag_split,
)
from .errors import InputError  # noqa: E402
from .linalg import OperatorMatrix, Subspace, contains, intersect, kernel, orthogonal_complement  # noqa: E402
from .operators import (  # noqa: E402
    OperatorKind,
    alternator_space,
    annihilator,
    associator_space,
    is_alternative,
    is_quaternionic_pair,
    operator_matrix,
)
from .constructions import (  # noqa: E402
    Certificate,
    a4_zero_divisor,
    a5_family,
    assoc_pair_with_dim,
    build_octonion_automorphism,
    double_zero_divisor,
    element_with_ann_dim,
    scale_pair,
    top_zero_divisor,
)
from .documents import parse_element, serialize_element  # noqa: E402
from .verify import SuiteSpec, VerificationReport, run_suite, spectrum_search  # noqa: E402

__all__ = [
    "__version__",
    "ComplexScalar",
    "Element",
    "associator_of_triple",
    "basis_product",
    "conjugate",
    "hermitian_inner_product",
    "i_element",
    "inner_product_real",
    "make_element",
    "multiply",
    "real_imag_split",
    "OperatorKind",
    "alternator_space",
    "annihilator",
    "associator_space",
    "is_alternative",
    "is_quaternionic_pair",
    "operator_matrix",
    "Certificate",
    "a4_zero_divisor",
    "a5_family",
    "assoc_pair_with_dim",
    "build_octonion_automorphism",
    "double_zero_divisor",
    "element_with_ann_dim",
    "scale_pair",
    "top_zero_divisor",
    "InputError",
    "OperatorMatrix",
    "Subspace",
    "contains",
    "intersect",
    "kernel",
    "orthogonal_complement",
    "parse_element",
    "serialize_element",
    "SuiteSpec",
    "VerificationReport",
    "run_suite",
    "spectrum_search",
]
