"""Exact-arithmetic double Poisson brackets on cobar constructions of
cyclic DG coalgebras, the induced Lie brackets on cyclic quotients and
their homology, and the induced graded Poisson structures on
representation algebras with trace maps."""

from .cobar_bracket import (
    AxiomReport,
    CobarAlgebra,
    DoubleElement,
    axiom_suite,
    check_d_compat,
    check_double_jacobi,
    check_outer_derivation,
    check_skew,
    cobar,
    double_bracket,
    format_double,
    induced_bracket,
    kxy_cobar,
)
from .coalgebra_file import LoadedFile, ParseError, parse_file, parse_text
from .cyclic_coalgebra import (
    CyclicAlgebra,
    CyclicCoalgebra,
    DegenerateForm,
    InvalidCoalgebra,
    ValidationReport,
    dualize,
    kxy_coalgebra,
    torus_cohomology_algebra,
    validate,
    validate_algebra,
)
from .cyclic_homology import (
    ComparisonReport,
    CyclicSliceComplex,
    TensorSlice,
    compare_with_cobar,
    cyclic_complex,
    hochschild_slice_homology,
    op_N,
    op_T,
    op_b,
    op_b_prime,
)
from .exactla import (
    NotAComplex,
    NotASubspace,
    RatMatrix,
    Subspace,
    homology_slice,
    image,
    kernel,
    quotient_basis,
    rank,
)
from .expressions import ExpressionError, parse_expression
from .graded_core import (
    CommAlgebra,
    CommElement,
    CommGenerator,
    Element,
    FreeDGAlgebra,
    Generator,
    InfiniteSlice,
    MixedAlgebras,
    Word,
    apply_differential,
    check_d_squared,
    comm_multiply,
    koszul_sign,
    multiply,
    slice_basis,
)
from .natural_quotient import (
    NaturalElement,
    NotACycle,
    classes_agree,
    format_natural,
    homology_bracket,
    natural_bracket,
    natural_differential,
    natural_slice_basis,
    natural_slice_homology,
    one_form_coordinates,
    one_form_cycle,
    project_natural,
    reduce_mod_boundaries,
)
from .rep_poisson import (
    MatrixOverRep,
    RepAlgebra,
    RepBracket,
    check_rep_poisson_axioms,
    check_trace_poisson,
    rep_algebra,
    rep_bracket,
    rep_homology_slice,
    trace,
    universal_rep,
)

__version__ = "0.1.0"
