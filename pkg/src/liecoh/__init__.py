"""Exact cohomology of left-invariant involutive structures on compact Lie
groups: classification, Levi-form analysis, root decompositions,
Chevalley-Eilenberg cohomology (plain, relative, bigraded), Kunneth/Bott
assembly, and the small-divisor torus model."""

from .scalars import GaussianRational, ScalarParseError, format_scalar, parse_scalar
from .linalg import (
    EigenSplit,
    ExactMatrix,
    Inertia,
    NonHermitianError,
    NonSplitError,
    char_poly,
    hermitian_inertia,
    rank_kernel,
    solve_linear,
    split_eigen,
)
from .algebra import (
    AlgebraError,
    ClosureError,
    LieAlgebra,
    ParentMismatchError,
    Subalgebra,
    builtin_algebra,
    parse_span,
    su2,
    su3,
    torus,
)
from .classify import (
    BctReport,
    ClassificationReport,
    LeviForm,
    bct_check,
    characteristic_space,
    classify_structure,
    levi_form,
)
from .roots import (
    PositiveSystem,
    RootDatum,
    StandardStructure,
    build_standard,
    positive_system,
    root_decomposition,
)
from .cohomology import (
    BigradedComplex,
    CochainComplex,
    CohomologyTable,
    GModule,
    bigraded_cohomology,
    bigraded_complex,
    ce_cohomology,
    ce_complex,
    ce_differential,
    relative_ce_cohomology,
)
from .decompose import (
    AssemblyReport,
    adjoint_quotient_module,
    bott_dolbeault,
    full_assembly,
    killing_form,
    kunneth_assemble,
)
from .torus import (
    DivisorReport,
    FourierData,
    MuSpec,
    liouville_report,
    singular_lattice,
    solve_dprime,
)

__version__ = "0.1.0"
