"""Exact exterior calculus, operator superalgebras and Hodge theory on
Lie-algebra models, over the Gaussian rationals."""

from .scalars import Scalar, parse_scalar
from .forms import FormElement, contract, hodge_star, inner_product, wedge
from .matrices import Matrix
from .operators import (
    GradedOperator,
    RelationEntry,
    RelationReport,
    adjoint,
    compose,
    extend_derivation,
    reeb_power,
    supercommutator,
    super_jacobi_check,
)
from .models import (
    BUILTIN_NAMES,
    LieModel,
    ModelError,
    StructurePack,
    builtin,
    builtin_models,
    ce_differential,
    load_model_file,
    parse_model,
    structure_operators,
)
from .splitting import (
    FoliationSpec,
    foliation_split,
    hodge_split_d1,
    kahler_relations,
    lee_foliation,
    reeb_foliation,
    sasakian_relations,
    sigma_foliation,
)
from .cohomology import (
    CochainComplex,
    CohomologyReport,
    FormComplex,
    basic_adjoint_check,
    basic_subcomplex,
    cohomology,
    full_complex,
    harmonic_space,
    invariant_subcomplex,
    split_laplacian,
    transversal_package,
)
from .cones import (
    ChainMap,
    DecompositionVerdict,
    build_cone,
    lefschetz_cone_package,
    long_exact_check,
    sasakian_decomposition,
    sasakian_harmonic_check,
    vaisman_decomposition,
    vaisman_harmonic_check,
)

__version__ = "0.1.0"
