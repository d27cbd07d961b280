"""zetaforge: exact-arithmetic toolkit for zeta functions of arithmetic
schemes at strictly negative integers.

Scheme expressions are built from finite-field points, curves given by
their L-polynomial, rings of integers of abelian number fields, and the
operations disjoint union / closed-open gluing / complements / affine and
projective bundles / cellular assemblies.  The package computes vanishing
orders and special values of the attached zeta functions by independent
analytic and cohomological routes and checks that they agree.
"""

from .archimedean import (
    EquivariantBetti,
    HodgeData,
    equivariant_dims,
    gamma_factor_order,
    hodge_equivariant_dims,
    secondary_euler_vo,
    vanishing_order_conjectural,
)
from .detcomplex import (
    BoundedFreeComplex,
    ChainMap,
    GradedLine,
    cohomology,
    determinant,
    euler_characteristics,
    mapping_cone,
    multiplicative_euler_char,
    shift,
)
from .errors import ZetaforgeError
from .ffengine import (
    VerificationReport,
    ell_adic_check,
    p_part_check,
    point_count,
    trace_formula_check,
    verify_C_finite_char,
)
from .intlinalg import (
    FinGenAbGroup,
    IntMatrix,
    SmithDecomposition,
    cokernel,
    group_order,
    rational_valuation,
    smith_normal_form,
)
from .lfunctions import (
    AbelianFieldSpec,
    CyclotomicNumber,
    DirichletCharacter,
    L_at_nonpositive,
    SpecialValue,
    dedekind_order,
    dedekind_special_value,
    gen_bernoulli,
    leading_value,
    trivial_zero_order,
)
from .scheme_algebra import (
    Affine,
    Cellular,
    Curve,
    Disjoint,
    Glue,
    Minus,
    NumberRing,
    Point,
    Proj,
    SchemeExpr,
    validate,
    weil_order_data,
    zeta_of,
)
from .zetarep import (
    FiniteCharFactor,
    LFactorShifted,
    RationalFunctionT,
    ZetaProduct,
    evaluate_at,
    multiply,
    power_series,
    shift_s,
    vanishing_order,
)

__version__ = "0.1.0"


def parse_expr(src: str) -> SchemeExpr:
    """Parse the s-expression DSL (see the cli module for the grammar)."""
    from .cli import parse_expr as _parse

    return _parse(src)
