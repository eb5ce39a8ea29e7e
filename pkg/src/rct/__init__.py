"""Exact real algebraic geometry toolkit.

Sparse rational polynomial arithmetic, Sturm root counting, symbolic
critical-polynomial certificates, Chow form calculus with the scaling
homotopy, divisor membership tests, and the fan projection demo.
"""

from .poly import (
    NEG_INF,
    Rational,
    SHD_ANY,
    SHD_MIXED,
    ShdValue,
    SparsePoly,
    divide_exact,
    format_poly,
    is_substitutable_homogeneous,
    poly_divmod,
    shd,
    substitute_graded,
    var_weight,
)
from .parse import PolyParseError, parse_poly, parse_rational
from .sturm import (
    EndpointRootError,
    SturmSeq,
    cauchy_root_bound,
    count_distinct_roots_in,
    count_distinct_roots_total,
    expand_endpoints_clear,
    isolate_roots_bisection,
    sign_changes,
    sign_sequence_at,
    sturm_sequence,
)
from .critical import (
    D_MAX_DEFAULT,
    CriticalSet,
    RootVerdict,
    SubstitutablePair,
    SymbolicSturmPoly,
    check_substitutable_pair,
    critical_polynomials,
    has_d_distinct_real_roots,
    in_S_n,
    symbolic_sturm,
    verify_pair_chain,
)
from .chow import (
    MHForm,
    TaffyPath,
    TExpansion,
    chow_of_linear,
    chow_of_points,
    det_action_check,
    eigenform_degree,
    group_var,
    is_real_form,
    is_suspension,
    mul_cycles,
    proportional,
    t_expand,
    taffy,
)
from .divisors import (
    Divisor,
    MembershipReport,
    e_certificate_forms,
    in_E,
    in_div_double_prime,
    in_div_prime,
    paper_family,
    positivity_margin,
    sampled_sphere_min,
    scale_divisor,
)
from .fan import (
    FanResult,
    FiberError,
    ZeroCycle,
    cycle_distance,
    default_demo,
    limit_check,
    psi_demo,
)

__version__ = "0.1.0"

__all__ = [
    "NEG_INF",
    "Rational",
    "SHD_ANY",
    "SHD_MIXED",
    "ShdValue",
    "SparsePoly",
    "divide_exact",
    "format_poly",
    "is_substitutable_homogeneous",
    "poly_divmod",
    "shd",
    "substitute_graded",
    "var_weight",
    "PolyParseError",
    "parse_poly",
    "parse_rational",
    "EndpointRootError",
    "SturmSeq",
    "cauchy_root_bound",
    "count_distinct_roots_in",
    "count_distinct_roots_total",
    "expand_endpoints_clear",
    "isolate_roots_bisection",
    "sign_changes",
    "sign_sequence_at",
    "sturm_sequence",
    "D_MAX_DEFAULT",
    "CriticalSet",
    "RootVerdict",
    "SubstitutablePair",
    "SymbolicSturmPoly",
    "check_substitutable_pair",
    "critical_polynomials",
    "has_d_distinct_real_roots",
    "in_S_n",
    "symbolic_sturm",
    "verify_pair_chain",
    "MHForm",
    "TaffyPath",
    "TExpansion",
    "chow_of_linear",
    "chow_of_points",
    "det_action_check",
    "eigenform_degree",
    "group_var",
    "is_real_form",
    "is_suspension",
    "mul_cycles",
    "proportional",
    "t_expand",
    "taffy",
    "Divisor",
    "MembershipReport",
    "e_certificate_forms",
    "in_E",
    "in_div_double_prime",
    "in_div_prime",
    "paper_family",
    "positivity_margin",
    "sampled_sphere_min",
    "scale_divisor",
    "FanResult",
    "FiberError",
    "ZeroCycle",
    "cycle_distance",
    "default_demo",
    "limit_check",
    "psi_demo",
    "__version__",
]
