"""Exact analysis of the differential polynomial ``p p'' - kappa (p')^2``.

All arithmetic is over ``fractions.Fraction``; floats are rejected at the
boundary.  See :mod:`kappaforge.diffpoly` for the core objects and
:mod:`kappaforge.theoremlab` for the verifiers.
"""

from .conjectures import (
    SearchConfig,
    SearchReport,
    check_conjecture1,
    check_conjecture2,
    check_conjecture3,
    jacobi_extremal,
    random_search,
    shapiro_counterexample,
)
from .diffpoly import (
    KappaClass,
    KappaKind,
    NontrivialReport,
    f_hat_kappa,
    f_kappa,
    kappa_classify,
    kappa_hat_sequence,
    local_expansion,
    nontrivial_zeros,
    r_defect,
    residues_beta,
    sample_R,
    trivial_multiplicity_ledger,
)
from .errors import EndpointCollisionError, InvalidInputError, KappaForgeError, PreconditionError
from .polycore import (
    Poly,
    RootSpec,
    derivative,
    distinct_zero_count,
    evaluate,
    from_roots,
    gcd,
    square_free_decomposition,
)
from .rootcount import (
    Interval,
    count_real_roots,
    isolate_real_roots,
    nonreal_count,
    refine_root,
    sign_right_of,
    sturm_chain,
)
from .theoremlab import (
    VerificationResult,
    kappa_sweep,
    profile,
    verify_degree_drop,
    verify_distinct_bound,
    verify_equation_solution_count,
    verify_global_inequality,
    verify_interval_inequality,
    verify_main_bounds,
    verify_R_structure,
    verify_R_zero_layout,
    verify_sign_lemma,
    verify_total_nontrivial,
)

__all__ = [
    "SearchConfig",
    "SearchReport",
    "check_conjecture1",
    "check_conjecture2",
    "check_conjecture3",
    "jacobi_extremal",
    "random_search",
    "shapiro_counterexample",
    "KappaClass",
    "KappaKind",
    "NontrivialReport",
    "f_hat_kappa",
    "f_kappa",
    "kappa_classify",
    "kappa_hat_sequence",
    "local_expansion",
    "nontrivial_zeros",
    "r_defect",
    "residues_beta",
    "sample_R",
    "trivial_multiplicity_ledger",
    "Poly",
    "RootSpec",
    "derivative",
    "distinct_zero_count",
    "evaluate",
    "from_roots",
    "gcd",
    "square_free_decomposition",
    "Interval",
    "count_real_roots",
    "isolate_real_roots",
    "nonreal_count",
    "refine_root",
    "sign_right_of",
    "sturm_chain",
    "VerificationResult",
    "kappa_sweep",
    "profile",
    "verify_degree_drop",
    "verify_distinct_bound",
    "verify_equation_solution_count",
    "verify_global_inequality",
    "verify_interval_inequality",
    "verify_main_bounds",
    "verify_R_structure",
    "verify_R_zero_layout",
    "verify_sign_lemma",
    "verify_total_nontrivial",
    "EndpointCollisionError",
    "InvalidInputError",
    "KappaForgeError",
    "PreconditionError",
    "__version__",
]

__version__ = "0.1.0"
