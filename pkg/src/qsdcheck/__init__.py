"""Exact-arithmetic feasibility checks for quasisymmetric 2-design parameters.

The library classifies candidate parameter sets (v, k, lambda, x, y) against
the block-count identity, three Krein-type inequalities, eigenvalue and
regular-set integrality, and the Hasse-invariant exclusion for affine
resolvable shapes; verifies computationally that the three inequalities are
one and the same condition; and cross-validates every closed form by
brute-force counting on explicitly constructed small designs, including a
from-scratch Steiner system S(4,7,23).
"""

__version__ = "0.1.0"

from .block_graph import (
    RegularSetParams,
    SrgParams,
    block_graph_params,
    regular_set_params,
    srg_sanity,
)
from .criteria import (
    CriterionReport,
    NeumaierTerms,
    b_from_cc,
    calderbank,
    calderbank_value,
    cc_slack,
    full_report,
    hobart,
    hobart_value,
    krein_form,
    neumaier,
    shrikhande_ard,
    squarefree_part,
)
from .designs import (
    ArdParams,
    DerivedParams,
    QsdParams,
    ard_params,
    bh_family,
    complement,
    derive_params,
    detect_ard,
)
from .equivalence import (
    ChainReport,
    RationalTuple,
    a_paren_identity,
    final_polynomial,
    make_tuple,
    run_verification,
    sample_domain,
    verify_chain,
)
from .oracle import (
    ExplicitDesign,
    OracleReport,
    build_6_3_2,
    build_pair_design,
    build_witt_23,
    design_from_text,
    design_to_text,
    verify_design,
)
from .scanner import (
    FeasibilityVerdict,
    ScanRange,
    TableReport,
    classify,
    reproduce_tables,
    scan,
)

__all__ = [
    "__version__",
    "ArdParams",
    "ChainReport",
    "CriterionReport",
    "DerivedParams",
    "ExplicitDesign",
    "FeasibilityVerdict",
    "NeumaierTerms",
    "OracleReport",
    "QsdParams",
    "RationalTuple",
    "RegularSetParams",
    "ScanRange",
    "SrgParams",
    "TableReport",
    "a_paren_identity",
    "ard_params",
    "b_from_cc",
    "bh_family",
    "block_graph_params",
    "build_6_3_2",
    "build_pair_design",
    "build_witt_23",
    "calderbank",
    "calderbank_value",
    "cc_slack",
    "classify",
    "complement",
    "derive_params",
    "design_from_text",
    "design_to_text",
    "detect_ard",
    "final_polynomial",
    "full_report",
    "hobart",
    "hobart_value",
    "krein_form",
    "make_tuple",
    "neumaier",
    "regular_set_params",
    "reproduce_tables",
    "run_verification",
    "sample_domain",
    "scan",
    "shrikhande_ard",
    "squarefree_part",
    "srg_sanity",
    "verify_chain",
    "verify_design",
]
