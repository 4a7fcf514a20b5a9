"""PSL(2) over small finite fields as permutation groups, an executable
classification of the transitive groups of order (p^3-p)/2 on the
projective line containing the translations, and a brute-force search
that rediscovers the dichotomy."""

from .fields import (
    CUBIC_X3_X2_1,
    CUBIC_X3_X_1,
    Field,
    QuadraticClasses,
    field_of_order,
    gf8_labeling,
    primitive_root,
    quadratic_classes,
)
from .groups import DEFAULT_ENUMERATION_CAP, ConjugacyClass, PermGroup, closure_images
from .projline import MoebiusMap, Permutation, ProjLine
from .psl2 import (
    Mat2,
    SimplicityCertificate,
    SL2Group,
    certify_simplicity,
    psl2_expected_order,
    psl2_perm_group,
    sl2_group,
)
from .search import SearchOutcome, constrained_search, full_search
from .verify import (
    CheckResult,
    Dichotomy,
    StabilizerDecomposition,
    TwistAnalysis,
    VerificationReport,
    build_exceptional,
    classify,
    compute_twist,
    corollary_check,
    decompose_stabilizers,
    p3_case_check,
)

__version__ = "0.1.0"

__all__ = [
    "CUBIC_X3_X2_1",
    "CUBIC_X3_X_1",
    "CheckResult",
    "ConjugacyClass",
    "DEFAULT_ENUMERATION_CAP",
    "Dichotomy",
    "Field",
    "Mat2",
    "MoebiusMap",
    "PermGroup",
    "Permutation",
    "ProjLine",
    "QuadraticClasses",
    "SL2Group",
    "SearchOutcome",
    "SimplicityCertificate",
    "StabilizerDecomposition",
    "TwistAnalysis",
    "VerificationReport",
    "build_exceptional",
    "classify",
    "closure_images",
    "compute_twist",
    "constrained_search",
    "corollary_check",
    "decompose_stabilizers",
    "field_of_order",
    "full_search",
    "gf8_labeling",
    "p3_case_check",
    "primitive_root",
    "certify_simplicity",
    "psl2_expected_order",
    "psl2_perm_group",
    "quadratic_classes",
    "sl2_group",
]
