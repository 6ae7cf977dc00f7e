"""Exact geometry and additive combinatorics for pierced point configurations.

Points in the plane whose connecting lines are all met by a small set ``R``
are studied through the group law of a cubic curve: three points of the
cubic are collinear exactly when they sum to zero, so piercing turns into a
restricted-sumset condition and structure can be recovered as a coset.
"""

from .abelian import (
    CIRCLE,
    INFINITE,
    AngleElem,
    AngleGroup,
    FinAbGroup,
    GroupSet,
    SubgroupDescriptor,
    all_subgroups,
    check_lemma_AB,
    lev_hypothesis_holds,
    minimal_containing_coset,
    restricted_sumset,
    stabilizer,
    sumset,
)
from .analyzer import (
    StructureReport,
    analyze_bipartite,
    analyze_unipartite,
    direction_census,
    min_piercing_number,
    minimum_piercing_set,
    reducible_case_gate,
)
from .conic_line import ConicKind, gt_collinear_check, phi_ell, phi_Q
from .constructions import (
    AngleConfig,
    bipartite_construction,
    complete_quadrilateral,
    fp_coset_instance,
    regular_mgon,
    rotated_union,
    three_line_bipartite,
    two_point,
)
from .cubic import O, ECPoint, WeierstrassCurve
from .errors import DegenerateInputError, InfiniteGroupError, UnsupportedError, UsageError
from .fields import QQ, Fp, PrimeField
from .plane import PointConfig, ProjLine, ProjPoint, check_piercing, check_piercing_bipartite, collinear

__version__ = "0.1.0"

__all__ = [
    "all_subgroups",
    "analyze_bipartite",
    "analyze_unipartite",
    "AngleConfig",
    "AngleElem",
    "AngleGroup",
    "bipartite_construction",
    "check_lemma_AB",
    "check_piercing",
    "check_piercing_bipartite",
    "CIRCLE",
    "collinear",
    "complete_quadrilateral",
    "ConicKind",
    "DegenerateInputError",
    "direction_census",
    "ECPoint",
    "FinAbGroup",
    "Fp",
    "fp_coset_instance",
    "GroupSet",
    "gt_collinear_check",
    "INFINITE",
    "InfiniteGroupError",
    "lev_hypothesis_holds",
    "min_piercing_number",
    "minimal_containing_coset",
    "minimum_piercing_set",
    "O",
    "phi_ell",
    "phi_Q",
    "PointConfig",
    "PrimeField",
    "ProjLine",
    "ProjPoint",
    "QQ",
    "reducible_case_gate",
    "regular_mgon",
    "restricted_sumset",
    "rotated_union",
    "stabilizer",
    "StructureReport",
    "SubgroupDescriptor",
    "sumset",
    "three_line_bipartite",
    "two_point",
    "UnsupportedError",
    "UsageError",
    "WeierstrassCurve",
]
