"""crossfam: pairwise crossing and avoiding segment families in the plane.

Exact integer predicates throughout; every family a driver returns has been
verified pairwise before it is handed back.
"""

__version__ = "0.1.0"

from .crossing import (
    FamilyMode,
    RunConfig,
    SegmentFamily,
    find_avoiding_family,
    find_crossing_family,
    match_avoiding_pair,
    split_pair,
    theory_params,
)
from .clusters import build_clusters, find_avoiding_dense_pair, pair_statistics, select_pair
from .geom import (
    GeometricGraph,
    Orientation,
    Point,
    PointSet,
    Segment,
    convex_hull,
    general_position_check,
    hulls_disjoint,
    line_meets_hull,
    orientation,
    segments_avoiding,
    segments_cross,
)
from .oracle import max_family_bruteforce, verify_family
from .poset import Chain, Cmp, PairPoset, build_pair_poset, interval_chains, less_under, longest_chain
from .zones import (
    AllDetermined,
    Line,
    Sampled,
    ZoneLineSet,
    build_zone_lines,
    sample_sector_net,
    verify_zone_property,
    zone_point_count,
)

__all__ = [
    "AllDetermined",
    "Chain",
    "Cmp",
    "FamilyMode",
    "GeometricGraph",
    "Line",
    "Orientation",
    "PairPoset",
    "Point",
    "PointSet",
    "RunConfig",
    "Sampled",
    "Segment",
    "SegmentFamily",
    "ZoneLineSet",
    "build_clusters",
    "build_pair_poset",
    "build_zone_lines",
    "convex_hull",
    "find_avoiding_dense_pair",
    "find_avoiding_family",
    "find_crossing_family",
    "general_position_check",
    "hulls_disjoint",
    "interval_chains",
    "less_under",
    "line_meets_hull",
    "longest_chain",
    "match_avoiding_pair",
    "max_family_bruteforce",
    "orientation",
    "pair_statistics",
    "sample_sector_net",
    "segments_avoiding",
    "segments_cross",
    "select_pair",
    "split_pair",
    "theory_params",
    "verify_family",
    "verify_zone_property",
    "zone_point_count",
]
