"""Linear lambda terms and rooted trivalent maps with boundary."""
from .bijection import PORTS, PortConvention, map_to_term, roundtrip_check, term_to_map, wire_consumers
from .coloring import (
    DeskCheckReport,
    EdgeColoring,
    KleinElement,
    WireColoring,
    edge_three_colorings,
    fourct_desk_check,
    has_proper_three_typing,
    instantiate,
    is_three_typing,
    klein_imp,
    klein_mul,
    klein_value,
    three_typings,
    typing_coloring_correspondence,
    typing_to_edge_coloring,
)
from .config import Settings, configure_logging, load_settings
from .enumeration import FILTERS, count_terms, enumerate_terms, has_bridgeless_map, is_planar
from .errors import LambdaMapError
from .graphs import bridges, is_bridgeless, map_to_dot, underlying_graph
from .inference import Imp, LinType, PrincipalType, TypeVar, infer_principal_type, render_type
from .maps import (
    ClassicalMap,
    Permutation,
    RootedTrivalentMap,
    canonical_form,
    cycle_counts,
    face_permutation,
    genus,
    map_from_json,
    map_to_json,
    rooted_isomorphic,
    smooth_root,
)
from .series import (
    CoefficientTable,
    series,
    series_indecomposable,
    series_linear,
    series_planar,
    series_planar_indecomposable,
)
from .terms import (
    Abs,
    App,
    CanonicalTerm,
    LinearTerm,
    Var,
    alpha_canonical,
    alpha_equivalent,
    check_linear,
    is_decomposable,
    is_exchange_free,
    lambda_lift,
    parse_term,
    print_term,
    subterms,
    term_size,
    wire_paths,
)
