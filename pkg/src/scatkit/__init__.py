"""Simplicial LS-category, strong collapses, contiguity and graph arboricity."""
from .category import (
    CatResult,
    Cover,
    categorical_chain,
    gscat,
    is_categorical,
    scat,
    validate_cover,
    verify_inequalities,
    wscat_bounds,
    wscat_le,
)
from .complex import (
    CollapseStep,
    Complex,
    ComplexError,
    core,
    dominated_by,
    from_facets,
    is_collapsible,
    is_simplex,
    is_strongly_collapsible,
    isomorphic,
    link,
    star,
    strong_homotopy_equivalent,
)
from .constructions import (
    cone,
    diagonal,
    fat_wedge,
    fat_wedge_map,
    join,
    power,
    product,
    product_map,
    projections,
    sd,
    sd_contiguity_chain,
    sd_iter,
    sd_map,
    suspension,
    tuple_map,
)
from .graphs import (
    Graph,
    arboricity,
    bisect_off_tree,
    find_cycle,
    forests_to_trees,
    graph_gscat,
    graph_scat,
    is_forest,
    nash_williams_bound,
)
from .maps import (
    ContiguityChain,
    Decision,
    VertexMap,
    compose,
    constant,
    contiguity_class_reachable,
    has_contiguity_extension,
    identity,
    in_same_contiguity_class,
    inclusion,
    is_contiguous,
    is_simplicial,
    restrict,
)

__version__ = "0.1.0"
