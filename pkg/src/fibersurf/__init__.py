"""Exact birational geometry of fibered surfaces over the line.

Fibers are weighted dual graphs on the minimal resolution; Du Val points
are recorded as contracted curve sets.  See :mod:`fibersurf.script` for the
construction language and :mod:`fibersurf.cli` for the command line.
"""
from .birational import (
    blow_down,
    blow_up_model,
    blow_up_on_curve,
    blow_up_on_edge,
    elementary_transform,
    make_nonreduced,
)
from .curves import (
    A1A1,
    REDUCED,
    ADEType,
    Configuration,
    Curve,
    FiberType,
    SingularPoint,
    SurfaceModel,
    Violation,
    fiber_cycle,
    generic_fiber,
    intersection_matrix,
    is_isomorphic,
    validate,
)
from .mmp import (
    classify_mori_fiber,
    count_nonreduced,
    extremal_contraction_singular,
    relative_mmp_smooth,
    to_mori_fiber,
)
from .pluriforms import (
    PluriformQuery,
    genus_cover,
    h0_line,
    h0_pluricanonical_curve,
    invariant_dim_identity,
    pluriform_dim,
    pluriform_dim_of_model,
    pushforward_exponent,
)
from .script import ConstructionScript, parse_script, run_script
from .singularities import (
    classify_ade,
    contract_ade,
    intersection_on_singular,
    is_negative_definite,
    k_degree_on_singular,
    mumford_pullback,
    resolve,
)

__version__ = "0.1.0"
