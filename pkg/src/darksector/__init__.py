"""Analysis of two-sided mirror configurations with rational-pi angles:
exact direction arithmetic, ray tracing, the escape-direction circle map,
dark-sector certificates, and the unfolded-surface census."""

from .arcs import Arc
from .circle_map import (
    Decomposition,
    DecompositionError,
    MapComponent,
    decompose,
    decomposition_report,
    escape_measure,
    image_arcs,
    is_injective,
    unlit_arcs,
)
from .dark_sector import (
    DarkArc,
    DarkSector,
    build_sector,
    contains,
    direction_arc,
    select_dark_arc,
    verify_darkness,
)
from .exact_angle import (
    GroupElement,
    GroupOrderError,
    RationalTurn,
    ReflectionGroup,
    apply,
    compose,
    generate_group,
    generic_orbit_size,
    identity,
    inverse,
    make_rational_turn,
    mirror_reflection_element,
)
from .scene import (
    EnclosingCircle,
    Mirror,
    Scene,
    SceneFormatError,
    Violation,
    enclosing_circle,
    endpoints,
    load_scene,
    save_scene,
    validate_scene,
)
from .tracer import (
    Hit,
    SingularStop,
    TraceResult,
    TraceStatus,
    exact_numeric_gap,
    exit_ray,
    first_hit,
    reflect,
    reflect_exact,
    trace,
)
from .unfolding import (
    CensusError,
    ConeCycle,
    SurfaceCensus,
    UnfoldedSurface,
    build_surface,
    census,
    cone_cycles,
    euler_check,
    total_dark_angle,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "CensusError",
    "ConeCycle",
    "DarkArc",
    "DarkSector",
    "Decomposition",
    "DecompositionError",
    "EnclosingCircle",
    "GroupElement",
    "GroupOrderError",
    "Hit",
    "MapComponent",
    "Mirror",
    "RationalTurn",
    "ReflectionGroup",
    "Scene",
    "SceneFormatError",
    "SingularStop",
    "SurfaceCensus",
    "TraceResult",
    "TraceStatus",
    "UnfoldedSurface",
    "Violation",
    "apply",
    "build_sector",
    "build_surface",
    "census",
    "compose",
    "cone_cycles",
    "contains",
    "decompose",
    "decomposition_report",
    "direction_arc",
    "enclosing_circle",
    "endpoints",
    "escape_measure",
    "exact_numeric_gap",
    "euler_check",
    "exit_ray",
    "first_hit",
    "generate_group",
    "generic_orbit_size",
    "identity",
    "image_arcs",
    "inverse",
    "is_injective",
    "load_scene",
    "make_rational_turn",
    "mirror_reflection_element",
    "reflect",
    "reflect_exact",
    "save_scene",
    "select_dark_arc",
    "total_dark_angle",
    "trace",
    "unlit_arcs",
    "validate_scene",
    "verify_darkness",
]
