"""Convex floating bodies, metronoids and the Ulam isotropy functional in 2D and 3D."""

from .errors import (
    AsymmetricBody,
    DegenerateInput,
    EmptyBody,
    EmptyFloatingBody,
    EmptySection,
    FloatlabError,
    InsideDisk,
    InvalidDelta,
    ParseError,
    TooFewSamples,
)
from .geometry import (
    ConvexPolygon,
    ConvexPolytope,
    Halfspace,
    MomentSummary,
    SectionFrame,
    Segment,
    affine_transform,
    build_polygon,
    build_polytope,
    clip,
    moments,
    section,
    section_moments,
)
from .floating import (
    CutRecord,
    FloatingBodyResult,
    cap_record,
    cap_records,
    critical_delta,
    cut_offset,
    dupin_tangency_residual,
    floating_body,
)
from .metronoid import (
    MetronoidSample,
    UlamReport,
    curvature_radius_2d,
    gauss_map_residual,
    isotropy_moment,
    metronoid_boundary,
    ulam_report,
)
from .radon import SphericalFunction, Theorem2Report, central_section_moment, spherical_radon, theorem2_report
from .chordchain import ChainState, Circle, chain_run, chord_step

__version__ = "0.1.0"
