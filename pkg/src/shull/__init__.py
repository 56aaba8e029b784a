"""2D Delaunay triangulation by radial sweep-hull construction and edge flipping."""

from .errors import (
    AllCollinear,
    CollinearInput,
    DegenerateCocircular,
    DuplicatePoints,
    FileWriteError,
    InvalidInput,
    NoVisibleEdge,
    NotAdjacent,
    ParseError,
    ShullError,
    TooFewPoints,
)
from .flipping import FlipStats, flip_edge, legalize, should_flip
from .generate import generate
from .geometry import (
    CirclePosition,
    Circumcircle,
    Orientation,
    Point,
    circumcircle,
    dist_sq,
    in_circumcircle,
    orientation,
)
from .oracle import AuditReport, audit, brute_force_delaunay, gift_wrap_hull
from .pipeline import BenchReport, PipelineOptions, bench, run_pipeline
from .render import render_svg
from .seeding import (
    SeedTriangle,
    SweepOrder,
    build_seed,
    find_min_circumcircle_partner,
    radial_sort,
    select_seed,
)
from .sweephull import (
    HullRing,
    Triangle,
    Triangulation,
    insert_point,
    triangulate_nonoverlapping,
    visible_edges,
)

__version__ = "0.1.0"

__all__ = [
    "AllCollinear", "AuditReport", "BenchReport", "CirclePosition", "Circumcircle",
    "CollinearInput", "DegenerateCocircular", "DuplicatePoints", "FileWriteError",
    "FlipStats", "HullRing", "InvalidInput", "NoVisibleEdge", "NotAdjacent", "Orientation",
    "ParseError", "PipelineOptions", "Point", "SeedTriangle", "ShullError", "SweepOrder",
    "TooFewPoints", "Triangle", "Triangulation", "audit", "bench", "brute_force_delaunay",
    "build_seed", "circumcircle", "dist_sq", "find_min_circumcircle_partner", "flip_edge",
    "generate", "gift_wrap_hull", "in_circumcircle", "insert_point", "legalize",
    "orientation", "radial_sort", "render_svg", "run_pipeline", "select_seed",
    "should_flip", "triangulate_nonoverlapping", "visible_edges",
]
