"""Geometry of the upper half-plane with line element ``F(dx, dy) / y``."""

from .geometry import GenericLevelSet, Geodesic, HPoint, StadiumParabola, Vertical, gamma_map, hpoint
from .ops import (
    ENGINES,
    arc_coordinate,
    arc_length,
    direction,
    distance,
    distances,
    extend_beyond,
    generic_geodesic_trace,
    geodesic_through,
    parabola_polyline,
    point_at_arc,
    residual,
)
from .spheres import SphereTrace, TangentSlope, lambda0_of_K, sphere_tangent_slope, sphere_trace

__all__ = [
    "ENGINES",
    "GenericLevelSet",
    "Geodesic",
    "HPoint",
    "SphereTrace",
    "StadiumParabola",
    "TangentSlope",
    "Vertical",
    "arc_coordinate",
    "arc_length",
    "direction",
    "distance",
    "distances",
    "extend_beyond",
    "gamma_map",
    "generic_geodesic_trace",
    "geodesic_through",
    "hpoint",
    "lambda0_of_K",
    "parabola_polyline",
    "point_at_arc",
    "residual",
    "sphere_tangent_slope",
    "sphere_trace",
]
