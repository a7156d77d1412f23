"""Closed forms for the Euclidean norm, i.e. the hyperbolic plane of curvature -1.

Geodesics are verticals and semicircles centred on the x-axis (level sets of
the Euclidean ``F*``).  These formulas are an independent route next to the
level-set engine, which works for any norm.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DegenerateInputError
from .geometry import GenericLevelSet, HPoint, Vertical


def geodesic_through(p, q):
    if p[0] == q[0] and p[1] == q[1]:
        raise DegenerateInputError("geodesic through coincident points")
    if p[0] == q[0]:
        return Vertical(float(p[0]))
    xp, yp = p
    xq, yq = q
    a = ((xq * xq + yq * yq) - (xp * xp + yp * yp)) / (2.0 * (xq - xp))
    return GenericLevelSet(a, math.hypot(xp - a, yp))


def _half_tan(g: GenericLevelSet, p) -> float:
    """tan(theta/2) for the polar angle theta of p about (a, 0)."""
    u = p[0] - g.a
    if u >= 0.0:
        return p[1] / (g.k + u)
    return (g.k - u) / p[1]


def arc_length(g, p, q) -> float:
    if isinstance(g, Vertical):
        return abs(math.log(q[1] / p[1]))
    return abs(math.log(_half_tan(g, q) / _half_tan(g, p)))


def arc_coordinate(g, p) -> float:
    """Increasing with x."""
    if isinstance(g, Vertical):
        return math.log(p[1])
    return -math.log(_half_tan(g, p))


def point_at_arc(g, base, s: float) -> HPoint:
    if s == 0.0:
        return HPoint(float(base[0]), float(base[1]))
    if isinstance(g, Vertical):
        return HPoint(g.a, base[1] * math.exp(s))
    t = _half_tan(g, base) * math.exp(-s)
    # theta = 2 atan(t); x - a = k cos(theta), y = k sin(theta)
    c = (1.0 - t * t) / (1.0 + t * t)
    sn = 2.0 * t / (1.0 + t * t)
    return HPoint(g.a + g.k * c, g.k * sn)


def residual(g, p) -> float:
    if isinstance(g, Vertical):
        return abs(p[0] - g.a)
    return abs(math.hypot(p[0] - g.a, p[1]) - g.k) / g.k


def distance(p, q) -> float:
    chord = math.hypot(p[0] - q[0], p[1] - q[1])
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(p[1] * q[1])))


def distance_many(p, qs) -> np.ndarray:
    qs = np.asarray(qs, dtype=float)
    chord = np.hypot(qs[:, 0] - p[0], qs[:, 1] - p[1])
    return 2.0 * np.arcsinh(chord / (2.0 * np.sqrt(p[1] * qs[:, 1])))
