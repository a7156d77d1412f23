"""Norm-generic entry points that dispatch to closed forms or the level-set engine.

``engine="auto"`` uses the closed form when the norm has one (stadium,
Euclidean) and the level-set engine otherwise; ``"closed"`` insists on the
closed form; ``"levelset"`` forces the generic engine for every norm.
"""

from __future__ import annotations

import math

import numpy as np

from ..config import DEFAULT
from ..errors import DegenerateInputError, ParameterError, PreconditionError
from ..norms import NormKind, NormModel
from . import hyperbolic, levelset, stadium
from .geometry import GenericLevelSet, HPoint, StadiumParabola, Vertical, hpoint

ENGINES = ("auto", "closed", "levelset")


def _route(norm: NormModel, engine: str) -> str:
    if engine not in ENGINES:
        raise ParameterError(f"unknown engine {engine!r}")
    has_closed = norm.kind in (NormKind.STADIUM, NormKind.EUCLIDEAN)
    if engine == "closed" and not has_closed:
        raise ParameterError(f"no closed form for {norm.kind.value} norms")
    if engine == "levelset" or not has_closed:
        return "levelset"
    return "stadium" if norm.kind is NormKind.STADIUM else "hyperbolic"


def _route_for_geodesic(norm, g, engine):
    route = _route(norm, engine)
    if isinstance(g, StadiumParabola):
        if norm.kind is not NormKind.STADIUM:
            raise ParameterError("stadium parabola used with a non-stadium norm")
        return "stadium"
    if isinstance(g, GenericLevelSet) and route == "stadium":
        return "levelset"
    return route


def geodesic_through(norm: NormModel, p, q, engine: str = "auto"):
    """The unique geodesic containing ``p`` and ``q``."""
    p, q = hpoint(p), hpoint(q)
    if p == q:
        raise DegenerateInputError("geodesic through coincident points")
    route = _route(norm, engine)
    if route == "stadium":
        return stadium.geodesic_through(p, q)
    if route == "hyperbolic":
        return hyperbolic.geodesic_through(p, q)
    return levelset.geodesic_through(norm.dual, p, q)


def residual(norm: NormModel, g, p) -> float:
    if isinstance(g, Vertical):
        return abs(p[0] - g.a) / max(1.0, abs(g.a))
    if isinstance(g, StadiumParabola):
        return stadium.residual(g, p)
    return levelset.residual(norm.dual, g, p)


def _require_on(norm, g, *points, tol=DEFAULT.on_curve):
    for p in points:
        r = residual(norm, g, p)
        if not r < tol:
            raise PreconditionError(f"point {tuple(p)} is not on {g} (residual {r:.3e})")


def arc_length(norm: NormModel, g, p, q, engine: str = "auto") -> float:
    p, q = hpoint(p), hpoint(q)
    _require_on(norm, g, p, q)
    if p == q:
        return 0.0
    route = _route_for_geodesic(norm, g, engine)
    if route == "stadium":
        return stadium.arc_length(g, p, q)
    if route == "hyperbolic":
        return hyperbolic.arc_length(g, p, q)
    return levelset.arc_length(norm.dual, g, p, q)


def distance(norm: NormModel, p, q, engine: str = "auto") -> float:
    p, q = hpoint(p), hpoint(q)
    if p == q:
        return 0.0
    if q < p:
        # a fixed argument order makes d(p, q) == d(q, p) bit for bit
        p, q = q, p
    route = _route(norm, engine)
    if route == "hyperbolic":
        return hyperbolic.distance(p, q)
    g = geodesic_through(norm, p, q, engine)
    return arc_length(norm, g, p, q, engine)


def distances(norm: NormModel, p, qs, engine: str = "auto") -> np.ndarray:
    """Distances from ``p`` to every row of ``qs``."""
    route = _route(norm, engine)
    p = hpoint(p)
    qs = np.asarray(qs, dtype=float).reshape(-1, 2)
    if route == "stadium":
        return stadium.distance_many(p, qs)
    if route == "hyperbolic":
        return hyperbolic.distance_many(p, qs)
    return np.array([distance(norm, p, q, engine) for q in qs])


def point_at_arc(norm: NormModel, g, base, s: float, engine: str = "auto") -> HPoint:
    """Point at signed arc ``s`` from ``base``.

    Positive ``s`` moves toward increasing x, or increasing y on verticals.
    Every geodesic has infinite length toward the ideal boundary, so any
    finite ``s`` is admissible.
    """
    base = hpoint(base)
    _require_on(norm, g, base)
    s = float(s)
    if not math.isfinite(s):
        raise ParameterError("arc parameter must be finite")
    route = _route_for_geodesic(norm, g, engine)
    if route == "stadium":
        return stadium.point_at_arc(g, base, s)
    if route == "hyperbolic":
        return hyperbolic.point_at_arc(g, base, s)
    return levelset.point_at_arc(norm.dual, g, base, s)


def arc_coordinate(norm: NormModel, g, p, engine: str = "auto") -> float:
    """Monotone coordinate along ``g``, increasing in the positive arc direction."""
    route = _route_for_geodesic(norm, g, engine)
    if route == "stadium":
        return stadium.arc_coordinate(g, p)
    if route == "hyperbolic":
        return hyperbolic.arc_coordinate(g, p)
    return levelset.arc_coordinate(g, p)


def direction(norm: NormModel, g, p, q, engine: str = "auto") -> int:
    """+1 when ``q`` lies in the positive arc direction from ``p``, else -1."""
    return 1 if arc_coordinate(norm, g, q, engine) > arc_coordinate(norm, g, p, engine) else -1


def extend_beyond(norm: NormModel, p, q, s: float, engine: str = "auto") -> HPoint:
    """The point ``r`` with ``p - q - r`` and ``d(q, r) = s``."""
    if not s > 0:
        raise ParameterError("extension length must be positive")
    p, q = hpoint(p), hpoint(q)
    g = geodesic_through(norm, p, q, engine)
    return point_at_arc(norm, g, q, direction(norm, g, p, q, engine) * s, engine)


def generic_geodesic_trace(norm: NormModel, a: float, k: float, n: int) -> GenericLevelSet:
    """Sample ``{F*(x - a, y) = k, y > 0}`` at ``n`` polar angles about ``(a, 0)``."""
    if not k > 0:
        raise ParameterError("level k must be positive")
    if n < 32:
        raise ParameterError("n must be at least 32")
    levelset.check_supported(norm.dual)
    return GenericLevelSet(float(a), float(k), levelset.trace(norm.dual, a, k, n))


def parabola_polyline(g: StadiumParabola, n: int) -> np.ndarray:
    """``n`` points of a stadium parabola ordered by increasing x."""
    t = np.pi * (1.0 - (np.arange(n) + 0.5) / n)
    # y = lam sin t gives x - a = +-(lam^2 - y^2)/(2 lam) = lam cos t |cos t| / 2
    c = np.cos(t)
    return np.column_stack([g.a + 0.5 * g.lam * c * np.abs(c), g.lam * np.sin(t)])
