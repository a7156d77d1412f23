"""Abstract geodesic metric spaces consumed by the checkers and the maps.

A :class:`SpaceHandle` bundles a distance, a geodesic oracle and an
extension oracle.  Everything in :mod:`busemann.axioms`,
:mod:`busemann.homogeneity` and :mod:`busemann.embedding` is written against
this interface, so the same code runs on the Stadium space, the hyperbolic
plane (Euclidean norm) and the flat plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import norms
from .errors import ConvergenceError, DegenerateInputError, DomainError, ParameterError
from .halfplane import ops, stadium
from .halfplane.geometry import HPoint, StadiumParabola, from_unit_frame, hpoint
from .norms import NormKind, NormModel


class SpaceHandle:
    """Interface; subclasses supply ``distance``, ``geodesic_through``,
    ``point_at_arc``, ``direction`` and ``alternate_extend``."""

    name = "abstract"

    def point(self, p) -> HPoint:
        return hpoint(p)

    def rho(self, w) -> float:
        """Radius of local extendibility; infinite for uniquely geodesic models."""
        return math.inf

    def distance(self, p, q) -> float:
        raise NotImplementedError

    def distances(self, p, qs) -> np.ndarray:
        return np.array([self.distance(p, q) for q in np.asarray(qs, float).reshape(-1, 2)])

    def geodesic_through(self, p, q):
        raise NotImplementedError

    def point_at_arc(self, g, base, s: float) -> HPoint:
        raise NotImplementedError

    def direction(self, g, p, q) -> int:
        raise NotImplementedError

    def along(self, p, q, s: float) -> HPoint:
        """Point at distance ``s >= 0`` from ``p`` on the ray from ``p`` through ``q``."""
        p, q = self.point(p), self.point(q)
        if p == q:
            raise DegenerateInputError("ray through coincident points")
        if s == 0.0:
            return p
        g = self.geodesic_through(p, q)
        return self.point_at_arc(g, p, self.direction(g, p, q) * s)

    def extend_beyond(self, p, q, s: float) -> HPoint:
        """``r`` with ``p - q - r`` and ``d(q, r) = s``."""
        if not s > 0:
            raise ParameterError("extension length must be positive")
        p, q = self.point(p), self.point(q)
        if p == q:
            raise DegenerateInputError("extension of a degenerate segment")
        g = self.geodesic_through(p, q)
        return self.point_at_arc(g, q, self.direction(g, p, q) * s)

    def alternate_extend(self, p, q, s: float) -> HPoint:
        """Same point as :meth:`extend_beyond`, computed by an independent route."""
        raise NotImplementedError

    def midpoint(self, p, q) -> HPoint:
        return self.along(p, q, 0.5 * self.distance(p, q))

    def shoot(self, w, phi: float, s: float) -> HPoint:
        """Point at distance ``s`` from ``w`` on the geodesic leaving ``w`` in the
        chart direction ``phi``."""
        w = self.point(w)
        h = 1e-3 * self.chart_scale(w)
        aim = (w[0] + h * math.cos(phi), w[1] + h * math.sin(phi))
        return self.along(w, aim, s)

    def chart_scale(self, w) -> float:
        return 1.0

    def sphere_samples(self, center, r: float, n: int) -> np.ndarray:
        """``n`` points of ``S(center, r)`` hit by geodesics at equally spaced chart angles."""
        phis = 2.0 * np.pi * np.arange(n) / n
        return np.array([self.shoot(center, phi, r) for phi in phis])

    def random_in_ball(self, rng, center, r: float, n: int) -> np.ndarray:
        """``n`` points of ``U(center, r)``: random direction, radius ``r * sqrt(u)``."""
        phis = rng.uniform(0.0, 2.0 * np.pi, n)
        radii = r * np.sqrt(rng.uniform(0.0, 1.0, n))
        out = []
        for phi, s in zip(phis, radii):
            out.append(self.point(center) if s == 0.0 else self.shoot(center, phi, s))
        return np.array(out)

    def segment_points(self, p, q, fractions) -> np.ndarray:
        """Points of the segment from ``p`` to ``q`` at the given length fractions."""
        p, q = self.point(p), self.point(q)
        L = self.distance(p, q)
        g = self.geodesic_through(p, q)
        sign = self.direction(g, p, q)
        return np.array([self.point_at_arc(g, p, sign * f * L) for f in fractions])

    def convexity_seeds(self, center, K: float) -> list:
        """Chords worth testing first when looking for non-convex balls."""
        return []

    def describe(self) -> dict:
        return {"name": self.name}


class HalfPlaneSpace(SpaceHandle):
    """The upper half-plane with line element ``F(dx, dy) / y``."""

    def __init__(self, norm: NormModel, engine: str = "auto", name: str | None = None):
        if engine not in ops.ENGINES:
            raise ParameterError(f"unknown engine {engine!r}")
        self.norm = norm
        self.engine = engine
        self.name = name or norm.kind.value

    def chart_scale(self, w) -> float:
        return w[1]

    def distance(self, p, q) -> float:
        return ops.distance(self.norm, p, q, self.engine)

    def distances(self, p, qs) -> np.ndarray:
        return ops.distances(self.norm, p, qs, self.engine)

    def geodesic_through(self, p, q):
        return ops.geodesic_through(self.norm, p, q, self.engine)

    def point_at_arc(self, g, base, s):
        return ops.point_at_arc(self.norm, g, base, s, self.engine)

    def direction(self, g, p, q):
        return ops.direction(self.norm, g, p, q, self.engine)

    def segment_points(self, p, q, fractions):
        if self.norm.kind is not NormKind.STADIUM or self.engine == "levelset":
            return super().segment_points(p, q, fractions)
        p, q = self.point(p), self.point(q)
        g = self.geodesic_through(p, q)
        L = stadium.arc_length(g, p, q)
        sign = self.direction(g, p, q)
        return stadium.points_at_arc(g, p, sign * L * np.asarray(fractions, dtype=float))

    def has_closed_form(self) -> bool:
        return self.norm.kind in (NormKind.STADIUM, NormKind.EUCLIDEAN)

    def alternate_extend(self, p, q, s):
        """Level-set continuation when this handle uses a closed form, the closed
        form when it uses the level-set engine, and distance maximisation over
        ``S(q, s)`` for norms with no closed form."""
        if self.has_closed_form():
            other = "closed" if self.engine == "levelset" else "levelset"
            return ops.extend_beyond(self.norm, p, q, s, other)
        return _extend_by_maximisation(self, p, q, s)

    def convexity_seeds(self, center, K):
        if self.norm.kind is not NormKind.STADIUM:
            return []
        return [stadium_convexity_chord(self, center, K)]

    def describe(self):
        return {"name": self.name, "norm": self.norm.kind.value, "engine": self.engine}


class EuclideanPlane(SpaceHandle):
    """The flat plane R^2; points may have any sign of y."""

    name = "euclidean"

    def point(self, p) -> HPoint:
        x, y = float(p[0]), float(p[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DomainError(f"non-finite point {p!r}")
        return HPoint(x, y)

    def distance(self, p, q):
        return math.hypot(p[0] - q[0], p[1] - q[1])

    def distances(self, p, qs):
        qs = np.asarray(qs, float).reshape(-1, 2)
        return np.hypot(qs[:, 0] - p[0], qs[:, 1] - p[1])

    def geodesic_through(self, p, q):
        p, q = self.point(p), self.point(q)
        if p == q:
            raise DegenerateInputError("line through coincident points")
        L = self.distance(p, q)
        return Line(p, ((q[0] - p[0]) / L, (q[1] - p[1]) / L))

    def point_at_arc(self, g, base, s):
        return HPoint(base[0] + s * g.u[0], base[1] + s * g.u[1])

    def direction(self, g, p, q):
        return 1 if (q[0] - p[0]) * g.u[0] + (q[1] - p[1]) * g.u[1] > 0 else -1

    def shoot(self, w, phi, s):
        return HPoint(w[0] + s * math.cos(phi), w[1] + s * math.sin(phi))

    def alternate_extend(self, p, q, s):
        # affine combination instead of the unit direction
        L = self.distance(p, q)
        t = (L + s) / L
        return HPoint(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


@dataclass(frozen=True)
class Line:
    base: HPoint
    u: tuple


def stadium_space(engine: str = "auto") -> HalfPlaneSpace:
    return HalfPlaneSpace(norms.stadium(), engine, "stadium")


def hyperbolic_space(engine: str = "auto") -> HalfPlaneSpace:
    return HalfPlaneSpace(norms.euclidean(), engine, "hyperbolic")


def euclidean_plane() -> EuclideanPlane:
    return EuclideanPlane()


def indicatrix_space(path, engine: str = "auto") -> HalfPlaneSpace:
    return HalfPlaneSpace(norms.load_indicatrix(path), engine, f"indicatrix:{path}")


def space_from_name(name: str) -> SpaceHandle:
    if name == "stadium":
        return stadium_space()
    if name == "hyperbolic":
        return hyperbolic_space()
    if name == "euclidean":
        return euclidean_plane()
    if name.startswith("indicatrix:"):
        return indicatrix_space(name.split(":", 1)[1])
    raise ParameterError(f"unknown space {name!r}")


# -- helpers -----------------------------------------------------------------


def stadium_convexity_chord(space: HalfPlaneSpace, center, K: float, overshoot: float = 1e-2):
    """A chord of ``B(center, K)`` over the top of a parabola with parameter
    ``e^{2K}(1 + overshoot)`` (in the unit frame of the centre).

    The endpoints are the symmetric points of that parabola at the greatest
    sampled height still strictly inside the ball.
    """
    center = hpoint(center)
    lam = math.exp(2.0 * K) * (1.0 + overshoot)
    g_unit = StadiumParabola(lam, 0.0)
    ys = lam * np.linspace(1.0, 0.05, 400)[1:]
    for y in ys:
        p = from_unit_frame(center, (g_unit.x_at(y, -1), y))
        q = from_unit_frame(center, (g_unit.x_at(y, 1), y))
        if max(space.distance(center, p), space.distance(center, q)) < K * (1.0 - 1e-6):
            return p, q
    raise ParameterError("no admissible chord found for the convexity seed")


def _extend_by_maximisation(space, p, q, s):
    """``argmax_{r in S(q,s)} d(p, r)`` by a 1-D search over shooting angles.

    Uses only ``distance`` and ``shoot`` (geodesics leaving ``q``), never the
    segment through ``p``.
    """
    L = space.distance(p, q)
    obj = lambda phi: -space.distance(p, space.shoot(q, phi, s))
    phis = np.linspace(0.0, 2.0 * np.pi, 72, endpoint=False)
    vals = [obj(f) for f in phis]
    i = int(np.argmin(vals))
    step = phis[1] - phis[0]
    res = minimize_scalar(obj, bounds=(phis[i] - step, phis[i] + step), method="bounded", options={"xatol": 1e-12})
    r = space.shoot(q, res.x, s)
    if abs(space.distance(p, r) - (L + s)) > 1e-6:
        raise ConvergenceError("distance maximisation did not reach the extension", residuals=[space.distance(p, r) - L - s])
    return r
