"""Constructive homogeneity maps: antipodes, projections, cone coordinates and
the isotopies built from them.

Isotopies are exposed as evaluations at ``(t, query)`` rather than function
objects, so that sampled frames can be produced and tested.  Every map takes
a :class:`~busemann.space.SpaceHandle`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import BusemannError, DegenerateInputError, DomainError, ParameterError, PreconditionError, StageError
from .halfplane.geometry import HPoint
from .space import SpaceHandle

# points closer than this (relative to the radius involved) are treated as equal
_SAME = 1e-12


def antipode(space: SpaceHandle, a, z) -> HPoint:
    """``z'`` with ``z - a - z'`` and ``d(a, z') = d(a, z)``; the centre is fixed."""
    a, z = space.point(a), space.point(z)
    if a == z:
        return a
    return space.extend_beyond(z, a, space.distance(a, z))


def project_to_sphere(space: SpaceHandle, x, r: float, z) -> HPoint:
    """The point of ``S(x, r)`` on the ray from ``x`` through ``z``."""
    if not r > 0:
        raise ParameterError("radius must be positive")
    x, z = space.point(x), space.point(z)
    if x == z:
        raise DegenerateInputError("projection of the centre itself")
    return space.along(x, z, r)


def midpoint(space: SpaceHandle, p, q) -> HPoint:
    p, q = space.point(p), space.point(q)
    if p == q:
        raise DegenerateInputError("midpoint of coincident points")
    return space.midpoint(p, q)


# -- cone structure ---------------------------------------------------------------


@dataclass(frozen=True)
class ConeCoord:
    """``boundary_point`` on ``S(x, r)`` and normalised radius ``t`` in ``[0, 1]``.

    At the vertex (``t = 0``) the boundary point is a convention, the end of
    the ray leaving ``x`` straight up, and ``at_vertex`` is set.
    """

    boundary_point: HPoint
    t: float
    at_vertex: bool = False


def _vertex_ray_end(space, x, r):
    return space.shoot(x, 0.5 * math.pi, r)


def cone_coords(space: SpaceHandle, x, r: float, z) -> ConeCoord:
    x, z = space.point(x), space.point(z)
    if not r > 0:
        raise ParameterError("radius must be positive")
    d = space.distance(x, z)
    if d > r * (1.0 + 1e-12):
        raise DomainError(f"point {tuple(z)} lies outside B({tuple(x)}, {r})")
    if d == 0.0:
        return ConeCoord(_vertex_ray_end(space, x, r), 0.0, True)
    t = min(d / r, 1.0)
    if t == 1.0:
        return ConeCoord(z, 1.0)
    return ConeCoord(project_to_sphere(space, x, r, z), t)


def cone_point(space: SpaceHandle, x, r: float, c: ConeCoord) -> HPoint:
    x = space.point(x)
    if c.t == 0.0:
        return x
    if c.t == 1.0:
        return space.point(c.boundary_point)
    return space.along(x, c.boundary_point, c.t * r)


# -- isotopies ----------------------------------------------------------------------


def interval_isotopy(r: float, t: float, r1: float, r2: float) -> float:
    """``h(r, t) = r^(1 + t(alpha - 1))`` with ``r1 = r2^alpha``: an isotopy of
    ``[0, 1]`` fixing both ends, ``h(., 0) = id`` and ``h(r2, 1) = r1``."""
    if not (0.0 < r1 < 1.0 and 0.0 < r2 < 1.0):
        raise ParameterError("r1 and r2 must lie in (0, 1)")
    if not (0.0 <= r <= 1.0 and 0.0 <= t <= 1.0):
        raise ParameterError("r and t must lie in [0, 1]")
    if r == 0.0:
        return 0.0
    alpha = math.log(r1) / math.log(r2)
    return r ** (1.0 + t * (alpha - 1.0))


def radial_ball_isotopy(space: SpaceHandle, x0, r: float, w, z, t: float, query) -> HPoint:
    """Cone isotopy of ``B(x0, r)`` conjugated through cone coordinates.

    Fixes ``x0`` and ``S(x0, r)``; at ``t = 1`` sends ``w`` to ``z``.  Both
    must be interior points of one radius.
    """
    x0 = space.point(x0)
    cw, cz = cone_coords(space, x0, r, w), cone_coords(space, x0, r, z)
    for c, name in ((cw, "w"), (cz, "z")):
        if not 0.0 < c.t < 1.0:
            raise PreconditionError(f"{name} must be an interior point of a radius")
    if space.distance(cw.boundary_point, cz.boundary_point) > 1e-7 * max(1.0, r):
        raise PreconditionError("w and z do not lie on a common radius")
    if t == 0.0:
        return space.point(query)
    cq = cone_coords(space, x0, r, query)
    if cq.at_vertex or cq.t == 1.0:
        return space.point(query)
    return cone_point(space, x0, r, ConeCoord(cq.boundary_point, interval_isotopy(cq.t, t, cz.t, cw.t)))


@dataclass(frozen=True)
class BallMove:
    """The auxiliary construction that moves the centre of ``B(x0, r)`` to ``x``.

    ``s0`` is the end of the radius through ``x``; ``z`` lies opposite on the
    same geodesic at distance ``r/2``; ``z0`` is the midpoint of ``s0 z``;
    ``B(z0, r')`` with ``r' = d(z0, s0)`` sits inside ``B(x0, r)``;
    ``y`` is the midpoint of ``z0 x0``.
    """

    x0: HPoint
    r: float
    x: HPoint
    s0: HPoint
    z: HPoint
    z0: HPoint
    r_aux: float
    y: HPoint


def ball_move(space: SpaceHandle, x0, r: float, x) -> BallMove:
    x0, x = space.point(x0), space.point(x)
    if not r > 0:
        raise ParameterError("radius must be positive")
    if not space.distance(x0, x) < r:
        raise DomainError("x must lie in the open ball")
    if x == x0:
        raise DegenerateInputError("no move needed when x equals the centre")
    s0 = project_to_sphere(space, x0, r, x)
    z = space.extend_beyond(s0, x0, 0.5 * r)
    z0 = space.midpoint(s0, z)
    r_aux = space.distance(z0, s0)
    y = space.midpoint(z0, x0)
    return BallMove(x0, r, x, s0, z, z0, r_aux, y)


def ball_isotopy(space: SpaceHandle, x0, r: float, x, query, t: float = 1.0) -> HPoint:
    """Isotopy of ``B(x0, r)`` fixing ``S(x0, r)`` with ``x0`` sent to ``x`` at ``t = 1``.

    The first half in time moves ``x0`` to ``y`` inside the auxiliary ball
    (identity outside it); the second half moves ``y`` to ``x`` radially in
    the whole ball.
    """
    x0, query = space.point(x0), space.point(query)
    if not 0.0 <= t <= 1.0:
        raise ParameterError("t must lie in [0, 1]")
    if space.distance(x0, query) > r * (1.0 + 1e-12):
        raise DomainError("query lies outside the ball")
    if space.point(x) == x0 or t == 0.0:
        return query
    mv = ball_move(space, x0, r, x)

    def first(q, s):
        if space.distance(mv.z0, q) >= mv.r_aux:
            return q
        return radial_ball_isotopy(space, mv.z0, mv.r_aux, mv.x0, mv.y, s, q)

    if t <= 0.5:
        return first(query, 2.0 * t)
    q = first(query, 1.0)
    if space.point(mv.y) == space.point(mv.x):
        return q
    return radial_ball_isotopy(space, x0, r, mv.y, mv.x, 2.0 * t - 1.0, q)


def ball_homeomorphism(space: SpaceHandle, x0, r: float, x, query) -> HPoint:
    """A homeomorphism of ``B(x0, r)`` fixing its sphere with ``x0 -> x``."""
    return ball_isotopy(space, x0, r, x, query, 1.0)


def chain(space: SpaceHandle, x, y, step: float | None = None):
    """Points ``x = x_0, ..., x_k = y`` on the segment with ``d(x_i, x_{i+1}) < r``.

    ``r`` is ``step`` if given, else a quarter of the least sampled ``rho``
    along the segment, or ``0.5`` when ``rho`` is infinite.
    """
    x, y = space.point(x), space.point(y)
    d = space.distance(x, y)
    if step is None:
        rhos = [space.rho(p) for p in space.segment_points(x, y, np.linspace(0.0, 1.0, 9))] if d > 0 else [math.inf]
        step = 0.5 if math.isinf(min(rhos)) else min(rhos) / 4.0
    if not step > 0:
        raise ParameterError("chain step must be positive")
    k = int(math.floor(d / step)) + 1
    pts = [x] + [space.along(x, y, d * i / k) for i in range(1, k)] + [y]
    return pts, step


def space_homeomorphism(space: SpaceHandle, x, y, query, t: float = 1.0, step: float | None = None) -> HPoint:
    """Composition of ball isotopies along a chain from ``x`` to ``y``.

    Each piece fixes everything outside its ball, so far-away queries come
    back unchanged (and untouched).
    """
    x, y, q = space.point(x), space.point(y), space.point(query)
    if x == y or t == 0.0:
        return q
    pts, r = chain(space, x, y, step)
    k = len(pts) - 1
    for i in range(k):
        local = min(max(t * k - i, 0.0), 1.0)
        if local == 0.0:
            break
        if space.distance(pts[i], q) > r:
            continue
        q = ball_isotopy(space, pts[i], r, pts[i + 1], q, local)
    return q


# -- sphere maps ----------------------------------------------------------------------


def _on_sphere(space, c, r, p, tol=1e-6):
    if abs(space.distance(c, p) - r) > tol * max(1.0, r):
        raise PreconditionError(f"point {tuple(p)} is not on S({tuple(c)}, {r})")


def sphere_retract_flow(space: SpaceHandle, x0, r: float, removed, y, t: float) -> HPoint:
    """Deformation of ``S(x0, r) - {removed}`` onto the antipode of ``removed``.

    ``y`` slides along the segment toward the antipode ``x'`` and is pushed
    back to the sphere along the ray from ``x0``.
    """
    if not 0.0 <= t <= 1.0:
        raise ParameterError("t must lie in [0, 1]")
    x0, removed, y = space.point(x0), space.point(removed), space.point(y)
    if 2.0 * r >= space.rho(x0):
        raise ParameterError("the direct construction needs r < rho(x0)/2")
    _on_sphere(space, x0, r, y)
    _on_sphere(space, x0, r, removed)
    if space.distance(y, removed) <= _SAME * r:
        raise DegenerateInputError("y coincides with the removed point")
    xa = antipode(space, x0, removed)
    dy = space.distance(y, xa)
    if dy <= _SAME * r or t == 0.0:
        return xa if dy <= _SAME * r else y
    if t == 1.0:
        return xa
    h = space.along(y, xa, t * dy)
    return project_to_sphere(space, x0, r, h)


class SpherePath:
    """A path on a sphere given by samples at equally spaced times; between
    samples it is the chart interpolation pushed back to the sphere."""

    def __init__(self, space: SpaceHandle, center, r: float, samples):
        self.space, self.center, self.r = space, space.point(center), r
        self.samples = np.asarray(samples, dtype=float).reshape(-1, 2)
        if len(self.samples) < 2:
            raise ParameterError("a path needs at least two samples")
        for p in self.samples:
            _on_sphere(space, self.center, r, p)

    def __call__(self, t: float) -> HPoint:
        k = len(self.samples) - 1
        u = min(max(t, 0.0), 1.0) * k
        i = min(int(math.floor(u)), k - 1)
        f = u - i
        if f == 0.0:
            return self.space.point(self.samples[i])
        if f == 1.0:
            return self.space.point(self.samples[i + 1])
        p = (1.0 - f) * self.samples[i] + f * self.samples[i + 1]
        return project_to_sphere(self.space, self.center, self.r, p)


def _stage(name, fn, *args):
    try:
        return fn(*args)
    except BusemannError as exc:
        raise StageError(name, exc) from exc


def inverse_projection(space: SpaceHandle, x, eps: float, m, w) -> HPoint:
    """The point of ``S(x, eps)`` on the ray from ``m`` through ``w`` (``m`` inside the ball)."""
    g = lambda s: space.distance(x, space.along(m, w, s)) - eps
    lo = 0.0
    if not g(lo) < 0.0:
        raise PreconditionError("ray origin must lie inside the ball")
    hi = max(space.distance(m, w), 1e-3 * eps)
    for _ in range(60):
        if g(hi) >= 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise PreconditionError("ray never reaches the sphere")
    s = brentq(g, lo, hi, xtol=1e-14 * max(1.0, hi), rtol=4 * np.finfo(float).eps)
    return space.along(m, w, s)


def sphere_isotopy(space: SpaceHandle, x, eps: float, path: Callable[[float], HPoint], t: float, query) -> HPoint:
    """``H_t = psi^-1 . Phi[m, gamma] . psi . Phi[x, eps]`` on ``S(x, eps)``.

    ``m(t)`` is the midpoint of ``alpha(t)`` and the antipode ``y'`` of
    ``alpha(0)``, ``gamma(t) = d(alpha(t), y')/2``, and ``psi`` projects
    along rays from ``m(t)``.  Failures raise :class:`StageError` naming the step.
    """
    x, query = space.point(x), space.point(query)
    _on_sphere(space, x, eps, query)
    if t == 0.0:
        return query
    a0 = _stage("path", path, 0.0)
    at = _stage("path", path, t)
    yp = _stage("antipode_center", antipode, space, x, a0)
    if space.distance(at, yp) <= _SAME * eps:
        raise StageError("midpoint", DegenerateInputError("path reached the antipode of its start"))
    m = _stage("midpoint", space.midpoint, at, yp)
    gamma = 0.5 * space.distance(at, yp)
    q1 = _stage("antipode_center", antipode, space, x, query)
    if space.distance(m, q1) <= _SAME * eps:
        raise StageError("project", DegenerateInputError("query maps onto the moving centre"))
    q2 = _stage("project", project_to_sphere, space, m, gamma, q1)
    q3 = _stage("antipode_moving", antipode, space, m, q2)
    return _stage("inverse_project", inverse_projection, space, x, eps, m, q3)


# -- frames -------------------------------------------------------------------------


@dataclass
class IsotopyFrame:
    t: float
    pairs: list  # [(input, image), ...]

    def to_dict(self):
        return {"t": float(self.t), "pairs": [[[float(a[0]), float(a[1])], [float(b[0]), float(b[1])]] for a, b in self.pairs]}


def frames(fn: Callable[[float, HPoint], HPoint], ts, samples) -> list[IsotopyFrame]:
    """Evaluate ``fn(t, p)`` on every sample for every time."""
    out = []
    for t in ts:
        out.append(IsotopyFrame(float(t), [(tuple(p), tuple(fn(float(t), p))) for p in samples]))
    return out


def frames_json(fr) -> str:
    return json.dumps([f.to_dict() for f in fr])
