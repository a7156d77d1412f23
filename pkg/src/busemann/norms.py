"""Convex norms on the plane and their rotated polar duals.

Three kinds are supported:

* ``STADIUM`` -- the closed-form stadium norm, whose unit ball is the square
  ``|u1|, |u2| <= 1`` capped by unit half-discs centred at ``(0, +-1)``;
* ``EUCLIDEAN`` -- the usual length;
* ``SAMPLED`` -- the gauge of a convex, origin-symmetric polygon (an
  indicatrix sampled as a closed polyline).

The rotated dual is ``F*(x, y) = max_{F(u) <= 1} (x*u2 - y*u1)``.  Its level
sets ``F*(x - a, y) = k`` are the non-vertical geodesics of the
quasihyperbolic plane with line element ``F(dx, dy) / y``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .config import DEFAULT
from .errors import DomainError, ParameterError


class Vec2(NamedTuple):
    u1: float
    u2: float


class NormKind(enum.Enum):
    STADIUM = "stadium"
    EUCLIDEAN = "euclidean"
    SAMPLED = "sampled"


def _checked(v):
    u1, u2 = float(v[0]), float(v[1])
    if not (math.isfinite(u1) and math.isfinite(u2)):
        raise DomainError(f"non-finite vector {v!r}")
    return u1, u2


@dataclass(frozen=True, eq=False)
class NormModel:
    """A norm on R^2.  Use :func:`stadium`, :func:`euclidean` or
    :func:`from_indicatrix` rather than calling the constructor."""

    kind: NormKind
    indicatrix: np.ndarray | None = None
    # sector data for SAMPLED gauges, filled by from_indicatrix
    _angles: np.ndarray | None = field(default=None, repr=False)
    _normals: np.ndarray | None = field(default=None, repr=False)

    def __call__(self, v) -> float:
        return norm_eval(self, v)

    @property
    def dual(self) -> "DualNormModel":
        return DualNormModel(self)

    def profile(self, psi: float) -> float:
        """F of the unit vector at angle ``psi`` (``l(psi)`` for the stadium)."""
        return norm_eval(self, (math.cos(psi), math.sin(psi)))


def stadium() -> NormModel:
    return NormModel(NormKind.STADIUM)


def euclidean() -> NormModel:
    return NormModel(NormKind.EUCLIDEAN)


def stadium_profile(psi: float) -> float:
    """The piecewise profile ``l(psi)`` with ``F(v) = l(psi) |v|``."""
    c, s = abs(math.cos(psi)), abs(math.sin(psi))
    if c >= s:
        return c
    return 0.5 / s


def norm_eval(model: NormModel, v) -> float:
    """Evaluate ``F(v)``."""
    u1, u2 = _checked(v)
    if model.kind is NormKind.STADIUM:
        a1, a2 = abs(u1), abs(u2)
        if a1 >= a2:
            return a1
        # l(psi) |v| = |v| / (2 |sin psi|) = |v|^2 / (2 |u2|)
        return (u1 * u1 + u2 * u2) / (2.0 * a2)
    if model.kind is NormKind.EUCLIDEAN:
        return math.hypot(u1, u2)
    if u1 == 0.0 and u2 == 0.0:
        return 0.0
    psi = math.atan2(u2, u1)
    angles = model._angles
    i = int(np.searchsorted(angles, psi, side="right")) - 1
    if i < 0:
        i += len(angles) - 1
    n = model._normals[i]
    return n[0] * u1 + n[1] * u2


def from_indicatrix(points, *, symmetry_tol: float = DEFAULT.symmetry) -> NormModel:
    """Build the gauge of a convex, origin-symmetric polygon.

    ``points`` is the closed boundary polyline (closing vertex optional),
    positively oriented.  Non-convex, clockwise, or non-symmetric input is
    rejected.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ParameterError("indicatrix must be an (n, 2) array")
    if not np.all(np.isfinite(pts)):
        raise DomainError("indicatrix contains non-finite values")
    if len(pts) > 1 and np.allclose(pts[0], pts[-1]):
        pts = pts[:-1]
    if len(pts) < 4:
        raise ParameterError("indicatrix needs at least 4 vertices")

    edges = np.roll(pts, -1, axis=0) - pts
    cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
    if np.any(cross <= 0):
        raise ParameterError("indicatrix must be strictly convex at every vertex and counterclockwise")
    # outward normals scaled so that n_i . v = 1 on edge i
    normals = np.column_stack([edges[:, 1], -edges[:, 0]])
    offsets = np.einsum("ij,ij->i", normals, pts)
    if np.any(offsets <= 0):
        raise ParameterError("origin must lie strictly inside the indicatrix")
    normals = normals / offsets[:, None]

    ang = np.arctan2(pts[:, 1], pts[:, 0])
    start = int(np.argmin(ang))
    order = (np.arange(len(pts)) + start) % len(pts)
    ang = np.unwrap(ang[order])
    if np.any(np.diff(ang) <= 0) or ang[-1] - ang[0] >= 2 * np.pi:
        raise ParameterError("indicatrix vertices must wind once around the origin")
    angles = np.append(ang, ang[0] + 2 * np.pi)
    normals = normals[order]

    model = NormModel(NormKind.SAMPLED, pts.copy(), angles, normals)
    # origin symmetry: -v must lie on the same boundary
    worst = max(abs(norm_eval(model, -p) - 1.0) for p in pts)
    if worst > symmetry_tol:
        raise ParameterError(f"indicatrix is not origin-symmetric (worst defect {worst:.3e})")
    return model


def load_indicatrix(path) -> NormModel:
    """Read ``u1,u2`` pairs (one per line, ``#`` comments) into a sampled norm."""
    rows = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        a, b = line.split(",")
        rows.append((float(a), float(b)))
    return from_indicatrix(rows)


def save_indicatrix(path, points, comment: str | None = None) -> None:
    lines = [f"# {comment}"] if comment else []
    lines += [f"{float(u1)!r},{float(u2)!r}" for u1, u2 in np.asarray(points, float)]
    Path(path).write_text("\n".join(lines) + "\n")


def sample_stadium_indicatrix(n: int) -> np.ndarray:
    """About ``n`` vertices on the stadium boundary, counterclockwise.

    The side segments contribute only their endpoints.  Each cap gets an odd
    number of vertices, uniform in angle, so that the poles ``(0, +-2)`` are
    vertices and no edge is horizontal.
    """
    if n < 8:
        raise ParameterError("n must be at least 8")
    m = n // 2 + (1 - (n // 2) % 2)
    t = np.linspace(0.0, np.pi, m)
    top = np.column_stack([np.cos(t), 1.0 + np.sin(t)])
    top[m // 2] = (0.0, 2.0)
    return np.vstack([top, -top])


class DualNormModel:
    """The rotated polar dual ``F*`` of a :class:`NormModel`."""

    def __init__(self, base: NormModel):
        self.base = base

    def __call__(self, v) -> float:
        return dual_norm_eval(self, v)

    def support_point(self, v) -> tuple[float, float]:
        """A maximiser ``u`` of ``x*u2 - y*u1`` over the unit ball.

        ``(u2, -u1)`` is then a (sub)gradient of ``F*`` at ``v``.
        """
        x, y = _checked(v)
        kind = self.base.kind
        # the functional is w . u with w = (-y, x)
        r = math.hypot(x, y)
        if r == 0.0:
            return (0.0, 0.0)
        if kind is NormKind.EUCLIDEAN:
            return (-y / r, x / r)
        if kind is NormKind.STADIUM:
            # Minkowski sum of the segment {0} x [-1, 1] and the unit disc
            seg = math.copysign(1.0, x) if x != 0.0 else 0.0
            return (-y / r, x / r + seg)
        verts = self.base.indicatrix
        i = int(np.argmax(x * verts[:, 1] - y * verts[:, 0]))
        return (float(verts[i, 0]), float(verts[i, 1]))

    def tau1(self, phi: float) -> float:
        """Radial profile of the polar dual curve ``C1`` (support function = 1)."""
        # support function h(w) = max u . w = F*(w2, -w1)
        return 1.0 / dual_norm_eval(self, (math.sin(phi), -math.cos(phi)))

    def tau2(self, phi: float) -> float:
        """Radial profile of ``C2 = {F* = 1}``, i.e. ``C1`` rotated by pi/2."""
        return 1.0 / dual_norm_eval(self, (math.cos(phi), math.sin(phi)))

    def kink_angles(self) -> np.ndarray:
        """Polar angles in (0, pi) where ``F*`` restricted to the unit circle is
        not differentiable.  Used as quadrature breakpoints."""
        kind = self.base.kind
        if kind is NormKind.EUCLIDEAN:
            return np.empty(0)
        if kind is NormKind.STADIUM:
            return np.array([0.5 * np.pi])
        verts = self.base.indicatrix
        edges = np.roll(verts, -1, axis=0) - verts
        a = np.concatenate([np.arctan2(edges[:, 1], edges[:, 0]), np.arctan2(-edges[:, 1], -edges[:, 0])])
        a = np.unique(a[(a > 0) & (a < np.pi)])
        return a

    def top_support(self) -> tuple[float, float]:
        """The point of the indicatrix maximising ``u2``."""
        return self.support_point((1.0, 0.0))


def dual_norm_eval(model: DualNormModel, v) -> float:
    """Evaluate ``F*(v)``."""
    x, y = _checked(v)
    kind = model.base.kind
    if kind is NormKind.STADIUM:
        return abs(x) + math.hypot(x, y)
    if kind is NormKind.EUCLIDEAN:
        return math.hypot(x, y)
    verts = model.base.indicatrix
    return float(np.max(x * verts[:, 1] - y * verts[:, 0]))


def dual_norm_many(model: DualNormModel, xy) -> np.ndarray:
    """Vectorised ``F*`` over an (n, 2) array."""
    xy = np.asarray(xy, dtype=float)
    x, y = xy[..., 0], xy[..., 1]
    kind = model.base.kind
    if kind is NormKind.STADIUM:
        return np.abs(x) + np.hypot(x, y)
    if kind is NormKind.EUCLIDEAN:
        return np.hypot(x, y)
    verts = model.base.indicatrix
    return np.max(x[..., None] * verts[:, 1] - y[..., None] * verts[:, 0], axis=-1)


def dual_unit_curve(model: DualNormModel, n: int) -> np.ndarray:
    """``n`` points of ``C2 = {F* = 1}`` at equally spaced polar angles from 0."""
    if n < 8:
        raise ParameterError("n must be at least 8")
    phi = 2 * np.pi * np.arange(n) / n
    d = np.column_stack([np.cos(phi), np.sin(phi)])
    return d / dual_norm_many(model, d)[:, None]


def convexity_defect(model: NormModel, n: int = 256, seed: int = 0) -> float:
    """Largest sampled ``F(v + w) - F(v) - F(w)`` (non-positive for a norm)."""
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for v, w in zip(rng.normal(size=(n, 2)), rng.normal(size=(n, 2))):
        worst = max(worst, norm_eval(model, v + w) - norm_eval(model, v) - norm_eval(model, w))
    return worst


def horizontal_tangent_unique(model: NormModel, tol: float = 1e-12) -> bool:
    """Sampling test that the horizontal support lines of the indicatrix touch
    it at a single point (no horizontal edge)."""
    if model.kind is not NormKind.SAMPLED:
        return True
    v = model.indicatrix
    e = np.roll(v, -1, axis=0) - v
    return not np.any(np.abs(e[:, 1]) <= tol * np.hypot(e[:, 0], e[:, 1]))
