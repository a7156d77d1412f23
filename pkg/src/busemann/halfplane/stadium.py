"""Closed-form geodesics and arc lengths of the Stadium space.

Non-vertical geodesics are the parabola arcs ``x - a = +-(lam^2 - y^2)/(2 lam)``
(the branch sign is ``+1`` right of the axis ``x = a``, ``-1`` left of it).
Along one branch the line element ``F(dx, dy)/y`` integrates to

    l(y1, y2) = 1/2 ln(y2/y1) + (y2^2 - y1^2) / (4 lam^2),   y1 < y2 <= lam,

and along verticals to ``1/2 |ln(y2/y1)|``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from ..config import DEFAULT
from ..errors import ConvergenceError, DegenerateInputError
from .geometry import HPoint, StadiumParabola, Vertical, half_width

# F(0, 1) for the stadium norm
VERTICAL_SPEED = 0.5
# below this horizontal offset (relative to height) the parabola's lam would
# pass 1e100 and its deviation from the vertical is far below rounding
NEAR_VERTICAL = 1e-100


def vertical_length(y1: float, y2: float) -> float:
    return VERTICAL_SPEED * abs(math.log(y2 / y1))


def same_branch_length(lam: float, y1: float, y2: float) -> float:
    """Length between heights ``y1`` and ``y2`` on one branch of parameter ``lam``."""
    return 0.5 * abs(math.log(y2 / y1)) + 0.25 * abs((y2 / lam) ** 2 - (y1 / lam) ** 2)


def length_to_top(lam: float, y: float) -> float:
    """Length from height ``y`` on either branch up to the top ``y = lam``."""
    return 0.5 * math.log(lam / y) + 0.25 * (1.0 - (y / lam) ** 2)


def length_from_unit_height(y: float, lam: float) -> float:
    """Length from height 1 to height ``y`` on the branch through ``(0, 1)``."""
    if y < 1.0:
        return 0.25 * ((1.0 - y * y) / lam / lam - math.log(y * y))
    return 0.25 * ((y * y - 1.0) / lam / lam + math.log(y * y))


def length_below_top(lam: float) -> float:
    """Length from ``(0, 1)`` to the top of the geodesic of parameter ``lam``."""
    return 0.25 * (1.0 - (1.0 / lam) ** 2 + 2.0 * math.log(lam))


def parabola_candidates(p, q, tol: float = 1e-12):
    """All admissible ``(lam, a, branch_p, branch_q, strict)`` through ``p`` and ``q``.

    Enumerates the four branch-sign assignments; each reduces to a linear or
    quadratic equation in ``lam``.  A candidate is admissible when
    ``lam >= max(y_p, y_q)`` (both points on the upper arc); ``strict`` is
    False for candidates that pass only within the relative slack ``tol``.
    """
    xp, yp = p
    xq, yq = q
    dx = xp - xq
    high = max(yp, yq)
    out = []
    for sp in (1, -1):
        for sq in (1, -1):
            if sp == sq:
                if dx == 0.0:
                    continue
                lam = sp * (yq * yq - yp * yp) / (2.0 * dx)
                if not lam > 0.0:
                    continue
            else:
                # lam^2 - sp*dx*lam - (yp^2 + yq^2)/2 = 0, positive root
                b = sp * dx
                lam = 0.5 * (b + math.sqrt(b * b + 2.0 * (yp * yp + yq * yq)))
            if lam < high * (1.0 - tol):
                continue
            strict = lam >= high
            lam = max(lam, high)
            a = xp - sp * half_width(lam, yp)
            out.append((lam, a, sp, sq, strict))
    return out


def _distinct(cands, tol):
    out = []
    for lam, a in cands:
        scale = max(1.0, lam, abs(a))
        if not any(abs(lam - l2) <= tol * scale and abs(a - a2) <= tol * scale for l2, a2 in out):
            out.append((lam, a))
    return out


def parabola_through(p, q, tol: float = 1e-9) -> StadiumParabola:
    """The unique parabola through two points with distinct x-coordinates.

    Candidates admissible without slack take precedence; the slack only
    rescues a point sitting at the top when rounding puts it a hair above.
    """
    cands = parabola_candidates(p, q)
    distinct = _distinct([(c[0], c[1]) for c in cands if c[4]], tol)
    if not distinct:
        distinct = _distinct([(c[0], c[1]) for c in cands], tol)
    if len(distinct) > 1 and math.hypot(p[0] - q[0], p[1] - q[1]) <= 1e-8 * max(p[1], q[1]):
        # a rounding artefact for nearly coincident points: keep the shortest
        distinct = [min(distinct, key=lambda c: arc_length(StadiumParabola(*c), p, q))]
    if len(distinct) != 1:
        raise ConvergenceError(
            f"expected exactly one admissible parabola through {p} and {q}, found {len(distinct)}",
            residuals=cands,
        )
    lam, a = distinct[0]
    return StadiumParabola(lam, a)


def geodesic_through(p, q):
    if p[0] == q[0] and p[1] == q[1]:
        raise DegenerateInputError("geodesic through coincident points")
    if abs(p[0] - q[0]) <= NEAR_VERTICAL * max(p[1], q[1]):
        return Vertical(float(p[0]))
    return parabola_through(p, q)


def branch_of(g: StadiumParabola, p, tol: float = 1e-12) -> int:
    """+1 right of the axis, -1 left, 0 at the top."""
    d = p[0] - g.a
    if abs(d) <= tol * max(1.0, g.lam) or abs(p[1] - g.lam) <= tol * g.lam:
        return 0
    return 1 if d > 0 else -1


def residual(g, p) -> float:
    """Distance of ``p`` from the curve in the defining equation, scaled by lam."""
    if isinstance(g, Vertical):
        return abs(p[0] - g.a)
    if p[1] > g.lam:
        return (p[1] - g.lam) / g.lam
    return abs(abs(p[0] - g.a) - half_width(g.lam, p[1])) / max(1.0, g.lam)


def signed_arc(g: StadiumParabola, p) -> float:
    """Arc coordinate, increasing with x: ``+-length_to_top`` by branch."""
    b = branch_of(g, p)
    if b == 0:
        return 0.0
    return b * length_to_top(g.lam, p[1])


def arc_length(g, p, q) -> float:
    if isinstance(g, Vertical):
        return vertical_length(p[1], q[1])
    bp, bq = branch_of(g, p), branch_of(g, q)
    if bp == bq or bp == 0 or bq == 0:
        return same_branch_length(g.lam, p[1], q[1])
    return length_to_top(g.lam, p[1]) + length_to_top(g.lam, q[1])


def height_at_top_distance(lam: float, length: float, xtol: float = DEFAULT.root_xtol) -> float:
    """Invert :func:`length_to_top`: the height ``y <= lam`` at ``length`` below the top."""
    if length == 0.0:
        return lam
    # with u = ln(y/lam): length = -u/2 + (1 - e^{2u})/4, decreasing in u
    f = lambda u: -0.5 * u + 0.25 * (1.0 - math.exp(2.0 * u)) - length
    lo, hi = -2.0 * length, min(0.0, -2.0 * length + 0.5)
    if f(hi) >= 0.0:
        return lam * math.exp(hi)
    u = brentq(f, lo, hi, xtol=xtol * max(1.0, abs(lo)), rtol=4 * np.finfo(float).eps, maxiter=DEFAULT.max_iter)
    return lam * math.exp(u)


def point_at_arc(g, base, s: float) -> HPoint:
    """Point at signed arc ``s`` from ``base``; positive ``s`` moves toward
    increasing x (increasing y on verticals)."""
    if s == 0.0:
        return HPoint(float(base[0]), float(base[1]))
    if isinstance(g, Vertical):
        return HPoint(g.a, base[1] * math.exp(s / VERTICAL_SPEED))
    sigma = signed_arc(g, base) + s
    if sigma == 0.0:
        return g.top
    branch = 1 if sigma > 0 else -1
    y = height_at_top_distance(g.lam, abs(sigma))
    return HPoint(g.x_at(y, branch), y)


def heights_at_top_distance(lam: float, lengths) -> np.ndarray:
    """Vectorised :func:`height_at_top_distance` by Newton's method.

    In ``u = ln(y/lam)`` the residual is concave and decreasing, so after the
    first step from ``u = -2 length`` the iterates approach the root
    monotonically from the right.
    """
    L = np.asarray(lengths, dtype=float)
    u = -2.0 * L
    for _ in range(60):
        e = np.exp(2.0 * u)
        f = -0.5 * u + 0.25 * (1.0 - e) - L
        step = f / (-0.5 - 0.5 * e)
        u = np.minimum(u - step, 0.0)
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(u))):
            break
    return lam * np.exp(u)


def points_at_arc(g, base, s) -> np.ndarray:
    """Vectorised :func:`point_at_arc` over an array of signed arcs."""
    s = np.asarray(s, dtype=float)
    if isinstance(g, Vertical):
        return np.column_stack([np.full_like(s, g.a), base[1] * np.exp(s / VERTICAL_SPEED)])
    sigma = signed_arc(g, base) + s
    y = heights_at_top_distance(g.lam, np.abs(sigma))
    x = g.a + np.sign(sigma) * half_width(g.lam, y)
    return np.column_stack([x, y])


def arc_coordinate(g, p) -> float:
    """A coordinate along ``g`` increasing in the positive arc direction."""
    if isinstance(g, Vertical):
        return math.log(p[1])
    return signed_arc(g, p)


def distance_many(p, qs) -> np.ndarray:
    """Vectorised distance from ``p`` to each row of ``qs``."""
    qs = np.asarray(qs, dtype=float)
    xp, yp = float(p[0]), float(p[1])
    xq, yq = qs[:, 0], qs[:, 1]
    adx = np.abs(xq - xp)
    high = np.maximum(yp, yq)
    with np.errstate(divide="ignore", invalid="ignore"):
        lam_same = np.abs(yq * yq - yp * yp) / (2.0 * adx)
        lam_opp = 0.5 * (adx + np.sqrt(adx * adx + 2.0 * (yp * yp + yq * yq)))
        # mirrors parabola_through: strict admissibility first, slack second
        same = (lam_same >= high) | ((lam_opp < high) & (lam_same >= high * (1.0 - 1e-12)))
        lam = np.where(same, lam_same, lam_opp)
        log_ratio = np.abs(np.log(yq / yp))
        d_same = 0.5 * log_ratio + 0.25 * np.abs((yq / lam) ** 2 - (yp / lam) ** 2)
        top = lambda y: 0.5 * np.log(lam / y) + 0.25 * (1.0 - (y / lam) ** 2)
        d_opp = top(yp) + top(yq)
        d = np.where(same, d_same, d_opp)
    d = np.where(adx <= NEAR_VERTICAL * high, VERTICAL_SPEED * log_ratio, d)
    return d
