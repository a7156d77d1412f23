"""Generic geodesic engine driven only by a norm and its rotated dual.

A non-vertical geodesic is the upper half of ``F*(x - a, y) = k``.  It is
parametrised by the polar angle ``theta in (0, pi)`` about ``(a, 0)``:
``rho(theta) = k / F*(cos theta, sin theta)``.  Arc length is adaptive
quadrature of ``F(dP/dtheta) / y`` in ``theta``, split at the kinks of ``F*``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from ..config import DEFAULT
from ..errors import ConvergenceError, DegenerateInputError, DomainError, RangeError
from ..norms import DualNormModel, NormKind, dual_norm_many, norm_eval
from .geometry import GenericLevelSet, HPoint, Vertical

TRACE_POINTS = 64


def check_supported(dual: DualNormModel) -> None:
    """Reject norms whose dual level sets do not meet the x-axis vertically."""
    base = dual.base
    u1, u2 = dual.top_support()
    if abs(u1) > 1e-12 * abs(u2):
        raise DomainError(
            "boundary tangents of the dual level sets are not vertical "
            f"(top support point {u1, u2}); such norms are not supported"
        )
    if base.kind is NormKind.SAMPLED:
        verts = base.indicatrix
        e = np.roll(verts, -1, axis=0) - verts
        if np.any(np.abs(e[:, 1]) <= 1e-12 * np.hypot(e[:, 0], e[:, 1])):
            raise DomainError("indicatrix has a horizontal edge: the dual has a corner on the x-axis")


def vertical_speed(dual: DualNormModel) -> float:
    return norm_eval(dual.base, (0.0, 1.0))


def theta_of(g: GenericLevelSet, p) -> float:
    return math.atan2(p[1], p[0] - g.a)


def point_of(dual: DualNormModel, g: GenericLevelSet, theta: float) -> HPoint:
    c, s = math.cos(theta), math.sin(theta)
    rho = g.k / dual((c, s))
    return HPoint(g.a + rho * c, rho * s)


def trace(dual: DualNormModel, a: float, k: float, n: int) -> np.ndarray:
    """``n`` points of the level set, ordered by increasing x."""
    theta = np.pi * (1.0 - (np.arange(n) + 0.5) / n)
    d = np.column_stack([np.cos(theta), np.sin(theta)])
    rho = k / dual_norm_many(dual, d)
    return np.column_stack([a + rho * d[:, 0], rho * d[:, 1]])


def _integrand(dual: DualNormModel, k: float, theta: float) -> float:
    c, s = math.cos(theta), math.sin(theta)
    g = dual((c, s))
    u1, u2 = dual.support_point((c, s))
    # d/dtheta F*(cos, sin) = grad F* . (-s, c) with grad F* = (u2, -u1)
    dg = -s * u2 - c * u1
    rho = k / g
    drho = -k * dg / (g * g)
    tx = drho * c - rho * s
    ty = drho * s + rho * c
    return norm_eval(dual.base, (tx, ty)) / (rho * s)


def arc_between(dual: DualNormModel, k: float, t1: float, t2: float, tol=DEFAULT) -> float:
    """Unsigned length between polar angles ``t1`` and ``t2``."""
    lo, hi = min(t1, t2), max(t1, t2)
    if lo == hi:
        return 0.0
    kinks = dual.kink_angles()
    cuts = [lo, *kinks[(kinks > lo) & (kinks < hi)], hi]
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        val, _ = quad(lambda t: _integrand(dual, k, t), a, b, epsabs=tol.quad_abs, epsrel=tol.quad_rel, limit=200)
        total += val
    return total


def geodesic_through(dual: DualNormModel, p, q, n: int = TRACE_POINTS):
    """Solve for the level set ``F*(x - a, y) = k`` through both points.

    With ``x_p != x_q`` the difference ``F*(p - a) - F*(q - a)`` changes sign
    between ``a -> -inf`` and ``a -> +inf``; the root is bracketed by
    expansion and refined with Brent's method.
    """
    check_supported(dual)
    if p[0] == q[0] and p[1] == q[1]:
        raise DegenerateInputError("geodesic through coincident points")
    if p[0] == q[0]:
        return Vertical(float(p[0]))
    if p[0] > q[0]:
        p, q = q, p
    h = lambda a: dual((p[0] - a, p[1])) - dual((q[0] - a, q[1]))
    span = max(q[0] - p[0], p[1], q[1])
    lo, hi = p[0] - span, q[0] + span
    for _ in range(DEFAULT.max_iter):
        if h(lo) < 0.0:
            break
        lo -= 2.0 * (q[0] - lo)
    else:
        raise ConvergenceError("could not bracket the level-set axis from below", residuals=[h(lo)])
    for _ in range(DEFAULT.max_iter):
        if h(hi) > 0.0:
            break
        hi += 2.0 * (hi - p[0])
    else:
        raise ConvergenceError("could not bracket the level-set axis from above", residuals=[h(hi)])
    a = brentq(h, lo, hi, xtol=1e-15 * max(1.0, abs(lo), abs(hi)), rtol=4 * np.finfo(float).eps, maxiter=DEFAULT.max_iter)
    kp, kq = dual((p[0] - a, p[1])), dual((q[0] - a, q[1]))
    k = 0.5 * (kp + kq)
    if abs(kp - kq) > 1e-9 * k:
        raise ConvergenceError("level-set solve did not converge", residuals=[kp - k, kq - k])
    return GenericLevelSet(a, k, trace(dual, a, k, n))


def residual(dual: DualNormModel, g, p) -> float:
    if isinstance(g, Vertical):
        return abs(p[0] - g.a)
    return abs(dual((p[0] - g.a, p[1])) - g.k) / g.k


def arc_length(dual: DualNormModel, g, p, q) -> float:
    if isinstance(g, Vertical):
        return vertical_speed(dual) * abs(math.log(q[1] / p[1]))
    return arc_between(dual, g.k, theta_of(g, p), theta_of(g, q))


def arc_coordinate(g, p) -> float:
    """Increasing with x (decreasing polar angle)."""
    if isinstance(g, Vertical):
        return math.log(p[1])
    return -theta_of(g, p)


def point_at_arc(dual: DualNormModel, g, base, s: float) -> HPoint:
    """Point at signed arc ``s`` from ``base`` (positive toward increasing x).

    Solved in ``w = -ln(distance of theta to the end of (0, pi))``, in which
    the arc length grows roughly linearly, by safeguarded Newton steps with
    incremental quadrature.
    """
    if s == 0.0:
        return HPoint(float(base[0]), float(base[1]))
    if isinstance(g, Vertical):
        return HPoint(g.a, base[1] * math.exp(s / vertical_speed(dual)))
    theta0 = theta_of(g, base)
    toward_zero = s > 0
    target = abs(s)

    def theta_at(w):
        rem = math.exp(-w)
        return rem if toward_zero else math.pi - rem

    w0 = -math.log(theta0 if toward_zero else math.pi - theta0)
    known = [(w0, 0.0)]

    def arc_at(w):
        wk, ak = min(known, key=lambda e: abs(e[0] - w))
        val = ak + math.copysign(arc_between(dual, g.k, theta_at(wk), theta_at(w)), w - wk)
        known.append((w, val))
        return val

    def slope_at(w):
        return _integrand(dual, g.k, theta_at(w)) * math.exp(-w)

    lo, hi = w0, math.inf
    w = w0 + target / slope_at(w0)
    for _ in range(DEFAULT.max_iter):
        if w > 700.0:
            raise RangeError(f"arc {s!r} from {tuple(base)} reaches numerically the ideal boundary")
        f = arc_at(w) - target
        if abs(f) <= 1e-13 * max(1.0, target):
            return point_of(dual, g, theta_at(w))
        if f < 0.0:
            lo = w
        else:
            hi = w
        step = w - f / slope_at(w)
        if not (lo < step < hi):
            step = 0.5 * (lo + hi) if math.isfinite(hi) else w + 2.0 * (w - w0) + 1.0
        if math.isfinite(hi) and hi - lo <= 1e-15 * max(1.0, abs(hi)):
            return point_of(dual, g, theta_at(0.5 * (lo + hi)))
        w = step
    raise ConvergenceError("arc inversion did not converge", residuals=[f])
