"""Metric spheres of the Stadium space and their tangent slopes.

Spheres are traced for the centre ``(0, 1)`` and carried to any other centre
by the isometry ``(x, y) -> (alpha x + beta, alpha y)``.  The right half of
``S((0, 1), K)`` consists of three arcs, each swept by the parameter ``lam``
of the geodesic radius that ends on it:

* ``B1`` (bottom): ``x = (1 - y^2)/(2 lam)``, ``(1 - y^2)/(4 lam^2) - ln(y)/2 = K``, ``lam in [1, inf)``;
* ``B2`` (side, radius passes over the top of its geodesic):
  ``x = lam - (1 + y^2)/(2 lam)``, ``(y^2 + 1)/(4 lam^2) + ln(y)/2 - ln(lam) = 1/2 - K``, ``lam in [1, lam0]``;
* ``B3`` (top): ``x = (y^2 - 1)/(2 lam)``, ``(y^2 - 1)/(4 lam^2) + ln(y)/2 = K``, ``lam in [lam0, inf)``;

where ``lam0`` is the widest radius, the parameter whose top is at distance
``K`` from the centre.  The poles are ``(0, e^{-2K})`` and ``(0, e^{2K})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from ..config import DEFAULT
from ..errors import ConvergenceError, ParameterError, PreconditionError
from ..norms import NormKind, NormModel
from . import stadium
from .geometry import HPoint, from_unit_frame, hpoint, to_unit_frame

ARCS = ("B1", "B2", "B3")
_EPS = 4 * np.finfo(float).eps


def _root(f, lo, hi):
    return brentq(f, lo, hi, xtol=DEFAULT.root_xtol * max(1.0, abs(hi)), rtol=_EPS, maxiter=DEFAULT.max_iter)


def lambda0_of_K(K: float) -> float:
    """The unique ``lam >= 1`` with ``(1 - 1/lam^2 + ln lam^2)/4 = K``."""
    if not K > 0:
        raise ParameterError("K must be positive")
    f = lambda lam: stadium.length_below_top(lam) - K
    # 1/2 ln(lam) <= f + K <= 1/4 + 1/2 ln(lam)
    lo, hi = max(1.0, math.exp(2.0 * K - 0.5)), math.exp(2.0 * K)
    if f(lo) >= 0.0:
        return lo
    return _root(f, lo, hi)


def b1_point(K: float, lam: float) -> HPoint:
    if math.isinf(lam):
        return HPoint(0.0, math.exp(-2.0 * K))
    f = lambda y: (1.0 - y * y) / (4.0 * lam * lam) - 0.5 * math.log(y) - K
    y = _root(f, math.exp(-2.0 * K), 1.0)
    return HPoint((1.0 - y * y) / (2.0 * lam), y)


def b2_point(K: float, lam: float) -> HPoint:
    c = 0.5 - K + math.log(lam)
    f = lambda y: (y * y + 1.0) / (4.0 * lam * lam) + 0.5 * math.log(y) - c
    if f(lam) <= 0.0:
        y = lam
    else:
        y = _root(f, 0.5 * math.exp(-2.0 * K), lam)
    return HPoint(lam - (1.0 + y * y) / (2.0 * lam), y)


def b3_point(K: float, lam: float) -> HPoint:
    if math.isinf(lam):
        return HPoint(0.0, math.exp(2.0 * K))
    f = lambda y: (y * y - 1.0) / (4.0 * lam * lam) + 0.5 * math.log(y) - K
    hi = min(lam, math.exp(2.0 * K))
    if f(hi) <= 0.0:
        y = hi
    else:
        y = _root(f, 1.0, hi)
    return HPoint((y * y - 1.0) / (2.0 * lam), y)


ARC_POINT = {"B1": b1_point, "B2": b2_point, "B3": b3_point}


def lambda_range(arc: str, K: float) -> tuple[float, float]:
    lam0 = lambda0_of_K(K)
    return {"B1": (1.0, math.inf), "B2": (1.0, lam0), "B3": (lam0, math.inf)}[arc]


def lambda_of_point(arc: str, p) -> float:
    """Recover the radius parameter of a right-side point in the unit frame."""
    x, y = p
    if arc == "B1":
        return math.inf if x == 0.0 else (1.0 - y * y) / (2.0 * x)
    if arc == "B2":
        return 0.5 * (x + math.sqrt(x * x + 2.0 * (1.0 + y * y)))
    if arc == "B3":
        return math.inf if x == 0.0 else (y * y - 1.0) / (2.0 * x)
    raise ParameterError(f"unknown arc {arc!r}")


class TangentSlope(NamedTuple):
    """dy/dx of a sphere arc; at a vertical tangent ``dydx`` is infinite and
    ``dxdy`` carries the finite reciprocal."""

    dydx: float
    dxdy: float
    vertical: bool


def slope_closed_form(arc: str, lam: float, y: float, tol: float = DEFAULT.vertical) -> TangentSlope:
    """Closed-form tangent slope of a right-side arc at parameter ``lam``."""
    if arc not in ARCS:
        raise ParameterError(f"unknown arc {arc!r}")
    if math.isinf(lam):
        return TangentSlope(0.0, math.inf, False)
    gap = lam * lam - y * y
    if arc == "B3":
        gap = -gap
    num = 2.0 * y * lam
    dxdy = gap / num
    if abs(gap) < tol * lam * lam:
        return TangentSlope(math.copysign(math.inf, 1.0 if arc != "B3" else -1.0), dxdy, True)
    return TangentSlope(num / gap, dxdy, False)


@dataclass
class ArcSamples:
    label: str
    lambdas: np.ndarray
    points: np.ndarray  # in the actual frame


@dataclass
class SphereTrace:
    center: HPoint
    K: float
    lambda0: float
    arcs: dict[str, ArcSamples]
    poles: tuple[HPoint, HPoint]
    max_residual: float = field(default=math.nan)

    def polyline(self) -> np.ndarray:
        """All samples as one closed counterclockwise loop from the bottom pole."""
        a = self.arcs
        parts = [
            np.array([self.poles[0]]),
            a["B1_bottom_right"].points,
            a["B2_side_right"].points[1:],
            a["B3_top_right"].points[1:],
            np.array([self.poles[1]]),
            a["B3_top_left"].points[::-1],
            a["B2_side_left"].points[::-1][1:],
            a["B1_bottom_left"].points[::-1][1:],
        ]
        return np.vstack(parts)

    def rightmost(self) -> HPoint:
        return HPoint(*self.arcs["B2_side_right"].points[-1])


def _sweep(arc: str, lam0: float, m: int) -> np.ndarray:
    """Radius parameters ordered from the bottom pole toward the top pole.

    ``B1`` and ``B3`` are swept uniformly in ``1/lam`` (roughly uniform in x);
    the poles themselves (``lam = inf``) are added separately.
    """
    if arc == "B1":
        return m / np.arange(1, m + 1)
    if arc == "B2":
        return np.linspace(1.0, lam0, m)
    return lam0 / np.linspace(1.0, 1.0 / m, m)


def sphere_trace(norm: NormModel, center, K: float, n: int = 96) -> SphereTrace:
    """Trace ``S(center, K)`` in the Stadium space.

    Each of the six arcs gets at least ``n / 6`` samples; every sample is
    re-checked against :func:`stadium.distance_many`.
    """
    if norm.kind is not NormKind.STADIUM:
        raise ParameterError("closed-form sphere traces exist only for the stadium norm")
    if not K > 0:
        raise ParameterError("K must be positive")
    if n < 16:
        raise ParameterError("n must be at least 16")
    center = hpoint(center)
    lam0 = lambda0_of_K(K)
    m = max(3, math.ceil(n / 6))
    arcs = {}
    names = {"B1": "B1_bottom", "B2": "B2_side", "B3": "B3_top"}
    for arc in ARCS:
        lams = _sweep(arc, lam0, m)
        unit = np.array([ARC_POINT[arc](K, lam) for lam in lams])
        right = np.array([from_unit_frame(center, p) for p in unit])
        left = np.array([from_unit_frame(center, (-p[0], p[1])) for p in unit])
        arcs[f"{names[arc]}_right"] = ArcSamples(f"{names[arc]}_right", lams, right)
        arcs[f"{names[arc]}_left"] = ArcSamples(f"{names[arc]}_left", lams, left)
    poles = (
        from_unit_frame(center, (0.0, math.exp(-2.0 * K))),
        from_unit_frame(center, (0.0, math.exp(2.0 * K))),
    )
    trace = SphereTrace(center, K, lam0, arcs, poles)
    pts = trace.polyline()
    res = float(np.max(np.abs(stadium.distance_many(center, pts) - K)))
    trace.max_residual = res
    if res > DEFAULT.sphere_closure:
        raise ConvergenceError(f"sphere trace failed closure check (residual {res:.3e})", residuals=[res])
    return trace


def sphere_tangent_slope(trace: SphereTrace, arc: str, point) -> TangentSlope:
    """Tangent slope at a point of the named arc (either side)."""
    if arc not in ARCS:
        raise ParameterError(f"unknown arc {arc!r}")
    u = to_unit_frame(trace.center, point)
    side = -1.0 if u.x < 0 else 1.0
    ur = HPoint(abs(u.x), u.y)
    lam = lambda_of_point(arc, ur)
    lo, hi = lambda_range(arc, trace.K)
    if not (lo * (1 - 1e-9) <= lam <= hi * (1 + 1e-9)):
        raise PreconditionError(f"point {tuple(point)} is not on arc {arc}")
    lam = min(max(lam, lo), hi)
    ref = ARC_POINT[arc](trace.K, lam)
    off = math.hypot(ref.x - ur.x, ref.y - ur.y)
    if off > 1e-8 * max(1.0, ur.y):
        raise PreconditionError(f"point {tuple(point)} is not on arc {arc} (off by {off:.3e})")
    s = slope_closed_form(arc, lam, ur.y)
    if side > 0:
        return s
    return TangentSlope(-s.dydx, -s.dxdy, s.vertical)
