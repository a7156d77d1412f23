"""Points and geodesic descriptors of the open upper half-plane."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from ..errors import DomainError


class HPoint(NamedTuple):
    x: float
    y: float


def hpoint(p) -> HPoint:
    """Coerce to :class:`HPoint`, enforcing ``y > 0`` and finiteness."""
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"non-finite point {p!r}")
    if y <= 0.0:
        raise DomainError(f"point {p!r} is not in the open upper half-plane")
    return HPoint(x, y)


@dataclass(frozen=True)
class Vertical:
    """The vertical line ``x = a``."""

    a: float


def half_width(lam, y):
    """``(lam^2 - y^2) / (2 lam)`` without forming ``lam^2`` (safe for huge ``lam``)."""
    return 0.5 * (lam - y * (y / lam))


@dataclass(frozen=True)
class StadiumParabola:
    """``x - a = +-(lam^2 - y^2) / (2 lam)``, ``0 < y <= lam``; top at ``(a, lam)``."""

    lam: float
    a: float

    @property
    def top(self) -> HPoint:
        return HPoint(self.a, self.lam)

    def x_at(self, y: float, branch: int) -> float:
        return self.a + branch * half_width(self.lam, y)


@dataclass(frozen=True, eq=False)
class GenericLevelSet:
    """The upper half of ``F*(x - a, y) = k``; ``polyline`` is a sampled trace
    ordered by increasing x."""

    a: float
    k: float
    polyline: np.ndarray | None = field(default=None, repr=False)


Geodesic = Union[Vertical, StadiumParabola, GenericLevelSet]


def gamma_map(p, alpha: float, beta: float) -> HPoint:
    """The isometry ``(x, y) -> (alpha x + beta, alpha y)``, ``alpha > 0``."""
    return HPoint(alpha * p[0] + beta, alpha * p[1])


def to_unit_frame(center, p) -> HPoint:
    """Image of ``p`` under the isometry taking ``center`` to ``(0, 1)``."""
    return HPoint((p[0] - center[0]) / center[1], p[1] / center[1])


def from_unit_frame(center, p) -> HPoint:
    return HPoint(center[0] + center[1] * p[0], center[1] * p[1])
