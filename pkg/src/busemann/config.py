"""Centralised numerical tolerances."""

from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class Tolerances:
    # membership of a point on a geodesic (relative to the curve scale)
    on_curve: float = 1e-8
    # betweenness identity d(x,z) + d(z,y) = d(x,y)
    betweenness: float = 1e-8
    # origin symmetry of a sampled indicatrix
    symmetry: float = 1e-9
    # |lambda^2 - y^2| < vertical * lambda^2 triggers the vertical-tangent sentinel
    vertical: float = 1e-10
    # sphere points re-verified against the distance operation
    sphere_closure: float = 1e-6
    # agreement of the two extension routes
    unique_extension: float = 1e-6
    # slack allowed before a point counts as having left a closed ball
    ball_exit: float = 1e-9
    # adaptive quadrature targets
    quad_abs: float = 1e-13
    quad_rel: float = 1e-12
    # root finders
    root_xtol: float = 1e-15
    max_iter: int = 200

    def as_dict(self):
        return asdict(self)


DEFAULT = Tolerances()
