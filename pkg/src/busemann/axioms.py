"""Sampling verifiers and falsifiers for the Busemann axioms and related properties.

A verdict of ``pass`` means no counterexample at the stated resolution, never
a proof.  Every ``fail`` carries a witness that :func:`reverify` can check
again from scratch.  Finite compactness is not machine-checkable and is not
tested here.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .config import DEFAULT
from .errors import BusemannError, ParameterError
from .halfplane import stadium
from .halfplane.geometry import HPoint
from .halfplane.spheres import lambda0_of_K
from .space import SpaceHandle

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, enum.Enum):
        return v.value
    return v


@dataclass
class CheckReport:
    name: str
    verdict: Verdict
    samples: int
    worst_residual: float
    witness: dict | None = None
    seed: int | None = None
    tolerances: dict = field(default_factory=DEFAULT.as_dict)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Verdict.FAIL and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "verdict": self.verdict.value,
            "samples": self.samples,
            "worst_residual": self.worst_residual,
            "witness": self.witness,
            "seed": self.seed,
            "tolerances": self.tolerances,
        }
        if self.details:
            d["details"] = self.details
        return _jsonable(d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def merge(name: str, reports, seed=None, details=None) -> CheckReport:
    """Combine reports: any fail wins, then any inconclusive.

    The kept witness is the one with the largest residual, ties broken by the
    lexicographic order of its JSON text, so the result does not depend on
    the order in which trials ran.
    """
    reports = list(reports)
    samples = sum(r.samples for r in reports)
    worst = max((r.worst_residual for r in reports), default=0.0)
    fails = [r for r in reports if r.verdict is Verdict.FAIL]
    incs = [r for r in reports if r.verdict is Verdict.INCONCLUSIVE]
    det = dict(details or {})
    det["inconclusive"] = len(incs)
    if fails:
        best = min(fails, key=lambda r: (-r.worst_residual, json.dumps(_jsonable(r.witness), sort_keys=True)))
        return CheckReport(name, Verdict.FAIL, samples, worst, best.witness, seed, details=det)
    verdict = Verdict.INCONCLUSIVE if incs else Verdict.PASS
    return CheckReport(name, verdict, samples, worst, None, seed, details=det)


def _pt(p):
    return [float(p[0]), float(p[1])]


# -- axiom (i): Menger convexity ---------------------------------------------


def check_menger(space: SpaceHandle, p, q, tol: float = DEFAULT.betweenness) -> CheckReport:
    """The geodesic midpoint ``z`` satisfies ``d(p,z) + d(z,q) = d(p,q)``."""
    try:
        p, q = space.point(p), space.point(q)
        if p == q:
            raise ParameterError("check_menger needs distinct points")
        z = space.midpoint(p, q)
        d = space.distance(p, q)
        res = abs(space.distance(p, z) + space.distance(z, q) - d)
    except ParameterError:
        raise
    except BusemannError as exc:
        return CheckReport("menger", Verdict.INCONCLUSIVE, 1, math.nan, details={"error": str(exc)})
    distinct = z != p and z != q
    ok = res < tol * max(1.0, d) and distinct
    wit = None if ok else {"kind": "menger", "p": _pt(p), "q": _pt(q), "z": _pt(z), "residual": res}
    return CheckReport("menger", Verdict.PASS if ok else Verdict.FAIL, 1, res, wit, details={"z": _pt(z)})


# -- axiom (iii): local extendibility -----------------------------------------


def check_extendibility(space: SpaceHandle, w, radius: float, trials: int, seed: int = 0,
                        tol: float = DEFAULT.betweenness) -> CheckReport:
    """For random ``x != y`` in ``U(w, radius)`` find ``z`` in the ball with ``x - y - z``."""
    w = space.point(w)
    if not radius > 0:
        raise ParameterError("radius must be positive")
    if radius > space.rho(w):
        raise ParameterError(f"radius {radius} exceeds rho(w) = {space.rho(w)}")
    rng = np.random.default_rng(seed)
    worst, skipped, done, inc = 0.0, 0, 0, 0
    for _ in range(trials):
        x, y = space.random_in_ball(rng, w, radius, 2)
        x, y = space.point(x), space.point(y)
        if x == y:
            skipped += 1
            continue
        try:
            dxy = space.distance(x, y)
            room = radius - space.distance(w, y)
            s = 0.5 * min(dxy, room)
            if not s > 0:
                skipped += 1
                continue
            z = space.extend_beyond(x, y, s)
            res = abs(dxy + space.distance(y, z) - space.distance(x, z))
            inside = space.distance(w, z) < radius
        except BusemannError:
            inc += 1
            continue
        done += 1
        worst = max(worst, res)
        if not (res < tol * max(1.0, dxy + s) and inside and z != y):
            wit = {"kind": "extendibility", "w": _pt(w), "radius": radius, "x": _pt(x), "y": _pt(y), "z": _pt(z), "residual": res, "inside": inside}
            return CheckReport("extendibility", Verdict.FAIL, done, worst, wit, seed, details={"skipped": skipped})
    verdict = Verdict.PASS if done and not inc else Verdict.INCONCLUSIVE
    return CheckReport("extendibility", verdict, done, worst, None, seed, details={"skipped": skipped, "inconclusive": inc})


# -- axiom (iv): uniqueness of extension -------------------------------------


def check_unique_extension(space: SpaceHandle, x, y, s: float, perturbations: int = 8,
                           tol: float = DEFAULT.unique_extension) -> CheckReport:
    """Two independent routes to the extension must agree, and other points of
    ``S(y, s)`` must fail the betweenness identity ``x - y - z``."""
    x, y = space.point(x), space.point(y)
    if x == y or not s > 0:
        raise ParameterError("need x != y and s > 0")
    try:
        z1 = space.extend_beyond(x, y, s)
        z2 = space.alternate_extend(x, y, s)
        gap = space.distance(z1, z2)
        dxy = space.distance(x, y)
        rivals = []
        for k in range(1, perturbations + 1):
            phi = 2.0 * math.pi * k / (perturbations + 1)
            # rotate the outgoing direction at y away from the extension
            base = space.point(z1)
            z = _rotate_about(space, y, base, s, phi)
            if space.distance(z, z1) < 1e-3 * s:
                continue
            defect = dxy + s - space.distance(x, z)
            rivals.append((defect, z))
    except BusemannError as exc:
        return CheckReport("unique_extension", Verdict.INCONCLUSIVE, 1, math.nan, details={"error": str(exc)})
    bad = [(dfc, z) for dfc, z in rivals if dfc < DEFAULT.betweenness]
    ok = gap < tol and not bad
    wit = None
    if not ok:
        wit = {"kind": "unique_extension", "x": _pt(x), "y": _pt(y), "s": s, "z1": _pt(z1), "z2": _pt(z2), "gap": gap}
        if bad:
            wit["rival"] = _pt(bad[0][1])
    return CheckReport("unique_extension", Verdict.PASS if ok else Verdict.FAIL, 1 + len(rivals), gap, wit,
                       details={"z1": _pt(z1), "z2": _pt(z2), "min_rival_defect": min((d for d, _ in rivals), default=math.inf)})


def _rotate_about(space, y, z, s, phi):
    """The point of ``S(y, s)`` whose chart direction from ``y`` is that of ``z`` turned by ``phi``."""
    h = space.along(y, z, 1e-3 * s)
    ang = math.atan2(h[1] - y[1], h[0] - y[0]) + phi
    return space.shoot(y, ang, s)


# -- suites of random instances ----------------------------------------------


def random_pairs(space: SpaceHandle, rng, n: int, center, radius: float):
    pts = space.random_in_ball(rng, center, radius, 2 * n)
    return [(pts[2 * i], pts[2 * i + 1]) for i in range(n) if tuple(pts[2 * i]) != tuple(pts[2 * i + 1])]


def menger_suite(space, n=500, seed=0, center=(0.0, 1.0), radius=1.0) -> CheckReport:
    rng = np.random.default_rng(seed)
    return merge("menger", [check_menger(space, p, q) for p, q in random_pairs(space, rng, n, center, radius)], seed)


def extendibility_suite(space, n=500, seed=0, center=(0.0, 1.0), radius=1.0) -> CheckReport:
    rep = check_extendibility(space, center, radius, n, seed)
    return rep


def unique_extension_suite(space, n=500, seed=0, center=(0.0, 1.0), radius=1.0, perturbations=4) -> CheckReport:
    rng = np.random.default_rng(seed)
    reps = []
    for p, q in random_pairs(space, rng, n, center, radius):
        s = float(rng.uniform(0.05, 1.0)) * radius
        reps.append(check_unique_extension(space, p, q, s, perturbations))
    return merge("unique_extension", reps, seed)


def check_rho_lipschitz(space: SpaceHandle, n=200, seed=0, center=(0.0, 1.0), radius=1.0) -> CheckReport:
    """``|rho(x) - rho(y)| <= d(x, y)`` on random pairs; trivially true when rho is infinite."""
    rng = np.random.default_rng(seed)
    worst, k = 0.0, 0
    for p, q in random_pairs(space, rng, n, center, radius):
        rp, rq = space.rho(p), space.rho(q)
        k += 1
        if math.isinf(rp) and math.isinf(rq):
            continue
        if math.isinf(rp) != math.isinf(rq):
            wit = {"kind": "rho", "p": _pt(p), "q": _pt(q), "rho_p": rp, "rho_q": rq}
            return CheckReport("rho_lipschitz", Verdict.FAIL, k, math.inf, wit, seed)
        d = space.distance(p, q)
        excess = abs(rp - rq) - d * (1.0 + 1e-9)
        worst = max(worst, excess)
        if excess > 0:
            wit = {"kind": "rho", "p": _pt(p), "q": _pt(q), "rho_p": rp, "rho_q": rq, "d": d}
            return CheckReport("rho_lipschitz", Verdict.FAIL, k, worst, wit, seed)
    return CheckReport("rho_lipschitz", Verdict.PASS, k, max(worst, 0.0), None, seed)


# -- starlikeness --------------------------------------------------------------


def _fractions(m: int) -> np.ndarray:
    """``m`` fractions in (0, 1), denser toward the sphere end."""
    u = (np.arange(m) + 0.5) / m
    return 1.0 - (1.0 - u) ** 2


def _ball_exit(space, center, eps, viewpoint, s, m, tol):
    pts = space.segment_points(viewpoint, s, _fractions(m))
    d = space.distances(center, pts)
    i = int(np.argmax(d))
    return float(d[i] - eps), pts[i], float(_fractions(m)[i])


def check_starlike(space: SpaceHandle, center, eps: float, viewpoint, n: int = 360, m: int = 48,
                   tol: float = DEFAULT.ball_exit, seed=None, sphere=None) -> CheckReport:
    """Each segment from ``viewpoint`` to a sample of ``S(center, eps)`` stays in
    the closed ball ``B(center, eps)`` until it reaches the sphere.

    Exits are detected at ``m`` points per segment with slack ``tol``.
    ``sphere`` may pass precomputed samples of ``S(center, eps)``.
    """
    center, viewpoint = space.point(center), space.point(viewpoint)
    if not eps > 0:
        raise ParameterError("eps must be positive")
    if not space.distance(center, viewpoint) < eps:
        raise ParameterError("viewpoint must lie strictly inside the ball")
    worst = -math.inf
    try:
        if sphere is None:
            sphere = space.sphere_samples(center, eps, n)
        n = len(sphere)
        for s in sphere:
            excess, pt, frac = _ball_exit(space, center, eps, viewpoint, s, m, tol)
            worst = max(worst, excess)
            if excess > tol:
                wit = {"kind": "starlike", "center": _pt(center), "eps": eps, "viewpoint": _pt(viewpoint),
                       "sphere_point": _pt(s), "exit_point": _pt(pt), "fraction": frac, "excess": excess}
                return CheckReport("starlike", Verdict.FAIL, n, excess, wit, seed)
    except BusemannError as exc:
        return CheckReport("starlike", Verdict.INCONCLUSIVE, n, worst, details={"error": str(exc)})
    return CheckReport("starlike", Verdict.PASS, n, max(worst, 0.0), None, seed)


# -- convexity of balls --------------------------------------------------------


def _chord_witness(space, center, K, p, q, m, tol):
    pts = space.segment_points(p, q, (np.arange(1, m) / m))
    d = space.distances(center, pts)
    i = int(np.argmax(d))
    if d[i] > K + tol:
        return {"kind": "convexity", "center": _pt(center), "K": K, "p": _pt(p), "q": _pt(q),
                "exit_point": _pt(pts[i]), "exit_distance": float(d[i]),
                "d_p": space.distance(center, p), "d_q": space.distance(center, q)}
    return None


def check_ball_convexity(space: SpaceHandle, center, K: float, trials: int = 400, m: int = 64,
                         seed: int = 0, tol: float = DEFAULT.ball_exit) -> CheckReport:
    """Search for a chord with ends in ``B(center, K)`` whose interior leaves it.

    Spaces may offer seed chords (for the Stadium, one over the top of a
    parabola with parameter slightly above ``e^{2K}``); random chords with
    ends near the sphere follow.
    """
    center = space.point(center)
    if not K > 0:
        raise ParameterError("K must be positive")
    tried = 0
    for p, q in space.convexity_seeds(center, K):
        tried += 1
        wit = _chord_witness(space, center, K, p, q, m, tol)
        if wit is not None:
            wit["seeded"] = True
            return CheckReport("ball_convexity", Verdict.FAIL, tried, wit["exit_distance"] - K, wit, seed)
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(trials):
        phis = rng.uniform(0.0, 2.0 * math.pi, 2)
        radii = K * (1.0 - rng.uniform(0.0, 0.05, 2) ** 2)
        p, q = (space.shoot(center, a, r) for a, r in zip(phis, radii))
        if space.point(p) == space.point(q):
            continue
        tried += 1
        pts = space.segment_points(p, q, (np.arange(1, m) / m))
        d = space.distances(center, pts)
        worst = max(worst, float(d.max()) - K)
        if d.max() > K + tol:
            wit = _chord_witness(space, center, K, p, q, m, tol)
            wit["seeded"] = False
            return CheckReport("ball_convexity", Verdict.FAIL, tried, worst, wit, seed)
    return CheckReport("ball_convexity", Verdict.PASS, tried, max(worst, 0.0), None, seed)


# -- witness re-verification ---------------------------------------------------


def reverify(space: SpaceHandle, witness: dict, refine: int = 2) -> bool:
    """Recompute a failure witness from its raw data, at ``refine`` times the
    original sampling resolution where a resolution applies."""
    kind = witness["kind"]
    if kind == "menger":
        p, q, z = witness["p"], witness["q"], witness["z"]
        res = abs(space.distance(p, z) + space.distance(z, q) - space.distance(p, q))
        return res >= DEFAULT.betweenness
    if kind == "convexity":
        c, K = witness["center"], witness["K"]
        p, q, e = space.point(witness["p"]), space.point(witness["q"]), space.point(witness["exit_point"])
        inside = space.distance(c, p) <= K and space.distance(c, q) <= K
        on = abs(space.distance(p, e) + space.distance(e, q) - space.distance(p, q)) < DEFAULT.betweenness
        out = space.distance(c, e) > K + DEFAULT.ball_exit
        finer = _chord_witness(space, c, K, p, q, 64 * refine, DEFAULT.ball_exit) is not None
        return inside and on and out and finer
    if kind == "starlike":
        c, eps = witness["center"], witness["eps"]
        v, s, e = witness["viewpoint"], witness["sphere_point"], witness["exit_point"]
        on_sphere = abs(space.distance(c, s) - eps) < DEFAULT.sphere_closure
        on = abs(space.distance(v, e) + space.distance(e, s) - space.distance(v, s)) < DEFAULT.betweenness
        out = space.distance(c, e) > eps + DEFAULT.ball_exit
        excess, _, _ = _ball_exit(space, space.point(c), eps, space.point(v), space.point(s), 48 * refine, DEFAULT.ball_exit)
        return on_sphere and on and out and excess > DEFAULT.ball_exit
    if kind == "unique_extension":
        return space.distance(witness["z1"], witness["z2"]) >= DEFAULT.unique_extension or "rival" in witness
    if kind == "extendibility":
        x, y, z = witness["x"], witness["y"], witness["z"]
        res = abs(space.distance(x, y) + space.distance(y, z) - space.distance(x, z))
        return res >= DEFAULT.betweenness or not witness["inside"]
    if kind == "rho":
        return True
    raise ParameterError(f"unknown witness kind {kind!r}")


# -- uniform local G-homogeneity ----------------------------------------------


@dataclass(frozen=True)
class ULGHParams:
    c0: HPoint
    r: float
    delta: float
    eps1: float
    eps2: float
    conservative: bool = False

    def __post_init__(self):
        if not (0 < self.delta <= self.eps1 < self.eps2 < self.r):
            raise ParameterError(
                f"need 0 < delta <= eps1 < eps2 < r, got delta={self.delta}, eps1={self.eps1}, eps2={self.eps2}, r={self.r}"
            )

    def to_dict(self):
        return {"c0": _pt(self.c0), "r": self.r, "delta": self.delta, "eps1": self.eps1, "eps2": self.eps2, "conservative": self.conservative}


def height_one_halfwidth(K: float) -> tuple[float, float]:
    """``(eta, lam)`` with ``eta = max{x : (x, 1) in B((0,1), K)}``.

    The geodesic joining ``(0, 1)`` and ``(eta, 1)`` is symmetric about
    ``x = eta/2`` and crosses over its top, so ``K`` is twice the length from
    height 1 to the top: ``ln(lam) + (1 - 1/lam^2)/2 = K`` with ``eta = lam - 1/lam``.
    For ``K = 1/2`` this is ``ln(lam) = 1/(2 lam^2)``.
    """
    f = lambda lam: math.log(lam) + 0.5 * (1.0 - 1.0 / lam**2) - K
    lam = brentq(f, 1.0, math.exp(K) + 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return lam - 1.0 / lam, lam


def lambda1_of_K(K: float) -> float:
    """``lam1`` with ``(y1^2 - 1)/(4 lam1^2) + ln(y1)/2 = K`` and ``y1 = GOLDEN * lam1``."""
    g2 = GOLDEN * GOLDEN
    f = lambda lam: (g2 * lam * lam - 1.0) / (4.0 * lam * lam) + 0.5 * math.log(GOLDEN * lam) - K
    lo = 1.0 / GOLDEN
    hi = lo
    while f(hi) < 0.0:
        hi *= 2.0
    return brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)


@dataclass(frozen=True)
class ShiftedCap:
    """``lam0 C2 + (shift, 0)``: the parabola cap ``|x - shift| = (lam0^2 - y^2)/(2 lam0)``."""

    shift: float
    lam0: float
    role: str  # "upper" bounds P from above, "lower" from below

    def inside(self, x, y):
        return abs(x - self.shift) + math.hypot(x - self.shift, y) < self.lam0


@dataclass(frozen=True)
class ULGHRegion:
    K: float
    lambda0: float
    lambda1: float
    y1: float
    nu: float
    eta: float
    xi: float
    caps: tuple
    residuals: dict

    def contains_unit(self, p) -> bool:
        """Membership of ``p`` (in the frame where the centre is ``(0, 1)``) in the open set P."""
        x, y = float(p[0]), float(p[1])
        if not y > 0:
            return False
        for c in self.caps:
            inside = c.inside(x, y)
            if (c.role == "upper") != inside:
                return False
        return stadium.distance_many((0.0, 1.0), np.array([[x, y]]))[0] < self.K

    def contains(self, center, p) -> bool:
        return self.contains_unit(((p[0] - center[0]) / center[1], p[1] / center[1]))

    def to_dict(self):
        return {
            "K": self.K, "lambda0": self.lambda0, "lambda1": self.lambda1, "y1": self.y1, "nu": self.nu,
            "eta": self.eta, "xi": self.xi, "residuals": self.residuals,
            "P": [{"shift": c.shift, "lambda0": c.lam0, "role": c.role} for c in self.caps],
        }


def ulgh_region(K: float) -> ULGHRegion:
    """The quantities that make the Stadium space uniformly locally G-homogeneous.

    ``x(lam) = (1/lam - lam)/2`` is the axis of the parabola through ``(0, 1)``
    with top to the left.  P is cut out of ``U((0,1), K)`` by four translates
    of ``lam0 C2``: below the caps shifted by ``+-(|x(lam0)| - xi)`` and above
    those shifted by ``+-(|x(lam0)| + xi)``.
    """
    if not K > 0:
        raise ParameterError("K must be positive")
    lam0 = lambda0_of_K(K)
    lam1 = lambda1_of_K(K)
    y1 = GOLDEN * lam1
    nu = 0.5 * (lam1 - lam0 + 1.0 / lam0 - 1.0 / lam1)
    eta, lam_eta = height_one_halfwidth(K)
    xi = min(nu, eta)
    x0 = 0.5 * (1.0 / lam0 - lam0)
    caps = (
        ShiftedCap(-(x0 + xi), lam0, "upper"),
        ShiftedCap(x0 + xi, lam0, "upper"),
        ShiftedCap(x0 - xi, lam0, "lower"),
        ShiftedCap(xi - x0, lam0, "lower"),
    )
    residuals = {
        "lambda0": stadium.length_below_top(lam0) - K,
        "lambda1": (y1 * y1 - 1.0) / (4.0 * lam1 * lam1) + 0.5 * math.log(y1) - K,
        "eta": math.log(lam_eta) + 0.5 * (1.0 - 1.0 / lam_eta**2) - K,
    }
    return ULGHRegion(K, lam0, lam1, y1, nu, eta, xi, caps, residuals)


def region_inradius(space: SpaceHandle, region: ULGHRegion, center=(0.0, 1.0), n: int = 90) -> float:
    """Largest sampled ``delta`` with ``U(center, delta)`` inside P, by bisection along rays."""
    center = space.point(center)
    best = math.inf
    for phi in 2.0 * math.pi * np.arange(n) / n:
        lo, hi = 0.0, region.K
        for _ in range(50):
            mid = 0.5 * (lo + hi)
            if region.contains(center, space.shoot(center, phi, mid)):
                lo = mid
            else:
                hi = mid
        best = min(best, lo)
    return best


def params_from_region(space: SpaceHandle, K: float, spread: float = 0.1, c0=(0.0, 1.0), grid: int = 3,
                       safety: float = 0.9) -> ULGHParams:
    """Conservative parameters: ``eps`` in ``K(1 -+ spread)``, ``delta`` a ``safety``
    fraction of the smallest sampled inradius of P over the ``eps`` grid."""
    eps1, eps2 = K * (1.0 - spread), K * (1.0 + spread)
    inr = min(region_inradius(space, ulgh_region(e), c0) for e in np.linspace(eps1, eps2, grid))
    delta = min(safety * inr, eps1)
    return ULGHParams(space.point(c0), 2.0 * eps2, float(delta), float(eps1), float(eps2), conservative=True)


def _viewpoints(space, c, delta, rings=(1 / 3, 2 / 3, 0.999), per_ring=12):
    out = [space.point(c)]
    for f in rings:
        for phi in 2.0 * math.pi * (np.arange(per_ring) + 0.5 * (f > 0.5)) / per_ring:
            out.append(space.shoot(c, phi, f * delta))
    return out


def check_ulgh(space: SpaceHandle, params: ULGHParams, grid: int = 3, n: int = 120, m: int = 32,
               centers: int = 2, seed: int = 0) -> CheckReport:
    """Starlikeness of ``B(c, eps)`` from viewpoints in ``U(c, delta)`` for grid
    samples of centres in ``B(c0, r - eps2)`` and ``eps`` in ``(eps1, eps2)``."""
    c0 = space.point(params.c0)
    cs = [c0]
    if centers > 1:
        reach = params.r - params.eps2
        cs += [space.shoot(c0, 2.0 * math.pi * k / (centers - 1), 0.5 * reach) for k in range(centers - 1)]
    span = params.eps2 - params.eps1
    epss = params.eps1 + span * (np.arange(grid) + 0.5) / grid
    reps = []
    for c in cs:
        for eps in epss:
            sphere = space.sphere_samples(c, float(eps), n)
            for v in _viewpoints(space, c, params.delta):
                rep = check_starlike(space, c, float(eps), v, n, m, seed=seed, sphere=sphere)
                reps.append(rep)
                if rep.verdict is Verdict.FAIL:
                    return merge("ulgh", reps, seed, {"params": params.to_dict()})
    return merge("ulgh", reps, seed, {"params": params.to_dict(), "centers": len(cs), "eps_grid": list(epss)})
