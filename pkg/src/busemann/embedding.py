"""Distance-vector embedding of a small ball, from uniform local G-homogeneity.

Given parameters ``delta <= eps1 < eps2 < r`` on ``B(c0, r)``, pick

    eps1 < eps1' < eps2' < eps2,   (eps2' - eps1')/2 + eps2' < eps2,
    r1 = min(eps2' - eps1', delta)/2,   0 < eps0 < min(delta, eps2 - eps2', eps1' - eps1),

take a finite eps0-net ``(x_i, z_i)`` of
``D = {(x, z) : x in B(c0, r1), d(x, z) = eps2'}`` under
``d1 = max(d(x, x'), d(z, z'))`` and map ``y -> (d(y, z_1), ..., d(y, z_m))``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .axioms import CheckReport, ULGHParams, Verdict
from .errors import DomainError, ParameterError
from .halfplane.geometry import HPoint
from .space import SpaceHandle


@dataclass(frozen=True)
class EmbeddingConfig:
    params: ULGHParams
    eps1p: float
    eps2p: float
    r1: float
    eps0: float

    def inequalities(self) -> dict[str, bool]:
        p = self.params
        return {
            "eps1 < eps1' < eps2' < eps2": p.eps1 < self.eps1p < self.eps2p < p.eps2,
            "(eps2' - eps1')/2 + eps2' < eps2": 0.5 * (self.eps2p - self.eps1p) + self.eps2p < p.eps2,
            "r1 = min(eps2' - eps1', delta)/2": math.isclose(self.r1, 0.5 * min(self.eps2p - self.eps1p, p.delta), rel_tol=1e-15),
            "0 < eps0": self.eps0 > 0,
            "eps0 < min(delta, eps2 - eps2', eps1' - eps1)": self.eps0 < min(p.delta, p.eps2 - self.eps2p, self.eps1p - p.eps1),
        }


def derive_embedding_params(params: ULGHParams, eps0_fraction: float = 0.5) -> EmbeddingConfig:
    """``eps1'``, ``eps2'`` at one and two thirds of ``(eps1, eps2)``; ``eps0`` a
    fraction of its upper bound (half by default)."""
    if not (0.0 < eps0_fraction < 1.0):
        raise ParameterError("eps0_fraction must lie in (0, 1)")
    e1, e2 = params.eps1, params.eps2
    if not e1 < e2:
        raise ParameterError("need eps1 < eps2")
    a, b = 1.0 / 3.0, 2.0 / 3.0
    for _ in range(60):
        e1p, e2p = e1 + a * (e2 - e1), e1 + b * (e2 - e1)
        if 0.5 * (e2p - e1p) + e2p < e2:
            break
        # pull eps2' back toward eps1'
        b = a + 0.5 * (b - a)
    else:
        raise ParameterError("could not satisfy (eps2' - eps1')/2 + eps2' < eps2")
    r1 = 0.5 * min(e2p - e1p, params.delta)
    eps0 = eps0_fraction * min(params.delta, e2 - e2p, e1p - e1)
    cfg = EmbeddingConfig(params, e1p, e2p, r1, eps0)
    bad = [k for k, ok in cfg.inequalities().items() if not ok]
    if bad:
        raise ParameterError(f"infeasible embedding parameters: {bad}")
    return cfg


@dataclass
class EmbeddingResult:
    config: EmbeddingConfig
    landmarks: list  # [(x_i, z_i)]
    coverage: float = math.nan
    pool: int = 0
    injectivity_margin: float = math.nan
    rounds: int = 0
    space: SpaceHandle | None = field(default=None, repr=False)

    @property
    def m(self) -> int:
        return len(self.landmarks)

    def z_array(self) -> np.ndarray:
        return np.array([z for _, z in self.landmarks])

    def to_dict(self) -> dict:
        return {
            "eps0": self.config.eps0,
            "eps2p": self.config.eps2p,
            "landmarks": [{"x": [float(x[0]), float(x[1])], "z": [float(z[0]), float(z[1])]} for x, z in self.landmarks],
            "m": self.m,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _disk(space, c, r, n, seed):
    """Low-discrepancy points of ``B(c, r)``: a scrambled Sobol sequence mapped
    to (direction, radius r*sqrt(u))."""
    u = qmc.Sobol(2, scramble=True, seed=seed).random(n)
    out = []
    for a, b in u:
        s = r * math.sqrt(b)
        out.append(space.point(c) if s == 0.0 else space.shoot(c, 2.0 * math.pi * a, s))
    return np.array(out)


def sample_pairs(space: SpaceHandle, cfg: EmbeddingConfig, n_x: int, n_dir: int, seed: int = 0, jitter: bool = False):
    """Pairs ``(x, z)`` of ``D``: ``x`` from the disc sampler, ``z`` by shooting
    to distance ``eps2'`` in ``n_dir`` directions."""
    rng = np.random.default_rng(seed)
    xs = _disk(space, cfg.params.c0, cfg.r1, n_x, seed)
    X, Z = [], []
    for x in xs:
        off = rng.uniform(0.0, 2.0 * math.pi) if jitter else 0.0
        for j in range(n_dir):
            X.append(x)
            Z.append(space.shoot(x, off + 2.0 * math.pi * j / n_dir, cfg.eps2p))
    return np.array(X), np.array(Z)


def _d1_to_set(space, x, z, LX, LZ):
    if not len(LX):
        return np.empty(0)
    return np.maximum(space.distances(x, LX), space.distances(z, LZ))


def greedy_net(space, X, Z, eps0):
    """Indices of a greedy ``eps0``-net in candidate order (d1 >= eps0 between kept pairs)."""
    keep = []
    LX = np.empty((0, 2))
    LZ = np.empty((0, 2))
    for i in range(len(X)):
        d = _d1_to_set(space, X[i], Z[i], LX, LZ)
        if d.size == 0 or d.min() >= eps0:
            keep.append(i)
            LX = np.vstack([LX, X[i]])
            LZ = np.vstack([LZ, Z[i]])
    return keep


def build_net(space: SpaceHandle, config: EmbeddingConfig, pool: int = 1024, seed: int = 0,
              n_dir: int = 64, probe_factor: int = 4, target_coverage: float = 0.99,
              max_rounds: int = 12) -> EmbeddingResult:
    """Greedy ``eps0``-net of a sampled ``D``.

    Each refinement round draws an independent probe set ``probe_factor`` times
    the pool; probes farther than ``eps0`` from every landmark are admissible
    net points and are inserted greedily.  The reported coverage comes from one
    more fresh probe set, never from a set that was used for insertion.
    """
    if pool < 1000:
        raise ParameterError("pool must have at least 1000 candidate pairs")
    n_x = max(1, math.ceil(pool / n_dir))
    X, Z = sample_pairs(space, config, n_x, n_dir, seed)
    keep = greedy_net(space, X, Z, config.eps0)
    LX, LZ = X[keep], Z[keep]
    n_probe = probe_factor * len(X)
    rounds = 0
    cov, _ = _probe(space, config, LX, LZ, n_probe, seed + 1)
    while cov < target_coverage and rounds < max_rounds:
        rounds += 1
        _, (MX, MZ) = _probe(space, config, LX, LZ, n_probe, seed + 1 + rounds)
        add = greedy_net(space, np.vstack([LX, MX]), np.vstack([LZ, MZ]), config.eps0)
        LX, LZ = np.vstack([LX, MX])[add], np.vstack([LZ, MZ])[add]
        cov, _ = _probe(space, config, LX, LZ, n_probe, seed + 1 + max_rounds + rounds)
    landmarks = [(HPoint(*x), HPoint(*z)) for x, z in zip(LX, LZ)]
    res = EmbeddingResult(config, landmarks, pool=len(X), space=space)
    res.coverage = cov
    res.rounds = rounds
    return res


def _probe(space, config, LX, LZ, n, seed):
    n_dir = 64
    PX, PZ = sample_pairs(space, config, max(1, math.ceil(n / n_dir)), n_dir, seed, jitter=True)
    miss = np.array([_d1_to_set(space, x, z, LX, LZ).min() >= config.eps0 for x, z in zip(PX, PZ)])
    return 1.0 - miss.mean(), (PX[miss], PZ[miss])


def coverage(space, result: EmbeddingResult, n: int, seed: int) -> float:
    """Fraction of random pairs of ``D`` within ``eps0`` (under d1) of some landmark."""
    LX = np.array([x for x, _ in result.landmarks])
    return _probe(space, result.config, LX, result.z_array(), n, seed)[0]


def net_separation(space, result: EmbeddingResult) -> float:
    """Smallest d1 between two landmarks (re-checked from scratch)."""
    L = result.landmarks
    best = math.inf
    LX = np.array([x for x, _ in L])
    LZ = result.z_array()
    for i in range(len(L) - 1):
        d = _d1_to_set(space, L[i][0], L[i][1], LX[i + 1:], LZ[i + 1:])
        best = min(best, float(d.min()))
    return best


def embed_point(result: EmbeddingResult, y, space: SpaceHandle | None = None) -> np.ndarray:
    """``f(y) = (d(y, z_1), ..., d(y, z_m))`` for ``y`` in ``B(c0, r1)``."""
    space = space or result.space
    if space is None:
        raise ParameterError("a space handle is required")
    y = space.point(y)
    c0, r1 = result.config.params.c0, result.config.r1
    if space.distance(c0, y) > r1 * (1.0 + 1e-12):
        raise DomainError(f"point {tuple(y)} lies outside B(c0, r1)")
    return space.distances(y, result.z_array())


def injectivity_report(space: SpaceHandle, result: EmbeddingResult, pairs: int = 500, separation: float = 1e-3,
                       seed: int = 0) -> CheckReport:
    """Random pairs of ``B(c0, r1)`` at distance at least ``separation`` must have
    distinct images; the smallest sup-norm gap is the reported margin."""
    if not separation > 0:
        raise ParameterError("separation must be positive")
    rng = np.random.default_rng(seed)
    c0, r1 = result.config.params.c0, result.config.r1
    Z = result.z_array()
    margin, ratio, done, worst_pair = math.inf, math.inf, 0, None
    while done < pairs:
        y = space.random_in_ball(rng, c0, r1, 1)[0]
        # the partner sits at a random distance in [separation, 2 separation]
        s = separation * (1.0 + rng.uniform())
        y2 = space.shoot(y, rng.uniform(0.0, 2.0 * math.pi), s)
        if space.distance(c0, y2) > r1:
            continue
        d = space.distance(y, y2)
        if d < separation:
            continue
        gap = float(np.max(np.abs(space.distances(y, Z) - space.distances(y2, Z))))
        done += 1
        if gap < margin:
            margin, worst_pair = gap, ([float(y[0]), float(y[1])], [float(y2[0]), float(y2[1])])
        ratio = min(ratio, gap / d)
    result.injectivity_margin = margin
    ok = margin > 0.0
    wit = None if ok else {"kind": "injectivity", "y": worst_pair[0], "y2": worst_pair[1], "gap": margin}
    return CheckReport("injectivity", Verdict.PASS if ok else Verdict.FAIL, done, margin, wit, seed,
                       details={"margin": margin, "margin_over_distance": ratio, "m": result.m, "pair": worst_pair})
