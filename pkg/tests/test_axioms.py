import json
import math

import numpy as np
import pytest

from busemann.axioms import (CheckReport, ULGHParams, Verdict, check_ball_convexity, check_extendibility, check_menger,
                             check_rho_lipschitz, check_starlike, check_ulgh, check_unique_extension,
                             height_one_halfwidth, merge, params_from_region, region_inradius, reverify, ulgh_region)
from busemann.errors import ParameterError
from busemann.space import EuclideanPlane, euclidean_plane, hyperbolic_space, stadium_space

STADIUM = stadium_space()
EUCLID = euclidean_plane()
GOLDEN = (math.sqrt(5) - 1) / 2


class TestMenger:
    def test_vertical_midpoint(self):
        rep = check_menger(STADIUM, (0, 1), (0, math.e**2))
        assert rep.passed and rep.worst_residual == pytest.approx(0.0, abs=1e-15)
        assert rep.details["z"][0] == 0.0 and rep.details["z"][1] == pytest.approx(math.e, rel=1e-15)

    def test_euclidean_midpoint(self):
        rep = check_menger(EUCLID, (0, 0), (2, 0))
        assert rep.passed and rep.details["z"] == [1.0, 0.0]

    def test_distinct_points_required(self):
        with pytest.raises(ParameterError):
            check_menger(STADIUM, (0, 1), (0, 1))


class TestExtendibility:
    def test_stadium(self):
        rep = check_extendibility(STADIUM, (0, 1), 0.25, 200, seed=0)
        assert rep.passed and rep.samples + rep.details["skipped"] == 200

    def test_euclidean_exact(self):
        rep = check_extendibility(EUCLID, (0, 0), 1.0, 100, seed=0)
        assert rep.passed and rep.worst_residual < 1e-15

    def test_coincident_pairs_are_skipped(self):
        class Collapsed(EuclideanPlane):
            def random_in_ball(self, rng, center, r, n):
                return np.zeros((n, 2))
        rep = check_extendibility(Collapsed(), (0, 0), 1.0, 10)
        assert rep.details["skipped"] == 10 and rep.verdict is Verdict.INCONCLUSIVE


class TestUniqueExtension:
    def test_vertical_routes_agree(self):
        rep = check_unique_extension(STADIUM, (0, 1 / math.e), (0, 1), 0.5)
        assert rep.passed
        for key in ("z1", "z2"):
            assert rep.details[key][1] == pytest.approx(math.e, rel=1e-12)

    def test_over_the_top_routes_agree(self):
        rep = check_unique_extension(STADIUM, (0, 1), (-0.75, 2), 0.25 * (0.75 + math.log(4)))
        assert rep.passed
        for key in ("z1", "z2"):
            assert rep.details[key] == pytest.approx([-1.5, 1.0], abs=1e-9)
        assert rep.details["min_rival_defect"] > 1e-8

    def test_euclidean_exact(self):
        rep = check_unique_extension(EUCLID, (0, 0), (1, 1), 2.0)
        assert rep.passed and rep.worst_residual < 1e-14


class TestStarlike:
    def test_from_center(self):
        assert check_starlike(STADIUM, (0, 1), 0.5, (0, 1), n=360).passed

    def test_euclidean_interior_viewpoint(self):
        assert check_starlike(EUCLID, (0, 0), 1.0, (0.6, -0.3), n=90).passed

    def test_viewpoint_outside_region_fails_with_witness(self):
        v = STADIUM.shoot((0, 1), math.pi / 2, 0.45)
        rep = check_starlike(STADIUM, (0, 1), 0.5, v, n=360)
        assert rep.verdict is Verdict.FAIL
        assert reverify(STADIUM, rep.witness)
        assert json.loads(rep.to_json())["witness"]["kind"] == "starlike"

    def test_viewpoint_must_be_interior(self):
        with pytest.raises(ParameterError):
            check_starlike(STADIUM, (0, 1), 0.5, (0, 5))


class TestConvexity:
    def test_stadium_is_not_convex(self):
        rep = check_ball_convexity(STADIUM, (0, 1), 0.5)
        assert rep.verdict is Verdict.FAIL and rep.witness["seeded"]
        assert rep.witness["d_p"] < 0.5 and rep.witness["d_q"] < 0.5
        assert rep.witness["exit_distance"] > 0.5
        assert reverify(STADIUM, rep.witness)

    @pytest.mark.parametrize("K", [0.2, 1.0])
    def test_euclidean(self, K):
        assert check_ball_convexity(EUCLID, (0, 0), K, trials=100).passed

    def test_hyperbolic(self):
        assert check_ball_convexity(hyperbolic_space(), (0, 1), 0.5, trials=200).passed

    def test_stadium_at_other_centres(self):
        # the failure is scale and translation invariant
        assert check_ball_convexity(STADIUM, (3, 0.2), 0.5).verdict is Verdict.FAIL


class TestULGHRegion:
    def test_k_half(self):
        reg = ulgh_region(0.5)
        assert reg.lambda0 == pytest.approx(1.8950254554, abs=1e-9)
        assert reg.lambda1 == pytest.approx(3.7641341360, abs=1e-9)
        assert reg.nu == pytest.approx(1.0655703654, abs=1e-9)
        assert reg.eta == pytest.approx(0.5747748470, abs=1e-9)
        # quoted rounded values
        assert reg.eta == pytest.approx(0.575, abs=5e-4) and reg.xi == pytest.approx(0.575, abs=5e-4)
        assert reg.nu == pytest.approx(1.064, rel=2.5e-3)

    def test_exact_identities(self):
        for K in (0.1, 0.5, 1.0, 2.0):
            reg = ulgh_region(K)
            assert reg.y1 / reg.lambda1 == GOLDEN
            assert reg.xi == min(reg.nu, reg.eta)
            assert max(abs(r) for r in reg.residuals.values()) < 1e-12

    def test_eta_chord_equation(self):
        eta, lam = height_one_halfwidth(0.5)
        assert math.log(lam) == pytest.approx(1 / (2 * lam**2), abs=1e-14)
        assert STADIUM.distance((0, 1), (eta, 1)) == pytest.approx(0.5, abs=1e-12)

    def test_small_k_collapses(self):
        assert ulgh_region(1e-6).xi < 1e-2
        assert ulgh_region(1e-6).xi < ulgh_region(1e-3).xi < ulgh_region(0.1).xi

    def test_region_contains_centre_and_lies_in_ball(self):
        reg = ulgh_region(0.5)
        assert reg.contains_unit((0.0, 1.0))
        rng = np.random.default_rng(0)
        for p in STADIUM.random_in_ball(rng, (0, 1), 0.7, 300):
            if reg.contains_unit(p):
                assert STADIUM.distance((0, 1), p) < 0.5
        assert reg.contains((2.0, 3.0), (2.0, 3.0))

    def test_inradius_is_positive_and_bounded(self):
        reg = ulgh_region(0.5)
        r = region_inradius(STADIUM, reg)
        assert 0.2 < r < 0.5

    def test_json(self):
        d = ulgh_region(0.5).to_dict()
        assert len(d["P"]) == 4 and {c["role"] for c in d["P"]} == {"upper", "lower"}


class TestULGHCheck:
    def test_params_validation(self):
        with pytest.raises(ParameterError):
            ULGHParams((0.0, 1.0), 1.0, 0.5, 0.4, 0.6)

    def test_derived_params_pass(self):
        params = params_from_region(STADIUM, 0.5)
        assert params.conservative and params.delta <= params.eps1
        rep = check_ulgh(STADIUM, params, grid=2, n=90, m=24)
        assert rep.passed

    def test_inflated_delta_fails(self):
        params = ULGHParams((0.0, 1.0), 1.1, 0.44, 0.45, 0.55)
        rep = check_ulgh(STADIUM, params, grid=2, n=120)
        assert rep.verdict is Verdict.FAIL
        assert reverify(STADIUM, rep.witness)

    def test_euclidean(self):
        assert check_ulgh(EUCLID, ULGHParams((0.0, 0.0), 1.0, 0.2, 0.3, 0.5), grid=2, n=60).passed


class TestReports:
    def test_fail_needs_witness(self):
        with pytest.raises(ValueError):
            CheckReport("x", Verdict.FAIL, 1, 1.0)

    def test_merge_is_order_independent(self):
        a = CheckReport("a", Verdict.FAIL, 1, 2.0, {"kind": "menger", "id": 1})
        b = CheckReport("b", Verdict.FAIL, 1, 2.0, {"kind": "menger", "id": 2})
        c = CheckReport("c", Verdict.PASS, 3, 0.0)
        m1, m2 = merge("m", [a, b, c]), merge("m", [c, b, a])
        assert m1.to_json() == m2.to_json() and m1.samples == 5

    def test_json_is_deterministic(self):
        r1 = check_extendibility(STADIUM, (0, 1), 0.25, 50, seed=7).to_json()
        r2 = check_extendibility(STADIUM, (0, 1), 0.25, 50, seed=7).to_json()
        assert r1 == r2 and json.loads(r1)["seed"] == 7

    def test_rho_lipschitz(self):
        assert check_rho_lipschitz(STADIUM, n=50).passed

        class FiniteRho(EuclideanPlane):
            def rho(self, w):
                return 1.0 + 0.5 * math.hypot(*w)

        class Steep(EuclideanPlane):
            def rho(self, w):
                return 1.0 + 3.0 * math.hypot(*w)

        assert check_rho_lipschitz(FiniteRho(), n=100, center=(0, 0)).passed
        rep = check_rho_lipschitz(Steep(), n=100, center=(0, 0))
        assert rep.verdict is Verdict.FAIL and rep.witness["kind"] == "rho"
