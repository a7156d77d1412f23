import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from busemann import norms
from busemann.errors import DegenerateInputError, DomainError, ParameterError, PreconditionError
from busemann.halfplane import export, ops, stadium
from busemann.halfplane.geometry import GenericLevelSet, HPoint, StadiumParabola, Vertical, gamma_map

S = norms.stadium()
E = norms.euclidean()
E1 = math.e
L_TOP = 0.25 * (0.75 + math.log(4.0))  # (0,1) to the top of lam = 2


def test_hpoint_domain():
    with pytest.raises(DomainError):
        ops.distance(S, (0.0, 0.0), (0.0, 1.0))
    with pytest.raises(DomainError):
        ops.distance(S, (math.inf, 1.0), (0.0, 1.0))


class TestGeodesicThrough:
    def test_vertical(self):
        g = ops.geodesic_through(S, (0, 1), (0, 5))
        assert isinstance(g, Vertical) and g.a == 0.0

    @pytest.mark.parametrize("q", [(-0.75, 2.0), (3 / 16, 0.5)])
    def test_parabola_lam2(self, q):
        g = ops.geodesic_through(S, (0, 1), q)
        assert isinstance(g, StadiumParabola)
        assert g.lam == pytest.approx(2.0, abs=1e-12) and g.a == pytest.approx(-0.75, abs=1e-12)

    def test_euclidean_semicircle(self):
        g = ops.geodesic_through(E, (0, 1), (1, 1))
        assert isinstance(g, GenericLevelSet)
        assert g.a == pytest.approx(0.5, abs=1e-12) and g.k == pytest.approx(math.sqrt(5) / 2, abs=1e-12)
        g_ls = ops.geodesic_through(E, (0, 1), (1, 1), "levelset")
        pts = g_ls.polyline
        assert np.allclose(np.hypot(pts[:, 0] - 0.5, pts[:, 1]), math.sqrt(5) / 2, atol=1e-8)

    def test_coincident(self):
        with pytest.raises(DegenerateInputError):
            ops.geodesic_through(S, (0, 1), (0, 1))

    def test_unique_solution_on_random_pairs(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            p = (rng.uniform(-3, 3), rng.uniform(0.1, 4))
            q = (rng.uniform(-3, 3), rng.uniform(0.1, 4))
            cands = stadium.parabola_candidates(p, q)
            strict = [c for c in cands if c[4]]
            assert len(strict) == 1
            g = stadium.parabola_through(p, q)
            assert stadium.residual(g, p) < 1e-10 and stadium.residual(g, q) < 1e-10


class TestArcLength:
    def test_vertical(self):
        g = Vertical(0.0)
        assert ops.arc_length(S, g, (0, 1), (0, E1**2)) == pytest.approx(1.0, abs=1e-15)

    def test_to_top(self):
        g = StadiumParabola(2.0, -0.75)
        val = ops.arc_length(S, g, (0, 1), (-0.75, 2))
        assert val == pytest.approx(L_TOP, abs=1e-15)
        assert val == pytest.approx(0.5 * math.log(2) + 3 / 16, abs=1e-15)

    def test_below_unit_height(self):
        g = StadiumParabola(2.0, -0.75)
        # the rounded reference value 0.393451 is 2.4e-6 above the formula
        assert ops.arc_length(S, g, (0, 1), (3 / 16, 0.5)) == pytest.approx(0.393451, abs=5e-6)
        expected = 0.25 * ((1 - 0.25) / 4 - math.log(0.25))
        assert ops.arc_length(S, g, (0, 1), (3 / 16, 0.5)) == pytest.approx(expected, abs=1e-15)

    def test_zero(self):
        g = StadiumParabola(2.0, -0.75)
        assert ops.arc_length(S, g, (0, 1), (0, 1)) == 0.0

    def test_point_off_curve(self):
        with pytest.raises(PreconditionError):
            ops.arc_length(S, StadiumParabola(2.0, -0.75), (0, 1), (0.3, 1))

    def test_over_the_top_matches_levelset(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            lam, a = rng.uniform(0.5, 4), rng.uniform(-2, 2)
            g = StadiumParabola(lam, a)
            y1, y2 = rng.uniform(0.1, 0.99, 2) * lam
            p, q = (g.x_at(y1, -1), y1), (g.x_at(y2, 1), y2)
            closed = ops.arc_length(S, g, p, q)
            g_ls = ops.geodesic_through(S, p, q, "levelset")
            assert closed == pytest.approx(ops.arc_length(S, g_ls, p, q, "levelset"), abs=1e-9)


class TestDistance:
    def test_examples(self):
        assert ops.distance(S, (0, 1), (0, E1**2)) == pytest.approx(1.0, abs=1e-15)
        assert ops.distance(S, (0, 1), (0, 1)) == 0.0
        assert ops.distance(E, (0, 1), (1, 1)) == pytest.approx(0.96242365, abs=1e-8)

    def test_engines_agree(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            p = (rng.uniform(-1, 1), rng.uniform(0.3, 2))
            q = (rng.uniform(-1, 1), rng.uniform(0.3, 2))
            for norm in (S, E):
                assert ops.distance(norm, p, q, "closed") == pytest.approx(ops.distance(norm, p, q, "levelset"), abs=1e-9)

    def test_vectorised_matches_scalar(self):
        rng = np.random.default_rng(6)
        qs = np.column_stack([rng.uniform(-2, 2, 300), rng.uniform(0.05, 5, 300)])
        p = (0.2, 1.3)
        many = ops.distances(S, p, qs)
        single = np.array([ops.distance(S, p, q) for q in qs])
        assert np.max(np.abs(many - single)) < 1e-12

    def test_metric_axioms(self):
        rng = np.random.default_rng(7)
        pts = np.column_stack([rng.uniform(-2, 2, 3000), rng.uniform(0.1, 3, 3000)]).reshape(1000, 3, 2)
        for p, q, r in pts:
            dpq, dqp = ops.distance(S, p, q), ops.distance(S, q, p)
            assert dpq == dqp
            assert dpq <= ops.distance(S, p, r) + ops.distance(S, r, q) + 1e-9

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.1, 10), st.floats(-5, 5), st.floats(-2, 2), st.floats(0.1, 3), st.floats(-2, 2), st.floats(0.1, 3))
    def test_gamma_invariance(self, alpha, beta, x1, y1, x2, y2):
        p, q = (x1, y1), (x2, y2)
        d = ops.distance(S, p, q)
        dg = ops.distance(S, gamma_map(p, alpha, beta), gamma_map(q, alpha, beta))
        assert dg == pytest.approx(d, abs=1e-9, rel=1e-9)


class TestPointAtArc:
    def test_vertical_up(self):
        p = ops.point_at_arc(S, Vertical(0.0), (0, 1), 0.5)
        assert p.x == 0 and p.y == pytest.approx(E1, rel=1e-15)

    def test_zero(self):
        g = StadiumParabola(2.0, -0.75)
        assert ops.point_at_arc(S, g, (0, 1), 0.0) == HPoint(0.0, 1.0)

    def test_past_the_top(self):
        g = StadiumParabola(2.0, -0.75)
        sign = ops.direction(S, g, (0, 1), (-0.75, 2))
        p = ops.point_at_arc(S, g, (0, 1), sign * 2 * L_TOP)
        assert p.x == pytest.approx(-1.5, abs=1e-12) and p.y == pytest.approx(1.0, abs=1e-12)

    def test_arc_coordinate_round_trip(self):
        g = StadiumParabola(1.7, 0.3)
        base = (g.x_at(0.4, 1), 0.4)
        for s in np.linspace(-3, 3, 25):
            p = ops.point_at_arc(S, g, base, s)
            assert ops.arc_coordinate(S, g, p) - ops.arc_coordinate(S, g, base) == pytest.approx(s, abs=1e-10)


class TestExtendBeyond:
    def test_vertical(self):
        z = ops.extend_beyond(S, (0, 1 / E1), (0, 1), 0.5)
        assert z.x == 0 and z.y == pytest.approx(E1, rel=1e-14)

    def test_over_the_top(self):
        z = ops.extend_beyond(S, (0, 1), (-0.75, 2), L_TOP)
        assert z.x == pytest.approx(-1.5, abs=1e-12) and z.y == pytest.approx(1.0, abs=1e-12)

    def test_euclidean_stays_on_level_set(self):
        z = ops.extend_beyond(E, (0, 1), (1, 1), 0.7, "levelset")
        g = ops.geodesic_through(E, (0, 1), (1, 1), "levelset")
        assert ops.residual(E, g, z) < 1e-8

    def test_rejects_non_positive(self):
        with pytest.raises(ParameterError):
            ops.extend_beyond(S, (0, 1), (0, 2), 0.0)


class TestLevelSetTraces:
    def test_stadium_matches_parabola(self):
        for lam in (0.5, 1.0, 2.0, 6.0):
            poly = ops.generic_geodesic_trace(S, 0.0, lam, 257).polyline
            x_closed = np.sign(poly[:, 0]) * (lam**2 - poly[:, 1] ** 2) / (2 * lam)
            assert np.max(np.abs(poly[:, 0] - x_closed)) < 1e-8 * lam

    def test_euclidean_unit_semicircle(self):
        poly = ops.generic_geodesic_trace(E, 0.0, 1.0, 64).polyline
        assert np.allclose(np.hypot(poly[:, 0], poly[:, 1]), 1.0, atol=1e-12)
        assert np.all(poly[:, 1] > 0)

    def test_scaling_doubles_radii(self):
        a = 0.4
        p1 = ops.generic_geodesic_trace(S, a, 1.0, 64).polyline
        p2 = ops.generic_geodesic_trace(S, a, 2.0, 64).polyline
        r1, r2 = np.hypot(p1[:, 0] - a, p1[:, 1]), np.hypot(p2[:, 0] - a, p2[:, 1])
        assert np.allclose(r2, 2 * r1, rtol=1e-12)

    def test_parameter_checks(self):
        with pytest.raises(ParameterError):
            ops.generic_geodesic_trace(S, 0.0, -1.0, 64)
        with pytest.raises(ParameterError):
            ops.generic_geodesic_trace(S, 0.0, 1.0, 8)

    def test_parabola_polyline_on_curve(self):
        g = StadiumParabola(2.0, -0.75)
        for p in ops.parabola_polyline(g, 101):
            assert stadium.residual(g, p) < 1e-12


class TestExport:
    def test_csv_round_trip(self):
        pts = ops.parabola_polyline(StadiumParabola(2.0, -0.75), 11)
        text = export.polyline_csv(pts, "demo", ["a comment"])
        assert text.startswith("# arc: demo\n# a comment\nx,y\n")
        back = export.read_polyline_csv(text)
        assert np.array_equal(back["demo"], pts)

    def test_geodesic_report(self):
        rep = export.geodesic_report(StadiumParabola(2.0, -0.75), 0.5, [0.0])
        assert rep == {"variant": "StadiumParabola", "lambda": 2.0, "a": -0.75, "K": 0.5, "residuals": [0.0]}
        rep = export.geodesic_report(Vertical(0.0))
        assert rep["lambda"] is None and rep["K"] is None
