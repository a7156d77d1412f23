import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from busemann import norms
from busemann.errors import DomainError, ParameterError

S = norms.stadium()
E = norms.euclidean()
finite = st.floats(-1e3, 1e3, allow_nan=False)


@pytest.mark.parametrize("v,expected", [((1, 0), 1.0), ((0, 0), 0.0), ((3, 4), 3.125), ((1, 1), 1.0), ((0, 1), 0.5)])
def test_stadium_norm_values(v, expected):
    assert S(v) == pytest.approx(expected, abs=1e-15)


def test_three_four_lies_on_upper_cap():
    u = np.array([3.0, 4.0]) / S((3, 4))
    assert u[0] ** 2 + (u[1] - 1.0) ** 2 == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("v,expected", [((1, 0), 2.0), ((0, 1), 1.0), ((1, 1), 1.0 + math.sqrt(2.0))])
def test_stadium_dual_values(v, expected):
    assert norms.dual_norm_eval(S.dual, v) == pytest.approx(expected, abs=1e-14)


def test_tau_functions_are_exact():
    for phi in np.linspace(-math.pi, math.pi, 73):
        assert S.dual.tau1(phi) == pytest.approx(1.0 / (1.0 + abs(math.sin(phi))), abs=1e-15)
        assert S.dual.tau2(phi) == pytest.approx(1.0 / (1.0 + abs(math.cos(phi))), abs=1e-15)


def test_dual_unit_curve_samples():
    pts = norms.dual_unit_curve(S.dual, 8)
    assert np.allclose(pts[0], (0.5, 0.0)) and np.allclose(pts[2], (0.0, 1.0))
    assert math.hypot(*pts[1]) == pytest.approx(1.0 / (1.0 + math.sqrt(2) / 2), abs=1e-14)
    circ = norms.dual_unit_curve(E.dual, 32)
    assert np.allclose(np.hypot(circ[:, 0], circ[:, 1]), 1.0)
    with pytest.raises(ParameterError):
        norms.dual_unit_curve(S.dual, 4)


def test_duality_consistency_random_directions():
    rng = np.random.default_rng(0)
    for phi in rng.uniform(-math.pi, math.pi, 1000):
        v = (math.cos(phi), math.sin(phi))
        assert norms.dual_norm_eval(S.dual, v) * S.dual.tau2(phi) == pytest.approx(1.0, abs=1e-9)


def test_junction_continuity():
    for psi in (math.pi / 4, 3 * math.pi / 4, -math.pi / 4, -3 * math.pi / 4):
        # (+-1, +-1) is a corner of the boundary, so both branches give 1/sqrt2
        assert norms.stadium_profile(psi) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-15)
        assert S.profile(psi) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(finite, finite, st.floats(-50, 50, allow_nan=False))
def test_homogeneity(x, y, k):
    assert S((k * x, k * y)) == pytest.approx(abs(k) * S((x, y)), rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(finite, finite, finite, finite)
def test_triangle_inequality(a, b, c, d):
    assert S((a + c, b + d)) <= S((a, b)) + S((c, d)) + 1e-9
    F = norms.dual_norm_eval
    assert F(S.dual, (a + c, b + d)) <= F(S.dual, (a, b)) + F(S.dual, (c, d)) + 1e-9


def test_positivity_and_dual_definition():
    rng = np.random.default_rng(1)
    boundary = norms.sample_stadium_indicatrix(2001)
    for v in rng.normal(size=(200, 2)):
        assert S(v) > 0
        brute = np.max(v[0] * boundary[:, 1] - v[1] * boundary[:, 0])
        assert norms.dual_norm_eval(S.dual, v) == pytest.approx(brute, rel=1e-5)


def test_non_finite_rejected():
    with pytest.raises(DomainError):
        S((math.nan, 1.0))


def test_sampled_indicatrix_converges():
    rng = np.random.default_rng(2)
    vs = rng.normal(size=(300, 2))
    errs = []
    for n in (64, 128, 256, 512):
        model = norms.from_indicatrix(norms.sample_stadium_indicatrix(n))
        errs.append(max(abs(model(v) / S(v) - 1.0) for v in vs))
    assert all(b < a for a, b in zip(errs, errs[1:]))
    # roughly quadratic: doubling n cuts the error by about four
    assert errs[-2] / errs[-1] > 3.0


def test_sampled_homogeneity_and_dual():
    model = norms.from_indicatrix(norms.sample_stadium_indicatrix(128))
    rng = np.random.default_rng(3)
    for _ in range(1000):
        v, k = rng.normal(size=2), rng.uniform(-10, 10)
        assert abs(model(k * v) - abs(k) * model(v)) < 1e-9 * max(1.0, abs(k) * model(v))
    assert norms.convexity_defect(model) <= 1e-12


def test_asymmetric_indicatrix_rejected():
    pts = norms.sample_stadium_indicatrix(64) + np.array([0.01, 0.0])
    with pytest.raises(ParameterError):
        norms.from_indicatrix(pts)


def test_indicatrix_file_round_trip(tmp_path):
    pts = norms.sample_stadium_indicatrix(96)
    path = tmp_path / "stadium.csv"
    norms.save_indicatrix(path, pts, "stadium boundary")
    model = norms.load_indicatrix(path)
    assert np.allclose(model.indicatrix, pts)
    assert norms.horizontal_tangent_unique(model)
