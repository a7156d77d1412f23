import json

import numpy as np
import pytest

from busemann import embedding as emb
from busemann.axioms import ULGHParams, Verdict
from busemann.errors import DomainError, ParameterError
from busemann.space import euclidean_plane

EUCLID = euclidean_plane()
PARAMS = ULGHParams((0.0, 0.0), 1.0, 0.1, 0.1, 0.4)


@pytest.fixture(scope="module")
def net():
    cfg = emb.derive_embedding_params(PARAMS)
    return emb.build_net(EUCLID, cfg, pool=1024, seed=0)


class TestParameters:
    def test_example(self):
        cfg = emb.derive_embedding_params(PARAMS)
        assert (cfg.eps1p, cfg.eps2p) == pytest.approx((0.2, 0.3), abs=1e-15)
        assert cfg.r1 == pytest.approx(0.05, abs=1e-15) and cfg.eps0 == pytest.approx(0.05, abs=1e-15)
        assert all(cfg.inequalities().values())

    def test_r1_is_at_most_half_delta(self):
        for delta, eps1, eps2 in [(0.05, 0.1, 0.4), (0.2, 0.3, 0.35), (0.1, 0.1, 0.9)]:
            cfg = emb.derive_embedding_params(ULGHParams((0.0, 0.0), 1.0, delta, eps1, eps2))
            assert cfg.r1 <= delta / 2 and all(cfg.inequalities().values())

    def test_rejections(self):
        p = ULGHParams((0.0, 0.0), 1.0, 0.1, 0.2, 0.3)
        with pytest.raises(ParameterError):
            emb.derive_embedding_params(p, eps0_fraction=1.0)
        # validated ULGH params never have eps2 <= eps1, so bypass the check
        bad = object.__new__(ULGHParams)
        for k, v in dict(c0=(0.0, 0.0), r=1.0, delta=0.1, eps1=0.3, eps2=0.3, conservative=False).items():
            object.__setattr__(bad, k, v)
        with pytest.raises(ParameterError):
            emb.derive_embedding_params(bad)

    def test_pool_floor(self):
        with pytest.raises(ParameterError):
            emb.build_net(EUCLID, emb.derive_embedding_params(PARAMS), pool=999)


class TestNet:
    def test_coverage_and_size(self, net):
        assert net.coverage >= 0.99 and net.m > 10
        assert emb.coverage(EUCLID, net, 2048, seed=99) >= 0.98

    def test_landmarks_are_admissible(self, net):
        cfg = net.config
        for x, z in net.landmarks:
            assert EUCLID.distance(cfg.params.c0, x) <= cfg.r1 * (1 + 1e-12)
            assert abs(EUCLID.distance(x, z) - cfg.eps2p) < 1e-8

    def test_separation(self, net):
        assert emb.net_separation(EUCLID, net) >= net.config.eps0

    def test_smaller_eps0_needs_more_landmarks(self, net):
        finer = emb.build_net(EUCLID, emb.derive_embedding_params(PARAMS, 0.3), pool=1024, seed=0)
        assert finer.m > net.m

    def test_duplicates_collapse(self):
        cfg = emb.derive_embedding_params(PARAMS)
        X, Z = emb.sample_pairs(EUCLID, cfg, 8, 16)
        once = emb.greedy_net(EUCLID, X, Z, cfg.eps0)
        twice = emb.greedy_net(EUCLID, np.vstack([X, X]), np.vstack([Z, Z]), cfg.eps0)
        assert once == twice

    def test_deterministic(self, net):
        again = emb.build_net(EUCLID, net.config, pool=1024, seed=0)
        assert again.to_json() == net.to_json()
        d = json.loads(net.to_json())
        assert d["m"] == len(d["landmarks"]) == net.m and d["eps2p"] == net.config.eps2p


class TestEmbedding:
    def test_landmark_coordinate(self, net):
        x, _ = net.landmarks[3]
        assert emb.embed_point(net, x)[3] == pytest.approx(net.config.eps2p, abs=1e-8)

    def test_centre(self, net):
        f = emb.embed_point(net, net.config.params.c0)
        assert f.shape == (net.m,)
        assert np.allclose(f, np.hypot(*net.z_array().T))

    def test_one_lipschitz(self, net):
        rng = np.random.default_rng(5)
        ys = EUCLID.random_in_ball(rng, (0, 0), net.config.r1, 200)
        for a, b in zip(ys[::2], ys[1::2]):
            gap = np.max(np.abs(emb.embed_point(net, a) - emb.embed_point(net, b)))
            assert gap <= EUCLID.distance(a, b) + 1e-12

    def test_outside_domain(self, net):
        with pytest.raises(DomainError):
            emb.embed_point(net, (1.0, 0.0))

    def test_needs_space(self, net):
        bare = emb.EmbeddingResult(net.config, net.landmarks)
        with pytest.raises(ParameterError):
            emb.embed_point(bare, (0.0, 0.0))
        assert emb.embed_point(bare, (0.0, 0.0), EUCLID).shape == (net.m,)

    def test_injectivity(self, net):
        rep = emb.injectivity_report(EUCLID, net, pairs=300, separation=1e-3)
        assert rep.verdict is Verdict.PASS and rep.samples == 300
        assert 0 < rep.details["margin_over_distance"] <= 1.0 + 1e-12
        assert net.injectivity_margin == rep.details["margin"]

    def test_single_landmark_cannot_separate(self, net):
        # one coordinate cannot tell apart points on a circle about z_1
        lone = emb.EmbeddingResult(net.config, net.landmarks[:1], space=EUCLID)
        rep = emb.injectivity_report(EUCLID, lone, pairs=2000, separation=1e-3)
        assert rep.details["margin_over_distance"] < 0.5
