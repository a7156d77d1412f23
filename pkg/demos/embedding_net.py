"""Distance-to-landmark coordinates on a small ball.

Landmark pairs (x_i, z_i) with d(x_i, z_i) = eps2' form an eps0-net; the
map y -> (d(y, z_1), ..., d(y, z_m)) is 1-Lipschitz and, on the sampled
pairs, injective.  Run: python3 demos/embedding_net.py
"""

import time

from busemann.axioms import params_from_region
from busemann.embedding import build_net, derive_embedding_params, embed_point, injectivity_report
from busemann.space import stadium_space

space = stadium_space()
cfg = derive_embedding_params(params_from_region(space, 0.5))
print("eps1' = %.6f  eps2' = %.6f  r1 = %.6f  eps0 = %.6f" % (cfg.eps1p, cfg.eps2p, cfg.r1, cfg.eps0))
print("constraints hold:", all(cfg.inequalities().values()))

t0 = time.perf_counter()
net = build_net(space, cfg)
print(f"\n{net.m} landmarks after {net.rounds} refinement rounds ({time.perf_counter() - t0:.1f} s)")
print(f"coverage on a fresh probe set: {net.coverage:.4f}")

f = embed_point(net, cfg.params.c0)
print(f"image of the centre has {len(f)} coordinates, range [{f.min():.4f}, {f.max():.4f}]")
rep = injectivity_report(space, net, pairs=300)
print(f"injectivity over {rep.samples} close pairs: {rep.verdict.value}, "
      f"smallest coordinate gap / distance = {rep.details['margin_over_distance']:.3f}")
