"""Spheres of the stadium plane and why its small balls are not convex.

Run: python3 demos/spheres_and_balls.py
"""

import math

from busemann import norms
from busemann.axioms import check_ball_convexity, reverify
from busemann.halfplane import spheres
from busemann.space import hyperbolic_space, stadium_space

S = norms.stadium()
space = stadium_space()

print("The stadium norm F(3, 4) =", S((3, 4)))
print("Vertical segments are geodesics: d((0,1), (0,e^2)) =", space.distance((0, 1), (0, math.e**2)))

for K in (0.5, 1.0):
    tr = spheres.sphere_trace(S, (0.0, 1.0), K, 240)
    r = tr.rightmost()
    print(f"\nSphere of radius {K} about (0, 1):")
    print(f"  poles at heights {sorted(p[1] for p in tr.poles)}")
    print(f"  widest point ({r.x:.6f}, {r.y:.6f}), where lambda0 = {tr.lambda0:.10f}")
    print(f"  worst closure residual {tr.max_residual:.2e}")

print("\nBall convexity, searched from the seeded chord near the widest point:")
for name, sp in (("stadium", space), ("hyperbolic", hyperbolic_space())):
    rep = check_ball_convexity(sp, (0, 1), 0.5)
    print(f"  {name:10s} {rep.verdict.value}")
    if rep.witness:
        w = rep.witness
        print(f"    chord ends at distances {w['d_p']:.6f} and {w['d_q']:.6f} from the centre,")
        print(f"    yet the geodesic between them reaches distance {w['exit_distance']:.6f}")
        print(f"    independent re-check at finer resolution: {reverify(sp, w)}")
