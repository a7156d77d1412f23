"""The explicit neighbourhood that makes small stadium balls look alike.

A ball of radius K about (0, 1) contains a region bounded by two translated
sphere arcs above and two below; its width xi controls the local geodesic
homogeneity parameters.  Run: python3 demos/ulgh_region.py
"""

from busemann.axioms import check_ulgh, params_from_region, region_inradius, ulgh_region
from busemann.space import stadium_space

space = stadium_space()
for K in (0.25, 0.5, 1.0):
    reg = ulgh_region(K)
    print(f"K = {K}: lambda0 = {reg.lambda0:.10f}, lambda1 = {reg.lambda1:.10f}")
    print(f"        nu = {reg.nu:.6f}, eta = {reg.eta:.6f}, xi = min = {reg.xi:.6f}")
    print(f"        y1/lambda1 = {reg.y1 / reg.lambda1:.15f} (the golden ratio conjugate)")
    print(f"        worst equation residual {max(abs(v) for v in reg.residuals.values()):.1e}")

reg = ulgh_region(0.5)
print("\nInscribed metric radius of the K = 0.5 region:", round(region_inradius(space, reg), 6))
params = params_from_region(space, 0.5)
print("Derived parameters:", params)
rep = check_ulgh(space, params, grid=2, n=90, m=24)
print(f"Sampled check over {rep.samples} sphere points: {rep.verdict.value}, worst residual {rep.worst_residual:.2e}")
