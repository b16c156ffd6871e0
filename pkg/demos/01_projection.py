"""
Membership, duality and projection
==================================

Points of the cone are (xbar, xtilde) with ||xbar|| <= prod xtilde_i^alpha_i.
"""

# %%
import numpy as np

from gpcone import ConeParams, dual_membership, membership, moreau_check, project_batch, project_onto_cone

p = ConeParams(m=1, n=2, alpha=(0.3, 0.7))
for x in [(0.0, 0.0, 1.0), (0.5, 1.0, 1.0), (2.0, 1.0, 1.0)]:
    print(x, membership(p, x).status.value)

# %%
# the dual cone is a diagonal rescaling: ||zbar|| <= prod (ztilde_i/alpha_i)^alpha_i
for z in [(0.5, 0.5, 0.5), (1.0, 0.5, 0.5)]:
    print(z, "dual:", dual_membership(p, z).status.value)

# %%
# projection, checked against the Moreau decomposition x = p - r with
# r in the dual cone and <r, p> = 0
x = np.array([1.0, -0.5, 2.0])
px = project_onto_cone(p, x)
print("projection", px, "distance", np.linalg.norm(x - px))
print(moreau_check(p, x[None, :], px[None, :])[0])

# %%
# batches of points, from tiny to huge
rng = np.random.default_rng(0)
X = rng.standard_normal((100000, 3)) * 10.0 ** rng.uniform(-30, 30, (100000, 1))
P = project_batch(p, X)
checks = moreau_check(p, X, P)
print("Moreau failures:", sum(not (c.polar_ok and c.primal_ok and c.orthogonality <= 1e-8) for c in checks))
