"""
Hoelder exponents and their tightness
=====================================

On {z}^perp the distance to the exposed face is bounded by a power of the
distance to the cone: exponent 1/2 for ray faces, beta = sum of alpha over
the support of ztilde for orthant faces. The witness curves below show that
neither exponent can be improved.
"""

# %%
import numpy as np

from gpcone import ConeParams
from gpcone.error_bounds import (
    analytic_gamma,
    gamma_estimate,
    holder_bound_batch,
    witness_curve_orthant,
    witness_curve_ray,
)

# %%
# orthant face: z = (0, 1, 0) exposes {xbar = 0, xtilde_1 = 0}, beta = 0.3
p = ConeParams(1, 2, (0.3, 0.7))
curve = witness_curve_orthant(p, (0.0, 1.0, 0.0), [1.0])
print(curve.to_csv())

# %%
# the ratio dist(q, K)^0.3 / dist(q, F) stays near 1 as eps -> 0; any larger
# exponent would send it to zero
print("ratio with exponent 0.4:", curve.dist_to_cone ** 0.4 / curve.dist_to_face)

# %%
# ray face of the second-order cone: dist(q, K) ~ eps^2 while dist(q, F) ~ eps
soc = ConeParams(1, 2, (0.5, 0.5))
curve = witness_curve_ray(soc, (1.0, 0.5, 0.5))
print(curve.to_csv())
print("gap / eps^2:", curve.gap / curve.epsilons ** 2)

# %%
# the constant: gamma has a closed-form lower bound for orthant faces and a
# sampled value for ray faces
print("orthant gamma >=", analytic_gamma(p, (0.0, 1.0, 0.0), 1.0).value)
print("ray gamma ~", gamma_estimate(soc, (1.0, 0.5, 0.5), 1.0, 20000, 0).sampled_value)

# %%
# the bound on 10^4 random points of {z}^perp in the unit ball
rng = np.random.default_rng(1)
Q = rng.standard_normal((10000, 3))
Q[:, 1] = 0.0
Q *= (rng.uniform(size=10000) / np.linalg.norm(Q, axis=1))[:, None]
lhs, rhs, ok = holder_bound_batch(p, (0.0, 1.0, 0.0), Q, 1.0, analytic_gamma(p, (0.0, 1.0, 0.0), 1.0))
print("violations:", int((~ok).sum()), " tightest lhs/rhs:", float(np.max(lhs / np.maximum(rhs, 1e-300))))
