"""
Certificates for (L + a) cap K
==============================

One facial reduction step always suffices for this cone. ``certify`` finds
either an interior point (Lipschitz bound) or an exposing vector z and the
exponent of the exposed face.
"""

# %%
import numpy as np
from scipy.linalg import null_space

from gpcone import ConeParams
from gpcone.facial_reduction import AffineSet, certify, error_bound_batch


def show(c):
    print(f"d_pps={c.d_pps} face={c.face} exponent={c.exponent:.3f} constant={c.constant:.3f}"
          f" provenance={c.provenance.value} conservative={c.conservative}")


p = ConeParams(1, 2, (0.3, 0.7))

# %%
# the whole space meets the interior
show(certify(p, AffineSet(np.eye(3), np.zeros(3))))

# %%
# L = {(0, 1, 0)}^perp only touches the orthant face xtilde_1 = 0
z0 = np.array([0.0, 1.0, 0.0])
aff = AffineSet(null_space(z0[None, :]).T, np.zeros(3))
cert = certify(p, aff)
show(cert)

# %%
# the bound against the exact distance to the feasible set {(0, 0, t) : t >= 0}
rng = np.random.default_rng(0)
X = rng.standard_normal((1000, 3))
X /= np.maximum(1.0, np.linalg.norm(X, axis=1))[:, None]
bound, dA, dK = error_bound_batch(p, cert, aff, X)
exact = np.linalg.norm(X - np.c_[0 * X[:, :2], np.maximum(X[:, 2], 0)], axis=1)
print("violations:", int(np.sum(exact > bound)), " median bound/exact:", float(np.median(bound / exact)))

# %%
# a ray face of the second-order cone, found by search
soc = ConeParams(1, 2, (0.5, 0.5))
z1 = np.array([1.0, 0.5, 0.5])
cert = certify(soc, AffineSet(null_space(z1[None, :]).T, np.zeros(3)))
show(cert)
print("exposing z:", cert.exposing_z)
