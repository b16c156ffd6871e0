"""
Automorphisms and classification
================================

Outside the second-order cone every automorphism is blockdiag(B, E) with E a
positive generalized permutation respecting equal alphas and B a multiple of
an orthogonal matrix.
"""

# %%
import numpy as np

from gpcone import ConeParams
from gpcone.automorphisms import (
    classify,
    exp_check,
    is_automorphism,
    lie_basis,
    lie_dim,
    lyapunov_rank_numeric,
    random_lie_element,
    sample_automorphism,
)

p = ConeParams(1, 2, (0.3, 0.7))
print(is_automorphism(p, np.diag([2.0, 4.0, 1.0])), is_automorphism(p, np.diag([4 ** 0.3, 4.0, 1.0])))

# %%
q = ConeParams(2, 4, (0.2, 0.2, 0.3, 0.3))
a = sample_automorphism(q, 3)
print(np.round(a.matrix(), 3))
print("inverse ok:", is_automorphism(q, a.inverse().matrix()))

# %%
# the Lie algebra and its dimension n + m(m-1)/2, cross-checked against the
# dimension of the Lyapunov-like transformations found from sampled
# complementary pairs
for r in [ConeParams(1, 3, (0.2, 0.3, 0.5)), ConeParams(3, 3, (0.2, 0.3, 0.5)), ConeParams(2, 2, (0.5, 0.5))]:
    print(r.m, r.n, "lie_dim", lie_dim(r), "sampled", lyapunov_rank_numeric(r))
print(len(lie_basis(q)), "basis elements;", "exp check:", exp_check(q, random_lie_element(q, 0), [1.0, -1.0]))

# %%
# perfect cones have at least dim K independent Lie elements
for m, n, alpha in [(1, 2, (0.5, 0.5)), (2, 3, (0.2, 0.3, 0.5)), (3, 3, (0.2, 0.3, 0.5))]:
    c = classify(ConeParams(m, n, alpha))
    print(m, n, alpha, {k: v for k, v in c.to_json().items() if k in ("homogeneous", "perfect", "aut_dim")})
