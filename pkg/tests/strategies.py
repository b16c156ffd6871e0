"""Hypothesis strategies shared by the property tests."""
import numpy as np
from hypothesis import strategies as st

from gpcone.cone import ConeParams


@st.composite
def cone_params(draw, max_m=4, max_n=5):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(2, max_n))
    w = draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    a = np.array(w) / sum(w)
    return ConeParams(m, n, a)


@st.composite
def params_and_vector(draw, max_m=4, max_n=5, scale=st.floats(1e-3, 1e3)):
    p = draw(cone_params(max_m, max_n))
    v = draw(st.lists(st.floats(-1.0, 1.0), min_size=p.dim, max_size=p.dim))
    x = np.array(v) * draw(scale)
    return p, x


seeds = st.integers(0, 2 ** 31 - 1)


def cone_matrix(max_m=5, max_n=5):
    """Deterministic (m, n, alpha) grid: per (m, n) a generic alpha, equal
    alphas and one with a repeated pair, plus the second-order cone at n = 2."""
    out = []
    rng = np.random.default_rng(2024)
    for m in range(1, max_m + 1):
        for n in range(2, max_n + 1):
            w = rng.uniform(0.2, 1.0, n)
            out.append(ConeParams(m, n, w / w.sum()))
            out.append(ConeParams(m, n, np.full(n, 1.0 / n)))
            if n >= 3:
                w = np.concatenate([[0.2, 0.2], rng.uniform(0.2, 1.0, n - 2)])
                out.append(ConeParams(m, n, w / w.sum()))
    return out
