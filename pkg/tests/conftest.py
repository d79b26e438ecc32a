import numpy as np
import pytest

import dttops as d


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def spectral_filter_matrix(kind, n, response):
    """Dense oracle: Phi diag(response) Phi^T."""
    phi = d.basis_matrix(kind, n)
    return (phi * np.asarray(response)) @ phi.T


def dense_design_matrix(design, ops):
    """Assemble a FilterDesign as a dense matrix by multiplying operators."""
    zs = list(ops.ops) if isinstance(ops, d.OperatorSet) else list(ops)
    n = zs[0].n if zs else None
    out = None
    for term, g in design:
        m = np.eye(n)
        for idx in term:
            m = zs[idx - 1].dense() @ m
        out = g * m if out is None else out + g * m
    return out
