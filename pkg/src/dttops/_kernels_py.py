"""NumPy fallback kernels for row-compressed operator application.

Operators are stored as (indices, values, counts): indices and values are
(n, capacity) arrays with unused slots padded by column 0 / value 0.0, so a
padded slot contributes nothing to a matvec.  The compiled extension in
_kernels.pyx implements the same four entry points.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def matvec(indices, values, counts, x):
    # padded value slots are exactly 0.0, so counts are not consulted here
    return np.einsum("rc,rc->r", values, x[indices])


def pgf_apply(indices, values, counts, coeffs, x):
    """Evaluate sum_k g_k Z^k x iteratively: t <- Z t + g_{K-i} x."""
    k = len(coeffs) - 1
    t = coeffs[k] * x
    for i in range(1, k + 1):
        t = matvec(indices, values, counts, t) + coeffs[k - i] * x
    return t


def cheb_apply(indices, values, counts, coeffs, scale, x):
    """Chebyshev recurrence on the mapped operator M = scale*Z - I."""
    y = coeffs[0] * x
    if len(coeffs) == 1:
        return y
    t_prev = x
    t_cur = scale * matvec(indices, values, counts, x) - x
    y = y + coeffs[1] * t_cur
    for c in coeffs[2:]:
        t_next = 2.0 * (scale * matvec(indices, values, counts, t_cur) - t_cur) - t_prev
        y = y + c * t_next
        t_prev, t_cur = t_cur, t_next
    return y


def quad_form(indices, values, counts, x):
    return float(x @ matvec(indices, values, counts, x))
