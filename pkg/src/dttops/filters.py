"""Vertex-domain filter application and frequency responses.

A degree-K polynomial filter of one operator is applied with K sparse
matvecs via the iterated form t <- Z t + g_{K-i} x.  Multivariate designs
apply each term's operators in canonical order, reusing shared prefixes.
The optional OpCounter instruments multiply-add counts for the work-bound
checks; the uncounted paths go through the selected kernel backend.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .design import FilterDesign
from .operators import OperatorSet, SparseOperator


@dataclass
class OpCounter:
    """Multiply-add tallies: sparse matvec work and axpy/accumulation work."""

    matvec_madds: int = 0
    axpy_madds: int = 0

    @property
    def total(self) -> int:
        return self.matvec_madds + self.axpy_madds


def _matvec_counted(z: SparseOperator, x: np.ndarray, counter: OpCounter) -> np.ndarray:
    y = np.zeros(z.n)
    for p in range(z.n):
        acc = 0.0
        for q, v in z.row(p):
            acc += v * x[q]
            counter.matvec_madds += 1
        y[p] = acc
    return y


def _check_signal(z: SparseOperator, x) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.shape != (z.n,):
        raise ValueError(f"signal has shape {x.shape}, operator size is {z.n}")
    return x


def apply_pgf(z: SparseOperator, coeffs, x, counter: OpCounter | None = None) -> np.ndarray:
    """Apply sum_k g_k Z^k with exactly K = len(coeffs)-1 sparse matvecs."""
    x = _check_signal(z, x)
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.ndim != 1 or coeffs.size == 0:
        raise ValueError("coefficients must be a non-empty 1-D sequence")
    if counter is None:
        return backend.pgf_apply(z.indices, z.values, z.counts, coeffs, x)
    k = coeffs.size - 1
    t = coeffs[k] * x
    counter.axpy_madds += z.n
    for i in range(1, k + 1):
        t = _matvec_counted(z, t, counter) + coeffs[k - i] * x
        counter.axpy_madds += z.n
    return t


def apply_pgf_chebyshev(z: SparseOperator, cheb_coeffs, x, lambda_max: float) -> np.ndarray:
    """Apply sum_k c_k T_k(M) with M = (2/lambda_max) Z - I.

    The affine map sends the spectrum [0, lambda_max] of Z onto [-1, 1];
    the three-term recurrence uses one sparse matvec per degree.
    """
    if lambda_max <= 0:
        raise ValueError("lambda_max must be positive")
    x = _check_signal(z, x)
    cheb_coeffs = np.asarray(cheb_coeffs, dtype=np.float64)
    if cheb_coeffs.ndim != 1 or cheb_coeffs.size == 0:
        raise ValueError("coefficients must be a non-empty 1-D sequence")
    return backend.cheb_apply(
        z.indices, z.values, z.counts, cheb_coeffs, 2.0 / lambda_max, x
    )


def monomial_to_chebyshev(coeffs, lambda_max: float) -> np.ndarray:
    """Rewrite sum g_k t^k as a Chebyshev series in s = 2t/lambda_max - 1."""
    p = np.polynomial.Polynomial(np.asarray(coeffs, dtype=np.float64))
    shifted = p(np.polynomial.Polynomial([lambda_max / 2.0, lambda_max / 2.0]))
    return np.polynomial.chebyshev.poly2cheb(shifted.coef)


def chebyshev_to_monomial(cheb_coeffs, lambda_max: float) -> np.ndarray:
    """Inverse of :func:`monomial_to_chebyshev`."""
    q = np.polynomial.Polynomial(
        np.polynomial.chebyshev.cheb2poly(np.asarray(cheb_coeffs, dtype=np.float64))
    )
    return q(np.polynomial.Polynomial([-1.0, 2.0 / lambda_max])).coef


def _operator_list(ops):
    if isinstance(ops, OperatorSet):
        return list(ops.ops)
    return list(ops)


def apply_mpgf(design: FilterDesign, ops, x, counter: OpCounter | None = None) -> np.ndarray:
    """Apply a multivariate design; term operators run in canonical order.

    Shared prefixes between nested multisets are computed once.  Operator
    indices in the design are 1-based into `ops`.
    """
    zs = _operator_list(ops)
    n = zs[0].n if zs else np.asarray(x).shape[0]
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.shape != (n,):
        raise ValueError(f"signal has shape {x.shape}, operator size is {n}")
    for term in design.terms:
        for idx in term:
            if not 1 <= idx <= len(zs):
                raise ValueError(f"term {term} references operator {idx}, have {len(zs)}")

    cache = {(): x}
    y = np.zeros(n)
    for term, g in sorted(design, key=lambda tg: tg[0]):
        vec = cache.get(term)
        if vec is None:
            prefix = term
            while prefix not in cache:
                prefix = prefix[:-1]
            vec = cache[prefix]
            for idx in term[len(prefix):]:
                z = zs[idx - 1]
                if counter is None:
                    vec = backend.matvec(z.indices, z.values, z.counts, vec)
                else:
                    vec = _matvec_counted(z, vec, counter)
                prefix = prefix + (idx,)
                cache[prefix] = vec
        y += g * vec
        if counter is not None:
            counter.axpy_madds += n
    return y


def frequency_response(design: FilterDesign, spectra) -> np.ndarray:
    """Evaluate the design's polynomial at every graph frequency index."""
    spectra = [np.asarray(s, dtype=np.float64) for s in spectra]
    n = spectra[0].shape[0] if spectra else 0
    resp = np.zeros(n)
    for term, g in design:
        col = np.ones(n)
        for idx in term:
            if not 1 <= idx <= len(spectra):
                raise ValueError(f"term {term} references spectrum {idx}, have {len(spectra)}")
            col = col * spectra[idx - 1]
        resp += g * col
    return resp
