"""Orthogonal DTT bases, line-graph Laplacians, and operator spectra.

Basis conventions, with c_j = 1/sqrt(2) for j = 1 (else 1) and
d_j = 1/sqrt(2) for j = N (else 1):

    DCT-II   u_j(k) = sqrt(2/N) c_j cos((j-1)(k-1/2)pi/N)
    DST-IV   v_j(k) = sqrt(2/N)     sin((j-1/2)(k-1/2)pi/N)

and analogously for the other 14 types.  Columns of the returned matrices
are the basis vectors phi_j, ordered by ascending graph frequency; no
re-sorting is applied.
"""

from __future__ import annotations

import numpy as np

from .kinds import DttKind, base_angles

_SQRT2 = np.sqrt(2.0)


def _scale_first(n: int) -> np.ndarray:
    """c_k vector: 1/sqrt(2) at the first index, 1 elsewhere."""
    s = np.ones(n)
    s[0] = 1.0 / _SQRT2
    return s


def _scale_last(n: int) -> np.ndarray:
    """d_k vector: 1/sqrt(2) at the last index, 1 elsewhere."""
    s = np.ones(n)
    s[-1] = 1.0 / _SQRT2
    return s


def basis_matrix(kind: DttKind, n: int) -> np.ndarray:
    """Return the n-by-n orthogonal basis of `kind`, phi_j in column j."""
    if n < 2:
        raise ValueError(f"transform length must be >= 2, got {n}")
    j = np.arange(1, n + 1, dtype=np.float64)[:, None]  # basis index
    k = np.arange(1, n + 1, dtype=np.float64)[None, :]  # sample index
    cj, ck = _scale_first(n)[:, None], _scale_first(n)[None, :]
    dj, dk = _scale_last(n)[:, None], _scale_last(n)[None, :]

    if kind is DttKind.DCT1:
        m = np.sqrt(2 / (n - 1)) * cj * ck * dj * dk * np.cos((j - 1) * (k - 1) * np.pi / (n - 1))
    elif kind is DttKind.DCT2:
        m = np.sqrt(2 / n) * cj * np.cos((j - 1) * (k - 0.5) * np.pi / n)
    elif kind is DttKind.DCT3:
        m = np.sqrt(2 / n) * ck * np.cos((j - 0.5) * (k - 1) * np.pi / n)
    elif kind is DttKind.DCT4:
        m = np.sqrt(2 / n) * np.cos((j - 0.5) * (k - 0.5) * np.pi / n)
    elif kind is DttKind.DCT5:
        m = 2 / np.sqrt(2 * n - 1) * cj * ck * np.cos((j - 1) * (k - 1) * np.pi / (n - 0.5))
    elif kind is DttKind.DCT6:
        m = 2 / np.sqrt(2 * n - 1) * cj * dk * np.cos((j - 1) * (k - 0.5) * np.pi / (n - 0.5))
    elif kind is DttKind.DCT7:
        m = 2 / np.sqrt(2 * n - 1) * dj * ck * np.cos((j - 0.5) * (k - 1) * np.pi / (n - 0.5))
    elif kind is DttKind.DCT8:
        m = 2 / np.sqrt(2 * n + 1) * np.cos((j - 0.5) * (k - 0.5) * np.pi / (n + 0.5))
    elif kind is DttKind.DST1:
        m = np.sqrt(2 / (n + 1)) * np.sin(j * k * np.pi / (n + 1))
    elif kind is DttKind.DST2:
        m = np.sqrt(2 / n) * dj * np.sin(j * (k - 0.5) * np.pi / n)
    elif kind is DttKind.DST3:
        m = np.sqrt(2 / n) * dk * np.sin((j - 0.5) * k * np.pi / n)
    elif kind is DttKind.DST4:
        m = np.sqrt(2 / n) * np.sin((j - 0.5) * (k - 0.5) * np.pi / n)
    elif kind is DttKind.DST5:
        m = 2 / np.sqrt(2 * n + 1) * np.sin(j * k * np.pi / (n + 0.5))
    elif kind is DttKind.DST6:
        m = 2 / np.sqrt(2 * n + 1) * np.sin(j * (k - 0.5) * np.pi / (n + 0.5))
    elif kind is DttKind.DST7:
        m = 2 / np.sqrt(2 * n + 1) * np.sin((j - 0.5) * k * np.pi / (n + 0.5))
    elif kind is DttKind.DST8:
        m = 2 / np.sqrt(2 * n - 1) * dj * dk * np.sin((j - 0.5) * (k - 0.5) * np.pi / (n - 0.5))
    else:  # pragma: no cover
        raise ValueError(kind)
    # rows of m are phi_j; transpose so phi_j sits in column j
    return np.ascontiguousarray(m.T)


def operator_eigenvalues(kind: DttKind, n: int, ell: int) -> np.ndarray:
    """Eigenvalues 2cos(ell*theta_j) of the ell-th sparse operator of `kind`.

    ell ranges over 1..n-1 for the standard family; ell = n is additionally
    accepted as the documented boundary member (for DCT-II it is 2J, with
    alternating eigenvalues of multiplicity 2).
    """
    if not 1 <= ell <= n:
        raise ValueError(f"operator order ell={ell} outside [1, {n}]")
    return 2.0 * np.cos(ell * base_angles(kind, n))


def graph_frequencies(kind: DttKind, n: int) -> np.ndarray:
    """Laplacian eigenvalues 2 - 2cos(theta_j) of the line graph of `kind`.

    For DCT-II these are omega_j = 2 - 2cos((j-1)pi/N); for DST-IV,
    delta_j = 2 - 2cos((j-1/2)pi/N).  Ascending in j, contained in [0, 4].
    """
    return 2.0 - 2.0 * np.cos(base_angles(kind, n))


def line_laplacian_dct2(n: int) -> np.ndarray:
    """Tridiagonal path-graph Laplacian diagonalized by the DCT-II basis."""
    if n < 2:
        raise ValueError(f"transform length must be >= 2, got {n}")
    l = np.diag(2.0 * np.ones(n)) - np.diag(np.ones(n - 1), 1) - np.diag(np.ones(n - 1), -1)
    l[0, 0] = 1.0
    l[-1, -1] = 1.0
    return l


def line_laplacian_dst4(n: int) -> np.ndarray:
    """Path-graph Laplacian with a weight-2 self-loop on the first node.

    Diagonalized by the DST-IV (ADST) basis with eigenvalues delta_j.
    """
    l = line_laplacian_dct2(n)
    l[0, 0] = 3.0
    return l


def forward(kind: DttKind, x: np.ndarray) -> np.ndarray:
    """Transform coefficients Phi^T x."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-D signal, got shape {x.shape}")
    phi = basis_matrix(kind, x.shape[0])
    return phi.T @ x


def inverse(kind: DttKind, xhat: np.ndarray) -> np.ndarray:
    """Signal Phi xhat; inverse of :func:`forward`."""
    xhat = np.asarray(xhat, dtype=np.float64)
    if xhat.ndim != 1:
        raise ValueError(f"expected a 1-D coefficient vector, got shape {xhat.shape}")
    phi = basis_matrix(kind, xhat.shape[0])
    return phi @ xhat
