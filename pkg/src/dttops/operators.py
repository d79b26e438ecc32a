"""Sparse commuting operator families for the 16 DTTs and general graphs.

Every DTT admits operators Z(1)..Z(N-1) with at most two nonzeros per row,
values drawn from {-2, -1, 1, sqrt(2), 2}, all diagonalized by the transform
basis.  Four families (DCT-II, DST-IV, DST-VII, DCT-V) have closed-form
index rules; the rest are synthesized spectrally and snapped to the discrete
value set, which doubles as a consistency check of the eigenvalue table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .basis import basis_matrix, operator_eigenvalues
from .kinds import DttKind

SNAP_VALUES = (-2.0, -1.0, 1.0, np.sqrt(2.0), 2.0)

_SYNTH_ZERO_TOL = 1e-8  # below this magnitude a synthesized entry is noise
_SNAP_TOL = 1e-6  # a larger snap distance signals an index-formula bug


class OperatorConstructionError(ValueError):
    """Synthesized operator violated the sparsity or value-set contract."""


class SparseOperator:
    """Symmetric operator in row-compressed form with fixed row capacity.

    `indices` and `values` are (n, capacity) arrays; unused slots hold
    column 0 / value 0.0 so kernels can ignore `counts` when convenient.
    Instances are immutable after construction and safe to share.
    """

    __slots__ = ("n", "capacity", "indices", "values", "counts")

    def __init__(self, n, indices, values, counts):
        self.n = int(n)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.values = np.ascontiguousarray(values, dtype=np.float64)
        self.counts = np.ascontiguousarray(counts, dtype=np.int32)
        self.capacity = self.indices.shape[1]
        self.indices.setflags(write=False)
        self.values.setflags(write=False)
        self.counts.setflags(write=False)

    @classmethod
    def from_rows(cls, n, rows, capacity=None):
        """Build from per-row (column, value) pairs with 0-based columns."""
        if capacity is None:
            capacity = max((len(r) for r in rows), default=0)
            capacity = max(capacity, 1)
        indices = np.zeros((n, capacity), dtype=np.int64)
        values = np.zeros((n, capacity), dtype=np.float64)
        counts = np.zeros(n, dtype=np.int32)
        for p, row in enumerate(rows):
            if len(row) > capacity:
                raise OperatorConstructionError(
                    f"row {p} has {len(row)} nonzeros, capacity is {capacity}"
                )
            for slot, (col, val) in enumerate(sorted(row)):
                indices[p, slot] = col
                values[p, slot] = val
            counts[p] = len(row)
        return cls(n, indices, values, counts)

    @classmethod
    def identity(cls, n):
        cols = np.arange(n, dtype=np.int64)[:, None]
        vals = np.ones((n, 1), dtype=np.float64)
        return cls(n, cols, vals, np.ones(n, dtype=np.int32))

    @classmethod
    def from_dense(cls, mat, tol=0.0, capacity=None):
        mat = np.asarray(mat, dtype=np.float64)
        n = mat.shape[0]
        rows = []
        for p in range(n):
            nz = np.nonzero(np.abs(mat[p]) > tol)[0]
            rows.append([(int(q), float(mat[p, q])) for q in nz])
        return cls.from_rows(n, rows, capacity=capacity)

    @property
    def nnz(self) -> int:
        return int(self.counts.sum())

    def row(self, p):
        """(column, value) pairs of row p."""
        m = self.counts[p]
        return list(zip(self.indices[p, :m].tolist(), self.values[p, :m].tolist()))

    def dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        r = np.repeat(np.arange(self.n), self.counts)
        mask = np.arange(self.capacity)[None, :] < self.counts[:, None]
        out[r, self.indices[mask]] = self.values[mask]
        return out

    def apply(self, x) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"signal has shape {x.shape}, operator size is {self.n}")
        return backend.matvec(self.indices, self.values, self.counts, x)

    def __matmul__(self, x):
        return self.apply(x)

    def __repr__(self):
        return f"SparseOperator(n={self.n}, nnz={self.nnz})"


def _check_ell(n, ell, top):
    if not 1 <= ell <= top:
        raise ValueError(f"operator order ell={ell} outside [1, {top}] for n={n}")


def _rows_from_pairs(n, pair_iter):
    """Accumulate 1-based (p, q, value) triples; coincident columns add."""
    rows = [dict() for _ in range(n)]
    for p, q, v in pair_iter:
        rows[p - 1][q - 1] = rows[p - 1].get(q - 1, 0.0) + v
    return [list(r.items()) for r in rows]


def build_dct2(n: int, ell: int) -> SparseOperator:
    """DCT-II operator: both boundary folds reflect with positive sign.

    ell = n is accepted as a documented extra and yields 2J (order reversal
    scaled by 2), whose eigenvalues alternate +-2 with multiplicity 2.
    """
    _check_ell(n, ell, n)

    def pairs():
        for p in range(1, n + 1):
            yield p, (p - ell if p - ell >= 1 else -p + ell + 1), 1.0
            yield p, (p + ell if p + ell <= n else -p - ell + 2 * n + 1), 1.0

    return SparseOperator.from_rows(n, _rows_from_pairs(n, pairs()), capacity=2)


def build_dst4(n: int, ell: int) -> SparseOperator:
    """DST-IV operator: left fold reflects with sign -1."""
    _check_ell(n, ell, n - 1)

    def pairs():
        for p in range(1, n + 1):
            if p - ell >= 1:
                yield p, p - ell, 1.0
            else:
                yield p, -p + ell + 1, -1.0
            yield p, (p + ell if p + ell <= n else -p - ell + 2 * n + 1), 1.0

    return SparseOperator.from_rows(n, _rows_from_pairs(n, pairs()), capacity=2)


def build_dst7(n: int, ell: int) -> SparseOperator:
    """DST-VII operator: row p = ell keeps a single nonzero (phi_j(0) = 0)."""
    _check_ell(n, ell, n - 1)

    def pairs():
        for p in range(1, n + 1):
            if p > ell:
                yield p, p - ell, 1.0
            elif p < ell:
                yield p, ell - p, -1.0
            yield p, (p + ell if p + ell <= n else -p - ell + 2 * n + 1), 1.0

    return SparseOperator.from_rows(n, _rows_from_pairs(n, pairs()), capacity=2)


def build_dct5(n: int, ell: int) -> SparseOperator:
    """DCT-V operator: sqrt(2) entries where a fold meets the first sample.

    Row 1 carries the single entry sqrt(2) at column 1+ell (its two cosine
    terms coincide there); row ell+1 carries the symmetric sqrt(2) at
    column 1.
    """
    _check_ell(n, ell, n - 1)
    sq2 = np.sqrt(2.0)

    def pairs():
        for p in range(1, n + 1):
            if p == 1:
                yield p, 1 + ell, sq2
                continue
            if p - ell == 1:
                yield p, 1, sq2
            elif p - ell > 1:
                yield p, p - ell, 1.0
            else:
                yield p, -p + ell + 2, 1.0
            yield p, (p + ell if p + ell <= n else -p - ell + 2 * n + 1), 1.0

    return SparseOperator.from_rows(n, _rows_from_pairs(n, pairs()), capacity=2)


_CLOSED_FORM = {
    DttKind.DCT2: build_dct2,
    DttKind.DST4: build_dst4,
    DttKind.DST7: build_dst7,
    DttKind.DCT5: build_dct5,
}


def synthesize_operator(kind: DttKind, n: int, ell: int) -> SparseOperator:
    """Spectral synthesis Phi diag(lambda) Phi^T, zeroed and value-snapped."""
    phi = basis_matrix(kind, n)
    lam = operator_eigenvalues(kind, n, ell)
    z = (phi * lam) @ phi.T
    z[np.abs(z) < _SYNTH_ZERO_TOL] = 0.0
    snap = np.asarray(SNAP_VALUES)
    rows = []
    for p in range(n):
        entries = []
        for q in np.nonzero(z[p])[0]:
            v = z[p, q]
            s = snap[np.argmin(np.abs(snap - v))]
            if abs(s - v) > _SNAP_TOL:
                raise OperatorConstructionError(
                    f"{kind.value} n={n} ell={ell}: entry ({p},{q})={v!r} "
                    f"does not snap to the operator value set"
                )
            entries.append((int(q), float(s)))
        if len(entries) > 2:
            raise OperatorConstructionError(
                f"{kind.value} n={n} ell={ell}: row {p} has {len(entries)} nonzeros"
            )
        rows.append(entries)
    return SparseOperator.from_rows(n, rows, capacity=2)


def build_operator(kind: DttKind, n: int, ell: int, force_synthesis: bool = False) -> SparseOperator:
    """Sparse operator Z(ell) of `kind`, size n, for ell in [1, n-1]."""
    _check_ell(n, ell, n - 1)
    if not force_synthesis and kind in _CLOSED_FORM:
        return _CLOSED_FORM[kind](n, ell)
    return synthesize_operator(kind, n, ell)


@dataclass(frozen=True)
class OperatorSet:
    """The operators Z(1)..Z(N-1) of one DTT with their eigenvalue vectors."""

    kind: DttKind
    n: int
    ops: tuple
    spectra: tuple

    def __len__(self):
        return len(self.ops)


def operator_set(kind: DttKind, n: int) -> OperatorSet:
    ops = tuple(build_operator(kind, n, ell) for ell in range(1, n))
    spectra = tuple(operator_eigenvalues(kind, n, ell) for ell in range(1, n))
    return OperatorSet(kind=kind, n=n, ops=ops, spectra=spectra)


def kron_2d(zr: SparseOperator, zc: SparseOperator) -> SparseOperator:
    """Kronecker operator Zr (x) Zc acting on column-first vectorized blocks.

    For an N1-by-N2 block, Zc (size N1) acts along pixel columns and Zr
    (size N2) across them; eigenpairs are the products of the factors'.
    """
    n1, n2 = zc.n, zr.n
    rows = []
    for a in range(n2):
        row_r = zr.row(a)
        for b in range(n1):
            row_c = zc.row(b)
            rows.append([(cr * n1 + cc, vr * vc) for cr, vr in row_r for cc, vc in row_c])
    return SparseOperator.from_rows(n1 * n2, rows, capacity=zr.capacity * zc.capacity)


def to_laplacian(z: SparseOperator) -> SparseOperator:
    """The graph Laplacian 2I - Z associated with a DTT operator."""
    rows = []
    for p in range(z.n):
        entries = {p: 2.0}
        for q, v in z.row(p):
            entries[q] = entries.get(q, 0.0) - v
        rows.append([(q, v) for q, v in entries.items() if v != 0.0])
    return SparseOperator.from_rows(z.n, rows, capacity=z.capacity + 1)


def complement_laplacian(l: np.ndarray, w_max: float) -> np.ndarray:
    """Laplacian of the complement graph: N*w_max*I - w_max*11^T - L.

    Shares the eigenvectors of L; the constant vector keeps eigenvalue 0 and
    every other eigenvalue lambda_j maps to N*w_max - lambda_j.
    """
    l = np.asarray(l, dtype=np.float64)
    if w_max <= 0:
        raise ValueError("w_max must be positive")
    n = l.shape[0]
    row_sums = l.sum(axis=1)
    if np.any(np.abs(row_sums) > 1e-9):
        raise ValueError("input has self-loops (nonzero row sums); complement is undefined")
    return n * w_max * np.eye(n) - w_max * np.ones((n, n)) - l


def symmetry_operator(phi) -> SparseOperator:
    """Laplacian of the node-pairing graph of an involution.

    Connects i and phi(i) with weight 1 for every non-fixed pair; commutes
    with the Laplacian of any graph symmetric under phi.  Its spectrum
    contains only 0 and 2.
    """
    phi = np.asarray(phi, dtype=np.int64)
    n = phi.shape[0]
    if sorted(phi.tolist()) != list(range(n)) or not np.array_equal(phi[phi], np.arange(n)):
        raise ValueError("pairing function must be an involution permutation")
    rows = []
    for i in range(n):
        j = int(phi[i])
        rows.append([] if j == i else [(i, 1.0), (j, -1.0)])
    return SparseOperator.from_rows(n, rows, capacity=2)


@dataclass(frozen=True)
class ConeCheck:
    """Outcome of the Laplacian-cone membership test."""

    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def check_laplacian_cone(phi: np.ndarray, lam: np.ndarray, tol: float = 1e-9) -> ConeCheck:
    """Test whether Phi diag(lam) Phi^T is a valid graph Laplacian.

    Membership in the polyhedral cone requires non-positive off-diagonal
    entries (edge weights >= 0), non-negative row sums (self-loop weights
    >= 0), and lam >= 0.  Violated constraints are reported with their
    residuals.
    """
    phi = np.asarray(phi, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    n = phi.shape[0]
    if np.abs(phi.T @ phi - np.eye(n)).max() > 1e-6:
        raise ValueError("basis is not orthogonal")
    l = (phi * lam) @ phi.T
    violations = []
    iu, ju = np.triu_indices(n, k=1)
    for i, j in zip(iu, ju):
        if l[i, j] > tol:
            violations.append(("edge", int(i), int(j), float(l[i, j])))
    row_sums = l.sum(axis=1)
    for i in range(n):
        if row_sums[i] < -tol:
            violations.append(("selfloop", int(i), float(row_sums[i])))
    for k in range(n):
        if lam[k] < -tol:
            violations.append(("frequency", int(k), float(lam[k])))
    return ConeCheck(ok=not violations, violations=tuple(violations))


def _format_value(v: float) -> str:
    if v == int(v):
        return str(int(v))
    return f"{v:.12g}"


def gallery_text(kind: DttKind, n: int, ells=None) -> str:
    """Plain-text dump of operators: header 'kind N ell', then N row lines.

    Each row line lists 1-based 'col:value' pairs separated by spaces.
    """
    if ells is None:
        ells = range(1, n)
    lines = []
    for ell in ells:
        z = build_dct2(n, ell) if (kind is DttKind.DCT2 and ell == n) else build_operator(kind, n, ell)
        lines.append(f"{kind.value} {n} {ell}")
        for p in range(n):
            lines.append(" ".join(f"{q + 1}:{_format_value(v)}" for q, v in z.row(p)))
    return "\n".join(lines) + "\n"


def eigen_residual(z: SparseOperator, phi: np.ndarray, lam: np.ndarray) -> float:
    """max_j ||Z phi_j - lambda_j phi_j||_inf against a dense eigenbasis."""
    return float(np.abs(z.dense() @ phi - phi * lam).max())


def family_report(kind: DttKind, n: int) -> dict:
    """Invariant sweep over one operator family, for the verify command."""
    phi = basis_matrix(kind, n)
    worst_eig = 0.0
    worst_sym = 0.0
    max_row_nnz = 0
    max_total_nnz = 0
    for ell in range(1, n):
        z = build_operator(kind, n, ell)
        lam = operator_eigenvalues(kind, n, ell)
        worst_eig = max(worst_eig, eigen_residual(z, phi, lam))
        d = z.dense()
        worst_sym = max(worst_sym, float(np.abs(d - d.T).max()))
        max_row_nnz = max(max_row_nnz, int(z.counts.max()))
        max_total_nnz = max(max_total_nnz, z.nnz)
    return {
        "kind": kind.value,
        "n": n,
        "max_eigen_residual": worst_eig,
        "max_symmetry_residual": worst_sym,
        "max_row_nnz": max_row_nnz,
        "max_total_nnz": max_total_nnz,
        "ok": worst_eig < 1e-9 and worst_sym == 0.0 and max_row_nnz <= 2 and max_total_nnz <= 2 * n,
    }
