"""Transform-cost evaluation in the pixel domain and pruning decisions.

The cost of coding a 1-D block x under transform T is a weighted sum of
squared transform coefficients, sum_i q_i (phi_i . x)^2 with increasing
weights q.  Choosing q as the ADST graph frequencies makes the ADST cost an
exact sparse quadratic form x.L_A.x, its flip likewise, the identity cost a
plain weighted sum of squares, and leaves only the DCT cost to a fitted
degree-1 operator proxy.  2-D costs add the column and row averages, and
two threshold rules prune expensive combinations from the search.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .basis import basis_matrix, graph_frequencies, line_laplacian_dst4
from .design import FilterDesign, exhaustive_sparse_fit
from .filters import apply_mpgf
from .kinds import DttKind
from .operators import OperatorSet, SparseOperator, operator_set

TRANSFORMS = ("U", "V", "JV", "I")
SUPPORTED_LENGTHS = (4, 8, 16, 32)


def default_cost_weights(n: int) -> np.ndarray:
    """Increasing weights q_i = 2 - 2cos((i-1/2)pi/N), the ADST frequencies."""
    return graph_frequencies(DttKind.DST4, n)


def quadratic_cost_exact(basis_or_operator, x, q=None) -> float:
    """Weighted transform-domain energy of x.

    With a basis matrix and weights q: sum_i q_i (phi_i . x)^2.  With a
    symmetric operator (sparse or dense) and q omitted: the quadratic form
    x.A.x, which equals the spectral sum when q is A's spectrum.
    """
    x = np.asarray(x, dtype=np.float64)
    if q is None:
        a = basis_or_operator
        if isinstance(a, SparseOperator):
            return float(x @ a.apply(x))
        return float(x @ (np.asarray(a, dtype=np.float64) @ x))
    phi = np.asarray(basis_or_operator, dtype=np.float64)
    coeff = phi.T @ x
    return float(np.asarray(q, dtype=np.float64) @ (coeff * coeff))


def quadratic_cost_proxy(fit: FilterDesign, ops, x) -> float:
    """x.H.x with H the fitted sparse filter; equals the weighted energy
    under the fitted response exactly (the fit residual is the only gap to
    the true weights)."""
    x = np.asarray(x, dtype=np.float64)
    return float(x @ apply_mpgf(fit, ops, x))


@dataclass(frozen=True)
class AxisCostModel:
    """Per-length machinery for 1-D costs: DCT proxy fit, ADST forms, weights."""

    n: int
    fit: FilterDesign
    dct_ops: OperatorSet
    adst_form: SparseOperator
    adst_form_flipped: SparseOperator
    weights: np.ndarray


@functools.lru_cache(maxsize=None)
def axis_cost_model(n: int, r: int = 3) -> AxisCostModel:
    """Build (once per length) the exhaustive degree-1 DCT-cost fit and the
    sparse ADST quadratic forms."""
    ops = operator_set(DttKind.DCT2, n)
    q = default_cost_weights(n)
    fit = exhaustive_sparse_fit(q, ops.spectra, r)
    la = line_laplacian_dst4(n)
    j = np.eye(n)[::-1]
    return AxisCostModel(
        n=n,
        fit=fit,
        dct_ops=ops,
        adst_form=SparseOperator.from_dense(la),
        adst_form_flipped=SparseOperator.from_dense(j @ la @ j),
        weights=q,
    )


@dataclass(frozen=True)
class BlockCosts:
    """Averaged per-axis costs for the four 1-D transforms of one block."""

    col: dict
    row: dict

    def combined(self, tcol: str, trow: str) -> float:
        return self.col[tcol] + self.row[trow]

    def table(self) -> dict:
        return {
            (tc, tr): self.combined(tc, tr)
            for tc, tr in itertools.product(TRANSFORMS, TRANSFORMS)
        }


def _axis_costs(vectors, model: AxisCostModel) -> dict:
    totals = dict.fromkeys(TRANSFORMS, 0.0)
    for x in vectors:
        totals["U"] += quadratic_cost_proxy(model.fit, model.dct_ops, x)
        totals["V"] += quadratic_cost_exact(model.adst_form, x)
        totals["JV"] += quadratic_cost_exact(model.adst_form_flipped, x)
        totals["I"] += float(model.weights @ (x * x))
    return {t: v / len(vectors) for t, v in totals.items()}


def block_transform_costs(block, col_model=None, row_model=None) -> BlockCosts:
    """Column- and row-averaged 1-D costs of an N1 x N2 block.

    Lengths must be in {4, 8, 16, 32}; the per-length cost models are cached
    at first use.
    """
    block = np.asarray(block, dtype=np.float64)
    n1, n2 = block.shape
    if n1 not in SUPPORTED_LENGTHS or n2 not in SUPPORTED_LENGTHS:
        raise ValueError(f"block sides must be in {SUPPORTED_LENGTHS}, got {block.shape}")
    col_model = col_model or axis_cost_model(n1)
    row_model = row_model or axis_cost_model(n2)
    return BlockCosts(
        col=_axis_costs(list(block.T), col_model),
        row=_axis_costs(list(block), row_model),
    )


def prune(costs: BlockCosts, tau1: float, tau2: float) -> dict:
    """Keep/prune flags for the 16 2-D transform combinations (True = prune).

    Rule 1 covers the 9 combinations without the identity transform and
    compares against tau1 times the sum of the six non-identity axis costs;
    rule 2 covers the 7 identity-involving combinations against tau2 times
    the sum of all eight axis costs.
    """
    base1 = sum(costs.col[t] + costs.row[t] for t in ("U", "V", "JV"))
    base2 = base1 + costs.col["I"] + costs.row["I"]
    flags = {}
    for tc, tr in itertools.product(TRANSFORMS, TRANSFORMS):
        cost = costs.combined(tc, tr)
        if "I" in (tc, tr):
            flags[(tc, tr)] = (not math.isinf(tau2)) and cost > tau2 * base2
        else:
            flags[(tc, tr)] = (not math.isinf(tau1)) and cost > tau1 * base1
    return flags
