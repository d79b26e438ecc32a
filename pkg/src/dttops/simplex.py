"""Minimal dense two-phase simplex for the minimax filter designs.

Solves  min c.x  subject to  A x <= b  with free variables.  Free variables
are split into positive parts, slacks complete the standard form, and
artificials cover rows whose right-hand side starts negative.  Bland's rule
is always on: the problems here are tiny and determinism matters more than
pivot count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

_PIVOT_TOL = 1e-10
_COST_TOL = 1e-9
_FEAS_TOL = 1e-8


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class SimplexError(RuntimeError):
    """Pivot-count cap exceeded."""


@dataclass(frozen=True)
class LpProblem:
    """min objective . x  subject to  a_ub @ x <= b_ub, x free."""

    objective: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=np.float64)
        a = np.atleast_2d(np.asarray(self.a_ub, dtype=np.float64))
        b = np.asarray(self.b_ub, dtype=np.float64)
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "a_ub", a)
        object.__setattr__(self, "b_ub", b)
        if a.shape != (b.shape[0], c.shape[0]):
            raise ValueError(
                f"inconsistent shapes: c{c.shape}, A{a.shape}, b{b.shape}"
            )
        if not (np.isfinite(c).all() and np.isfinite(a).all() and np.isfinite(b).all()):
            raise ValueError("LP data must be finite")


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    x: np.ndarray | None
    objective: float | None


def _pivot(tab, obj, basis, row, col):
    tab[row] /= tab[row, col]
    for r in range(tab.shape[0]):
        if r != row and tab[r, col] != 0.0:
            tab[r] -= tab[r, col] * tab[row]
    if obj[col] != 0.0:
        obj -= obj[col] * tab[row]
    basis[row] = col


def _iterate(tab, obj, basis, ncols, budget):
    """Run simplex pivots under Bland's rule; returns remaining budget.

    Raises SimplexError when the pivot budget runs out; returns -1 on an
    unbounded direction.
    """
    m = tab.shape[0]
    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] < -_COST_TOL:
                enter = j
                break
        if enter < 0:
            return budget
        leave = -1
        best = np.inf
        for i in range(m):
            a = tab[i, enter]
            if a > _PIVOT_TOL:
                ratio = tab[i, -1] / a
                if ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return -1
        _pivot(tab, obj, basis, leave, enter)
        budget -= 1
        if budget <= 0:
            raise SimplexError("pivot budget exhausted")


def solve(problem: LpProblem) -> LpResult:
    """Two-phase simplex; returns OPTIMAL with x and value, or a status."""
    c = problem.objective
    a = problem.a_ub
    b = problem.b_ub
    m, n = a.shape
    if m == 0:
        if np.any(c != 0.0):
            return LpResult(LpStatus.UNBOUNDED, None, None)
        return LpResult(LpStatus.OPTIMAL, np.zeros(n), 0.0)

    # row equilibration keeps tableau entries O(1) so the absolute pivot and
    # reduced-cost tolerances are meaningful; it leaves the feasible set as-is
    scale = np.abs(a).max(axis=1)
    scale[scale == 0.0] = 1.0
    a = a / scale[:, None]
    b = b / scale

    neg = b < 0
    sign = np.where(neg, -1.0, 1.0)[:, None]
    art_rows = np.nonzero(neg)[0]
    n_split = 2 * n
    n_struct = n_split + m  # split vars + slacks
    ncols = n_struct + len(art_rows)

    tab = np.zeros((m, ncols + 1))
    tab[:, :n] = sign * a
    tab[:, n:n_split] = -sign * a
    tab[np.arange(m), n_split + np.arange(m)] = sign[:, 0]
    for k, i in enumerate(art_rows):
        tab[i, n_struct + k] = 1.0
    tab[:, -1] = np.abs(b)

    basis = np.empty(m, dtype=np.int64)
    basis[~neg] = n_split + np.nonzero(~neg)[0]
    basis[art_rows] = n_struct + np.arange(len(art_rows))

    budget = 10 * (m + ncols) ** 2

    # phase 1: minimize the artificial sum.  An "unbounded" outcome here can
    # only be reduced-cost noise at the optimum (the objective is bounded
    # below by 0), so only the achieved value decides feasibility.
    obj = np.zeros(ncols + 1)
    obj[n_struct:ncols] = 1.0
    for i in art_rows:
        obj -= tab[i]
    returned = _iterate(tab, obj, basis, ncols, budget)
    if -obj[-1] > _FEAS_TOL:
        return LpResult(LpStatus.INFEASIBLE, None, None)
    budget = budget if returned == -1 else returned

    # drive any remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n_struct:
            piv = -1
            for j in range(n_struct):
                if abs(tab[i, j]) > _PIVOT_TOL:
                    piv = j
                    break
            if piv >= 0:
                _pivot(tab, obj, basis, i, piv)
                budget -= 1
            else:
                tab[i, :] = 0.0  # redundant row

    # phase 2: original objective on the split variables; artificial columns
    # are excluded from the entering-variable scan below
    obj = np.zeros(ncols + 1)
    obj[:n] = c
    obj[n:n_split] = -c
    for i in range(m):
        if basis[i] < n_struct and obj[basis[i]] != 0.0:
            obj -= obj[basis[i]] * tab[i]
    budget = _iterate(tab, obj, basis, n_struct, budget)
    if budget == -1:
        return LpResult(LpStatus.UNBOUNDED, None, None)

    full = np.zeros(ncols)
    for i in range(m):
        if basis[i] < ncols:
            full[basis[i]] = tab[i, -1]
    x = full[:n] - full[n:n_split]
    return LpResult(LpStatus.OPTIMAL, x, float(c @ x))
