"""Filter coefficient design against target frequency responses.

A design problem fixes a target response h* on the N graph frequencies,
per-frequency weights rho, a polynomial degree K, and the eigenvalue vectors
of M commuting operators.  The design matrix has one column per canonical
multiset of operator indices with total multiplicity <= K (the empty
multiset is the identity term), and the column entries are elementwise
products of the member spectra.  Because the operators commute, only sorted
multisets are enumerated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .simplex import LpProblem, LpStatus, solve

_LASSO_TOL = 1e-8  # max coefficient change between iterates
_LASSO_DROP = 1e-10
_NORMAL_EQ_COND_LIMIT = 1e8  # switch to orthogonal factorization above this


def enumerate_terms(m: int, k: int):
    """Canonical multisets over operator indices 1..m with degree <= k.

    Ordered by ascending degree, then lexicographically; the identity term
    () comes first.
    """
    terms = [()]
    for d in range(1, k + 1):
        terms.extend(itertools.combinations_with_replacement(range(1, m + 1), d))
    return terms


def vandermonde_psi(lam: np.ndarray, k: int) -> np.ndarray:
    """N x (K+1) matrix with row j = (1, lam_j, ..., lam_j^K)."""
    lam = np.asarray(lam, dtype=np.float64)
    return lam[:, None] ** np.arange(k + 1)


def mpgf_matrix_pi(spectra, k: int):
    """Multivariate design matrix and its term index.

    Returns (pi, terms) where pi[:, t] is the elementwise product of the
    spectra named by terms[t].  For a single operator this reduces to the
    Vandermonde matrix of :func:`vandermonde_psi`.
    """
    spectra = [np.asarray(s, dtype=np.float64) for s in spectra]
    m = len(spectra)
    n = spectra[0].shape[0] if m else 0
    terms = enumerate_terms(m, k)
    pi = np.empty((n, len(terms)))
    for t, term in enumerate(terms):
        col = np.ones(n)
        for idx in term:
            col = col * spectra[idx - 1]
        pi[:, t] = col
    return pi, terms


@dataclass(frozen=True)
class DesignProblem:
    """Target response, frequency weights, degree, and operator spectra."""

    target: np.ndarray
    weights: np.ndarray
    degree: int
    spectra: tuple = field(default_factory=tuple)

    def __post_init__(self):
        h = np.asarray(self.target, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        spectra = tuple(np.asarray(s, dtype=np.float64) for s in self.spectra)
        object.__setattr__(self, "target", h)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "spectra", spectra)
        if self.degree < 1:
            raise ValueError("polynomial degree must be >= 1")
        if w.shape != h.shape or any(s.shape != h.shape for s in spectra):
            raise ValueError("target, weights and spectra must share one length")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")

    @property
    def n_operators(self) -> int:
        return len(self.spectra)

    def design_matrix(self):
        return mpgf_matrix_pi(self.spectra, self.degree)


@dataclass(frozen=True)
class FilterDesign:
    """(multiset term, coefficient) pairs; the empty term is the identity."""

    terms: tuple
    coeffs: np.ndarray
    method: str = ""

    def __post_init__(self):
        terms = tuple(tuple(t) for t in self.terms)
        coeffs = np.asarray(self.coeffs, dtype=np.float64)
        if len(terms) != coeffs.shape[0]:
            raise ValueError("one coefficient per term required")
        if len(set(terms)) != len(terms):
            raise ValueError("duplicate terms in design")
        if any(tuple(sorted(t)) != t for t in terms):
            raise ValueError("terms must be canonically sorted multisets")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "coeffs", coeffs)

    def __iter__(self):
        return iter(zip(self.terms, self.coeffs))

    def __len__(self):
        return len(self.terms)

    @property
    def max_degree(self) -> int:
        return max((len(t) for t in self.terms), default=0)


def _weighted_system(problem: DesignProblem):
    pi, terms = problem.design_matrix()
    return problem.weights[:, None] * pi, problem.weights * problem.target, terms


def _ls_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Weighted LS core: normal equations while well conditioned, else SVD."""
    gram = a.T @ a
    try:
        if np.linalg.cond(gram) <= _NORMAL_EQ_COND_LIMIT**2:
            return np.linalg.solve(gram, a.T @ b)
    except np.linalg.LinAlgError:
        pass
    return np.linalg.lstsq(a, b, rcond=None)[0]


def design_ls(problem: DesignProblem) -> FilterDesign:
    """Weighted least-squares design over all degree-<=K terms."""
    if not np.any(problem.weights > 0):
        raise ValueError("at least one weight must be positive")
    a, b, terms = _weighted_system(problem)
    return FilterDesign(terms, _ls_solve(a, b), method="ls")


def design_omp(problem: DesignProblem, r: int) -> FilterDesign:
    """Greedy sparse design: orthogonal matching pursuit over design columns.

    Selects at most r columns by largest absolute residual correlation
    (lowest term index wins ties), refitting least squares on the selected
    set after every pick.
    """
    if r < 1:
        raise ValueError("term budget must be >= 1")
    a, b, terms = _weighted_system(problem)
    r = min(r, a.shape[1])
    selected = []
    residual = b.copy()
    coeffs = np.zeros(0)
    for _ in range(r):
        corr = np.abs(a.T @ residual)
        corr[selected] = -1.0
        best = int(np.argmax(corr))  # argmax returns the first (lowest) index
        if corr[best] < 1e-14:
            break
        selected.append(best)
        coeffs = _ls_solve(a[:, selected], b)
        residual = b - a[:, selected] @ coeffs
    order = np.argsort(selected)
    chosen = [terms[selected[i]] for i in order]
    return FilterDesign(tuple(chosen), coeffs[order], method="omp")


def _project_l1_ball(v: np.ndarray, tau: float) -> np.ndarray:
    if np.abs(v).sum() <= tau:
        return v
    u = np.sort(np.abs(v))[::-1]
    css = np.cumsum(u)
    rho = np.nonzero(u * np.arange(1, v.size + 1) > css - tau)[0][-1]
    theta = (css[rho] - tau) / (rho + 1)
    return np.sign(v) * np.maximum(np.abs(v) - theta, 0.0)


def design_lasso(problem: DesignProblem, tau: float) -> FilterDesign:
    """l1-constrained weighted LS: minimize the residual s.t. ||g||_1 <= tau.

    Solved by accelerated projected gradient descent on the l1 ball;
    coefficients below 1e-10 in magnitude are dropped from the result.
    """
    if tau < 0:
        raise ValueError("l1 budget must be non-negative")
    a, b, terms = _weighted_system(problem)
    if tau == 0:
        return FilterDesign((), np.zeros(0), method="lasso")

    g_ls = _ls_solve(a, b)
    if np.abs(g_ls).sum() <= tau:  # constraint inactive
        g = g_ls
    else:
        lip = np.linalg.norm(a, 2) ** 2
        g = _project_l1_ball(g_ls, tau)
        y, t = g, 1.0
        for _ in range(200000):
            grad = a.T @ (a @ y - b)
            g_new = _project_l1_ball(y - grad / lip, tau)
            t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
            y = g_new + ((t - 1.0) / t_new) * (g_new - g)
            done = np.abs(g_new - g).max() < _LASSO_TOL
            g, t = g_new, t_new
            if done:
                break
    keep = np.abs(g) >= _LASSO_DROP
    return FilterDesign(
        tuple(t for t, k in zip(terms, keep) if k), g[keep], method="lasso"
    )


def _minimax_lp(a: np.ndarray, b: np.ndarray, terms, method: str):
    """Shared minimax core on a pre-weighted system: min max_i |b_i - a_i.g|."""
    n, ncols = a.shape
    rows = []
    rhs = []
    for i in range(n):
        if not np.any(a[i]) and b[i] == 0.0:
            continue  # zero-weight frequency contributes nothing
        rows.append(np.concatenate([-a[i], [-1.0]]))
        rhs.append(-b[i])
        rows.append(np.concatenate([a[i], [-1.0]]))
        rhs.append(b[i])
    c = np.zeros(ncols + 1)
    c[-1] = 1.0
    result = solve(LpProblem(c, np.array(rows), np.array(rhs)))
    if result.status is not LpStatus.OPTIMAL:
        raise RuntimeError(f"minimax LP ended with status {result.status.value}")
    g = result.x[:ncols]
    eps = float(result.x[-1])
    return FilterDesign(terms, g, method=method), eps


def design_minimax_pgf(problem: DesignProblem):
    """Minimax design for a single operator; returns (design, eps*).

    eps* is the optimal weighted maximum absolute response error.  With
    K >= N-1 and distinct eigenvalues the system interpolates and eps* = 0.
    """
    if problem.n_operators != 1:
        raise ValueError("PGF minimax design expects exactly one operator")
    a, b, terms = _weighted_system(problem)
    return _minimax_lp(a, b, terms, "minimax-pgf")


def design_minimax_mpgf(problem: DesignProblem, max_terms: int | None = None):
    """Minimax design over the multivariate term set; returns (design, eps*).

    With `max_terms`, the support is first chosen by OMP on the same
    weighted LS problem and the minimax program is re-solved on it.
    """
    a, b, terms = _weighted_system(problem)
    if max_terms is not None:
        support = set(design_omp(problem, max_terms).terms)
        keep = [i for i, t in enumerate(terms) if t in support]
        a = a[:, keep]
        terms = tuple(terms[i] for i in keep)
    return _minimax_lp(a, b, terms, "minimax-mpgf")


def exhaustive_sparse_fit(q: np.ndarray, spectra, r: int) -> FilterDesign:
    """Best degree-1 fit of q using exactly r of the identity/operator columns.

    Enumerates every r-subset of {identity} + operators, least-squares fits
    each, and returns the subset with the smallest residual (ties broken by
    lexicographic subset order).  Intended for small r.
    """
    q = np.asarray(q, dtype=np.float64)
    pi, terms = mpgf_matrix_pi(spectra, 1)
    ncols = pi.shape[1]
    if not 1 <= r <= ncols:
        raise ValueError(f"subset size {r} outside [1, {ncols}]")
    best = None
    for subset in itertools.combinations(range(ncols), r):
        cols = pi[:, subset]
        g, *_ = np.linalg.lstsq(cols, q, rcond=None)
        res = float(np.sum((q - cols @ g) ** 2))
        if best is None or res < best[0]:
            best = (res, subset, g)
    _, subset, g = best
    return FilterDesign(tuple(terms[i] for i in subset), g, method="exhaustive")


def serialize_design(design: FilterDesign, kind: str, n: int, k: int) -> str:
    """Plain-text form: header 'kind N K method', one 'indices : coeff' line
    per term (the identity term has an empty index list)."""
    lines = [f"{kind} {n} {k} {design.method or 'ls'}"]
    for term, g in design:
        idx = " ".join(str(i) for i in term)
        lines.append(f"{idx}{' ' if idx else ''}: {float(g)!r}")
    return "\n".join(lines) + "\n"


def parse_design(text: str):
    """Inverse of :func:`serialize_design`; returns (design, header dict)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    kind, n, k, method = lines[0].split()
    terms = []
    coeffs = []
    for ln in lines[1:]:
        idx_part, coeff_part = ln.split(":")
        terms.append(tuple(int(i) for i in idx_part.split()))
        coeffs.append(float(coeff_part))
    design = FilterDesign(tuple(terms), np.array(coeffs), method=method)
    return design, {"kind": kind, "n": int(n), "k": int(k), "method": method}
