"""Benchmark and verification command line.

Subcommands:

* ``verify``     invariant sweep over the operator families (eigen-relation,
                 sparsity, symmetry, commutation, length-4 golden patterns)
* ``design``     fit a filter to a target response; emits the design file
                 and a per-frequency response CSV
* ``bench``      runtime/accuracy comparison of filter implementations
* ``prune-sim``  transform-type pruning simulation on synthetic blocks or a
                 raw grayscale frame

Frame input format for ``prune-sim --frame``: three ASCII integers
``width height 255`` separated by whitespace, followed by exactly
width*height raw 8-bit row-major samples.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import backend
from .basis import basis_matrix, graph_frequencies, operator_eigenvalues
from .costs import (
    TRANSFORMS,
    BlockCosts,
    block_transform_costs,
    default_cost_weights,
    prune,
    quadratic_cost_exact,
)
from .design import (
    DesignProblem,
    design_ls,
    design_minimax_mpgf,
    design_minimax_pgf,
    design_omp,
    serialize_design,
)
from .filters import (
    apply_mpgf,
    apply_pgf,
    apply_pgf_chebyshev,
    frequency_response,
    monomial_to_chebyshev,
)
from .kinds import ALL_KINDS, DttKind
from .operators import (
    SparseOperator,
    build_dct2,
    build_operator,
    family_report,
    gallery_text,
    kron_2d,
    to_laplacian,
)

# Length-4 DCT-II operators and Laplacians, the library's golden anchor.
_DCT2_4_GALLERY = """\
dct2 4 1
1:1 2:1
1:1 3:1
2:1 4:1
3:1 4:1
dct2 4 2
2:1 3:1
1:1 4:1
1:1 4:1
2:1 3:1
dct2 4 3
3:1 4:1
2:1 4:1
1:1 3:1
1:1 2:1
dct2 4 4
4:2
3:2
2:2
1:2
"""

METHODS = (
    "pgf-ls",
    "pgf-minimax",
    "pgf-cheb",
    "mpgf-ls",
    "mpgf-omp",
    "mpgf-minimax",
    "exact-dense",
)


# ---------------------------------------------------------------------------
# graph / target construction


@dataclass
class GraphSetup:
    label: str
    kind: DttKind
    n: int
    frequencies: np.ndarray  # graph frequencies per basis index
    phi: np.ndarray  # dense GFT, for the oracle and the exact filter
    pgf_op: SparseOperator
    pgf_spectrum: np.ndarray
    laplacian: SparseOperator  # for the Chebyshev implementation
    mpgf_ops: list
    mpgf_spectra: list


def _line_setup(kind: DttKind, n: int) -> GraphSetup:
    freqs = graph_frequencies(kind, n)
    z1 = build_operator(kind, n, 1)
    ells = list(range(1, n))
    ops = [build_operator(kind, n, ell) for ell in ells]
    spectra = [operator_eigenvalues(kind, n, ell) for ell in ells]
    if kind is DttKind.DCT2:
        # the boundary member 2J rounds the dictionary out to N operators
        ops.append(build_dct2(n, n))
        spectra.append(operator_eigenvalues(kind, n, n))
    return GraphSetup(
        label=f"line:{n}",
        kind=kind,
        n=n,
        frequencies=freqs,
        phi=basis_matrix(kind, n),
        pgf_op=z1,
        pgf_spectrum=operator_eigenvalues(kind, n, 1),
        laplacian=to_laplacian(z1),
        mpgf_ops=ops,
        mpgf_spectra=spectra,
    )


def _grid_setup(kind: DttKind, n1: int, n2: int) -> GraphSetup:
    f1 = graph_frequencies(kind, n1)
    f2 = graph_frequencies(kind, n2)
    # Cartesian-product line-graph Laplacian: frequencies add, GFT is the
    # separable 2D transform in column-first ordering.
    freqs = np.kron(f2, np.ones(n1)) + np.kron(np.ones(n2), f1)
    phi = np.kron(basis_matrix(kind, n2), basis_matrix(kind, n1))
    lap_dense = np.kron(to_laplacian(build_operator(kind, n2, 1)).dense(), np.eye(n1)) + np.kron(
        np.eye(n2), to_laplacian(build_operator(kind, n1, 1)).dense()
    )
    lap = SparseOperator.from_dense(lap_dense)

    def factors(n):
        ops = [SparseOperator.identity(n)]
        spectra = [np.ones(n)]
        top = n + 1 if kind is DttKind.DCT2 else n
        for ell in range(1, top):
            ops.append(build_dct2(n, ell) if (kind is DttKind.DCT2 and ell == n) else build_operator(kind, n, ell))
            spectra.append(operator_eigenvalues(kind, n, ell))
        return ops, spectra

    ops1, sp1 = factors(n1)
    ops2, sp2 = factors(n2)
    ops = []
    spectra = []
    for (i2, zr), (i1, zc) in itertools.product(enumerate(ops2), enumerate(ops1)):
        if i1 == 0 and i2 == 0:
            continue  # identity x identity is the constant design column
        ops.append(kron_2d(zr, zc))
        spectra.append(np.kron(sp2[i2], sp1[i1]))
    return GraphSetup(
        label=f"grid:{n1}x{n2}",
        kind=kind,
        n=n1 * n2,
        frequencies=freqs,
        phi=phi,
        pgf_op=lap,
        pgf_spectrum=freqs,
        laplacian=lap,
        mpgf_ops=ops,
        mpgf_spectra=spectra,
    )


def make_graph(spec: str, kind: DttKind) -> GraphSetup:
    head, _, tail = spec.partition(":")
    if head == "line":
        return _line_setup(kind, int(tail))
    if head == "grid":
        n1, _, n2 = tail.partition("x")
        return _grid_setup(kind, int(n1), int(n2))
    raise ValueError(f"unknown graph spec {spec!r} (use line:N or grid:N1xN2)")


def make_target(spec: str, freqs: np.ndarray, weights_spec: str | None = None):
    """Target response and per-frequency design weights from a filter spec.

    Specs: tikhonov:MU | bandpass-exp:GAMMA,PBFRAC | ideal-lowpass:CUTFRAC.
    Band edges are fractions of the largest graph frequency; the low-pass
    transition band is fixed to [0.4, 0.6] of it.
    """
    lam_max = float(freqs.max())
    name, _, tail = spec.partition(":")
    if name == "tikhonov":
        mu = float(tail) if tail else 0.25
        target = 1.0 / (1.0 + mu * freqs)
        weights = np.ones_like(freqs)
    elif name == "bandpass-exp":
        parts = [float(v) for v in tail.split(",")] if tail else []
        gamma = parts[0] if parts else 1.0
        pb = parts[1] * lam_max if len(parts) > 1 else 0.5 * lam_max
        target = np.exp(-gamma * (freqs - pb) ** 2)
        weights = np.ones_like(freqs)
    elif name == "ideal-lowpass":
        cut = (float(tail) if tail else 0.5) * lam_max
        target = (freqs <= cut).astype(np.float64)
        w = [float(v) for v in weights_spec.split(",")] if weights_spec else [1.0, 0.0, 1.0]
        if len(w) != 3:
            raise ValueError("low-pass weights must be pass,transition,stop")
        weights = np.where(
            (freqs >= 0.4 * lam_max) & (freqs <= 0.6 * lam_max),
            w[1],
            np.where(freqs < 0.4 * lam_max, w[0], w[2]),
        )
    else:
        raise ValueError(f"unknown filter spec {spec!r}")
    return target, weights, name


# ---------------------------------------------------------------------------
# method assembly


def build_method(method: str, graph: GraphSetup, target, weights, degree: int, terms: int):
    """Return (design or None, response vector, apply(x) callable)."""
    if method == "exact-dense":
        h_mat = (graph.phi * target) @ graph.phi.T
        response = np.einsum("ij,ij->j", graph.phi, h_mat @ graph.phi)
        return None, response, lambda x: h_mat @ x

    if method.startswith("pgf"):
        if method == "pgf-cheb":
            spectrum = graph.frequencies
            problem = DesignProblem(target, weights, degree, [spectrum])
            design = design_ls(problem)
            lam_max = float(graph.frequencies.max())
            cheb = monomial_to_chebyshev(design.coeffs, lam_max)
            op = graph.laplacian
            apply_fn = lambda x: apply_pgf_chebyshev(op, cheb, x, lam_max)
        else:
            spectrum = graph.pgf_spectrum
            problem = DesignProblem(target, weights, degree, [spectrum])
            if method == "pgf-minimax":
                design, _ = design_minimax_pgf(problem)
            else:
                design = design_ls(problem)
            op = graph.pgf_op
            coeffs = design.coeffs
            apply_fn = lambda x: apply_pgf(op, coeffs, x)
        return design, frequency_response(design, [spectrum]), apply_fn

    if method.startswith("mpgf"):
        problem = DesignProblem(target, weights, 1, graph.mpgf_spectra)
        if method == "mpgf-ls":
            design = design_ls(problem)
        elif method == "mpgf-omp":
            design = design_omp(problem, terms)
        elif method == "mpgf-minimax":
            design, _ = design_minimax_mpgf(problem, max_terms=terms)
        else:
            raise ValueError(f"unknown method {method!r}")
        ops = graph.mpgf_ops
        apply_fn = lambda x: apply_mpgf(design, ops, x)
        return design, frequency_response(design, graph.mpgf_spectra), apply_fn

    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    kinds = ALL_KINDS if args.kinds == "all" else tuple(DttKind.from_name(k) for k in args.kinds.split(","))
    sizes = [int(s) for s in args.sizes.split(",")]
    failed = False
    print("kind,n,max_eigen_residual,max_row_nnz,max_total_nnz,symmetric,ok")
    for kind in kinds:
        for n in sizes:
            rep = family_report(kind, n)
            print(
                f"{rep['kind']},{rep['n']},{rep['max_eigen_residual']:.3e},"
                f"{rep['max_row_nnz']},{rep['max_total_nnz']},"
                f"{rep['max_symmetry_residual'] == 0.0},{rep['ok']}"
            )
            failed |= not rep["ok"]

    rng = np.random.default_rng(args.seed)
    worst_comm = 0.0
    for _ in range(args.pairs):
        kind = kinds[rng.integers(len(kinds))]
        n = sizes[rng.integers(len(sizes))]
        la, lb = rng.integers(1, n, size=2)
        za = build_operator(kind, n, int(la)).dense()
        zb = build_operator(kind, n, int(lb)).dense()
        worst_comm = max(worst_comm, float(np.abs(za @ zb - zb @ za).max()))
    print(f"commutation,{args.pairs} pairs,max residual,{worst_comm:.3e}")
    failed |= worst_comm >= 1e-9

    golden_ok = gallery_text(DttKind.DCT2, 4, range(1, 5)) == _DCT2_4_GALLERY
    print(f"golden,dct2 length-4 gallery,match,{golden_ok}")
    failed |= not golden_ok

    print("verify:", "FAIL" if failed else "PASS")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# design


def cmd_design(args) -> int:
    kind = DttKind.from_name(args.kind)
    graph = make_graph(args.graph, kind)
    target, weights, _ = make_target(args.filter, graph.frequencies, args.weights)
    design, response, _ = build_method(
        args.method, graph, target, weights, args.degree, args.terms
    )

    err = response - target
    rmse = float(np.sqrt(np.mean(err**2)))
    wmax = float(np.abs(weights * err).max())
    if design is not None:
        text = serialize_design(design, kind.value, graph.n, args.degree)
        if args.out:
            with open(args.out + ".design.txt", "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    rows = [("lambda", "target", "designed")]
    rows += [
        (repr(float(graph.frequencies[j])), repr(float(target[j])), repr(float(response[j])))
        for j in range(graph.n)
    ]
    if args.out:
        with open(args.out + ".response.csv", "w", newline="") as fh:
            csv.writer(fh).writerows(rows)
    else:
        csv.writer(sys.stdout).writerows(rows)
    print(f"# method={args.method} rmse={rmse!r} weighted_max_error={wmax!r}")
    return 0


# ---------------------------------------------------------------------------
# bench


def _robust_runtime_ns(samples) -> float:
    """Median of group means after discarding the 10% warmup prefix."""
    samples = samples[max(1, len(samples) // 10):]
    groups = max(1, min(10, len(samples)))
    chunks = np.array_split(np.asarray(samples, dtype=np.float64), groups)
    return float(np.median([c.mean() for c in chunks]))


def cmd_bench(args) -> int:
    backend.use_backend(args.backend)
    kind = DttKind.from_name(args.kind)
    graph = make_graph(args.graph, kind)
    target, weights, _ = make_target(args.filter, graph.frequencies, args.weights)
    methods = METHODS if args.methods == "all" else tuple(args.methods.split(","))

    rng = np.random.default_rng(args.seed)
    inputs = [rng.normal(size=graph.n) for _ in range(args.trials)]

    writer = csv.writer(sys.stdout)
    writer.writerow(
        ["method", "graph", "filter", "kind", "degree", "terms", "backend",
         "trials", "mean_runtime_ns", "response_error"]
    )
    for method in methods:
        design, response, apply_fn = build_method(
            method, graph, target, weights, args.degree, args.terms
        )
        err = float(np.linalg.norm(response - target) / np.linalg.norm(target))
        apply_fn(inputs[0])  # one untimed call to settle allocations
        times = []
        for x in inputs:
            t0 = time.perf_counter_ns()
            apply_fn(x)
            times.append(time.perf_counter_ns() - t0)
        writer.writerow(
            [method, graph.label, args.filter, kind.value, args.degree,
             args.terms, backend.active_backend_name(), args.trials,
             int(_robust_runtime_ns(times)), repr(err)]
        )
    return 0


# ---------------------------------------------------------------------------
# prune-sim


def synthetic_blocks(cls: str, count: int, size: int, seed: int):
    """Seeded block corpus: smooth gradients, piecewise-constant, AR(1)."""
    rng = np.random.default_rng(seed)
    blocks = []
    for _ in range(count):
        if cls == "gradient":
            gx, gy = rng.normal(size=2) * 4.0
            base = rng.uniform(0, 255)
            i = np.arange(size)[:, None]
            j = np.arange(size)[None, :]
            b = base + gx * i + gy * j
        elif cls == "piecewise":
            b = np.full((size, size), rng.uniform(0, 255))
            cut = int(rng.integers(1, size))
            if rng.integers(2):
                b[cut:, :] = rng.uniform(0, 255)
            else:
                b[:, cut:] = rng.uniform(0, 255)
        elif cls == "ar1":
            rho = 0.9
            noise = rng.normal(size=(size, size))
            b = np.empty((size, size))
            b[0, 0] = noise[0, 0]
            for i in range(size):
                for j in range(size):
                    if i == 0 and j == 0:
                        continue
                    left = b[i, j - 1] if j else 0.0
                    up = b[i - 1, j] if i else 0.0
                    norm = (j > 0) + (i > 0)
                    b[i, j] = rho * (left + up) / norm + noise[i, j]
            b = 40.0 * b + 128.0
        else:
            raise ValueError(f"unknown block class {cls!r}")
        blocks.append(b)
    return blocks


def read_frame(path: str) -> np.ndarray:
    """Raw 8-bit grayscale: ASCII 'width height 255' header, then samples."""
    with open(path, "rb") as fh:
        data = fh.read()
    fields = []
    pos = 0
    while len(fields) < 3 and pos < len(data):
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    try:
        width, height, maxval = (int(f) for f in fields)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"malformed frame header in {path}") from exc
    if maxval != 255 or width <= 0 or height <= 0:
        raise ValueError(f"malformed frame header in {path}")
    pos += 1  # single whitespace separates header from samples
    pixels = np.frombuffer(data, dtype=np.uint8, count=width * height, offset=pos)
    if pixels.size != width * height:
        raise ValueError(f"frame {path} truncated")
    return pixels.reshape(height, width).astype(np.float64)


def frame_blocks(frame: np.ndarray, size: int):
    h, w = frame.shape
    return [
        frame[i : i + size, j : j + size]
        for i in range(0, h - size + 1, size)
        for j in range(0, w - size + 1, size)
    ]


def exact_block_costs(block: np.ndarray) -> BlockCosts:
    """BlockCosts twin computed fully spectrally (no operator proxy)."""
    block = np.asarray(block, dtype=np.float64)

    def axis(vectors, n):
        q = default_cost_weights(n)
        phi_u = basis_matrix(DttKind.DCT2, n)
        phi_v = basis_matrix(DttKind.DST4, n)
        phi_jv = np.eye(n)[::-1] @ phi_v
        out = dict.fromkeys(TRANSFORMS, 0.0)
        for x in vectors:
            out["U"] += quadratic_cost_exact(phi_u, x, q)
            out["V"] += quadratic_cost_exact(phi_v, x, q)
            out["JV"] += quadratic_cost_exact(phi_jv, x, q)
            out["I"] += float(q @ (x * x))
        return {t: v / len(vectors) for t, v in out.items()}

    n1, n2 = block.shape
    return BlockCosts(col=axis(list(block.T), n1), row=axis(list(block), n2))


def run_prune_sim(classes, count, size, tau1, tau2, seed, frame=None):
    """Simulate pruning over a block corpus; returns per-class statistics.

    Each statistics entry carries the prune masks (as 16-bit tuples), the
    mean kept count, and the rate of agreement between the proxy-based and
    exact-cost cheapest-transform rankings.
    """
    corpora = {}
    if frame is not None:
        corpora["frame"] = frame_blocks(frame, size)
    else:
        for i, cls in enumerate(classes):
            corpora[cls] = synthetic_blocks(cls, count, size, seed + i)

    order = list(itertools.product(TRANSFORMS, TRANSFORMS))
    results = {}
    for cls, blocks in corpora.items():
        masks = []
        agree = 0
        for b in blocks:
            costs = block_transform_costs(b)
            flags = prune(costs, tau1, tau2)
            masks.append(tuple(flags[k] for k in order))
            exact = exact_block_costs(b)
            if min(order, key=costs.table().get) == min(order, key=exact.table().get):
                agree += 1
        masks_arr = np.array(masks, dtype=bool)
        results[cls] = {
            "blocks": len(blocks),
            "masks": masks,
            "mean_kept": float((~masks_arr).sum(axis=1).mean()),
            "prune_rate": float(masks_arr.mean()),
            "ranking_agreement": agree / len(blocks),
        }
    return results


def cmd_prune_sim(args) -> int:
    frame = read_frame(args.frame) if args.frame else None
    results = run_prune_sim(
        classes=("gradient", "piecewise", "ar1"),
        count=args.blocks,
        size=args.block_size,
        tau1=args.tau1,
        tau2=args.tau2,
        seed=args.seed,
        frame=frame,
    )
    writer = csv.writer(sys.stdout)
    writer.writerow(["class", "blocks", "mean_kept", "prune_rate", "ranking_agreement"])
    for cls in sorted(results):
        r = results[cls]
        writer.writerow(
            [cls, r["blocks"], repr(r["mean_kept"]), repr(r["prune_rate"]),
             repr(r["ranking_agreement"])]
        )
    return 0


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dttops", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the operator invariant suite")
    p.add_argument("--kinds", default="all", help="comma list of kinds, or 'all'")
    p.add_argument("--sizes", default="4,6,8,16,32")
    p.add_argument("--pairs", type=int, default=200, help="random commutation pairs")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    common = {
        "--graph": dict(default="line:64", help="line:N or grid:N1xN2"),
        "--filter": dict(
            default="tikhonov:0.25",
            help="tikhonov:MU | bandpass-exp:GAMMA,PBFRAC | ideal-lowpass:CUTFRAC",
        ),
        "--kind": dict(default="dct2"),
        "--degree": dict(type=int, default=4, help="PGF polynomial degree K"),
        "--terms": dict(type=int, default=4, help="MPGF term budget R"),
        "--weights": dict(default=None, help="low-pass pass,transition,stop weights"),
    }

    p = sub.add_parser(
        "design",
        help="fit one filter and dump design + response",
        epilog="response CSV columns: lambda, target, designed (one row per "
        "graph frequency); the design file holds 'indices : coefficient' "
        "lines under a 'kind N K method' header",
    )
    for flag, kw in common.items():
        p.add_argument(flag, **kw)
    p.add_argument("--method", default="pgf-ls", choices=METHODS)
    p.add_argument("--out", default=None, help="output file prefix (default stdout)")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser(
        "bench",
        help="time filter implementations (CSV on stdout)",
        epilog="CSV columns: method, graph, filter, kind, degree, terms, "
        "backend, trials, mean_runtime_ns (median of group means after 10% "
        "warmup discard; machine-dependent), response_error "
        "(||h_designed - h_target|| / ||h_target||; deterministic per seed)",
    )
    for flag, kw in common.items():
        p.add_argument(flag, **kw)
    p.add_argument("--methods", default="all", help="comma list or 'all'")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backend", default="auto", choices=("auto", "python", "cython"))
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser(
        "prune-sim",
        help="transform-type pruning simulation",
        epilog="CSV columns: class, blocks, mean_kept (of 16 2-D transform "
        "combinations), prune_rate, ranking_agreement (proxy-based vs "
        "exact-cost cheapest combination). Frame input: ASCII header "
        "'width height 255', one whitespace byte, then width*height raw "
        "8-bit row-major samples",
    )
    p.add_argument("--blocks", type=int, default=200, help="blocks per class")
    p.add_argument("--block-size", type=int, default=8, choices=(4, 8, 16, 32))
    p.add_argument("--tau1", type=float, default=0.34)
    p.add_argument("--tau2", type=float, default=0.33)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--frame", default=None, help="raw grayscale frame file")
    p.set_defaults(func=cmd_prune_sim)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
