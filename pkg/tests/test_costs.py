import itertools
import math

import numpy as np
import pytest

import dttops as d
from dttops import DttKind
from dttops.costs import TRANSFORMS


def test_default_weights_increasing():
    for n in (4, 8, 16, 32):
        q = d.default_cost_weights(n)
        assert q[0] > 0
        assert np.all(np.diff(q) > 0)
        j = np.arange(1, n + 1)
        assert np.allclose(q, 2 - 2 * np.cos((j - 0.5) * np.pi / n), atol=1e-14)


def test_cost_with_laplacian_spectrum_equals_quadratic_form(rng):
    n = 12
    l = d.line_laplacian_dct2(n)
    lam, phi = np.linalg.eigh(l)
    x = rng.normal(size=n)
    spectral = d.quadratic_cost_exact(phi, x, lam)
    assert spectral == pytest.approx(float(x @ l @ x), abs=1e-9)


def test_cost_of_basis_vector_reads_single_weight():
    n = 8
    phi = d.basis_matrix(DttKind.DST4, n)
    q = d.default_cost_weights(n)
    for k in (0, 3, 7):
        assert d.quadratic_cost_exact(phi, phi[:, k], q) == pytest.approx(q[k], abs=1e-12)


def test_adst_cost_is_sparse_quadratic_form(rng):
    n = 8
    la = d.line_laplacian_dst4(n)
    phi = d.basis_matrix(DttKind.DST4, n)
    q = d.default_cost_weights(n)
    for _ in range(20):
        x = rng.normal(size=n)
        assert d.quadratic_cost_exact(phi, x, q) == pytest.approx(
            float(x @ la @ x), abs=1e-9
        )
        sparse_form = d.SparseOperator.from_dense(la)
        assert d.quadratic_cost_exact(sparse_form, x) == pytest.approx(
            float(x @ la @ x), abs=1e-9
        )


def test_proxy_identity_holds_exactly(rng):
    # x.H.x equals the weighted energy under the fitted response, not the
    # target weights: the fit residual is the only approximation
    n = 8
    model = d.axis_cost_model(n)
    phi = d.basis_matrix(DttKind.DCT2, n)
    qhat = d.frequency_response(model.fit, list(model.dct_ops.spectra))
    for _ in range(50):
        x = rng.normal(size=n)
        proxy = d.quadratic_cost_proxy(model.fit, model.dct_ops, x)
        spectral = d.quadratic_cost_exact(phi, x, qhat)
        assert proxy == pytest.approx(spectral, abs=1e-9)


def test_proxy_with_identity_only_fit(rng):
    x = rng.normal(size=8)
    fit = d.FilterDesign(((),), np.array([0.7]))
    ops = d.operator_set(DttKind.DCT2, 8)
    assert d.quadratic_cost_proxy(fit, ops, x) == pytest.approx(0.7 * float(x @ x))


def test_proxy_tracks_exact_cost_within_fit_residual(rng):
    n = 8
    model = d.axis_cost_model(n)
    phi = d.basis_matrix(DttKind.DCT2, n)
    q = model.weights
    qhat = d.frequency_response(model.fit, list(model.dct_ops.spectra))
    worst_gap = np.abs(q - qhat).max()
    for _ in range(200):
        x = rng.normal(size=n)
        exact = d.quadratic_cost_exact(phi, x, q)
        proxy = d.quadratic_cost_proxy(model.fit, model.dct_ops, x)
        assert abs(exact - proxy) <= worst_gap * float(x @ x) + 1e-9


def test_dc_block_cost_consistency():
    n = 8
    model = d.axis_cost_model(n)
    x = np.ones(n)
    qhat = d.frequency_response(model.fit, list(model.dct_ops.spectra))
    # the DC vector is the first DCT basis vector scaled by sqrt(n)
    assert d.quadratic_cost_proxy(model.fit, model.dct_ops, x) == pytest.approx(
        qhat[0] * n, abs=1e-9
    )


def test_block_costs_constant_block():
    block = np.full((8, 8), 3.0)
    costs = d.block_transform_costs(block)
    # all energy is DC: the DCT proxy gives it the smallest weight while the
    # identity cost pays full weighted energy
    assert costs.col["U"] < costs.col["V"]
    assert costs.col["U"] < costs.col["JV"]
    assert costs.col["I"] == max(costs.col.values())


def test_block_costs_flip_symmetry(rng):
    block = rng.normal(size=(8, 8))
    flipped = block[::-1, :]
    a = d.block_transform_costs(block)
    b = d.block_transform_costs(flipped)
    assert a.col["V"] == pytest.approx(b.col["JV"], abs=1e-9)
    assert a.col["JV"] == pytest.approx(b.col["V"], abs=1e-9)


def test_block_costs_iid_noise_v_jv_close(rng):
    # equal in expectation; a single 32x32 draw should agree loosely
    block = rng.normal(size=(32, 32))
    costs = d.block_transform_costs(block)
    assert costs.col["V"] == pytest.approx(costs.col["JV"], rel=0.2)


def test_block_cost_unsupported_length():
    with pytest.raises(ValueError):
        d.block_transform_costs(np.zeros((5, 8)))


def test_combined_table_has_16_entries():
    costs = d.block_transform_costs(np.eye(4))
    table = costs.table()
    assert len(table) == 16
    assert table[("V", "U")] == pytest.approx(costs.col["V"] + costs.row["U"])


def test_prune_equal_costs_keeps_everything_under_c1():
    costs = d.BlockCosts(
        col=dict.fromkeys(TRANSFORMS, 1.0), row=dict.fromkeys(TRANSFORMS, 1.0)
    )
    flags = d.prune(costs, 0.34, 0.33)
    # C1 base = 6, threshold 2.04 > 2 = every combined cost: nothing pruned
    for tc, tr in itertools.product(("U", "V", "JV"), repeat=2):
        assert not flags[(tc, tr)]
    # C2 base = 8, threshold 2.64 > 2: identity combos also survive
    assert not any(flags.values())


def test_prune_dominant_cheap_transform():
    col = {"U": 0.01, "V": 5.0, "JV": 5.0, "I": 5.0}
    row = {"U": 0.01, "V": 5.0, "JV": 5.0, "I": 5.0}
    flags = d.prune(d.BlockCosts(col=col, row=row), 0.34, 0.33)
    assert not flags[("U", "U")]
    assert flags[("V", "JV")]
    assert flags[("I", "I")]


def test_prune_infinite_thresholds_keep_all():
    costs = d.block_transform_costs(np.arange(16.0).reshape(4, 4))
    flags = d.prune(costs, math.inf, math.inf)
    assert not any(flags.values())


def test_prune_rules_literal_inequalities():
    rng = np.random.default_rng(5)
    col = {t: float(v) for t, v in zip(TRANSFORMS, rng.uniform(0.5, 3.0, 4))}
    row = {t: float(v) for t, v in zip(TRANSFORMS, rng.uniform(0.5, 3.0, 4))}
    costs = d.BlockCosts(col=col, row=row)
    tau1, tau2 = 0.34, 0.33
    base1 = sum(col[t] + row[t] for t in ("U", "V", "JV"))
    base2 = base1 + col["I"] + row["I"]
    flags = d.prune(costs, tau1, tau2)
    for tc, tr in itertools.product(TRANSFORMS, TRANSFORMS):
        want = (
            col[tc] + row[tr] > tau2 * base2
            if "I" in (tc, tr)
            else col[tc] + row[tr] > tau1 * base1
        )
        assert flags[(tc, tr)] == want


def test_prune_is_deterministic():
    block = np.random.default_rng(11).normal(size=(8, 8))
    costs = d.block_transform_costs(block)
    a = d.prune(costs, 0.34, 0.33)
    b = d.prune(costs, 0.34, 0.33)
    assert a == b
