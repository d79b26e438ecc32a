import numpy as np
import pytest

import dttops as d
from dttops import ALL_KINDS, DttKind

LENGTH4_OPERATORS = {
    1: [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]],
    2: [[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]],
    3: [[0, 0, 1, 1], [0, 1, 0, 1], [1, 0, 1, 0], [1, 1, 0, 0]],
    4: [[0, 0, 0, 2], [0, 0, 2, 0], [0, 2, 0, 0], [2, 0, 0, 0]],
}

LENGTH4_LAPLACIANS = {
    1: [[1, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 1]],
    2: [[2, -1, -1, 0], [-1, 2, 0, -1], [-1, 0, 2, -1], [0, -1, -1, 2]],
    3: [[2, 0, -1, -1], [0, 1, 0, -1], [-1, 0, 1, 0], [-1, -1, 0, 2]],
    4: [[2, 0, 0, -2], [0, 2, -2, 0], [0, -2, 2, 0], [-2, 0, 0, 2]],
}


def test_dct2_length4_golden_operators():
    for ell, want in LENGTH4_OPERATORS.items():
        assert np.array_equal(d.build_dct2(4, ell).dense(), np.array(want, dtype=float))


def test_dct2_length4_golden_laplacians():
    for ell, want in LENGTH4_LAPLACIANS.items():
        lap = d.to_laplacian(d.build_dct2(4, ell))
        assert np.array_equal(lap.dense(), np.array(want, dtype=float))


def test_dct2_order_n_is_2j():
    n = 5
    z = d.build_dct2(n, n)
    assert np.array_equal(z.dense(), 2.0 * np.eye(n)[::-1])
    # diagonalized by the DCT-II basis with alternating +-2
    phi = d.basis_matrix(DttKind.DCT2, n)
    diag = phi.T @ z.dense() @ phi
    assert np.allclose(np.diag(diag), [2, -2, 2, -2, 2], atol=1e-12)
    assert np.abs(diag - np.diag(np.diag(diag))).max() < 1e-12


def test_dct2_z1_is_2i_minus_path_laplacian():
    n = 8
    z = d.build_dct2(n, 1)
    assert np.array_equal(z.dense(), 2 * np.eye(n) - d.line_laplacian_dct2(n))


def test_dst4_row_rules():
    z = d.build_dst4(6, 1)
    assert z.row(0) == [(0, -1.0), (1, 1.0)]
    lam = d.operator_eigenvalues(DttKind.DST4, 6, 1)
    phi = d.basis_matrix(DttKind.DST4, 6)
    assert d.eigen_residual(z, phi, lam) < 1e-12


def test_dst7_row_rules():
    z = d.build_dst7(6, 2)
    assert z.row(1) == [(3, 1.0)]  # row p=ell has a single nonzero
    z1 = d.build_dst7(6, 3)
    # p < ell gives -1 at column ell - p
    assert (2 - 1, -1.0) in z1.row(0)


def test_dct5_row_rules():
    z = d.build_dct5(6, 1)
    assert z.row(0) == [(1, pytest.approx(np.sqrt(2.0)))]
    assert z.row(1) == [(0, pytest.approx(np.sqrt(2.0))), (2, 1.0)]


def test_ell_range_validation():
    with pytest.raises(ValueError):
        d.build_dct2(6, 0)
    with pytest.raises(ValueError):
        d.build_dct2(6, 7)
    with pytest.raises(ValueError):
        d.build_dst4(6, 6)
    with pytest.raises(ValueError):
        d.build_operator(DttKind.DST1, 6, 6)


def test_build_operator_delegates_to_closed_form():
    assert np.array_equal(
        d.build_operator(DttKind.DCT2, 4, 2).dense(), d.build_dct2(4, 2).dense()
    )


def test_closed_form_matches_forced_synthesis():
    for kind in (DttKind.DCT2, DttKind.DST4, DttKind.DST7, DttKind.DCT5):
        for n in (4, 6, 9):
            for ell in range(1, n):
                a = d.build_operator(kind, n, ell).dense()
                b = d.build_operator(kind, n, ell, force_synthesis=True).dense()
                assert np.array_equal(a, b), (kind, n, ell)


def test_all_kinds_snap_to_value_set():
    allowed = {-2.0, -1.0, 1.0, round(np.sqrt(2.0), 9), 2.0}
    for kind in ALL_KINDS:
        for ell in range(1, 6):
            z = d.build_operator(kind, 6, ell)
            vals = {round(v, 9) for p in range(6) for _, v in z.row(p)}
            assert vals <= allowed, (kind, ell, vals)


def test_eigen_relation_sample():
    for kind in ALL_KINDS:
        for n in (4, 7, 12):
            phi = d.basis_matrix(kind, n)
            for ell in range(1, n):
                z = d.build_operator(kind, n, ell)
                lam = d.operator_eigenvalues(kind, n, ell)
                assert d.eigen_residual(z, phi, lam) < 1e-9, (kind, n, ell)


def test_sparsity_bounds():
    for kind in ALL_KINDS:
        for ell in range(1, 12):
            z = d.build_operator(kind, 12, ell)
            assert z.counts.max() <= 2
            assert z.nnz <= 24


def test_operators_are_symmetric():
    for kind in ALL_KINDS:
        for ell in range(1, 8):
            m = d.build_operator(kind, 8, ell).dense()
            assert np.array_equal(m, m.T), (kind, ell)


def test_commutation_sample(rng):
    for _ in range(40):
        kind = ALL_KINDS[rng.integers(16)]
        n = int(rng.choice([4, 6, 9, 13]))
        la, lb = rng.integers(1, n, size=2)
        a = d.build_operator(kind, n, int(la)).dense()
        b = d.build_operator(kind, n, int(lb)).dense()
        assert np.abs(a @ b - b @ a).max() < 1e-9


def test_apply_matches_dense(rng):
    z = d.build_operator(DttKind.DST2, 10, 3)
    x = rng.normal(size=10)
    assert np.abs(z @ x - z.dense() @ x).max() < 1e-12


def test_apply_dc_vector():
    z = d.build_dct2(4, 1)
    assert np.array_equal(z @ np.ones(4), 2.0 * np.ones(4))


def test_apply_order_reversal():
    z = d.build_dct2(4, 4)
    assert np.array_equal(z @ np.array([1.0, 2.0, 3.0, 4.0]), [8.0, 6.0, 4.0, 2.0])


def test_apply_eigenvector_scaling(rng):
    kind, n = DttKind.DCT3, 9
    phi = d.basis_matrix(kind, n)
    for ell in (1, 4, 8):
        z = d.build_operator(kind, n, ell)
        lam = d.operator_eigenvalues(kind, n, ell)
        j = int(rng.integers(n))
        assert np.abs(z @ phi[:, j] - lam[j] * phi[:, j]).max() < 1e-10


def test_apply_length_mismatch():
    z = d.build_dct2(4, 1)
    with pytest.raises(ValueError):
        z.apply(np.ones(5))


def test_operator_set_contents():
    s = d.operator_set(DttKind.DST4, 6)
    assert len(s) == 5
    phi = d.basis_matrix(DttKind.DST4, 6)
    for z, lam in zip(s.ops, s.spectra):
        assert d.eigen_residual(z, phi, lam) < 1e-10


def test_laplacian_row_sums_vanish():
    for ell in range(1, 8):
        lap = d.to_laplacian(d.build_dct2(8, ell)).dense()
        assert np.abs(lap.sum(axis=1)).max() < 1e-12


def test_kron_identity_gives_block_diagonal():
    zc = d.build_dct2(4, 1)
    z2 = d.kron_2d(d.SparseOperator.identity(3), zc)
    assert np.array_equal(z2.dense(), np.kron(np.eye(3), zc.dense()))


def test_kron_matches_numpy_and_spectrum(rng):
    zr = d.build_dct2(4, 2)
    zc = d.build_dst4(3, 1)
    z2 = d.kron_2d(zr, zc)
    assert np.array_equal(z2.dense(), np.kron(zr.dense(), zc.dense()))
    assert z2.counts.max() <= 4
    lam = np.kron(
        d.operator_eigenvalues(DttKind.DCT2, 4, 2), d.operator_eigenvalues(DttKind.DST4, 3, 1)
    )
    phi = np.kron(d.basis_matrix(DttKind.DCT2, 4), d.basis_matrix(DttKind.DST4, 3))
    assert d.eigen_residual(z2, phi, lam) < 1e-9


def test_kron_2d_dct2_family_eigen_oracle():
    # every 4x4 2D DCT-II operator diagonalizes in the Kronecker basis
    phi1 = d.basis_matrix(DttKind.DCT2, 4)
    phi = np.kron(phi1, phi1)
    for lr in range(1, 4):
        for lc in range(1, 4):
            z2 = d.kron_2d(d.build_dct2(4, lr), d.build_dct2(4, lc))
            lam = np.kron(
                d.operator_eigenvalues(DttKind.DCT2, 4, lr),
                d.operator_eigenvalues(DttKind.DCT2, 4, lc),
            )
            assert d.eigen_residual(z2, phi, lam) < 1e-9


def test_complement_of_complete_two_node_graph():
    l = np.array([[1.0, -1.0], [-1.0, 1.0]])
    assert np.abs(d.complement_laplacian(l, 1.0)).max() == 0.0


def test_complement_path3_spectrum():
    l = d.line_laplacian_dct2(3)
    lc = d.complement_laplacian(l, 1.0)
    lam = np.sort(np.linalg.eigvalsh(l))
    lamc = np.sort(np.linalg.eigvalsh(lc))
    want = np.sort(np.array([0.0, 3.0 - lam[1], 3.0 - lam[2]]))
    assert np.allclose(lamc, want, atol=1e-10)


def test_complement_commutes(rng):
    l = d.line_laplacian_dct2(5)
    lc = d.complement_laplacian(l, 2.0)
    assert np.abs(l @ lc - lc @ l).max() < 1e-10


def test_complement_rejects_self_loops():
    with pytest.raises(ValueError):
        d.complement_laplacian(d.line_laplacian_dst4(4), 1.0)


def test_symmetry_operator_pairing():
    pairing = d.symmetry_operator([3, 2, 1, 0])
    want = np.array(
        [[1, 0, 0, -1], [0, 1, -1, 0], [0, -1, 1, 0], [-1, 0, 0, 1]], dtype=float
    )
    assert np.array_equal(pairing.dense(), want)
    # commutes with the Laplacian of any graph with this symmetry
    path = d.line_laplacian_dct2(4)
    p = pairing.dense()
    assert np.abs(path @ p - p @ path).max() < 1e-12


def test_symmetry_operator_identity_is_zero():
    assert np.abs(d.symmetry_operator(range(5)).dense()).max() == 0.0


def test_symmetry_operator_two_point_spectrum():
    pairing = d.symmetry_operator([1, 0, 2, 4, 3])
    lam = np.linalg.eigvalsh(pairing.dense())
    assert all(min(abs(v), abs(v - 2.0)) < 1e-12 for v in lam)


def test_symmetry_operator_rejects_non_involution():
    with pytest.raises(ValueError):
        d.symmetry_operator([1, 2, 0])


def test_cone_membership():
    phi = d.basis_matrix(DttKind.DCT2, 5)
    assert d.check_laplacian_cone(phi, np.ones(5)).ok  # L = I
    assert d.check_laplacian_cone(phi, np.zeros(5)).ok  # cone vertex
    omega = d.graph_frequencies(DttKind.DCT2, 5)
    assert d.check_laplacian_cone(phi, omega).ok  # the path Laplacian itself


def test_cone_rejects_negative_frequency():
    phi = d.basis_matrix(DttKind.DCT2, 5)
    lam = np.zeros(5)
    lam[1] = -1.0
    res = d.check_laplacian_cone(phi, lam)
    assert not res.ok
    assert any(v[0] == "frequency" for v in res.violations)


def test_cone_rejects_positive_offdiagonal():
    # 4I - L_D = 2I + Z(1) has off-diagonal entries +1
    phi = d.basis_matrix(DttKind.DCT2, 4)
    res = d.check_laplacian_cone(phi, 4.0 - d.graph_frequencies(DttKind.DCT2, 4))
    assert not res.ok
    assert any(v[0] == "edge" for v in res.violations)


def test_cone_requires_orthogonal_basis():
    with pytest.raises(ValueError):
        d.check_laplacian_cone(np.ones((3, 3)), np.ones(3))


def test_gallery_text_golden():
    text = d.gallery_text(DttKind.DCT2, 4, [1])
    assert text == "dct2 4 1\n1:1 2:1\n1:1 3:1\n2:1 4:1\n3:1 4:1\n"


def test_gallery_text_sqrt2_formatting():
    text = d.gallery_text(DttKind.DCT5, 6, [1])
    assert "1.41421356237" in text


def test_synthesis_error_on_bad_spectrum(monkeypatch):
    # a generic eigenvalue vector synthesizes a dense matrix; the sparsity
    # contract must catch the mismatch instead of returning garbage
    import dttops.operators as ops_mod

    monkeypatch.setattr(
        ops_mod, "operator_eigenvalues", lambda kind, n, ell: np.linspace(-1.5, 1.7, n)
    )
    with pytest.raises(d.OperatorConstructionError):
        ops_mod.synthesize_operator(DttKind.DST1, 6, 1)


def test_from_rows_capacity_enforced():
    with pytest.raises(d.OperatorConstructionError):
        d.SparseOperator.from_rows(3, [[(0, 1.0), (1, 1.0), (2, 1.0)]], capacity=2)
