import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoherm.errors import DimensionError
from pseudoherm.linalg import adjoint, as_cmat, commutator, eig2, expm, real_null_space
from pseudoherm.metric import MassParams, build_A, build_P, build_PA, hermitian_coordinates, hermitian_basis, mass_matrix

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def cmats(draw, n=None, bound=10.0):
    n = n or draw(st.integers(2, 4))
    parts = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    re = np.array(draw(st.lists(parts, min_size=n * n, max_size=n * n)))
    im = np.array(draw(st.lists(parts, min_size=n * n, max_size=n * n)))
    return (re + 1j * im).reshape(n, n)


def test_as_cmat_rejects_bad_input():
    with pytest.raises(DimensionError):
        as_cmat(np.eye(5))
    with pytest.raises(DimensionError):
        as_cmat(np.ones((2, 3)))
    with pytest.raises(ValueError):
        as_cmat([[1, np.nan], [0, 1]])


def test_adjoint_examples():
    np.testing.assert_array_equal(adjoint(np.diag([1, -1])), np.diag([1, -1]))
    np.testing.assert_array_equal(adjoint([[0, 1j], [0, 0]]), [[0, 0], [-1j, 0]])
    np.testing.assert_array_equal(adjoint(mass_matrix(MassParams(2, 1, 0.3))), [[2, -0.3], [0.3, 1]])


@given(cmats())
def test_adjoint_is_involution(m):
    np.testing.assert_array_equal(adjoint(adjoint(m)), m)


def test_commutator_examples():
    m = mass_matrix(MassParams(2, 1, 0.3))
    np.testing.assert_array_equal(commutator(np.eye(2), m), np.zeros((2, 2)))
    assert np.linalg.norm(commutator(m, build_A(0.6))) < 1e-12
    c = commutator(build_P().eta, m)
    np.testing.assert_allclose(c, [[0, 0.6], [0.6, 0]], atol=0)
    with pytest.raises(DimensionError):
        commutator(np.eye(2), np.eye(3))


def test_eig2_diagonal():
    pair = eig2(np.diag([1.0, 3.0]))
    assert pair.lambda_plus == 3 and pair.lambda_minus == 1
    np.testing.assert_array_equal(pair.v_plus, [0, 1])
    np.testing.assert_array_equal(pair.v_minus, [1, 0])
    pair = eig2(np.diag([3.0, 1.0]))
    np.testing.assert_array_equal(pair.v_plus, [1, 0])
    assert not pair.defective


def test_eig2_mass_matrix():
    m = mass_matrix(MassParams(2, 1, 0.3))
    pair = eig2(m)
    # oracle: roots of lambda^2 - 3 lambda + 2.09
    roots = sorted(np.roots([1, -3, 2.09]).real)
    assert pair.lambda_plus == pytest.approx(1.9, abs=1e-14) == pytest.approx(roots[1])
    assert pair.lambda_minus == pytest.approx(1.1, abs=1e-14) == pytest.approx(roots[0])
    assert not pair.defective
    np.testing.assert_allclose(pair.v_plus, np.array([0.3, -0.1]) / np.hypot(0.3, 0.1), atol=1e-15)
    for lam, v in ((pair.lambda_plus, pair.v_plus), (pair.lambda_minus, pair.v_minus)):
        np.testing.assert_allclose(m @ v, lam * v, atol=1e-14)


def test_eig2_exceptional_point_is_defective():
    pair = eig2(mass_matrix(MassParams(2, 1, 0.5)))
    assert pair.defective
    assert pair.lambda_plus == pair.lambda_minus == 1.5
    assert np.linalg.matrix_rank(pair.vectors()) == 1
    np.testing.assert_allclose(mass_matrix(MassParams(2, 1, 0.5)) @ pair.v_plus, 1.5 * pair.v_plus, atol=1e-15)


def test_eig2_jordan_block_and_scalar():
    assert eig2([[1, 1], [0, 1]]).defective
    pair = eig2(2 * np.eye(2))
    assert not pair.defective
    assert np.linalg.matrix_rank(pair.vectors()) == 2


def test_eig2_broken_regime_ordering():
    pair = eig2(mass_matrix(MassParams(2, 1, 0.75)))
    assert pair.lambda_plus.imag > 0
    assert pair.lambda_plus == pytest.approx(1.5 + 1j * np.sqrt(0.3125), abs=1e-14)
    assert pair.lambda_minus == pytest.approx(np.conj(pair.lambda_plus), abs=1e-14)


def test_eig2_phase_convention():
    pair = eig2([[1, 2j], [0.5, -1]])
    for v in (pair.v_plus, pair.v_minus):
        assert v[0].imag == 0 and v[0].real > 0
        assert np.linalg.norm(v) == pytest.approx(1)


@settings(max_examples=200)
@given(cmats(n=2))
def test_eig2_reconstruction_and_symmetric_functions(m):
    pair = eig2(m)
    # max entry bounds the Frobenius norm within a factor 2 and, unlike it, cannot underflow
    scale = 2 * float(np.max(np.abs(m))) or 1e-300
    tr = np.trace(m)
    det = np.linalg.det(m)
    assert abs(pair.lambda_plus + pair.lambda_minus - tr) <= 1e-12 * scale
    if pair.defective:
        # merged eigenvalue: lambda^2 - det is the discriminant, inside the band
        assert abs(pair.lambda_plus * pair.lambda_minus - det) <= 1e-9 * scale**2 * (1 + 1e-6)
    else:
        assert abs(pair.lambda_plus * pair.lambda_minus - det) <= 1e-12 * scale**2
        s = pair.vectors()
        if np.linalg.cond(s) < 1e4:
            recon = s @ np.diag([pair.lambda_plus, pair.lambda_minus]) @ np.linalg.inv(s)
            assert np.linalg.norm(recon - m) <= 1e-10 * scale * np.linalg.cond(s)


@given(st.floats(0.05, 5), st.floats(0.05, 5), st.floats(0.01, 5))
def test_eig2_trace_det_of_mass_matrix(m2, gap, m5):
    p = MassParams(m2 + gap, m2, m5)
    pair = eig2(mass_matrix(p))
    tr = p.m1_sq + p.m2_sq
    det = p.m1_sq * p.m2_sq + p.m5_sq**2
    assert abs(pair.lambda_plus + pair.lambda_minus - tr) <= 1e-12 * tr
    assert abs(pair.lambda_plus * pair.lambda_minus - det) <= 1e-12 * det


def test_expm_examples():
    np.testing.assert_array_equal(expm(np.zeros((3, 3))), np.eye(3))
    np.testing.assert_allclose(expm(np.diag([0.5, -2.0])), np.diag(np.exp([0.5, -2.0])), rtol=1e-14)
    h = mass_matrix(MassParams(2, 1, 0.3))
    for t in (0.1, 1.0, 7.5):
        prod = expm(-1j * h * t) @ expm(1j * h * t)
        assert np.linalg.norm(prod - np.eye(2)) < 1e-12


@settings(max_examples=100)
@given(cmats(bound=3.0))
def test_expm_inverse_property(a):
    if np.linalg.norm(a) > 10:
        a = a * (10 / np.linalg.norm(a))
    prod = expm(a) @ expm(-a)
    assert np.linalg.norm(prod - np.eye(a.shape[0])) <= 1e-12 * max(1.0, np.linalg.norm(expm(a)) * np.linalg.norm(expm(-a)))


@settings(max_examples=100)
@given(cmats(bound=3.0))
def test_expm_matches_scipy(a):
    ref = scipy.linalg.expm(a)
    assert np.linalg.norm(expm(a) - ref) <= 1e-12 * max(1.0, np.linalg.norm(ref))


def test_real_null_space_examples():
    assert real_null_space(np.eye(3)) == []
    basis = real_null_space(np.zeros((2, 2)))
    assert len(basis) == 2
    np.testing.assert_allclose(np.array(basis) @ np.array(basis).T, np.eye(2), atol=1e-15)


def test_real_null_space_of_pseudo_hermiticity_constraint():
    m = mass_matrix(MassParams(2, 1, 0.3))
    herm = hermitian_basis(2)
    cols = []
    for b in herm:
        c = m.conj().T @ b - b @ m
        cols.append(np.concatenate([c.real.ravel(), c.imag.ravel()]))
    r = np.column_stack(cols)
    basis = np.array(real_null_space(r))
    assert basis.shape[0] >= 2
    for eta in (build_P().eta, build_PA(0.6).eta):
        c = hermitian_coordinates(eta)
        # substitution: both metrics satisfy the constraint
        assert np.linalg.norm(r @ c) < 1e-14
        resid = c - basis.T @ (basis @ c)
        assert np.linalg.norm(resid) < 1e-12 * np.linalg.norm(c)


@given(st.lists(finite, min_size=12, max_size=12), st.integers(1, 3))
def test_real_null_space_vectors_are_null(entries, rank_drop):
    r = np.array(entries).reshape(3, 4)
    r[-rank_drop:] = 0
    tol = 1e-10
    smax = np.linalg.svd(r, compute_uv=False)[0] if np.any(r) else 0.0
    for x in real_null_space(r, tol):
        assert np.linalg.norm(r @ x) <= 10 * tol * smax * np.linalg.norm(x) + 1e-300


def test_eig2_merges_eigenvalues_inside_defective_band():
    # eigenvalues 0 and 6.1e-5: disc = 9.3e-10 ||M||^2 lies inside the 1e-9 band
    m = np.array([[0, 0], [1j, 2.0**-14]])
    pair = eig2(m)
    assert pair.defective and pair.lambda_plus == pair.lambda_minus == 2.0**-15
    loose = eig2(m, tol_def=1e-12)
    assert not loose.defective
    assert {loose.lambda_plus, loose.lambda_minus} == {2.0**-14, 0}
