import numpy as np
import pydantic
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from twobox.exceptions import (
    NonFiniteError,
    NotHermitianError,
    NotPositiveError,
    NotSquareError,
)
from twobox.linalg import (
    Tolerance,
    as_matrix,
    column_rank,
    eigenvalue_groups,
    hermitian_eig,
    null_space,
    range_basis,
    relative_residual,
    spectral_projection_max,
    support_projection,
)


entries = st.floats(-10, 10, allow_nan=False, allow_subnormal=False)


@st.composite
def hermitian_matrices(draw: st.DrawFn) -> np.ndarray:
    n = draw(st.integers(1, 6))
    re = draw(arrays(np.float64, (n, n), elements=entries))
    im = draw(arrays(np.float64, (n, n), elements=entries))
    a = re + 1j * im
    return (a + a.conj().T) / 2


def test_tolerance_defaults():
    tol = Tolerance()
    assert (tol.eq_tol, tol.rank_tol, tol.roundtrip_tol) == (1e-9, 1e-8, 1e-12)


@pytest.mark.parametrize(
    'kwargs',
    [{'eq_tol': 0}, {'rank_tol': -1e-3}, {'eq_tol': 1e-20},
     {'roundtrip_tol': float('nan')}],
)
def test_tolerance_rejects(kwargs):
    with pytest.raises(pydantic.ValidationError):
        Tolerance(**kwargs)


def test_tolerance_is_immutable():
    with pytest.raises(TypeError):
        Tolerance().eq_tol = 1e-3


def test_as_matrix():
    assert as_matrix(2.0).shape == (1, 1)
    with pytest.raises(NotSquareError):
        as_matrix(np.zeros((2, 3)))
    with pytest.raises(NonFiniteError):
        as_matrix([[np.nan]])
    assert as_matrix(np.zeros((2, 3)), square=False).shape == (2, 3)


@settings(max_examples=60, deadline=None)
@given(hermitian_matrices())
def test_hermitian_eig_matches_numpy(h):
    values, vectors = hermitian_eig(h)
    scale = 1.0 + np.linalg.norm(h)
    assert np.all(np.diff(values) >= -1e-12 * scale)
    np.testing.assert_allclose(
        values, np.linalg.eigvalsh(h), rtol=0, atol=1e-9 * scale
    )
    np.testing.assert_allclose(
        vectors.conj().T @ vectors, np.eye(len(h)), rtol=0, atol=1e-9
    )
    rebuilt = vectors @ np.diag(values) @ vectors.conj().T
    assert relative_residual(rebuilt, h) < 1e-10


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eig([[0, 1], [0, 0]])


def test_eigenvalue_groups():
    values = np.array([0.0, 1e-12, 1.0, 1.0, 3.0])
    assert eigenvalue_groups(values, 1e-9) == [[0, 1], [2, 3], [4]]


def test_support_projection():
    x = np.diag([0.0, 2.0, 5.0]).astype(complex)
    np.testing.assert_allclose(support_projection(x), np.diag([0, 1, 1]))
    with pytest.raises(NotPositiveError):
        support_projection(np.diag([-1.0, 1.0]))


def test_support_cutoff_is_absolute_below_one():
    tiny = np.diag([1e-9, 2e-9, 0.0]).astype(complex)
    np.testing.assert_allclose(support_projection(tiny), np.zeros((3, 3)))
    fine = Tolerance(rank_tol=1e-12)
    np.testing.assert_allclose(
        support_projection(tiny, fine), np.diag([1, 1, 0]), atol=1e-12
    )
    np.testing.assert_allclose(
        support_projection(tiny * 1e9), np.diag([1, 1, 0]), atol=1e-12
    )


def test_spectral_projection_max():
    h = np.array([[2, 0, 0], [0, 2, 0], [0, 0, -1]], dtype=complex)
    np.testing.assert_allclose(
        spectral_projection_max(h), np.diag([1, 1, 0]), atol=1e-12
    )


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.integers(0, 2**32 - 1),
)
def test_rank_and_spaces(rows, rank, seed):
    rng = np.random.default_rng(seed)
    rank = min(rank, rows)
    m = rng.standard_normal((rows, rank)) @ rng.standard_normal((rank, 5))
    assert column_rank(m) == rank
    kernel = null_space(m)
    assert kernel.shape == (5, 5 - rank)
    assert np.allclose(m @ kernel, 0, atol=1e-9)
    image = range_basis(m)
    assert image.shape == (rows, rank)
    assert np.allclose(image @ image.conj().T @ m, m, atol=1e-9)
