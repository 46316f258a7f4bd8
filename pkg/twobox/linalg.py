# This file is part of Twobox
#
# Twobox is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# Twobox is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with Twobox.  If not, see <http://www.gnu.org/licenses/>.

"""
Dense complex linear algebra with a uniform tolerance policy.

Matrices are two-dimensional :class:`numpy.ndarray` objects of dtype
``complex128``. Hermitian eigenproblems are solved with the cyclic
Jacobi method, spans and null spaces use singular value decomposition.
"""

__all__ = [
    'ComplexMatrix',
    'HermitianEig',
    'Tolerance',
    'as_matrix',
    'column_rank',
    'eigenvalue_groups',
    'frobenius',
    'hermitian_eig',
    'is_close',
    'null_space',
    'range_basis',
    'relative_residual',
    'spectral_projection_max',
    'support_projection',
]

import logging
from typing import NamedTuple

import numpy as np
import numpy.typing as npt
from pydantic import validator

from .abstract import EntityModel
from .exceptions import (
    NoConvergenceError,
    NonFiniteError,
    NotHermitianError,
    NotPositiveError,
    NotSquareError,
)


log = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]

MAX_SWEEPS = 100
EPS = float(np.finfo(np.float64).eps)
TINY = float(np.finfo(np.float64).tiny)


class Tolerance(EntityModel):
    """
    Tolerances threaded through every computation.

    :ivar eq_tol: relative tolerance for equality assertions
    :ivar rank_tol: relative threshold separating zero eigenvalues and
        singular values from non-zero ones
    :ivar roundtrip_tol: tolerance for serialization round trips
    """

    eq_tol: float = 1e-9
    rank_tol: float = 1e-8
    roundtrip_tol: float = 1e-12

    class Config:
        """Tolerances are immutable."""

        allow_mutation = False

    @validator('eq_tol', 'rank_tol', 'roundtrip_tol')
    def _check_positive(cls, value: float) -> float:  # noqa: N805
        if not np.isfinite(value) or value <= 0:
            raise ValueError('tolerance must be positive and finite')
        return value

    @validator('eq_tol')
    def _check_eq_tol(cls, value: float) -> float:  # noqa: N805
        if value < EPS * 100:
            raise ValueError(
                f'eq_tol must be at least 100 machine epsilons ({EPS*100})'
            )
        return value


DEFAULT_TOLERANCE = Tolerance()


class HermitianEig(NamedTuple):
    """Eigendecomposition of a Hermitian matrix."""

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: ComplexMatrix


def as_matrix(value: npt.ArrayLike, *, square: bool = True) -> ComplexMatrix:
    """
    Convert `value` to a complex matrix.

    :raise: :class:`NotSquareError`, :class:`NonFiniteError`
    """
    matrix = np.array(value, dtype=np.complex128)
    if matrix.ndim == 0:
        matrix = matrix.reshape(1, 1)
    if matrix.ndim != 2 or (square and matrix.shape[0] != matrix.shape[1]):  # noqa: PLR2004
        raise NotSquareError(matrix.shape)
    if not np.all(np.isfinite(matrix)):
        raise NonFiniteError
    return matrix


def frobenius(value: npt.ArrayLike) -> float:
    """Return Frobenius (Euclidean) norm."""
    return float(np.linalg.norm(np.asarray(value)))


def relative_residual(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """Return ``‖a − b‖ / (1 + max(‖a‖, ‖b‖))``."""
    a, b = np.asarray(a), np.asarray(b)
    return frobenius(a - b) / (1.0 + max(frobenius(a), frobenius(b)))


def is_close(
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    tol: float = DEFAULT_TOLERANCE.eq_tol,
) -> bool:
    """Compare arrays with relative Frobenius tolerance."""
    return relative_residual(a, b) <= tol


def _check_hermitian(matrix: ComplexMatrix, tol: Tolerance) -> None:
    residual = frobenius(matrix - matrix.conj().T)
    if residual > tol.eq_tol * (1.0 + frobenius(matrix)):
        raise NotHermitianError(residual)


def _rotate(
    a: ComplexMatrix,
    v: ComplexMatrix,
    p: int,
    q: int,
) -> None:
    """Annihilate ``a[p, q]`` by a unitary rotation in place."""
    b = a[p, q]
    r = abs(b)
    if r == 0:
        return
    app, aqq = a[p, p].real, a[q, q].real
    theta = (aqq - app) / (2.0 * r)
    if abs(theta) > 1e150:  # noqa: PLR2004
        t = 0.5 / theta
    else:
        t = (1.0 if theta >= 0 else -1.0) / (
            abs(theta) + np.sqrt(theta * theta + 1.0)
        )
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    w = np.exp(-1j * np.angle(b))
    col_p, col_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * col_p - s * w * col_q
    a[:, q] = s * col_p + c * w * col_q
    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * row_p - s * np.conj(w) * row_q
    a[q, :] = s * row_p + c * np.conj(w) * row_q
    a[p, q] = a[q, p] = 0.0
    a[p, p] = app - t * r
    a[q, q] = aqq + t * r
    vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vec_p - s * w * vec_q
    v[:, q] = s * vec_p + c * w * vec_q


def hermitian_eig(
    h: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> HermitianEig:
    """
    Diagonalize Hermitian matrix with the cyclic Jacobi method.

    :param h: Hermitian matrix.
    :param tol: Tolerance for the Hermitian check.
    :return: Eigenvalues in ascending order and unitary matrix of
        eigenvectors (columns).
    :raise: :class:`NotSquareError`, :class:`NotHermitianError`,
        :class:`NoConvergenceError`
    """
    h = as_matrix(h)
    _check_hermitian(h, tol)
    n = h.shape[0]
    a = (h + h.conj().T) / 2
    v = np.eye(n, dtype=np.complex128)
    norm = frobenius(a)
    threshold = max(16 * n * EPS * norm, TINY)
    off = frobenius(a - np.diag(np.diag(a)))
    sweeps = 0
    while off > threshold:
        if sweeps == MAX_SWEEPS:
            raise NoConvergenceError(sweeps, off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
        sweeps += 1
        off = frobenius(a - np.diag(np.diag(a)))
    log.debug('Jacobi: n=%s converged in %s sweeps', n, sweeps)
    values = np.diag(a).real
    order = np.argsort(values, kind='stable')
    return HermitianEig(values[order], v[:, order])


def eigenvalue_groups(values: npt.NDArray, gap: float) -> list[list[int]]:
    """
    Split ascending `values` into clusters.

    Neighbouring values closer than `gap` fall into the same cluster.
    """
    groups = []
    for index, value in enumerate(values):
        if groups and value - values[groups[-1][-1]] <= gap:
            groups[-1].append(index)
        else:
            groups.append([index])
    return groups


def support_projection(
    x: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> ComplexMatrix:
    """
    Return orthogonal projection onto the range of PSD matrix `x`.

    Eigenvalues not above ``rank_tol * max(1, λ_max)`` count as zero.
    The cutoff is absolute for matrices with ``λ_max < 1``, so a matrix
    whose spectrum lies below ``rank_tol`` has empty support; rescale
    it or pass a smaller ``rank_tol``.

    :raise: :class:`NotPositiveError`
    """
    values, vectors = hermitian_eig(x, tol)
    top = max(1.0, float(values[-1]))
    if values[0] < -tol.rank_tol * top:
        raise NotPositiveError(float(values[0]))
    kept = vectors[:, values > tol.rank_tol * top]
    return kept @ kept.conj().T


def spectral_projection_max(
    h: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> ComplexMatrix:
    """
    Return projection onto the eigenspace of the maximal eigenvalue.

    Eigenvalues within ``rank_tol * (1 + |λ_max|)`` of the maximal one
    are grouped with it.

    :raise: :class:`NotHermitianError`
    """
    values, vectors = hermitian_eig(h, tol)
    top = float(values[-1])
    kept = vectors[:, values >= top - tol.rank_tol * (1.0 + abs(top))]
    return kept @ kept.conj().T


def _singular(matrix: ComplexMatrix) -> tuple[npt.NDArray, ComplexMatrix]:
    if matrix.shape[0] == 0:
        return np.zeros(0), np.eye(matrix.shape[1], dtype=np.complex128)
    _, sigma, vh = np.linalg.svd(matrix)
    return sigma, vh


def column_rank(
    matrix: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> int:
    """Return numerical rank using relative singular value threshold."""
    matrix = as_matrix(matrix, square=False)
    if matrix.size == 0:
        return 0
    sigma = np.linalg.svd(matrix, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0:
        return 0
    return int(np.sum(sigma > tol.rank_tol * max(1.0, sigma[0])))


def null_space(
    matrix: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> ComplexMatrix:
    """
    Return orthonormal basis (columns) of the null space of `matrix`.

    Singular values below ``rank_tol * max(1, σ_max)`` count as zero.
    """
    matrix = as_matrix(matrix, square=False)
    cols = matrix.shape[1]
    sigma, vh = _singular(matrix)
    top = max(1.0, float(sigma[0])) if sigma.size else 1.0
    rank = int(np.sum(sigma > tol.rank_tol * top))
    return vh[rank:].conj().T.reshape(cols, cols - rank)


def range_basis(
    matrix: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> ComplexMatrix:
    """Return orthonormal basis (columns) of the column space."""
    matrix = as_matrix(matrix, square=False)
    if matrix.shape[1] == 0:
        return np.zeros((matrix.shape[0], 0), dtype=np.complex128)
    u, sigma, _ = np.linalg.svd(matrix, full_matrices=False)
    top = max(1.0, float(sigma[0])) if sigma.size else 1.0
    rank = int(np.sum(sigma > tol.rank_tol * top))
    return u[:, :rank]
