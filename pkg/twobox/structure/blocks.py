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

"""Block decomposition of the product algebra and the rank of positives."""

__all__ = [
    'BlockDecomposition',
    'block_decomposition',
    'central_minimal_index',
    'is_central',
    'rank',
]

import logging
import math
from typing import NamedTuple

import numpy as np

from twobox.exceptions import (
    NotCentralMinimalError,
    NotPositiveError,
    NumericallyDegenerateError,
)
from twobox.linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    column_rank,
    eigenvalue_groups,
    hermitian_eig,
    null_space,
)

from .structure import Element, TwoBoxStructure


log = logging.getLogger(__name__)

GENERIC_SEED = 0x2B0C


class BlockDecomposition(NamedTuple):
    """
    Artin-Wedderburn data of the product algebra.

    Blocks are ordered: the block of the Jones projection first, then
    by trace of the minimal projection, then by the first basis vector
    the central idempotent involves.
    """

    central_idempotents: list[Element]
    block_dims: list[int]
    block_traces: list[float]
    minimal_projections: list[list[Element]]

    @property
    def is_abelian(self) -> bool:
        """True if every block is one-dimensional."""
        return all(d == 1 for d in self.block_dims)

    @property
    def minimal(self) -> list[Element]:
        """All minimal projections, block by block."""
        return [p for block in self.minimal_projections for p in block]


def _first_index(element: Element) -> int:
    scale = float(np.max(np.abs(element.coeffs)))
    significant = np.flatnonzero(np.abs(element.coeffs) > 1e-6 * scale)  # noqa: PLR2004
    return int(significant[0]) if significant.size else element.owner.n


def is_central(
    S: TwoBoxStructure, x: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """Return True if `x` commutes with every basis element."""
    return all((x @ b).is_close(b @ x, tol) for b in S)


def _center(S: TwoBoxStructure, tol: Tolerance) -> np.ndarray:
    commutators = np.vstack(
        [S.right_matrix(b) - S.left_matrix(b) for b in S]
    )
    return null_space(commutators, tol)


def _split_block(
    S: TwoBoxStructure,
    range_basis: np.ndarray,
    central: Element,
    dim: int,
    rng: np.random.Generator,
    tol: Tolerance,
) -> list[Element]:
    """Split a full matrix block into `dim` minimal projections."""
    h = S.sample_self_adjoint(rng)
    h = central @ h @ central
    restricted = range_basis.conj().T @ S.left_operator(h) @ range_basis
    values, vectors = hermitian_eig(restricted, tol)
    gap = tol.rank_tol * (1.0 + float(np.max(np.abs(values))))
    groups = eigenvalue_groups(values, gap)
    if len(groups) != dim or any(len(g) != dim for g in groups):
        raise NumericallyDegenerateError(
            f'{S.name}: cannot split block of size {dim}'
        )
    projections = []
    for group in groups:
        basis = range_basis @ vectors[:, group]
        projections.append(
            S.element_of_left_operator(basis @ basis.conj().T)
        )
    return sorted(projections, key=_first_index)


def _decompose(S: TwoBoxStructure, tol: Tolerance) -> BlockDecomposition:
    center = _center(S, tol)
    rng = np.random.default_rng(GENERIC_SEED)
    weights = rng.standard_normal(center.shape[1]) + 1j * rng.standard_normal(
        center.shape[1]
    )
    h = S.element(center @ weights)
    h = (h + S.adjoint(h)) / 2
    values, vectors = hermitian_eig(S.left_operator(h), tol)
    gap = tol.rank_tol * (1.0 + float(np.max(np.abs(values))))
    groups = eigenvalue_groups(values, gap)
    if len(groups) != center.shape[1]:
        raise NumericallyDegenerateError(
            f'{S.name}: center of dimension {center.shape[1]} '
            f'has {len(groups)} distinct eigenvalues'
        )
    blocks = []
    for group in groups:
        dim = math.isqrt(len(group))
        if dim * dim != len(group):
            raise NumericallyDegenerateError(
                f'{S.name}: block of dimension {len(group)} '
                f'is not a full matrix algebra'
            )
        basis = vectors[:, group]
        central = S.element_of_left_operator(basis @ basis.conj().T)
        if dim == 1:
            minimal = [central]
        else:
            minimal = _split_block(S, basis, central, dim, rng, tol)
        trace = S.trace(central).real / dim
        blocks.append((central, dim, trace, minimal))

    jones = S.jones

    def order(block: tuple) -> tuple:
        central, dim, trace, _ = block
        has_jones = (central @ jones).is_close(jones, tol)
        return (not has_jones, round(trace, 8), dim, _first_index(central))

    blocks.sort(key=order)
    log.debug(
        'Blocks of %s: dims=%s', S.name, [block[1] for block in blocks]
    )
    return BlockDecomposition(
        central_idempotents=[block[0] for block in blocks],
        block_dims=[block[1] for block in blocks],
        block_traces=[block[2] for block in blocks],
        minimal_projections=[block[3] for block in blocks],
    )


def block_decomposition(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> BlockDecomposition:
    """
    Return block decomposition of the product algebra of `S`.

    The center is the common null space of all commutator maps
    ``x ↦ x·b − b·x``. A generic self-adjoint central element is
    diagonalized, its spectral projections are the minimal central
    idempotents.

    :raise: :class:`NumericallyDegenerateError`
    """
    return S.memoize(
        ('blocks', tol.eq_tol, tol.rank_tol), lambda: _decompose(S, tol)
    )


def rank(X: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> int:
    """
    Return the number of minimal projections in the spectral resolution.

    Zero test as in :func:`twobox.linalg.support_projection`, absolute
    for elements of norm below 1.

    :param X: Positive element.
    :raise: :class:`NotPositiveError`
    """
    S = X.owner
    if not S.is_self_adjoint(X, tol):
        raise NotPositiveError(float('nan'))
    values = S.spectrum(X, tol)
    if values[0] < -tol.rank_tol * max(1.0, float(values[-1])):
        raise NotPositiveError(float(values[0]))
    blocks = block_decomposition(S, tol)
    total = 0
    for central, dim in zip(
        blocks.central_idempotents, blocks.block_dims, strict=True
    ):
        matrix = S.left_operator(X @ central)
        total += round(column_rank(matrix, tol) / dim)
    return total


def central_minimal_index(
    P: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> int:
    """
    Return block index of central minimal projection `P`.

    :raise: :class:`NotCentralMinimalError`
    """
    blocks = block_decomposition(P.owner, tol)
    for index, (central, dim) in enumerate(
        zip(blocks.central_idempotents, blocks.block_dims, strict=True)
    ):
        if dim == 1 and P.is_close(central, tol):
            return index
    raise NotCentralMinimalError
