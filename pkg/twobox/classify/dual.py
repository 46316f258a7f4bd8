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
Dual idempotents and the λ-matrix.

Minimal idempotents ``Q_j`` of the coproduct algebra are common
eigenvectors of all convolution operators. A minimal projection ``P_i``
of the product algebra acts on them by ``P_i*Q_j = λ_ij Q_j``. The
direction ``Q_j`` lies in the basic construction ideal iff
``|λ_ij| = tr(P_i)/δ``, every other pair contributes one dimension to
the new part of the 3-boxes.
"""

__all__ = [
    'CommuteType',
    'DimBound',
    'DualIdempotentBasis',
    'LambdaMatrix',
    'commute_type',
    'depth2_support',
    'dim_bound_report',
    'dimension_bound',
    'dual_idempotents',
    'lambda_matrix',
    'new_part_dimension',
    'new_part_profile',
]

import logging
from enum import StrEnum
from typing import NamedTuple

import numpy as np

from twobox.abstract import Report
from twobox.catalog import fourier_dual
from twobox.exceptions import (
    NonabelianDualError,
    NonabelianEitherSideError,
    NumericallyDegenerateError,
    TheoremViolationError,
)
from twobox.linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    eigenvalue_groups,
    hermitian_eig,
)
from twobox.positivity import is_biprojection
from twobox.structure import Element, TwoBoxStructure, block_decomposition


log = logging.getLogger(__name__)

GENERIC_SEED = 0x1D2


class DualIdempotentBasis(NamedTuple):
    """
    Minimal idempotents of the coproduct algebra.

    The first one is ``id/δ`` whose convolution operator is the Jones
    projection ``e_2``.
    """

    idempotents: list[Element]

    @property
    def e2(self) -> Element:
        """The ``e_2`` direction ``id/δ``."""
        return self.idempotents[0]

    @property
    def nontrivial(self) -> list[Element]:
        """Idempotents other than ``id/δ``."""
        return self.idempotents[1:]


class LambdaMatrix(NamedTuple):
    """Eigenvalues ``P_i*Q_j = λ_ij Q_j``."""

    rows: list[Element]
    columns: list[Element]
    values: np.ndarray

    @property
    def row_norms(self) -> np.ndarray:
        """``tr(P_i)/δ`` per row, the maximal possible ``|λ_ij|``."""
        return np.array([
            P.trace().real / P.owner.delta for P in self.rows
        ])

    def new_part_mask(self, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
        """Boolean matrix of pairs with ``|λ_ij| ≠ tr(P_i)/δ``."""
        bound = self.row_norms[:, None]
        return np.abs(np.abs(self.values) - bound) > tol.eq_tol * (1 + bound)


def _coefficient_key(x: Element) -> tuple:
    return tuple(
        (round(float(c.real), 8) + 0.0, round(float(c.imag), 8) + 0.0)
        for c in x.coeffs
    )


def dual_idempotents(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> DualIdempotentBasis:
    """
    Return minimal idempotents of the abelian coproduct algebra.

    A generic operator ``1⊡(a + (a*)′)`` is diagonalized, its
    eigenprojections are convolution operators of the idempotents.

    :raise: :class:`NonabelianDualError`,
        :class:`NumericallyDegenerateError`
    """
    if not S.coproduct_is_commutative(tol):
        raise NonabelianDualError

    def compute() -> DualIdempotentBasis:
        rng = np.random.default_rng(GENERIC_SEED)
        a = S.element(rng.standard_normal(S.n) + 1j * rng.standard_normal(S.n))
        h = a + a.adjoint().contragredient()
        values, vectors = hermitian_eig(S.convolution_operator(h), tol)
        gap = tol.rank_tol * (1.0 + float(np.max(np.abs(values))))
        if len(eigenvalue_groups(values, gap)) != S.n:
            raise NumericallyDegenerateError(
                f'{S.name}: generic convolution operator is degenerate'
            )
        idempotents = [
            S.element_of_convolution_operator(np.outer(v, v.conj()))
            for v in vectors.T
        ]
        e2 = S.identity / S.delta
        first = [q for q in idempotents if q.is_close(e2, tol)]
        if len(first) != 1:
            raise TheoremViolationError('id/δ is a minimal dual idempotent')
        rest = sorted(
            (q for q in idempotents if not q.is_close(e2, tol)),
            key=_coefficient_key,
        )
        return DualIdempotentBasis([e2, *rest])

    return S.memoize(('dual', tol.eq_tol, tol.rank_tol), compute)


def _product_minimal(S: TwoBoxStructure, tol: Tolerance) -> list[Element]:
    """Minimal projections of the abelian product algebra other than e."""
    blocks = block_decomposition(S, tol)
    if not blocks.is_abelian:
        raise NonabelianEitherSideError('product')
    return blocks.minimal[1:]


def lambda_matrix(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> LambdaMatrix:
    """
    Return λ-matrix of a structure with both algebras abelian.

    :raise: :class:`NonabelianEitherSideError`,
        :class:`TheoremViolationError`
    """
    rows = _product_minimal(S, tol)
    if not S.coproduct_is_commutative(tol):
        raise NonabelianEitherSideError('coproduct')
    columns = dual_idempotents(S, tol).nontrivial
    values = np.zeros((len(rows), len(columns)), dtype=np.complex128)
    for i, P in enumerate(rows):
        for j, Q in enumerate(columns):
            image = P.coproduct(Q)
            value = S.inner(Q, image) / S.inner(Q, Q)
            residual = image.residual(Q * value)
            if residual > tol.eq_tol:
                raise TheoremViolationError('P_i*Q_j = λ_ij Q_j', residual)
            values[i, j] = value
    return LambdaMatrix(rows, columns, values)


def new_part_profile(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> list[int]:
    """
    Return per minimal projection ``P_i ≠ e`` its new part count.

    With an abelian coproduct algebra this counts ``j`` with
    ``|λ_ij| ≠ tr(P_i)/δ``. Otherwise each block of size ``d`` of the
    coproduct algebra, except the one of ``e_2``, contributes the number
    of singular values of ``1⊡P_i`` on the block which differ from
    ``tr(P_i)/δ``, divided by ``d``.

    :raise: :class:`NonabelianEitherSideError`
    """
    rows = _product_minimal(S, tol)
    if S.coproduct_is_commutative(tol):
        mask = lambda_matrix(S, tol).new_part_mask(tol)
        return [int(count) for count in mask.sum(axis=1)]
    dual = fourier_dual(S, tol, verify=False)
    blocks = block_decomposition(dual, tol)
    counts = []
    for P in rows:
        bound = P.trace().real / S.delta
        count = 0
        for central, dim in zip(
            blocks.central_idempotents[1:], blocks.block_dims[1:], strict=True
        ):
            z = S.element(central.coeffs)
            sigma = np.linalg.svd(
                S.convolution_operator(P.coproduct(z)), compute_uv=False
            )[: dim * dim]
            differ = np.abs(sigma - bound) > tol.eq_tol * (1 + bound)
            count += int(np.sum(differ)) // dim
        counts.append(count)
    return counts


def new_part_dimension(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> int:
    """
    Return the certificate for ``dim(S₃/I₃)`` from 2-box data.

    Exact for exchange relation planar algebras with abelian S₂, an
    upper bound certificate otherwise.

    :raise: :class:`NonabelianEitherSideError`
    """
    return sum(new_part_profile(S, tol))


def depth2_support(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> Element:
    """
    Return the central biprojection of the depth 2 part.

    It is ``e`` plus every minimal projection ``P_i`` whose new part
    count vanishes.

    :raise: :class:`NonabelianEitherSideError`,
        :class:`TheoremViolationError`
    """
    rows = _product_minimal(S, tol)
    support = S.jones
    for P, count in zip(rows, new_part_profile(S, tol), strict=True):
        if count == 0:
            support = support + P
    if not is_biprojection(support, tol):
        raise TheoremViolationError('depth 2 part is a biprojection')
    log.debug('Depth 2 part of %s has trace %s', S.name, support.trace())
    return support


def dimension_bound(dim_n: int, dim_2: int, n: int) -> int:
    """Return bound ``dim(S_n)² + (dim(S_2) − 1)^n`` of ``dim(S_(n+1))``."""
    return dim_n**2 + (dim_2 - 1) ** n


class CommuteType(StrEnum):
    """Which of S₂ and its dual are abelian."""

    AA = 'AA'
    AN = 'AN'
    NA = 'NA'


def commute_type(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> CommuteType | None:
    """
    Return commute relation type flag.

    ``AA`` both algebras abelian, ``AN`` only S₂ abelian, ``NA`` only
    the coproduct algebra abelian, None if neither is.
    """
    product = S.product_is_commutative(tol)
    coproduct = S.coproduct_is_commutative(tol)
    if product and coproduct:
        return CommuteType.AA
    if product:
        return CommuteType.AN
    if coproduct:
        return CommuteType.NA
    return None


class DimBound(Report):
    """Dimension bound for 3-boxes with the new part certificate."""

    def __init__(
        self,
        dim_2: int,
        new_part: int | None,
        product_abelian: bool,
        dual_abelian: bool,
    ):
        """
        Initialise DimBound.

        :param dim_2: Dimension of S₂.
        :param new_part: New part certificate, None if not computable.
        :param product_abelian: Whether S₂ is abelian.
        :param dual_abelian: Whether the coproduct algebra is abelian.
        """
        self.dim_2 = dim_2
        self.new_part = new_part
        self.product_abelian = product_abelian
        self.dual_abelian = dual_abelian

    @property
    def bound(self) -> int:
        """``dim(S₂)² + (dim(S₂) − 1)²``."""
        return dimension_bound(self.dim_2, self.dim_2, 2)

    @property
    def estimate(self) -> int | None:
        """``dim(S₂)² + new part``."""
        if self.new_part is None:
            return None
        return self.dim_2**2 + self.new_part

    def as_dict(self) -> dict:
        """Return report as dict."""
        return {
            'dim_2': self.dim_2,
            'bound': self.bound,
            'new_part_dimension': self.new_part,
            'estimate': self.estimate,
            'product_abelian': self.product_abelian,
            'dual_abelian': self.dual_abelian,
        }


def dim_bound_report(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> DimBound:
    """Return dimension bound of 3-boxes and the certificate estimate."""
    product = S.product_is_commutative(tol)
    try:
        new_part = new_part_dimension(S, tol) if product else None
    except (NonabelianEitherSideError, TheoremViolationError) as e:
        log.debug('New part of %s not computable: %s', S.name, e)
        new_part = None
    return DimBound(S.n, new_part, product, S.coproduct_is_commutative(tol))
