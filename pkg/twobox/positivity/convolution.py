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
Convolution operators and the norm and spectral theorems.

``1⊡a`` is represented by the left convolution operator ``x ↦ a*x``
written in an orthonormal basis of the trace inner product. The map
``a ↦ 1⊡a`` is multiplicative for the coproduct and ``1⊡(a*)′`` is
the adjoint of ``1⊡a``.
"""

__all__ = [
    'Check',
    'ConvolutionOperator',
    'convolution_operator',
    'cut_down_check',
    'jones_e2',
    'norm_check',
    'schur_product_check',
    'spectral_biprojection_check',
]

import logging
from typing import NamedTuple

import numpy as np

from twobox.exceptions import NotAProjectionError, TheoremViolationError
from twobox.linalg import (
    DEFAULT_TOLERANCE,
    ComplexMatrix,
    Tolerance,
    frobenius,
    hermitian_eig,
    relative_residual,
    spectral_projection_max,
)
from twobox.structure import Element, TwoBoxStructure, schur_residual

from .biprojections import generated_biprojection


log = logging.getLogger(__name__)


class Check(NamedTuple):
    """Numerical check of an identity."""

    name: str
    residual: float
    passed: bool


class ConvolutionOperator(NamedTuple):
    """Operator ``x ↦ a*x`` in orthonormal coordinates."""

    element: Element
    matrix: ComplexMatrix

    def compose(self, other: 'ConvolutionOperator') -> 'ConvolutionOperator':
        """Return ``1⊡(a*b)``, the product of two operators."""
        return convolution_operator(self.element.coproduct(other.element))

    def adjoint(self) -> 'ConvolutionOperator':
        """Return ``1⊡(a*)′``, the adjoint operator."""
        return convolution_operator(self.element.adjoint().contragredient())

    def norm(self, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
        """Return operator norm."""
        gram = self.matrix.conj().T @ self.matrix
        values = hermitian_eig((gram + gram.conj().T) / 2, tol).eigenvalues
        return float(np.sqrt(max(float(values[-1]), 0.0)))


def convolution_operator(a: Element) -> ConvolutionOperator:
    """Return ``1⊡a`` as the operator ``x ↦ a*x``."""
    return ConvolutionOperator(a, a.owner.convolution_operator(a))


def jones_e2(S: TwoBoxStructure) -> ConvolutionOperator:
    """Return the Jones projection ``e_2 = (1/δ)(1⊡id)``."""
    return convolution_operator(S.identity / S.delta)


def schur_product_check(
    S: TwoBoxStructure,
    trials: int = 200,
    seed: int = 20231,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Check:
    """
    Check that coproducts of positive elements are positive.

    Every pair of minimal projections and `trials` random positive
    pairs are sampled. Besides the spectrum, ``tr(a*b) > 0`` is
    required.
    """
    worst, smallest_trace = schur_residual(S, trials, seed, tol)
    passed = worst <= tol.rank_tol and smallest_trace > 0
    return Check('schur_product', worst, passed)


def norm_check(A: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """
    Return ``‖1⊡A‖`` for positive `A`, asserting it equals ``tr(A)/δ``.

    :raise: :class:`TheoremViolationError`
    """
    S = A.owner
    norm = convolution_operator(A).norm(tol)
    expected = A.trace().real / S.delta
    residual = abs(norm - expected) / (1.0 + expected)
    if residual > tol.rank_tol:
        raise TheoremViolationError('‖1⊡A‖ = tr(A)/δ', residual)
    return norm


def spectral_biprojection_check(
    A: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> Check:
    """
    Compare the top spectral projection of ``1⊡(A + A′)`` with ``1⊡P``.

    Here `P` is the biprojection generated by positive `A`, the
    expected projection is ``1⊡((δ/tr(P))·P)``.

    :raise: :class:`TheoremViolationError`
    """
    S = A.owner
    P = generated_biprojection(A, tol)
    top = spectral_projection_max(
        S.convolution_operator(A + A.contragredient()), tol
    )
    expected = S.convolution_operator(P.element * (S.delta / P.trace))
    residual = frobenius(top - expected)
    if residual > tol.rank_tol:
        raise TheoremViolationError(
            'top spectral projection of 1⊡(A+A′) = 1⊡(δ/tr(P))P', residual
        )
    return Check('spectral_biprojection', residual, True)


def cut_down_check(
    Q: Element,
    A: Element,
    trials: int = 10,
    seed: int = 20231,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Check | None:
    """
    Check that ``Q*A*Q = (tr(A)/δ)Q`` passes to elements below `A`.

    `Q` must have a projection as convolution operator, `A` is positive.
    Random self-adjoint ``B ≼ A`` are sampled and ``Q*B*Q`` is compared
    with ``(tr(B)/δ)Q``.

    :return: None if ``Q*A*Q ≠ (tr(A)/δ)Q``, otherwise the check.
    :raise: :class:`NotAProjectionError`
    """
    S = Q.owner
    operator = S.convolution_operator(Q)
    residual = max(
        relative_residual(operator, operator.conj().T),
        relative_residual(operator @ operator, operator),
    )
    if residual > tol.eq_tol:
        raise NotAProjectionError(residual)
    scale = A.trace() / S.delta
    if not Q.coproduct(A).coproduct(Q).is_close(Q * scale, tol):
        return None
    support = S.support(A, tol)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        B = support @ S.sample_self_adjoint(rng) @ support
        worst = max(
            worst,
            Q.coproduct(B).coproduct(Q).residual(Q * (B.trace() / S.delta)),
        )
    log.debug('Cut-down check over %s samples: %.3e', trials, worst)
    return Check('cut_down', worst, worst <= tol.eq_tol)
