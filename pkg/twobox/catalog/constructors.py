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

"""Temperley-Lieb, group, Fourier dual and subgroup structures."""

__all__ = [
    'chi',
    'fourier_dual',
    'make_TL',
    'make_group',
    'make_subgroup_2p2',
]

import logging
import math

import numpy as np

from twobox.exceptions import (
    BadDeltaError,
    BadPrimeError,
    DualAxiomFailureError,
)
from twobox.linalg import DEFAULT_TOLERANCE, Tolerance
from twobox.structure import Element, TwoBoxStructure, verify_axioms

from .groups import GroupPresentation


log = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


def make_TL(
    delta: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> TwoBoxStructure:
    """
    Return 2-boxes of the Temperley-Lieb planar algebra TL(δ).

    Basis is ``(e, id)``. Only ``δ ≥ √2`` is accepted although the
    tables make sense for every ``δ > 1``: below ``√2`` the coproduct of
    ``id − e`` with itself has a negative coefficient, so Schur
    positivity fails and the structure is not a 2-box space of any
    subfactor.

    :raise: :class:`BadDeltaError`
    """
    delta = float(delta)
    if not math.isfinite(delta) or delta < SQRT2 * (1 - tol.eq_tol):
        raise BadDeltaError(delta, 'sqrt(2)')
    e, one = 0, 1
    product = np.zeros((2, 2, 2))
    product[e, e, e] = product[e, one, e] = product[one, e, e] = 1.0
    product[one, one, one] = 1.0
    coproduct = np.zeros((2, 2, 2))
    coproduct[e, e, e] = 1 / delta
    coproduct[e, one, one] = coproduct[one, e, one] = 1 / delta
    coproduct[one, one, one] = delta
    return TwoBoxStructure(
        name=f'TL({delta:g})',
        labels=['e', 'id'],
        delta=delta,
        product=product,
        coproduct=coproduct,
        trace=[1.0, delta**2],
        contragredient=np.eye(2),
        adjoint=np.eye(2),
        unit=[0.0, 1.0],
        jones=[1.0, 0.0],
    )


def make_group(G: GroupPresentation) -> TwoBoxStructure:
    """
    Return 2-boxes of the group subfactor planar algebra.

    The basis consists of minimal projections ``P_g``. The product is
    pointwise, the coproduct is the group multiplication scaled by
    ``1/δ`` with ``δ = √|G|``.
    """
    n = G.order
    delta = math.sqrt(n)
    product = np.zeros((n, n, n))
    coproduct = np.zeros((n, n, n))
    contragredient = np.zeros((n, n))
    for g in range(n):
        product[g, g, g] = 1.0
        contragredient[G.inverse[g], g] = 1.0
        for h in range(n):
            coproduct[g, h, G.table[g][h]] = 1 / delta
    jones = np.zeros(n)
    jones[G.identity] = 1.0
    return TwoBoxStructure(
        name=G.name,
        labels=[f'P[{g}]' for g in G.elements],
        delta=delta,
        product=product,
        coproduct=coproduct,
        trace=np.ones(n),
        contragredient=contragredient,
        adjoint=np.eye(n),
        unit=np.ones(n),
        jones=jones,
    )


def fourier_dual(
    S: TwoBoxStructure,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    verify: bool = True,
) -> TwoBoxStructure:
    """
    Return the Fourier dual (one click rotation) of `S`.

    Product and coproduct swap. The new unit is ``δe``, the new Jones
    projection is ``id/δ``, the new trace is ``a ↦ δ·tr(a·e)`` and the
    new adjoint is ``a ↦ (a*)′``. Applying the dual twice returns the
    original tables.

    :param verify: Check axioms of the result, random Schur sampling
        is skipped.
    :raise: :class:`DualAxiomFailureError`
    """
    delta = S.delta
    form = np.einsum('pqk,k->pq', S.product, S.trace_vector)
    dual = TwoBoxStructure(
        name=f'dual({S.name})',
        labels=S.labels,
        delta=delta,
        product=S.coproduct_table,
        coproduct=S.product,
        trace=delta * (form @ S.jones_coeffs),
        contragredient=S.contragredient_matrix,
        adjoint=S.contragredient_matrix @ S.adjoint_matrix,
        unit=delta * S.jones_coeffs,
        jones=S.unit_coeffs / delta,
    )
    if verify:
        report = verify_axioms(dual, tol, trials=0)
        if not report.passed:
            raise DualAxiomFailureError(report.failed())
    log.debug('Fourier dual of %s built', S.name)
    return dual


def _is_odd_prime(p: int) -> bool:
    return p >= 3 and p % 2 == 1 and all(  # noqa: PLR2004
        p % k for k in range(3, math.isqrt(p) + 1, 2)
    )


def make_subgroup_2p2(p: int) -> TwoBoxStructure:
    """
    Return 2-boxes of the subgroup planar algebra of ℤ₂ ⊂ ℤ_p ⋊ ℤ₂.

    The basis ``e, g_1, …, g_h`` with ``h = (p − 1)/2`` consists of
    orthogonal projections, ``tr(g_m) = 2`` and ``δ = √p``. The coproduct
    is ``δ·g_m*g_n = g_(m+n) + g_(m−n)`` where indices fold by
    ``g_k = g_(p−k) = g_(−k)`` and ``g_0 = 2e``.

    :raise: :class:`BadPrimeError`
    """
    if isinstance(p, bool) or not isinstance(p, int | np.integer) or (
        not _is_odd_prime(int(p))
    ):
        raise BadPrimeError(p)
    p = int(p)
    h = (p - 1) // 2
    n = h + 1
    delta = math.sqrt(p)

    def fold(k: int) -> int:
        k %= p
        return min(k, p - k)

    product = np.zeros((n, n, n))
    coproduct = np.zeros((n, n, n))
    for i in range(n):
        product[i, i, i] = 1.0
        coproduct[0, i, i] = coproduct[i, 0, i] = 1 / delta
    for m in range(1, n):
        for k in range(1, n):
            for index in (fold(m + k), fold(m - k)):
                if index == 0:
                    coproduct[m, k, 0] += 2 / delta
                else:
                    coproduct[m, k, index] += 1 / delta
    jones = np.zeros(n)
    jones[0] = 1.0
    return TwoBoxStructure(
        name=f'Z2subZ{p}',
        labels=['e'] + [f'g{m}' for m in range(1, n)],
        delta=delta,
        product=product,
        coproduct=coproduct,
        trace=[1.0] + [2.0] * h,
        contragredient=np.eye(n),
        adjoint=np.eye(n),
        unit=np.ones(n),
        jones=jones,
    )


def chi(S: TwoBoxStructure, k: int) -> Element:
    """
    Return ``χ_k = (δ/p)(2e + Σ_m (ω^(mk) + ω^(−mk)) g_m)``.

    `S` is a structure built by :func:`make_subgroup_2p2`, ``ω`` is the
    primitive p-th root of unity. For ``k ≥ 1`` the convolution
    operators of ``χ_k`` are mutually orthogonal projections,
    ``χ_0 = 2·id/δ``.
    """
    p = round(S.delta**2)
    omega = np.exp(2j * np.pi / p)
    coeffs = np.empty(S.n, dtype=np.complex128)
    coeffs[0] = 2.0
    for m in range(1, S.n):
        coeffs[m] = omega ** (m * k) + omega ** (-m * k)
    return S.element(S.delta / p * coeffs)
