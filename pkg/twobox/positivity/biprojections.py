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
Biprojections.

A projection ``Q`` is a biprojection when ``Q*Q`` is a multiple of a
projection. Biprojections correspond to intermediate subfactors, ``e``
and ``id`` are the trivial ones.
"""

__all__ = [
    'Biprojection',
    'biprojection_lattice',
    'check_projection',
    'coproduct_rank_profile',
    'enumerate_biprojections',
    'free_separation_dims',
    'generated_biprojection',
    'is_biprojection',
    'is_free_separating',
    'is_group_like',
    'is_tensor_separating',
    'precedes',
    'proportionality',
]

import itertools
import logging
from typing import NamedTuple

import numpy as np

from twobox.exceptions import (
    NoStabilizationError,
    NotAProjectionError,
    TheoremViolationError,
    UnsupportedNonCentralSearchError,
)
from twobox.linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    column_rank,
    null_space,
    range_basis,
)
from twobox.structure import (
    Element,
    TwoBoxStructure,
    block_decomposition,
    rank,
)


log = logging.getLogger(__name__)


class Biprojection(NamedTuple):
    """Biprojection with its trace."""

    element: Element
    trace: float

    def __repr__(self) -> str:
        """Return short description."""
        return f'<Biprojection trace={self.trace:.12g} {self.element!r}>'


def check_projection(Q: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> None:
    """
    Assert that `Q` is a self-adjoint idempotent.

    :raise: :class:`NotAProjectionError`
    """
    residual = Q.owner.projection_residual(Q)
    if residual > tol.eq_tol:
        raise NotAProjectionError(residual)


def precedes(
    x: Element, y: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """Return True if ``x ≼ y``, the support of `x` lies under that of `y`."""
    S = x.owner
    sx, sy = S.support(x, tol), S.support(y, tol)
    return (sy @ sx).is_close(sx, tol)


def proportionality(x: Element, y: Element) -> tuple[complex, float]:
    """
    Return ``λ`` minimizing ``‖x − λy‖`` and the relative residual.

    Coefficient vectors are compared, ``y`` must not vanish.
    """
    norm = complex(np.vdot(y.coeffs, y.coeffs))
    ratio = complex(np.vdot(y.coeffs, x.coeffs)) / norm if norm else 0.0
    return ratio, x.residual(y * ratio)


def is_biprojection(Q: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """
    Decide whether projection `Q` is a biprojection.

    `Q` is a biprojection iff the support of ``Q*Q`` lies under `Q`.
    For biprojections the identities ``Q*Q = (tr(Q)/δ)Q``, ``Q′ = Q``
    and ``e ≼ Q`` are asserted.

    :raise: :class:`NotAProjectionError`, :class:`TheoremViolationError`
    """
    check_projection(Q, tol)
    S = Q.owner
    square = Q.coproduct(Q)
    square = (square + square.adjoint()) / 2
    support = S.support(square, tol)
    if not (Q @ support).is_close(support, tol):
        return False
    scale = Q.trace() / S.delta
    if not square.is_close(Q * scale, tol):
        raise TheoremViolationError(
            'Q*Q = (tr(Q)/δ)Q', square.residual(Q * scale)
        )
    if not Q.contragredient().is_close(Q, tol):
        raise TheoremViolationError(
            "Q' = Q", Q.contragredient().residual(Q)
        )
    if not (Q @ S.jones).is_close(S.jones, tol):
        raise TheoremViolationError('e ≼ Q', (Q @ S.jones).residual(S.jones))
    return True


def enumerate_biprojections(
    S: TwoBoxStructure,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    central_only: bool = False,
) -> list[Biprojection]:
    """
    Return all biprojections which are sums of central projections.

    For abelian product algebras this is every biprojection. Sums of
    minimal central idempotents containing the block of ``e`` are tried,
    the result is sorted by trace.

    :param central_only: Allow nonabelian product algebras and search
        central biprojections only.
    :raise: :class:`UnsupportedNonCentralSearchError`
    """
    blocks = block_decomposition(S, tol)
    if not blocks.is_abelian and not central_only:
        raise UnsupportedNonCentralSearchError
    central = blocks.central_idempotents
    found = []
    for size in range(len(central)):
        for subset in itertools.combinations(range(1, len(central)), size):
            Q = central[0]
            for index in subset:
                Q = Q + central[index]
            if is_biprojection(Q, tol):
                found.append((Q.trace().real, (0, *subset), Q))
    found.sort(key=lambda item: (round(item[0], 8), item[1]))
    log.debug(
        'Biprojections of %s: traces %s', S.name, [t for t, _, _ in found]
    )
    return [Biprojection(Q, trace) for trace, _, Q in found]


def generated_biprojection(
    y: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> Biprojection:
    """
    Return the smallest biprojection ``P`` with ``PyP = y``.

    Starting from ``x = e + y*·y + y·y*`` the supports
    ``X ← support(X*x + X)`` grow until they stabilize. The rank grows
    with every step that changes the support, so at most ``dim S₂``
    steps are taken.

    :raise: :class:`NoStabilizationError`, :class:`TheoremViolationError`
    """
    S = y.owner
    x = S.jones + y.adjoint() @ y + y @ y.adjoint()
    current = S.support(x, tol)
    for step in range(S.n):
        grown = current.coproduct(x) + current
        grown = S.support((grown + grown.adjoint()) / 2, tol)
        if grown.is_close(current, tol):
            log.debug('Generated biprojection stable after %s steps', step)
            break
        current = grown
    else:
        raise NoStabilizationError(S.n)
    if not is_biprojection(current, tol):
        raise TheoremViolationError('generated support is a biprojection')
    return Biprojection(current, current.trace().real)


def free_separation_dims(
    Q: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> tuple[int, int, int]:
    """
    Return dimensions of the two sides split by `Q` and of their sum.

    The sides are ``{x : QxQ = x}`` and ``{x : Q*x*Q = (tr(Q)/δ)²x}``.
    """
    S = Q.owner
    identity = np.eye(S.n)
    inner = null_space(
        S.left_matrix(Q) @ S.right_matrix(Q) - identity, tol
    )
    scale = (Q.trace() / S.delta) ** 2
    outer = null_space(
        S.left_convolution_matrix(Q) @ S.right_convolution_matrix(Q)
        - scale * identity,
        tol,
    )
    joint = column_rank(np.hstack([inner, outer]), tol)
    return inner.shape[1], outer.shape[1], joint


def is_free_separating(
    Q: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """Return True if the two sides split by biprojection `Q` span S₂."""
    *_, joint = free_separation_dims(Q, tol)
    return joint == Q.owner.n


def _corner(x: Element, tol: Tolerance) -> np.ndarray:
    """Basis of ``{y : xyx = y}`` for a projection `x`."""
    S = x.owner
    return range_basis(S.left_matrix(x) @ S.right_matrix(x), tol)


def _closure(S: TwoBoxStructure, vectors: np.ndarray, tol: Tolerance) -> int:
    """Dimension of the span generated by both multiplications."""
    span = range_basis(vectors, tol)
    while True:
        images = [span]
        for i, j in itertools.product(range(span.shape[1]), repeat=2):
            a, b = S.element(span[:, i]), S.element(span[:, j])
            images.append((a @ b).coeffs[:, None])
            images.append(a.coproduct(b).coeffs[:, None])
        grown = range_basis(np.hstack(images), tol)
        if grown.shape[1] == span.shape[1]:
            return span.shape[1]
        span = grown


def is_tensor_separating(
    A: Element, B: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """
    Decide whether non-trivial biprojections `A`, `B` split S₂ as tensor.

    Requires ``AB = e``, ``A*B = id/δ``, ``a*B = B*a`` for ``a ≼ A``,
    ``A*b = b*A`` for ``b ≼ B`` and that elements under `A` and `B`
    generate S₂ under both multiplications.

    :raise: :class:`TheoremViolationError` if ``A*B`` is a multiple of
        ``id`` other than ``id/δ``
    """
    S = A.owner
    for Q in (A, B):
        if Q.is_close(S.jones, tol) or Q.is_close(S.identity, tol):
            return False
    if not (A @ B).is_close(S.jones, tol):
        return False
    ratio, residual = proportionality(A.coproduct(B), S.identity)
    if residual > tol.eq_tol:
        return False
    if abs(ratio - 1 / S.delta) > tol.eq_tol * (1 + abs(ratio)):
        raise TheoremViolationError('A*B = id/δ', abs(ratio - 1 / S.delta))
    corner_a, corner_b = _corner(A, tol), _corner(B, tol)
    for k in range(corner_a.shape[1]):
        a = S.element(corner_a[:, k])
        if not a.coproduct(B).is_close(B.coproduct(a), tol):
            return False
    for k in range(corner_b.shape[1]):
        b = S.element(corner_b[:, k])
        if not A.coproduct(b).is_close(b.coproduct(A), tol):
            return False
    generated = _closure(S, np.hstack([corner_a, corner_b]), tol)
    log.debug('Tensor pair generates %s of %s dimensions', generated, S.n)
    return generated == S.n


def biprojection_lattice(
    biprojections: list[Biprojection], tol: Tolerance = DEFAULT_TOLERANCE
) -> list[tuple[int, int]]:
    """
    Return covering pairs ``(i, j)`` with ``Q_i < Q_j``.

    Indices refer to `biprojections`. Nothing lies strictly between the
    two members of a covering pair.
    """
    count = len(biprojections)
    below = [[False] * count for _ in range(count)]
    for i, j in itertools.permutations(range(count), 2):
        qi, qj = biprojections[i].element, biprojections[j].element
        below[i][j] = (
            (qj @ qi).is_close(qi, tol) and not qi.is_close(qj, tol)
        )
    return [
        (i, j)
        for i, j in itertools.permutations(range(count), 2)
        if below[i][j]
        and not any(below[i][k] and below[k][j] for k in range(count))
    ]


def coproduct_rank_profile(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> np.ndarray:
    """
    Return ``r(P_i′*P_j)`` over minimal projections of the product algebra.

    Rows and columns follow :func:`block_decomposition` order.
    """
    minimal = block_decomposition(S, tol).minimal
    profile = np.zeros((len(minimal), len(minimal)), dtype=int)
    for i, p in enumerate(minimal):
        for j, q in enumerate(minimal):
            x = p.contragredient().coproduct(q)
            profile[i, j] = rank((x + x.adjoint()) / 2, tol)
    return profile


def is_group_like(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """Return True if all coproducts of minimal projections have rank 1."""
    return bool(np.all(coproduct_rank_profile(S, tol) == 1))
