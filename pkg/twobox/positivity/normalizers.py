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

"""Virtual normalizers and the biprojections separating free products."""

__all__ = [
    'Side',
    'TraceDichotomy',
    'find_separating_biprojection',
    'is_virtual_normalizer',
    'trace_dichotomy_check',
    'virtual_normalizers',
]

import itertools
import logging
from enum import StrEnum
from typing import NamedTuple

from twobox.exceptions import (
    NotCentralMinimalError,
    NotVirtualNormalizerError,
    TheoremViolationError,
)
from twobox.linalg import DEFAULT_TOLERANCE, Tolerance
from twobox.structure import (
    Element,
    TwoBoxStructure,
    block_decomposition,
    central_minimal_index,
    rank,
)

from .biprojections import (
    Biprojection,
    is_biprojection,
    precedes,
    proportionality,
)


log = logging.getLogger(__name__)


class Side(StrEnum):
    """Side of the coproduct rank condition."""

    LEFT = 'left'
    RIGHT = 'right'
    BOTH = 'both'


def _rank(x: Element, tol: Tolerance) -> int:
    return rank((x + x.adjoint()) / 2, tol)


def is_virtual_normalizer(
    P: Element,
    side: Side | str = Side.BOTH,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> bool:
    """
    Decide whether central minimal projection `P` is a virtual normalizer.

    ``tr(P) > 1`` is required together with ``r(P*Q) = 1`` (left) or
    ``r(Q*P) = 1`` (right) for every minimal projection ``Q ≠ P′``.

    :raise: :class:`NotCentralMinimalError`
    """
    side = Side(side)
    central_minimal_index(P, tol)
    if P.trace().real <= 1 + tol.eq_tol:
        return False
    dual = P.contragredient()
    for Q in block_decomposition(P.owner, tol).minimal:
        if Q.is_close(dual, tol):
            continue
        if side in (Side.LEFT, Side.BOTH) and _rank(P.coproduct(Q), tol) != 1:
            return False
        if side in (Side.RIGHT, Side.BOTH) and _rank(Q.coproduct(P), tol) != 1:
            return False
    return True


def virtual_normalizers(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> list[Element]:
    """
    Return central minimal projections which are virtual normalizers.

    Ordered by descending trace, ties keep block order.
    """
    blocks = block_decomposition(S, tol)
    candidates = [
        (-trace, index, central)
        for index, (central, dim, trace) in enumerate(
            zip(
                blocks.central_idempotents,
                blocks.block_dims,
                blocks.block_traces,
                strict=True,
            )
        )
        if dim == 1
    ]
    candidates.sort(key=lambda item: (round(item[0], 8), item[1]))
    return [
        P for _, _, P in candidates if is_virtual_normalizer(P, Side.BOTH, tol)
    ]


def _require_biprojection(Q: Element, tol: Tolerance) -> None:
    if not is_biprojection(Q, tol):
        raise TheoremViolationError('separating support is a biprojection')


def find_separating_biprojection(
    P: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> Biprojection:
    """
    Return biprojection separating S₂ as a free product.

    If the support of ``P′*P`` lies under ``e + P′`` the result is
    ``e + P``. Otherwise it is the support of
    ``(id − P′)(P′*P)(id − P′)``, a biprojection ``e < Q < id`` such that
    every minimal projection ``R`` satisfies ``QRQ = R`` or
    ``Q*R*Q ∝ R``.

    :raise: :class:`NotVirtualNormalizerError`,
        :class:`TheoremViolationError`
    """
    S = P.owner
    try:
        normalizer = is_virtual_normalizer(P, Side.BOTH, tol)
    except NotCentralMinimalError as e:
        raise NotVirtualNormalizerError from e
    if not normalizer:
        raise NotVirtualNormalizerError
    dual = P.contragredient()
    square = dual.coproduct(P)
    square = (square + square.adjoint()) / 2
    if precedes(square, S.jones + dual, tol):
        Q = S.jones + P
        _require_biprojection(Q, tol)
        log.debug('Separating biprojection e + P, trace %s', Q.trace().real)
        return Biprojection(Q, Q.trace().real)
    complement = S.identity - dual
    Q = S.support(complement @ square @ complement, tol)
    _require_biprojection(Q, tol)
    if Q.is_close(S.jones, tol) or Q.is_close(S.identity, tol):
        raise TheoremViolationError('e < Q < id')
    scale = (Q.trace() / S.delta) ** 2
    for R in block_decomposition(S, tol).minimal:
        if (Q @ R @ Q).is_close(R, tol):
            continue
        ratio, residual = proportionality(Q.coproduct(R).coproduct(Q), R)
        if residual > tol.eq_tol or abs(ratio - scale) > tol.eq_tol * (
            1 + abs(scale)
        ):
            raise TheoremViolationError('QRQ = R or Q*R*Q ∝ R', residual)
    log.debug('Separating biprojection of trace %s', Q.trace().real)
    return Biprojection(Q, Q.trace().real)


class TraceDichotomy(NamedTuple):
    """Values ``tr(P_j(P_i′*P_k))`` outside both admissible values."""

    checked: int
    violations: list[tuple[int, int, int, float, float]]

    @property
    def passed(self) -> bool:
        """True if every value is 0 or ``tr(P_i)tr(P_k)/δ``."""
        return not self.violations


def trace_dichotomy_check(
    S: TwoBoxStructure,
    projections: list[Element],
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> TraceDichotomy:
    """
    Check that ``tr(P_j(P_i′*P_k))`` is 0 or ``tr(P_i)tr(P_k)/δ``.

    ``P_i ≠ P_k`` range over `projections`, ``P_j`` over all minimal
    projections of S₂. Violations are reported as index triples with
    the offending and the expected value, ``i`` and ``k`` index
    `projections`, ``j`` indexes minimal projections in block order.
    """
    minimal = block_decomposition(S, tol).minimal
    violations = []
    checked = 0
    for (i, Pi), (k, Pk) in itertools.permutations(enumerate(projections), 2):
        x = Pi.contragredient().coproduct(Pk)
        expected = Pi.trace().real * Pk.trace().real / S.delta
        for j, Pj in enumerate(minimal):
            checked += 1
            value = (Pj @ x).trace().real
            scale = tol.eq_tol * (1 + expected)
            if abs(value) > scale and abs(value - expected) > scale:
                violations.append((i, j, k, value, expected))
    return TraceDichotomy(checked, violations)
