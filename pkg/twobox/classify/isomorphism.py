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
Isomorphisms of structures of 2-boxes.

A linear bijection preserving product, coproduct, contragredient,
adjoint and trace extends to an isomorphism of planar algebras. For
abelian product algebras such a map permutes minimal projections, so
the search runs over bijections of minimal projections.
"""

__all__ = [
    'coproduct_coefficients',
    'find_isomorphism',
    'identify_group',
    'small_groups',
    'structure_map_residual',
]

import itertools
import logging
import math
from collections.abc import Iterator

import numpy as np

from twobox.catalog import (
    GroupPresentation,
    cyclic,
    dihedral,
    direct_product,
    make_group,
    symmetric,
)
from twobox.exceptions import (
    SearchSpaceTooLargeError,
    UnsupportedNonCentralSearchError,
)
from twobox.linalg import (
    DEFAULT_TOLERANCE,
    ComplexMatrix,
    Tolerance,
    relative_residual,
)
from twobox.positivity import is_group_like
from twobox.structure import Element, TwoBoxStructure, block_decomposition


log = logging.getLogger(__name__)

MAX_CANDIDATES = 10**6


def structure_map_residual(
    S: TwoBoxStructure, T: TwoBoxStructure, M: ComplexMatrix
) -> float:
    """
    Return how far `M` is from a structure preserving map ``S → T``.

    `M` maps coefficient vectors of `S` to those of `T`.
    """
    M = np.asarray(M, dtype=np.complex128)
    pairs = [
        (
            np.einsum('kl,ijl->ijk', M, S.product),
            np.einsum('ai,bj,abk->ijk', M, M, T.product),
        ),
        (
            np.einsum('kl,ijl->ijk', M, S.coproduct_table),
            np.einsum('ai,bj,abk->ijk', M, M, T.coproduct_table),
        ),
        (M @ S.contragredient_matrix, T.contragredient_matrix @ M),
        (M @ S.adjoint_matrix, T.adjoint_matrix @ M.conj()),
        (T.trace_vector @ M, S.trace_vector),
        (M @ S.unit_coeffs, T.unit_coeffs),
        (M @ S.jones_coeffs, T.jones_coeffs),
    ]
    return max(relative_residual(a, b) for a, b in pairs)


def coproduct_coefficients(
    minimal: list[Element],
) -> np.ndarray:
    """
    Return ``C[i, j, k]``, coefficient of ``P_k`` in ``P_i*P_j``.

    `minimal` are the minimal projections of an abelian product algebra.
    """
    n = len(minimal)
    coefficients = np.zeros((n, n, n), dtype=np.complex128)
    for i, j in itertools.product(range(n), repeat=2):
        x = minimal[i].coproduct(minimal[j])
        for k, P in enumerate(minimal):
            coefficients[i, j, k] = (P @ x).trace() / P.trace()
    return coefficients


def _contragredient_permutation(
    minimal: list[Element], tol: Tolerance
) -> list[int]:
    permutation = []
    for P in minimal:
        dual = P.contragredient()
        permutation.append(
            next(k for k, Q in enumerate(minimal) if Q.is_close(dual, tol))
        )
    return permutation


class _Profile:
    """Invariants of minimal projections used to prune the search."""

    def __init__(self, S: TwoBoxStructure, tol: Tolerance):
        self.minimal = block_decomposition(S, tol).minimal
        self.coefficients = coproduct_coefficients(self.minimal)
        self.contragredient = _contragredient_permutation(self.minimal, tol)
        self.keys = [
            (
                index == 0,
                round(P.trace().real, 6),
                self.contragredient[index] == index,
            )
            for index, P in enumerate(self.minimal)
        ]


def _candidate_count(source: _Profile, target: _Profile) -> int | None:
    """Number of key preserving bijections, None if keys differ."""
    if sorted(source.keys) != sorted(target.keys):
        return None
    count = 1
    for key in set(source.keys):
        count *= math.factorial(source.keys.count(key))
    return count


def _bijections(
    source: _Profile, target: _Profile, tol: Tolerance
) -> Iterator[list[int]]:
    """Backtracking over key preserving bijections consistent so far."""
    n = len(source.minimal)
    cs, ct = source.coefficients, target.coefficients
    scale = tol.eq_tol * (1.0 + float(np.max(np.abs(cs))))
    image = [-1] * n
    used = [False] * n

    def consistent(i: int) -> bool:
        assigned = [a for a in range(n) if image[a] >= 0]
        j = source.contragredient[i]
        if image[j] >= 0 and image[j] != target.contragredient[image[i]]:
            return False
        for a, b, c in itertools.product(assigned, repeat=3):
            if i not in (a, b, c):
                continue
            difference = cs[a, b, c] - ct[image[a], image[b], image[c]]
            if abs(difference) > scale:
                return False
        return True

    def extend(i: int) -> Iterator[list[int]]:
        if i == n:
            yield list(image)
            return
        for t in range(n):
            if used[t] or target.keys[t] != source.keys[i]:
                continue
            image[i], used[t] = t, True
            if consistent(i):
                yield from extend(i + 1)
            image[i], used[t] = -1, False

    yield from extend(0)


def find_isomorphism(
    S: TwoBoxStructure,
    T: TwoBoxStructure,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    max_candidates: int = MAX_CANDIDATES,
) -> ComplexMatrix | None:
    """
    Return matrix of a structure preserving bijection ``S → T``.

    For abelian product algebras bijections of minimal projections are
    searched, pruned by trace, by the contragredient and by coproduct
    coefficients. For nonabelian product algebras only the identity map
    is tried.

    :param max_candidates: Limit for the number of key preserving
        bijections.
    :return: Matrix acting on coefficient vectors, None if the
        structures are not isomorphic.
    :raise: :class:`SearchSpaceTooLargeError`,
        :class:`UnsupportedNonCentralSearchError`
    """
    if S.n != T.n or abs(S.delta - T.delta) > tol.eq_tol * S.delta:
        return None
    abelian = (
        block_decomposition(S, tol).is_abelian,
        block_decomposition(T, tol).is_abelian,
    )
    if not all(abelian):
        if S.tables_residual(T) <= tol.eq_tol:
            return np.eye(S.n, dtype=np.complex128)
        if any(abelian):
            return None
        raise UnsupportedNonCentralSearchError('isomorphism search')
    source, target = _Profile(S, tol), _Profile(T, tol)
    count = _candidate_count(source, target)
    if count is None:
        log.debug('Isomorphism %s -> %s: invariants differ', S.name, T.name)
        return None
    if count > max_candidates:
        raise SearchSpaceTooLargeError(count, max_candidates)
    log.debug(
        'Isomorphism %s -> %s: %s candidate bijections',
        S.name, T.name, count,
    )
    basis_s = np.column_stack([P.coeffs for P in source.minimal])
    basis_t = np.column_stack([P.coeffs for P in target.minimal])
    inverse = np.linalg.inv(basis_s)
    for image in _bijections(source, target, tol):
        M = basis_t[:, image] @ inverse
        if structure_map_residual(S, T, M) <= tol.eq_tol:
            log.debug('Isomorphism %s -> %s: %s', S.name, T.name, image)
            return M
    return None


def _invariant_factors(order: int, smallest: int = 1) -> Iterator[tuple]:
    """Chains ``d_1 | d_2 | …`` of integers ≥ 2 with product `order`."""
    for d in range(max(2, smallest), order + 1):
        if order % d or d % smallest:
            continue
        rest = order // d
        if rest == 1:
            yield (d,)
        elif rest % d == 0:
            for tail in _invariant_factors(rest, d):
                yield (d, *tail)


def small_groups(order: int) -> list[GroupPresentation]:
    """
    Return candidate groups of given order.

    All abelian groups, dihedral groups, ``S₃`` and ``S₄``. The list is
    complete for orders below 8. Abelian groups come first, ordered by
    their invariant factors with the smallest first factor first
    (``Z2xZ2`` before ``Z4``), then the nonabelian ones.
    """
    groups = []
    for factors in _invariant_factors(order):
        group = cyclic(factors[0])
        for d in factors[1:]:
            group = direct_product(group, cyclic(d))
        groups.append(group)
    if order == 6:  # noqa: PLR2004
        groups.append(symmetric(3))
    elif order % 2 == 0 and order >= 8:  # noqa: PLR2004
        groups.append(dihedral(order // 2))
    if order == 24:  # noqa: PLR2004
        groups.append(symmetric(4))
    return groups


def identify_group(
    S: TwoBoxStructure,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    max_candidates: int = MAX_CANDIDATES,
) -> str | None:
    """
    Return name of a small group whose subfactor planar algebra is `S`.

    The order must be ``|G| = δ² = dim(S₂)`` and all coproducts of
    minimal projections must have rank one.
    """
    order = round(S.delta**2)
    if order != S.n or abs(S.delta**2 - order) > tol.eq_tol * order:
        return None
    if not block_decomposition(S, tol).is_abelian or not is_group_like(
        S, tol
    ):
        return None
    for group in small_groups(order):
        found = find_isomorphism(
            S, make_group(group), tol, max_candidates=max_candidates
        )
        if found is not None:
            log.debug('%s is the group subfactor of %s', S.name, group.name)
            return group.name
    return None
