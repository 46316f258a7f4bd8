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
Necessary conditions for commute relation planar algebras.

A commute relation planar algebra is either depth 2 or a free product.
Minimal projections outside the depth 2 part must be virtual
normalizers, and a virtual normalizer splits the structure by a
biprojection into two smaller ones. Splitting recursively gives a tree
whose leaves are depth 2 or Temperley-Lieb structures.
"""

__all__ = [
    'CommuteReport',
    'NormalizerInventoryItem',
    'SplitKind',
    'SplitTree',
    'check_commute_relation_necessary',
    'split_tree',
]

import logging
from enum import StrEnum
from typing import NamedTuple

from twobox.abstract import Report, rounded
from twobox.catalog import cut_down
from twobox.exceptions import ClassifyError, TwoBoxError
from twobox.linalg import DEFAULT_TOLERANCE, Tolerance
from twobox.positivity import (
    TraceDichotomy,
    find_separating_biprojection,
    is_free_separating,
    is_virtual_normalizer,
    trace_dichotomy_check,
    virtual_normalizers,
)
from twobox.structure import Element, TwoBoxStructure, block_decomposition

from .dual import CommuteType, commute_type, depth2_support
from .isomorphism import identify_group


log = logging.getLogger(__name__)

TL_DIM = 2


class SplitKind(StrEnum):
    """Node kind of a split tree."""

    FREE_PRODUCT = 'free-product'
    DEPTH2 = 'depth2'
    TEMPERLEY_LIEB = 'temperley-lieb'
    UNSPLIT = 'unsplit'


class SplitTree(NamedTuple):
    """Recursive free product decomposition."""

    name: str
    dim: int
    delta: float
    kind: SplitKind
    separator_trace: float | None = None
    children: tuple['SplitTree', ...] = ()

    @property
    def leaves(self) -> list['SplitTree']:
        """Leaves from left to right."""
        if not self.children:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves]

    def as_dict(self) -> dict:
        """Return tree as nested dict."""
        data = {
            'name': self.name,
            'dim': self.dim,
            'delta': rounded(self.delta),
            'kind': str(self.kind),
        }
        if self.separator_trace is not None:
            data['separator_trace'] = rounded(self.separator_trace)
        if self.children:
            data['children'] = [child.as_dict() for child in self.children]
        return data


def _leaf_name(S: TwoBoxStructure, tol: Tolerance) -> str:
    try:
        group = identify_group(S, tol)
    except TwoBoxError as e:
        log.debug('Group of %s not identified: %s', S.name, e)
        group = None
    return group or S.name


def _is_depth2(S: TwoBoxStructure, tol: Tolerance) -> bool:
    try:
        return depth2_support(S, tol).is_close(S.identity, tol)
    except ClassifyError as e:
        log.debug('Depth 2 part of %s not computable: %s', S.name, e)
        return False


def split_tree(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> SplitTree:
    """
    Return recursive free product decomposition of `S`.

    A node splits by the biprojection separating the first virtual
    normalizer, its children are the two cut-downs.
    """
    if _is_depth2(S, tol):
        return SplitTree(_leaf_name(S, tol), S.n, S.delta, SplitKind.DEPTH2)
    if S.n == TL_DIM:
        return SplitTree(S.name, S.n, S.delta, SplitKind.TEMPERLEY_LIEB)
    for P in virtual_normalizers(S, tol):
        Q = find_separating_biprojection(P, tol)
        if not is_free_separating(Q.element, tol):
            continue
        lower, upper = cut_down(S, Q.element, tol)
        log.debug(
            'Split %s by trace %s into dims %s and %s',
            S.name, Q.trace, lower.n, upper.n,
        )
        return SplitTree(
            S.name,
            S.n,
            S.delta,
            SplitKind.FREE_PRODUCT,
            Q.trace,
            (split_tree(lower, tol), split_tree(upper, tol)),
        )
    return SplitTree(S.name, S.n, S.delta, SplitKind.UNSPLIT)


class NormalizerInventoryItem(NamedTuple):
    """Central minimal projection outside the depth 2 part."""

    block: int
    trace: float
    virtual_normalizer: bool


class CommuteReport(Report):
    """Necessary conditions for a commute relation planar algebra."""

    def __init__(
        self,
        name: str,
        flags: CommuteType | None,
        product_abelian: bool,
        dual_abelian: bool,
        depth2: Element | None,
        inventory: list[NormalizerInventoryItem],
        tree: SplitTree | None,
        dichotomy: TraceDichotomy | None,
    ):
        """
        Initialise CommuteReport.

        :param name: Structure name.
        :param flags: Commute type, None if neither algebra is abelian.
        :param product_abelian: Whether S₂ is abelian.
        :param dual_abelian: Whether the coproduct algebra is abelian.
        :param depth2: Depth 2 part if computable.
        :param inventory: Minimal projections outside the depth 2 part.
        :param tree: Free product decomposition if a split exists.
        :param dichotomy: Trace dichotomy over the inventory.
        """
        self.name = name
        self.flags = flags
        self.product_abelian = product_abelian
        self.dual_abelian = dual_abelian
        self.depth2 = depth2
        self.inventory = inventory
        self.tree = tree
        self.dichotomy = dichotomy

    @property
    def is_depth2(self) -> bool:
        """True if the depth 2 part is everything."""
        return self.depth2 is not None and self.depth2.is_close(
            self.depth2.owner.identity
        )

    @property
    def all_virtual_normalizers(self) -> bool:
        """True if every projection outside depth 2 is a normalizer."""
        return all(item.virtual_normalizer for item in self.inventory)

    @property
    def consistent(self) -> bool:
        """True if no necessary condition fails."""
        if self.is_depth2:
            return True
        return (
            self.all_virtual_normalizers
            and self.tree is not None
            and (self.dichotomy is None or self.dichotomy.passed)
        )

    def as_dict(self) -> dict:
        """Return report as dict."""
        return {
            'structure': self.name,
            'commute_type': None if self.flags is None else str(self.flags),
            'product_abelian': self.product_abelian,
            'dual_abelian': self.dual_abelian,
            'depth2_trace': (
                None if self.depth2 is None
                else rounded(self.depth2.trace())
            ),
            'depth2': self.is_depth2,
            'virtual_normalizers': [
                {
                    'block': item.block,
                    'trace': rounded(item.trace),
                    'virtual_normalizer': item.virtual_normalizer,
                }
                for item in self.inventory
            ],
            'trace_dichotomy_violations': (
                None if self.dichotomy is None
                else len(self.dichotomy.violations)
            ),
            'split_tree': None if self.tree is None else self.tree.as_dict(),
            'consistent': self.consistent,
        }


def check_commute_relation_necessary(
    S: TwoBoxStructure, tol: Tolerance = DEFAULT_TOLERANCE
) -> CommuteReport:
    """
    Report necessary conditions for `S` to be a commute relation algebra.

    Never raises on mathematical grounds, a failing step leaves its part
    of the report empty.
    """
    product = S.product_is_commutative(tol)
    dual = S.coproduct_is_commutative(tol)
    try:
        depth2 = depth2_support(S, tol)
    except TwoBoxError as e:
        log.debug('Depth 2 part of %s not computable: %s', S.name, e)
        depth2 = None
    blocks = block_decomposition(S, tol)
    inventory = []
    outside = []
    for index, (central, dim, trace) in enumerate(
        zip(
            blocks.central_idempotents,
            blocks.block_dims,
            blocks.block_traces,
            strict=True,
        )
    ):
        if depth2 is not None and (depth2 @ central).is_close(central, tol):
            continue
        if dim != 1:
            inventory.append(NormalizerInventoryItem(index, trace, False))
            continue
        outside.append(central)
        inventory.append(
            NormalizerInventoryItem(
                index, trace, is_virtual_normalizer(central, tol=tol)
            )
        )
    dichotomy = trace_dichotomy_check(S, outside, tol) if outside else None
    tree = None
    if any(item.virtual_normalizer for item in inventory):
        try:
            tree = split_tree(S, tol)
        except TwoBoxError as e:
            log.debug('Split of %s failed: %s', S.name, e)
        if tree is not None and tree.kind != SplitKind.FREE_PRODUCT:
            tree = None
    return CommuteReport(
        S.name,
        commute_type(S, tol),
        product,
        dual,
        depth2,
        inventory,
        tree,
        dichotomy,
    )
