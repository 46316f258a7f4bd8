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

"""Finite groups given by multiplication tables."""

__all__ = [
    'GroupPresentation',
    'cyclic',
    'dihedral',
    'direct_product',
    'parse_group',
    'symmetric',
]

import itertools
import logging
import re

from twobox.abstract import EntityModel
from twobox.exceptions import BadGroupError, UnknownNameError


log = logging.getLogger(__name__)

GROUP_NAME_HELP = 'Z<n>, S<k>, D<n> and products like Z2xZ2'


class GroupPresentation(EntityModel):
    """
    Finite group as an integer multiplication table.

    ``table[g][h]`` is the index of the product ``gh``.
    """

    name: str
    elements: list[str]
    table: list[list[int]]
    inverse: list[int]
    identity: int

    @classmethod
    def from_table(
        cls, name: str, elements: list[str], table: list[list[int]]
    ) -> 'GroupPresentation':
        """
        Build presentation, find identity and inverses, check axioms.

        :raise: :class:`BadGroupError`
        """
        order = len(elements)
        if order == 0 or len(table) != order or any(
            len(row) != order for row in table
        ):
            raise BadGroupError(f'{name}: table must be {order}x{order}')
        if any(not 0 <= x < order for row in table for x in row):
            raise BadGroupError(f'{name}: table entries out of range')
        identities = [
            g for g in range(order)
            if all(table[g][h] == h == table[h][g] for h in range(order))
        ]
        if len(identities) != 1:
            raise BadGroupError(f'{name}: no unique identity element')
        identity = identities[0]
        inverse = []
        for g in range(order):
            candidates = [h for h in range(order) if table[g][h] == identity]
            if len(candidates) != 1 or table[candidates[0]][g] != identity:
                raise BadGroupError(f'{name}: element {g} has no inverse')
            inverse.append(candidates[0])
        for a, b, c in itertools.product(range(order), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise BadGroupError(f'{name}: table is not associative')
        return cls(
            name=name,
            elements=list(elements),
            table=[list(row) for row in table],
            inverse=inverse,
            identity=identity,
        )

    @property
    def order(self) -> int:
        """Number of elements."""
        return len(self.elements)

    @property
    def is_abelian(self) -> bool:
        """True if the group is commutative."""
        return all(
            self.table[g][h] == self.table[h][g]
            for g in range(self.order)
            for h in range(g)
        )

    def element_order(self, g: int) -> int:
        """Return order of element `g`."""
        power, k = g, 1
        while power != self.identity:
            power = self.table[power][g]
            k += 1
        return k


def cyclic(n: int) -> GroupPresentation:
    """Return cyclic group of order `n`."""
    if n < 1:
        raise BadGroupError(f'cyclic group order must be positive, got {n}')
    return GroupPresentation.from_table(
        f'Z{n}',
        [str(a) for a in range(n)],
        [[(a + b) % n for b in range(n)] for a in range(n)],
    )


def direct_product(
    G: GroupPresentation, H: GroupPresentation
) -> GroupPresentation:
    """Return direct product, element ``(g, h)`` has index ``g·|H| + h``."""
    m = H.order
    elements = [f'({g},{h})' for g in G.elements for h in H.elements]
    table = [
        [
            G.table[a // m][b // m] * m + H.table[a % m][b % m]
            for b in range(G.order * m)
        ]
        for a in range(G.order * m)
    ]
    return GroupPresentation.from_table(f'{G.name}x{H.name}', elements, table)


def symmetric(k: int) -> GroupPresentation:
    """
    Return symmetric group on `k` letters.

    Permutations are listed lexicographically in one-line notation,
    the product ``pq`` is the composition ``i ↦ p(q(i))``.
    """
    if k < 1:
        raise BadGroupError(
            f'symmetric group degree must be positive, got {k}'
        )
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(k))] for q in perms]
        for p in perms
    ]
    elements = [''.join(str(i + 1) for i in p) for p in perms]
    return GroupPresentation.from_table(f'S{k}', elements, table)


def dihedral(n: int) -> GroupPresentation:
    """
    Return dihedral group of order ``2n``.

    Element ``r^a s^b`` has index ``a + n·b`` and
    ``(r^a s^b)(r^c s^d) = r^(a + (−1)^b c) s^(b + d)``.
    """
    if n < 1:
        raise BadGroupError(f'dihedral group parameter must be positive, '
                            f'got {n}')
    elements = [f'r{a}s{b}' for b in range(2) for a in range(n)]
    table = []
    for b in range(2):
        for a in range(n):
            row = []
            for d in range(2):
                for c in range(n):
                    sign = -1 if b else 1
                    row.append((a + sign * c) % n + n * ((b + d) % 2))
            table.append(row)
    return GroupPresentation.from_table(f'D{n}', elements, table)


_FACTOR = re.compile(r'^(?P<kind>[ZSD])(?P<n>[1-9][0-9]*)$')
_FACTORIES = {'Z': cyclic, 'S': symmetric, 'D': dihedral}


def parse_group(text: str) -> GroupPresentation:
    """
    Parse group name like ``Z4``, ``Z2xZ2``, ``S3`` or ``D5``.

    :raise: :class:`UnknownNameError`
    """
    factors = []
    for part in text.strip().split('x'):
        match = _FACTOR.match(part)
        if match is None:
            raise UnknownNameError(text, [GROUP_NAME_HELP])
        factors.append(_FACTORIES[match['kind']](int(match['n'])))
    group = factors[0]
    for factor in factors[1:]:
        group = direct_product(group, factor)
    log.debug('Parsed group %s of order %s', group.name, group.order)
    return group
