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
Catalog of named structures.

Names are accepted with keyword parameters, ``named('TL', delta=3)``,
or with positional parameters in parentheses, ``named('TL(3)')``::

    TL(delta)                           Temperley-Lieb
    Z4, Z2xZ2, S3, D5, ...              group subfactors
    Z2subZ7                             ℤ₂ ⊂ ℤ_p ⋊ ℤ₂ for odd prime p
    Z2-tensor-TL(delta)                 ℤ₂ ⊗ TL(δ)
    TL-free-Z3(delta), Z3-free-TL(delta)
    FussCatalan(delta_a, delta_b)       TL(δ_a) * TL(δ_b)
    TL-free-FussCatalan(delta, delta_a, delta_b)
    dual-<name>                         Fourier dual of any of the above
"""

__all__ = ['CatalogEntry', 'catalog_entries', 'named']

import logging
import re
from collections.abc import Callable
from typing import NamedTuple

from twobox.exceptions import UnknownNameError
from twobox.structure import TwoBoxStructure

from .constructors import fourier_dual, make_group, make_subgroup_2p2, make_TL
from .groups import GROUP_NAME_HELP, cyclic, parse_group
from .products import free_product, tensor_product


log = logging.getLogger(__name__)


class CatalogEntry(NamedTuple):
    """Parametrized catalog entry."""

    name: str
    params: tuple[str, ...]
    defaults: tuple[float, ...]
    factory: Callable[..., TwoBoxStructure]
    description: str

    @property
    def signature(self) -> str:
        """Name with parameter list."""
        if not self.params:
            return self.name
        return f'{self.name}({", ".join(self.params)})'


def _z2_tensor_tl(delta: float) -> TwoBoxStructure:
    return tensor_product(make_group(cyclic(2)), make_TL(delta))


def _tl_free_z3(delta: float) -> TwoBoxStructure:
    return free_product(make_TL(delta), make_group(cyclic(3)))


def _z3_free_tl(delta: float) -> TwoBoxStructure:
    return free_product(make_group(cyclic(3)), make_TL(delta))


def _fuss_catalan(delta_a: float, delta_b: float) -> TwoBoxStructure:
    return free_product(make_TL(delta_a), make_TL(delta_b))


def _tl_free_fuss_catalan(
    delta: float, delta_a: float, delta_b: float
) -> TwoBoxStructure:
    return free_product(make_TL(delta), _fuss_catalan(delta_a, delta_b))


_ENTRIES = [
    CatalogEntry(
        'TL', ('delta',), (2.0,), make_TL, 'Temperley-Lieb TL(δ), δ ≥ √2'
    ),
    CatalogEntry(
        'Z2-tensor-TL', ('delta',), (2.0,), _z2_tensor_tl,
        'tensor product of ℤ₂ group subfactor and TL(δ)',
    ),
    CatalogEntry(
        'TL-free-Z3', ('delta',), (2.0,), _tl_free_z3,
        'free product TL(δ) * ℤ₃',
    ),
    CatalogEntry(
        'Z3-free-TL', ('delta',), (2.0,), _z3_free_tl,
        'free product ℤ₃ * TL(δ)',
    ),
    CatalogEntry(
        'FussCatalan', ('delta_a', 'delta_b'), (2.0, 3.0), _fuss_catalan,
        'Fuss-Catalan TL(δ_a) * TL(δ_b)',
    ),
    CatalogEntry(
        'TL-free-FussCatalan', ('delta', 'delta_a', 'delta_b'),
        (2.0, 2.0, 3.0), _tl_free_fuss_catalan,
        'free product TL(δ) * FussCatalan(δ_a, δ_b)',
    ),
]
_REGISTRY = {entry.name: entry for entry in _ENTRIES}

_CALL = re.compile(r'^(?P<name>[^()]+?)\s*\((?P<args>[^()]*)\)$')
_SUBGROUP = re.compile(r'^Z2subZ(?P<p>[0-9]+)$')


def catalog_entries() -> list[tuple[str, str]]:
    """Return signatures and descriptions of all catalog names."""
    return [(entry.signature, entry.description) for entry in _ENTRIES] + [
        ('Z2subZ<p>', 'subgroup planar algebra ℤ₂ ⊂ ℤ_p ⋊ ℤ₂, p odd prime'),
        (GROUP_NAME_HELP, 'group subfactor planar algebra'),
        ('dual-<name>', 'Fourier dual of a catalog structure'),
    ]


def _known() -> list[str]:
    return [signature for signature, _ in catalog_entries()]


def _number(name: str, key: str, value: object) -> float:
    try:
        return float(value)
    except (TypeError, ValueError) as e:
        raise UnknownNameError(
            f'{name} with {key}={value!r}', _known()
        ) from e


def named(name: str, **params: object) -> TwoBoxStructure:
    """
    Return catalog structure by name.

    :param name: Catalog name, optionally followed by positional
        parameters in parentheses.
    :param params: Keyword parameters of parametrized entries.
    :raise: :class:`UnknownNameError`, constructor errors
    """
    name = name.strip()
    if name.startswith('dual-'):
        return fourier_dual(named(name.removeprefix('dual-'), **params))
    positional: list[str] = []
    if match := _CALL.match(name):
        name = match['name']
        positional = [a.strip() for a in match['args'].split(',') if a.strip()]
    if entry := _REGISTRY.get(name):
        if len(positional) > len(entry.params):
            raise UnknownNameError(f'{name}{tuple(positional)}', _known())
        unknown = set(params) - set(entry.params)
        if unknown:
            raise UnknownNameError(
                f'{name} with parameters {sorted(unknown)}', _known()
            )
        values = dict(zip(entry.params, entry.defaults, strict=True))
        values.update(zip(entry.params, positional, strict=False))
        values.update(params)
        args = {k: _number(name, k, v) for k, v in values.items()}
        log.debug('Catalog entry %s with %s', name, args)
        return entry.factory(**args)
    if positional or params:
        if name == 'Z2subZp' and set(params) <= {'p'}:
            p = positional[0] if positional else params.get('p')
            return make_subgroup_2p2(int(_number(name, 'p', p)))
        raise UnknownNameError(name, _known())
    if match := _SUBGROUP.match(name):
        return make_subgroup_2p2(int(match['p']))
    try:
        group = parse_group(name)
    except UnknownNameError as e:
        raise UnknownNameError(name, _known()) from e
    return make_group(group)
