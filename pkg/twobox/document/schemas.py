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

"""Schema of the tbx-1 document format."""

__all__ = ['FORMAT_VERSION', 'Pair', 'TbxDocument']

from collections.abc import Sequence

import numpy as np
from pydantic import root_validator, validator

from twobox.abstract import EntityModel
from twobox.structure import TwoBoxStructure


FORMAT_VERSION = 'tbx-1'

Pair = tuple[float, float]


def _pairs(values: np.ndarray) -> list:
    """Encode complex array as nested lists of ``[re, im]`` pairs."""
    if values.ndim == 0:
        value = complex(values)
        return [value.real + 0.0, value.imag + 0.0]
    return [_pairs(value) for value in values]


def _complex(pairs: Sequence) -> np.ndarray:
    """Decode nested lists of ``[re, im]`` pairs."""
    array = np.asarray(pairs, dtype=np.float64)
    return array[..., 0] + 1j * array[..., 1]


def _shape(value: list, shape: tuple[int, ...], field: str) -> None:
    found = np.shape(value)
    if found != (*shape, 2):
        msg = f'{field} must have shape {(*shape, 2)}, got {found}'
        raise ValueError(msg)


class TbxDocument(EntityModel):
    """
    Structure of 2-boxes as a tbx-1 document.

    Coefficients are ``[re, im]`` pairs. The units are given by basis
    index when they are basis vectors, otherwise by coefficients.
    """

    format_version: str
    name: str
    dim: int
    delta: float
    labels: list[str]
    trace: list[float]
    product: list[list[list[Pair]]]
    coproduct: list[list[list[Pair]]]
    contragredient: list[list[Pair]]
    adjoint: list[list[Pair]]
    unit_index: int | None = None
    jones_index: int | None = None
    unit: list[Pair] | None = None
    jones: list[Pair] | None = None
    annotations: dict[str, list[Pair]] | None = None

    @validator('format_version')
    def _check_version(cls, value: str) -> str:  # noqa: N805
        if value != FORMAT_VERSION:
            msg = f'format version must be {FORMAT_VERSION!r}'
            raise ValueError(msg)
        return value

    @validator('dim')
    def _check_dim(cls, value: int) -> int:  # noqa: N805
        if value < 1:
            msg = 'dim must be positive'
            raise ValueError(msg)
        return value

    @validator('labels', 'trace')
    def _check_length(cls, value: list, values: dict) -> list:  # noqa: N805
        dim = values.get('dim')
        if dim is not None and len(value) != dim:
            msg = f'length must equal dim={dim}, got {len(value)}'
            raise ValueError(msg)
        return value

    @validator('product', 'coproduct')
    def _check_table(cls, value: list, values: dict) -> list:  # noqa: N805
        dim = values.get('dim')
        if dim is not None:
            _shape(value, (dim, dim, dim), 'table')
        return value

    @validator('contragredient', 'adjoint')
    def _check_matrix(cls, value: list, values: dict) -> list:  # noqa: N805
        dim = values.get('dim')
        if dim is not None:
            _shape(value, (dim, dim), 'matrix')
        return value

    @validator('unit_index', 'jones_index')
    def _check_index(
        cls, value: int | None, values: dict  # noqa: N805
    ) -> int | None:
        dim = values.get('dim')
        if value is not None and dim is not None and not 0 <= value < dim:
            msg = f'index must be in range 0..{dim - 1}, got {value}'
            raise ValueError(msg)
        return value

    @validator('unit', 'jones')
    def _check_vector(
        cls, value: list | None, values: dict  # noqa: N805
    ) -> list | None:
        dim = values.get('dim')
        if value is not None and dim is not None:
            _shape(value, (dim,), 'vector')
        return value

    @validator('annotations')
    def _check_annotations(
        cls, value: dict | None, values: dict  # noqa: N805
    ) -> dict | None:
        dim = values.get('dim')
        for key, vector in (value or {}).items():
            if dim is not None:
                _shape(vector, (dim,), f'annotation {key}')
        return value

    @root_validator(skip_on_failure=True)
    def _check_units(cls, values: dict) -> dict:  # noqa: N805
        for name in ('unit', 'jones'):
            given = [
                values.get(f'{name}_index') is not None,
                values.get(name) is not None,
            ]
            if sum(given) != 1:
                msg = f"exactly one of '{name}_index' and '{name}' required"
                raise ValueError(msg)
        return values

    @classmethod
    def from_structure(cls, S: TwoBoxStructure) -> 'TbxDocument':
        """Return document describing `S`."""
        unit_index, jones_index = S.unit_index, S.jones_index
        return cls(
            format_version=FORMAT_VERSION,
            name=S.name,
            dim=S.n,
            delta=S.delta,
            labels=list(S.labels),
            trace=[float(t) + 0.0 for t in S.trace_vector],
            product=_pairs(S.product),
            coproduct=_pairs(S.coproduct_table),
            contragredient=_pairs(S.contragredient_matrix),
            adjoint=_pairs(S.adjoint_matrix),
            unit_index=unit_index,
            jones_index=jones_index,
            unit=None if unit_index is not None else _pairs(S.unit_coeffs),
            jones=(
                None if jones_index is not None else _pairs(S.jones_coeffs)
            ),
            annotations=(
                {k: _pairs(v) for k, v in sorted(S.annotations.items())}
                or None
            ),
        )

    def _vector(self, index: int | None, pairs: list | None) -> np.ndarray:
        if pairs is not None:
            return _complex(pairs)
        vector = np.zeros(self.dim, dtype=np.complex128)
        vector[index] = 1.0
        return vector

    def to_structure(self) -> TwoBoxStructure:
        """
        Return structure described by the document.

        :raise: :class:`StructureError`
        """
        return TwoBoxStructure(
            name=self.name,
            labels=self.labels,
            delta=self.delta,
            product=_complex(self.product),
            coproduct=_complex(self.coproduct),
            trace=self.trace,
            contragredient=_complex(self.contragredient),
            adjoint=_complex(self.adjoint),
            unit=self._vector(self.unit_index, self.unit),
            jones=self._vector(self.jones_index, self.jones),
            annotations={
                key: _complex(value)
                for key, value in (self.annotations or {}).items()
            },
        )
