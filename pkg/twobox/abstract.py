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

"""Common symbols."""

from abc import ABC, abstractmethod

from pydantic import BaseModel, Extra


class EntityModel(BaseModel):
    """Basic entity model."""

    class Config:
        """Do not allow extra fields."""

        extra = Extra.forbid


class Report(ABC):
    """An abstract report which can be rendered as JSON-compatible dict."""

    @abstractmethod
    def as_dict(self) -> dict:
        """Return report as dict of JSON-compatible values."""
        raise NotImplementedError


def rounded(value: complex | float, digits: int = 12) -> float | list:
    """
    Round number for reports.

    Real values become floats with `digits` significant digits, complex
    values with non-zero imaginary part become ``[re, im]`` pairs.
    """
    value = complex(value)
    re = float(f'{value.real:.{digits}g}') + 0.0
    if abs(value.imag) <= 10**-digits * max(1.0, abs(value)):
        return re
    return [re, float(f'{value.imag:.{digits}g}') + 0.0]
