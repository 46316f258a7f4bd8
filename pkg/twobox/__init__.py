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

"""Structures of 2-boxes of subfactor planar algebras."""

__version__ = '0.1.0'

from .catalog import (
    fourier_dual,
    free_product,
    make_group,
    make_subgroup_2p2,
    make_TL,
    named,
    tensor_product,
)
from .classify import classify_dim4, find_isomorphism
from .config import Config
from .document import dump, load, parse, serialize
from .linalg import DEFAULT_TOLERANCE, Tolerance
from .structure import (
    Element,
    TwoBoxStructure,
    block_decomposition,
    verify_axioms,
)
