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

from .axioms import AxiomCheck, AxiomReport, schur_residual, verify_axioms
from .blocks import (
    BlockDecomposition,
    block_decomposition,
    central_minimal_index,
    is_central,
    rank,
)
from .structure import (
    Element,
    TwoBoxStructure,
    adjoint,
    contragredient,
    coproduct,
    multiply,
    trace,
)
