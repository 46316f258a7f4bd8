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

from .constructors import (
    chi,
    fourier_dual,
    make_group,
    make_subgroup_2p2,
    make_TL,
)
from .groups import (
    GroupPresentation,
    cyclic,
    dihedral,
    direct_product,
    parse_group,
    symmetric,
)
from .named import CatalogEntry, catalog_entries, named
from .products import (
    clean_basis,
    cut_down,
    free_product,
    restrict,
    tensor_product,
)
