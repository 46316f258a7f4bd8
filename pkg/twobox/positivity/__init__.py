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

from .biprojections import (
    Biprojection,
    biprojection_lattice,
    check_projection,
    coproduct_rank_profile,
    enumerate_biprojections,
    free_separation_dims,
    generated_biprojection,
    is_biprojection,
    is_free_separating,
    is_group_like,
    is_tensor_separating,
    precedes,
    proportionality,
)
from .convolution import (
    Check,
    ConvolutionOperator,
    convolution_operator,
    cut_down_check,
    jones_e2,
    norm_check,
    schur_product_check,
    spectral_biprojection_check,
)
from .normalizers import (
    Side,
    TraceDichotomy,
    find_separating_biprojection,
    is_virtual_normalizer,
    trace_dichotomy_check,
    virtual_normalizers,
)
