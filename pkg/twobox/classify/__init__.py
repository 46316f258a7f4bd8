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

from .commute import (
    CommuteReport,
    NormalizerInventoryItem,
    SplitKind,
    SplitTree,
    check_commute_relation_necessary,
    split_tree,
)
from .driver import (
    ClassificationVerdict,
    ClassTag,
    UnclassifiedReason,
    Witness,
    case_d_defect,
    case_d_model,
    classify_dim4,
    derive_case_d_constant,
)
from .dual import (
    CommuteType,
    DimBound,
    DualIdempotentBasis,
    LambdaMatrix,
    commute_type,
    depth2_support,
    dim_bound_report,
    dimension_bound,
    dual_idempotents,
    lambda_matrix,
    new_part_dimension,
    new_part_profile,
)
from .isomorphism import (
    coproduct_coefficients,
    find_isomorphism,
    identify_group,
    small_groups,
    structure_map_residual,
)
