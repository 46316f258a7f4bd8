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
Classification of exchange relation structures with ``dim S₂ = 4``.

Such a structure is one of:

1. a group subfactor planar algebra (depth 2);
2. a free product ``A * TL`` or ``TL * A``;
3. a tensor product ``ℤ₂ ⊗ TL``;
4. the subgroup planar algebra of ``ℤ₂ ⊂ ℤ₇ ⋊ ℤ₂``.

The driver tries the classes in this order and returns a verdict with
witnesses. Inputs outside the hypotheses are never guessed, they are
returned unclassified with a reason.
"""

__all__ = [
    'ClassTag',
    'ClassificationVerdict',
    'UnclassifiedReason',
    'Witness',
    'case_d_defect',
    'case_d_model',
    'classify_dim4',
    'derive_case_d_constant',
]

import itertools
import logging
import math
from enum import StrEnum
from typing import Any, NamedTuple

import numpy as np

from twobox.abstract import Report, rounded
from twobox.catalog import make_subgroup_2p2
from twobox.exceptions import TwoBoxError
from twobox.linalg import (
    DEFAULT_TOLERANCE,
    ComplexMatrix,
    Tolerance,
    relative_residual,
)
from twobox.positivity import (
    enumerate_biprojections,
    find_separating_biprojection,
    free_separation_dims,
    is_tensor_separating,
    virtual_normalizers,
)
from twobox.structure import (
    Element,
    TwoBoxStructure,
    block_decomposition,
    verify_axioms,
)

from .dual import depth2_support, new_part_dimension
from .isomorphism import (
    MAX_CANDIDATES,
    coproduct_coefficients,
    find_isomorphism,
    identify_group,
)


log = logging.getLogger(__name__)

CASE_D_NEW_PART = 9
CASE_D_PRIME = 7
CASE_D_SAMPLES = (1.5, 3.0, 4.5)


class ClassTag(StrEnum):
    """Classification outcome."""

    DEPTH2 = 'depth2'
    FREE_PRODUCT_SPLIT = 'free-product-split'
    TENSOR_SPLIT = 'tensor-split'
    SUBGROUP_Z2_Z7 = 'subgroup-z2-z7'
    UNCLASSIFIED = 'unclassified'

    @property
    def number(self) -> int | None:
        """Class number in the list of the four classes."""
        return {
            ClassTag.DEPTH2: 1,
            ClassTag.FREE_PRODUCT_SPLIT: 2,
            ClassTag.TENSOR_SPLIT: 3,
            ClassTag.SUBGROUP_Z2_Z7: 4,
        }.get(self)


class UnclassifiedReason(StrEnum):
    """Machine readable reason of an unclassified verdict."""

    DIMENSION = 'dimension'
    AXIOMS = 'axioms'
    NONABELIAN_PRODUCT = 'nonabelian-product'
    NONABELIAN_DUAL = 'nonabelian-dual'
    NO_CASE = 'no-case'
    CASE_D_TRACES = 'case-d-traces'
    CASE_D_BOOKKEEPING = 'case-d-bookkeeping'
    CASE_D_CONSTANT = 'case-d-constant'
    NO_ISOMORPHISM = 'no-isomorphism'
    ERROR = 'error'


class Witness(NamedTuple):
    """Evidence supporting a verdict."""

    kind: str
    element: Element | None = None
    details: dict[str, Any] | None = None

    def as_dict(self) -> dict:
        """Return witness as dict."""
        data: dict[str, Any] = {'kind': self.kind}
        if self.element is not None:
            data['trace'] = rounded(self.element.trace())
            data['coefficients'] = [rounded(c) for c in self.element.coeffs]
        data.update(self.details or {})
        return data


class ClassificationVerdict(Report):
    """Outcome of :func:`classify_dim4` with witnesses and diagnostics."""

    def __init__(self, name: str):
        """
        Initialise ClassificationVerdict.

        :param name: Name of the classified structure.
        """
        self.name = name
        self.tag = ClassTag.UNCLASSIFIED
        self.reason: UnclassifiedReason | None = None
        self.group: str | None = None
        self.witnesses: list[Witness] = []
        self.constants: dict[str, float] = {}
        self.new_part: int | None = None
        self.isomorphism: ComplexMatrix | None = None
        self.diagnostics: list[str] = []

    @property
    def class_number(self) -> int | None:
        """Number of the class, None if unclassified."""
        return self.tag.number

    @property
    def classified(self) -> bool:
        """True if one of the four classes was certified."""
        return self.tag != ClassTag.UNCLASSIFIED

    def note(self, msg: str, *args: object) -> None:
        """Append diagnostic line and log it."""
        log.debug('%s: ' + msg, self.name, *args)
        self.diagnostics.append(msg % args)

    def settle(self, tag: ClassTag) -> 'ClassificationVerdict':
        """Set class tag."""
        self.tag = tag
        self.reason = None
        return self

    def give_up(
        self, reason: UnclassifiedReason, msg: str, *args: object
    ) -> 'ClassificationVerdict':
        """Mark verdict unclassified."""
        self.note(msg, *args)
        self.tag = ClassTag.UNCLASSIFIED
        self.reason = reason
        return self

    def as_dict(self) -> dict:
        """Return verdict as dict."""
        return {
            'structure': self.name,
            'class': self.class_number,
            'tag': str(self.tag),
            'reason': None if self.reason is None else str(self.reason),
            'group': self.group,
            'constants': {k: rounded(v) for k, v in self.constants.items()},
            'new_part_dimension': self.new_part,
            'witnesses': [witness.as_dict() for witness in self.witnesses],
            'diagnostics': list(self.diagnostics),
        }


def case_d_model(c: float) -> TwoBoxStructure:
    """
    Return the coproduct bookkeeping table of the full ``M₃`` case.

    Basis ``e, P_1, P_2, P_3`` of orthogonal projections with
    ``tr(P_i) = c`` and ``δ² = 1 + 3c``::

        δ·P_1*P_1 = c·e + (c − 1)P_2      δ·P_1*P_2 = (c − 1)P_1 + P_3
        δ·P_2*P_2 = c·e + (c − 1)P_3      δ·P_1*P_3 = P_2 + (c − 1)P_3
        δ·P_3*P_3 = c·e + (c − 1)P_1      δ·P_2*P_3 = P_1 + (c − 1)P_2

    The coproduct is associative only for ``c = 2``, where the table
    is that of ``ℤ₂ ⊂ ℤ₇ ⋊ ℤ₂``.
    """
    c = float(c)
    delta = math.sqrt(1 + 3 * c)
    n = 4
    product = np.zeros((n, n, n))
    coproduct = np.zeros((n, n, n))
    for i in range(n):
        product[i, i, i] = 1.0
        coproduct[0, i, i] = coproduct[i, 0, i] = 1.0
    rules = {
        (1, 1): {0: c, 2: c - 1},
        (2, 2): {0: c, 3: c - 1},
        (3, 3): {0: c, 1: c - 1},
        (1, 2): {1: c - 1, 3: 1.0},
        (1, 3): {2: 1.0, 3: c - 1},
        (2, 3): {1: 1.0, 2: c - 1},
    }
    for (i, j), terms in rules.items():
        for k, value in terms.items():
            coproduct[i, j, k] = coproduct[j, i, k] = value
    return TwoBoxStructure(
        name=f'CaseD({c:g})',
        labels=['e', 'P1', 'P2', 'P3'],
        delta=delta,
        product=product,
        coproduct=coproduct / delta,
        trace=[1.0, c, c, c],
        contragredient=np.eye(n),
        adjoint=np.eye(n),
        unit=np.ones(n),
        jones=[1.0, 0.0, 0.0, 0.0],
    )


def case_d_defect(c: float) -> float:
    """
    Return ``δ²`` times the ``P_3`` coefficient of associativity defect.

    The defect is ``P_1*(P_1*P_2) − (P_1*P_1)*P_2`` in
    :func:`case_d_model`.
    """
    S = case_d_model(c)
    P1, P2 = S.basis(1), S.basis(2)
    defect = P1.coproduct(P1.coproduct(P2)) - P1.coproduct(P1).coproduct(P2)
    return float(defect.coeffs[3].real) * S.delta**2


def derive_case_d_constant(tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """
    Return the trace ``c > 1`` forced by associativity of the coproduct.

    The defect of :func:`case_d_defect` is quadratic in ``c``. It is
    sampled, interpolated and its root above 1 is returned.
    """
    values = [case_d_defect(c) for c in CASE_D_SAMPLES]
    coefficients = np.polyfit(CASE_D_SAMPLES, values, 2)
    roots = [
        float(root.real)
        for root in np.roots(coefficients)
        if abs(root.imag) <= tol.rank_tol and root.real > 1 + tol.rank_tol
    ]
    return min(roots)


def _free_witnesses(
    S: TwoBoxStructure, verdict: ClassificationVerdict, tol: Tolerance
) -> list[Witness]:
    witnesses = []
    for P in virtual_normalizers(S, tol):
        Q = find_separating_biprojection(P, tol)
        inner, outer, joint = free_separation_dims(Q.element, tol)
        verdict.note(
            'virtual normalizer of trace %.6g separates by trace %.6g, '
            'dims %s + %s',
            P.trace().real, Q.trace, inner, outer,
        )
        if joint == S.n:
            witnesses.append(
                Witness(
                    'free-separator',
                    Q.element,
                    {'inner_dim': inner, 'outer_dim': outer},
                )
            )
    return witnesses


def _tensor_witnesses(
    S: TwoBoxStructure, verdict: ClassificationVerdict, tol: Tolerance
) -> list[Witness]:
    biprojections = enumerate_biprojections(S, tol)
    verdict.note(
        'biprojection traces %s',
        [round(b.trace, 6) for b in biprojections],
    )
    witnesses = []
    for A, B in itertools.combinations(biprojections, 2):
        if is_tensor_separating(A.element, B.element, tol):
            witnesses.append(Witness('tensor-left', A.element))
            witnesses.append(Witness('tensor-right', B.element))
    return witnesses


def _case_d(
    S: TwoBoxStructure,
    verdict: ClassificationVerdict,
    tol: Tolerance,
    max_candidates: int,
) -> ClassificationVerdict:
    minimal = block_decomposition(S, tol).minimal
    traces = [P.trace().real for P in minimal[1:]]
    c = traces[0]
    if any(abs(t - c) > tol.eq_tol * (1 + c) for t in traces):
        return verdict.give_up(
            UnclassifiedReason.CASE_D_TRACES,
            'non-e minimal projections have traces %s', traces,
        )
    verdict.constants['c'] = c
    coefficients = coproduct_coefficients(minimal)
    contragredient = [
        i for i in range(1, 4)
        if minimal[i].contragredient().is_close(minimal[i], tol)
    ]
    if not contragredient:
        return verdict.give_up(
            UnclassifiedReason.CASE_D_BOOKKEEPING,
            'no self-contragredient minimal projection',
        )
    first = contragredient[0]
    others = [i for i in range(1, 4) if i != first]
    second = max(others, key=lambda k: abs(coefficients[first, first, k]))
    third = next(i for i in others if i != second)
    order = [0, first, second, third]
    observed = coefficients[np.ix_(order, order, order)]
    expected = case_d_model(c).coproduct_table
    residual = relative_residual(observed, expected)
    verdict.note('case (d) coproduct bookkeeping residual %.3e', residual)
    if residual > tol.eq_tol:
        return verdict.give_up(
            UnclassifiedReason.CASE_D_BOOKKEEPING,
            'coproducts of minimal projections differ from the table',
        )
    derived = derive_case_d_constant(tol)
    verdict.constants['c_derived'] = derived
    verdict.note('associativity forces c = %.12g, input has c = %.12g',
                 derived, c)
    if abs(derived - c) > tol.eq_tol * (1 + c):
        return verdict.give_up(
            UnclassifiedReason.CASE_D_CONSTANT,
            'trace c = %.12g differs from %.12g', c, derived,
        )
    target = make_subgroup_2p2(CASE_D_PRIME)
    M = find_isomorphism(S, target, tol, max_candidates=max_candidates)
    if M is None:
        return verdict.give_up(
            UnclassifiedReason.NO_ISOMORPHISM,
            'no isomorphism to %s', target.name,
        )
    verdict.isomorphism = M
    verdict.witnesses.append(Witness('isomorphism', None,
                                     {'target': target.name}))
    return verdict.settle(ClassTag.SUBGROUP_Z2_Z7)


def _classify(
    S: TwoBoxStructure,
    verdict: ClassificationVerdict,
    tol: Tolerance,
    max_candidates: int,
) -> ClassificationVerdict:
    if S.n != 4:  # noqa: PLR2004
        return verdict.give_up(
            UnclassifiedReason.DIMENSION, 'dim S₂ = %s, not 4', S.n
        )
    report = verify_axioms(S, tol, trials=0)
    if not report.passed:
        return verdict.give_up(
            UnclassifiedReason.AXIOMS,
            'axioms failed: %s', ', '.join(report.failed()),
        )
    if not S.product_is_commutative(tol):
        return verdict.give_up(
            UnclassifiedReason.NONABELIAN_PRODUCT, 'S₂ is not abelian'
        )
    if not S.coproduct_is_commutative(tol):
        return verdict.give_up(
            UnclassifiedReason.NONABELIAN_DUAL, 'dual is not abelian'
        )

    support = depth2_support(S, tol)
    verdict.note('depth 2 part has trace %.6g', support.trace().real)
    if support.is_close(S.identity, tol):
        verdict.witnesses.append(Witness('depth2-support', support))
        verdict.group = identify_group(
            S, tol, max_candidates=max_candidates
        )
        if verdict.group is None:
            verdict.note('group is not identified')
        else:
            verdict.witnesses.append(
                Witness('isomorphism', None, {'target': verdict.group})
            )
        return verdict.settle(ClassTag.DEPTH2)

    free = _free_witnesses(S, verdict, tol)
    tensor = _tensor_witnesses(S, verdict, tol)
    verdict.witnesses.extend(free + tensor)
    if free:
        return verdict.settle(ClassTag.FREE_PRODUCT_SPLIT)
    if tensor:
        return verdict.settle(ClassTag.TENSOR_SPLIT)

    new_part = new_part_dimension(S, tol)
    verdict.new_part = new_part
    if new_part == CASE_D_NEW_PART:
        return _case_d(S, verdict, tol, max_candidates)
    return verdict.give_up(
        UnclassifiedReason.NO_CASE,
        'no split and new part dimension %s', new_part,
    )


def classify_dim4(
    S: TwoBoxStructure,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    max_candidates: int = MAX_CANDIDATES,
) -> ClassificationVerdict:
    """
    Classify a structure with ``dim S₂ = 4``.

    Steps, in order: depth 2 part equal to ``id`` (class 1, the group
    is identified), free splitting by a virtual normalizer (class 2),
    tensor splitting by a pair of biprojections (class 3), the full
    ``M₃`` new part with the trace forced by associativity (class 4).
    When both a free and a tensor splitting verify, the free one is
    reported and all witnesses are kept.

    Never raises, errors end up in the diagnostics.
    """
    verdict = ClassificationVerdict(S.name)
    try:
        _classify(S, verdict, tol, max_candidates)
    except TwoBoxError as e:
        verdict.give_up(UnclassifiedReason.ERROR, '%s', e)
    log.debug('Verdict for %s: %s', S.name, verdict.tag)
    return verdict
