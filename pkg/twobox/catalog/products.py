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
Tensor and free products, substructures and cut-downs.

The free product is the span of separated elements ``a⊗e`` and
``id⊗b`` inside the tensor product. Any span closed under both
multiplications becomes a structure of its own via :func:`restrict`.
"""

__all__ = [
    'clean_basis',
    'cut_down',
    'free_product',
    'restrict',
    'tensor_product',
]

import logging
from collections.abc import Mapping, Sequence

import numpy as np
import numpy.typing as npt

from twobox.exceptions import ClosureFailureError
from twobox.linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    column_rank,
    null_space,
    range_basis,
)
from twobox.structure import Element, TwoBoxStructure


log = logging.getLogger(__name__)


def tensor_product(A: TwoBoxStructure, B: TwoBoxStructure) -> TwoBoxStructure:
    """
    Return tensor product of two structures.

    Basis vector ``a_i⊗b_j`` has index ``i·dim B + j``. The elements
    ``id⊗e`` and ``e⊗id`` are recorded as annotations ``left`` and
    ``right``.
    """
    n = A.n * B.n

    def table(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum('ikm,jln->ijklmn', a, b).reshape(n, n, n)

    return TwoBoxStructure(
        name=f'{A.name}⊗{B.name}',
        labels=[f'{a}⊗{b}' for a in A.labels for b in B.labels],
        delta=A.delta * B.delta,
        product=table(A.product, B.product),
        coproduct=table(A.coproduct_table, B.coproduct_table),
        trace=np.kron(A.trace_vector, B.trace_vector),
        contragredient=np.kron(
            A.contragredient_matrix, B.contragredient_matrix
        ),
        adjoint=np.kron(A.adjoint_matrix, B.adjoint_matrix),
        unit=np.kron(A.unit_coeffs, B.unit_coeffs),
        jones=np.kron(A.jones_coeffs, B.jones_coeffs),
        annotations={
            'left': np.kron(A.unit_coeffs, B.jones_coeffs),
            'right': np.kron(A.jones_coeffs, B.unit_coeffs),
        },
    )


def _solve(
    basis: np.ndarray, values: np.ndarray, operation: str, tol: Tolerance
) -> np.ndarray:
    """Express columns of `values` in `basis`, assert they lie in the span."""
    coeffs, *_ = np.linalg.lstsq(basis, values, rcond=None)
    residual = float(np.linalg.norm(basis @ coeffs - values))
    scale = 1.0 + float(np.linalg.norm(values))
    if residual > tol.eq_tol * scale:
        raise ClosureFailureError(operation, residual / scale)
    return coeffs


def _independent_columns(
    vectors: np.ndarray, tol: Tolerance, limit: int | None = None
) -> list[int]:
    chosen: list[int] = []
    for index in range(vectors.shape[1]):
        if column_rank(vectors[:, [*chosen, index]], tol) > len(chosen):
            chosen.append(index)
        if limit is not None and len(chosen) == limit:
            break
    return chosen


def clean_basis(
    S: TwoBoxStructure,
    span: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> np.ndarray:
    """
    Return a basis of self-adjoint elements for an adjoint-closed span.

    The columns are normalized at independent pivot coordinates, so a
    span of basis vectors gives those basis vectors back. When some of
    them are not self-adjoint the Hermitian and skew parts are used.
    """
    span = range_basis(span, tol)
    m = span.shape[1]
    rows = _independent_columns(span.T, tol, limit=m)
    basis = span @ np.linalg.inv(span[rows, :])
    basis[np.abs(basis) < 1e-14] = 0.0  # noqa: PLR2004
    adjoints = S.adjoint_matrix @ basis.conj()
    if np.allclose(adjoints, basis, rtol=0, atol=tol.eq_tol):
        return basis
    candidates = np.hstack([(basis + adjoints) / 2, (basis - adjoints) / 2j])
    return candidates[:, _independent_columns(candidates, tol, limit=m)]


def _labels(
    S: TwoBoxStructure,
    basis: np.ndarray,
    named: Mapping[str, np.ndarray],
    prefix: str,
) -> list[str]:
    labels = []
    for k in range(basis.shape[1]):
        column = basis[:, k]
        label = f'{prefix}{k}'
        support = np.flatnonzero(np.abs(column) > 1e-12)  # noqa: PLR2004
        if support.size == 1 and abs(column[support[0]] - 1) < 1e-12:  # noqa: PLR2004
            label = S.labels[support[0]]
        else:
            for name, value in named.items():
                if np.allclose(column, value, rtol=0, atol=1e-12):
                    label = name
                    break
        labels.append(label)
    if len(set(labels)) != len(labels):
        labels = [f'{prefix}{k}' for k in range(len(labels))]
    return labels


def restrict(
    S: TwoBoxStructure,
    span: npt.ArrayLike,
    *,
    name: str,
    unit: Element,
    jones: Element,
    delta: float,
    coproduct_scale: float = 1.0,
    trace_scale: float = 1.0,
    labels: Sequence[str] | None = None,
    annotations: Mapping[str, Element] | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> TwoBoxStructure:
    """
    Return structure on a span closed under both multiplications.

    :param span: Columns are coefficient vectors of the new basis.
    :param unit: Product unit of the substructure.
    :param jones: Jones projection of the substructure.
    :param delta: Loop value of the substructure.
    :param coproduct_scale: Factor applied to the coproduct.
    :param trace_scale: Factor applied to the trace.
    :raise: :class:`ClosureFailureError`
    """
    basis = np.asarray(span, dtype=np.complex128)
    m = basis.shape[1]

    def table(values: np.ndarray, operation: str) -> np.ndarray:
        images = np.einsum('ia,jb,ijk->kab', basis, basis, values)
        coeffs = _solve(basis, images.reshape(S.n, m * m), operation, tol)
        return coeffs.reshape(m, m, m).transpose(1, 2, 0)

    product = table(S.product, 'product')
    coproduct = table(S.coproduct_table, 'coproduct') * coproduct_scale
    contragredient = _solve(
        basis, S.contragredient_matrix @ basis, 'contragredient', tol
    )
    adjoint = _solve(basis, S.adjoint_matrix @ basis.conj(), 'adjoint', tol)
    vectors = _solve(
        basis,
        np.column_stack([unit.coeffs, jones.coeffs]),
        'unit and jones',
        tol,
    )
    extra = {}
    for key, value in (annotations or {}).items():
        extra[key] = _solve(basis, value.coeffs[:, None], key, tol)[:, 0]
    structure = TwoBoxStructure(
        name=name,
        labels=labels or [f'x{k}' for k in range(m)],
        delta=delta,
        product=product,
        coproduct=coproduct,
        trace=(S.trace_vector @ basis) * trace_scale,
        contragredient=contragredient,
        adjoint=adjoint,
        unit=vectors[:, 0],
        jones=vectors[:, 1],
        annotations=extra,
    )
    log.debug('Restricted %s to %s', S.name, structure)
    return structure


def free_product(
    A: TwoBoxStructure,
    B: TwoBoxStructure,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> TwoBoxStructure:
    """
    Return free product of two structures.

    The basis is ``a_i⊗e`` for every basis vector of `A` followed by
    ``id⊗b_j`` for basis vectors of `B` complementing ``e``. The
    separating biprojection ``id⊗e`` is recorded as annotation
    ``separator``.

    :raise: :class:`ClosureFailureError`
    """
    T = tensor_product(A, B)
    e_index = B.jones_index
    a_side = [np.kron(a.coeffs, B.jones_coeffs) for a in A]
    a_labels = [
        f'{label}⊗{B.labels[e_index] if e_index is not None else "e"}'
        for label in A.labels
    ]
    if e_index is not None:
        b_indices = [j for j in range(B.n) if j != e_index]
        b_vectors = [B.basis(j).coeffs for j in b_indices]
    else:
        complement = B.identity - B.jones
        b_vectors = [(b @ complement).coeffs for b in B]
        b_indices = _independent_columns(
            np.column_stack(b_vectors), tol, limit=B.n - 1
        )
        b_vectors = [b_vectors[j] for j in b_indices]
    b_side = [np.kron(A.unit_coeffs, b) for b in b_vectors]
    b_labels = [f'id⊗{B.labels[j]}' for j in b_indices]
    separator = T.element(np.kron(A.unit_coeffs, B.jones_coeffs))
    return restrict(
        T,
        np.column_stack(a_side + b_side),
        name=f'{A.name}*{B.name}',
        unit=T.identity,
        jones=T.jones,
        delta=T.delta,
        labels=a_labels + b_labels,
        annotations={'separator': separator},
        tol=tol,
    )


def cut_down(
    S: TwoBoxStructure,
    Q: Element,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> tuple[TwoBoxStructure, TwoBoxStructure]:
    """
    Split `S` along a free-separating biprojection `Q`.

    The first factor lives on ``{x : QxQ = x}`` with unit `Q`, the
    second on ``{x : Q*x*Q = (tr(Q)/δ)²x}`` with Jones projection `Q`.
    For ``S = A*B`` and ``Q = id⊗e`` these are `A` and `B`.

    :raise: :class:`ClosureFailureError`
    """
    trace = Q.trace().real
    delta_a = float(np.sqrt(trace))
    delta_b = S.delta / delta_a
    named = {
        'id': S.unit_coeffs, 'e': S.jones_coeffs, 'Q': Q.coeffs,
    }
    compress = S.left_matrix(Q) @ S.right_matrix(Q)
    inner = clean_basis(S, compress, tol)
    lower = restrict(
        S,
        inner,
        name=f'{S.name}|Q',
        unit=Q,
        jones=S.jones,
        delta=delta_a,
        coproduct_scale=delta_b,
        labels=_labels(S, inner, named, 'a'),
        tol=tol,
    )
    sandwich = (
        S.left_convolution_matrix(Q) @ S.right_convolution_matrix(Q)
        - (trace / S.delta) ** 2 * np.eye(S.n)
    )
    outer = clean_basis(S, null_space(sandwich, tol), tol)
    upper = restrict(
        S,
        outer,
        name=f'{S.name}/Q',
        unit=S.identity,
        jones=Q,
        delta=delta_b,
        coproduct_scale=1 / delta_a,
        trace_scale=1 / trace,
        labels=_labels(S, outer, named, 'b'),
        tol=tol,
    )
    log.debug(
        'Cut %s along Q of trace %.6g: dims %s and %s',
        S.name, trace, lower.n, upper.n,
    )
    return lower, upper
