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
Structure of 2-boxes.

A structure stores a basis of the 2-box space together with structure
constants of the product and of the (1-string) coproduct, the Markov
trace, the contragredient (rotation by 180 degrees), the adjoint and
the loop value δ. Tables are indexed so that ``product[i, j]`` is the
coefficient vector of ``b_i·b_j`` and ``coproduct[i, j]`` is the
coefficient vector of ``b_i*b_j``.

1⊡a is not stored. It acts as the left convolution operator
``x ↦ a*x`` on the 2-box space with the inner product
``⟨x, y⟩ = tr(x*·y)``.
"""

__all__ = [
    'Element',
    'TwoBoxStructure',
    'adjoint',
    'contragredient',
    'coproduct',
    'multiply',
    'trace',
]

import logging
from collections.abc import Callable, Hashable, Iterator, Mapping, Sequence
from functools import cached_property
from typing import Any

import numpy as np
import numpy.typing as npt

from twobox.exceptions import (
    BadDeltaError,
    NonFiniteError,
    NumericallyDegenerateError,
    OwnerMismatchError,
    StructureShapeError,
)
from twobox.linalg import (
    DEFAULT_TOLERANCE,
    ComplexMatrix,
    Tolerance,
    hermitian_eig,
    relative_residual,
    support_projection,
)


log = logging.getLogger(__name__)


def _frozen(value: npt.ArrayLike, shape: tuple, what: str) -> np.ndarray:
    array = np.array(value, dtype=np.complex128)
    if array.shape != shape:
        raise StructureShapeError(
            f'{what}: shape {shape} expected, got {array.shape}'
        )
    if not np.all(np.isfinite(array)):
        raise NonFiniteError(what)
    array.flags.writeable = False
    return array


class Element:
    """
    A 2-box: coefficient vector over the basis of its owner structure.

    Elements are values. Arithmetic returns new elements::

        a + b, a - b, 2 * a, a / delta   # vector space operations
        a @ b                            # product a·b
        a.coproduct(b)                   # coproduct a*b
        a.contragredient(), a.adjoint()  # a′ and a*
    """

    __slots__ = ('coeffs', 'owner')

    def __init__(self, owner: 'TwoBoxStructure', coeffs: npt.ArrayLike):
        """
        Initialise Element.

        :param owner: Structure the element belongs to.
        :param coeffs: Coefficients over the owner basis.
        """
        self.owner = owner
        self.coeffs = _frozen(coeffs, (owner.n,), 'coefficients')

    def _same(self, other: 'Element') -> None:
        if not isinstance(other, Element):
            raise TypeError(f'Element expected, got {type(other).__name__}')
        if other.owner is not self.owner:
            raise OwnerMismatchError(self.owner.name, other.owner.name)

    def __add__(self, other: 'Element') -> 'Element':
        """Return sum."""
        self._same(other)
        return Element(self.owner, self.coeffs + other.coeffs)

    def __sub__(self, other: 'Element') -> 'Element':
        """Return difference."""
        self._same(other)
        return Element(self.owner, self.coeffs - other.coeffs)

    def __neg__(self) -> 'Element':
        """Return negated element."""
        return Element(self.owner, -self.coeffs)

    def __mul__(self, scalar: complex) -> 'Element':
        """Return element multiplied by scalar."""
        if isinstance(scalar, Element):
            raise TypeError('use a @ b for the product, a.coproduct(b) '
                            'for the coproduct')
        return Element(self.owner, self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> 'Element':
        """Return element divided by scalar."""
        return Element(self.owner, self.coeffs / complex(scalar))

    def __matmul__(self, other: 'Element') -> 'Element':
        """Return product."""
        return self.owner.multiply(self, other)

    def coproduct(self, other: 'Element') -> 'Element':
        """Return coproduct."""
        return self.owner.coproduct(self, other)

    def contragredient(self) -> 'Element':
        """Return contragredient."""
        return self.owner.contragredient(self)

    def adjoint(self) -> 'Element':
        """Return adjoint."""
        return self.owner.adjoint(self)

    def trace(self) -> complex:
        """Return Markov trace."""
        return self.owner.trace(self)

    def norm(self) -> float:
        """Return norm induced by the Markov trace."""
        return float(np.sqrt(max(self.owner.inner(self, self).real, 0.0)))

    def residual(self, other: 'Element') -> float:
        """Return relative Frobenius distance between coefficients."""
        self._same(other)
        return relative_residual(self.coeffs, other.coeffs)

    def is_close(
        self, other: 'Element', tol: Tolerance = DEFAULT_TOLERANCE
    ) -> bool:
        """Compare with `other` within `tol.eq_tol`."""
        return self.residual(other) <= tol.eq_tol

    def is_zero(self, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        """Return True if all coefficients are negligible."""
        return float(np.linalg.norm(self.coeffs)) <= tol.eq_tol

    def __repr__(self) -> str:
        """Return element as linear combination of basis labels."""
        terms = [
            f'({c.real:.6g}{c.imag:+.6g}j)·{label}'
            if abs(c.imag) > 1e-12 else f'{c.real:.6g}·{label}'  # noqa: PLR2004
            for c, label in zip(self.coeffs, self.owner.labels, strict=True)
            if abs(c) > 1e-12  # noqa: PLR2004
        ]
        return f'<Element of {self.owner.name}: {" + ".join(terms) or "0"}>'


class TwoBoxStructure:
    """
    Structure of 2-boxes of a subfactor planar algebra.

    Instances are immutable, derived data is computed on demand and
    memoized.

    :ivar str name: structure label
    :ivar tuple labels: basis labels
    :ivar float delta: loop value δ
    :ivar product: structure constants of the product, shape (n, n, n)
    :ivar coproduct_table: structure constants of the coproduct,
        shape (n, n, n)
    :ivar trace_vector: Markov trace of basis elements
    :ivar contragredient_matrix: linear map a ↦ a′
    :ivar adjoint_matrix: applied to conjugated coefficients, a ↦ a*
    :ivar unit_coeffs: coefficients of the product unit id
    :ivar jones_coeffs: coefficients of the Jones projection e
    """

    def __init__(
        self,
        name: str,
        labels: Sequence[str],
        delta: float,
        product: npt.ArrayLike,
        coproduct: npt.ArrayLike,
        trace: npt.ArrayLike,
        contragredient: npt.ArrayLike,
        adjoint: npt.ArrayLike,
        unit: npt.ArrayLike,
        jones: npt.ArrayLike,
        annotations: Mapping[str, npt.ArrayLike] | None = None,
    ):
        """
        Initialise TwoBoxStructure.

        :param name: Structure label.
        :param labels: Basis labels.
        :param delta: Loop value, must be greater than 1.
        :param product: Product structure constants.
        :param coproduct: Coproduct structure constants.
        :param trace: Markov trace of basis elements, real.
        :param contragredient: Matrix of the contragredient.
        :param adjoint: Matrix of the adjoint applied to conjugated
            coefficients.
        :param unit: Coefficients of id.
        :param jones: Coefficients of e.
        :param annotations: Named distinguished elements, e.g.
            canonical biprojections of products.
        :raise: :class:`StructureShapeError`, :class:`BadDeltaError`
        """
        self.name = str(name)
        self.labels = tuple(str(label) for label in labels)
        n = len(self.labels)
        if n == 0:
            raise StructureShapeError('structure must have basis')
        if len(set(self.labels)) != n:
            raise StructureShapeError('basis labels must be unique')
        self.n = n
        delta = float(delta)
        if not np.isfinite(delta) or delta <= 1.0:
            raise BadDeltaError(delta)
        self.delta = delta
        self.product = _frozen(product, (n, n, n), 'product')
        self.coproduct_table = _frozen(coproduct, (n, n, n), 'coproduct')
        trace = _frozen(trace, (n,), 'trace')
        if np.any(np.abs(trace.imag) > 1e-12 * (1 + np.abs(trace.real))):  # noqa: PLR2004
            raise StructureShapeError('trace values must be real')
        self.trace_vector = trace.real.copy()
        self.trace_vector.flags.writeable = False
        self.contragredient_matrix = _frozen(
            contragredient, (n, n), 'contragredient'
        )
        self.adjoint_matrix = _frozen(adjoint, (n, n), 'adjoint')
        self.unit_coeffs = _frozen(unit, (n,), 'unit')
        self.jones_coeffs = _frozen(jones, (n,), 'jones')
        self.annotations = {
            key: _frozen(value, (n,), f'annotation {key}')
            for key, value in (annotations or {}).items()
        }
        self._memo: dict[Hashable, Any] = {}
        log.debug('Structure %s: dim=%s delta=%s', self.name, n, delta)

    def __repr__(self) -> str:
        """Return short description."""
        return (
            f'<TwoBoxStructure {self.name!r} dim={self.n} '
            f'delta={self.delta:.12g}>'
        )

    def __len__(self) -> int:
        """Return basis size."""
        return self.n

    def memoize(self, key: Hashable, factory: Callable[[], Any]) -> Any:
        """Return memoized value for `key`, computing it if missing."""
        if key not in self._memo:
            self._memo[key] = factory()
        return self._memo[key]

    # Elements

    def element(self, coeffs: npt.ArrayLike) -> Element:
        """Return element with given coefficients."""
        return Element(self, coeffs)

    def basis(self, index: int | str) -> Element:
        """Return basis element by index or label."""
        if isinstance(index, str):
            index = self.labels.index(index)
        coeffs = np.zeros(self.n, dtype=np.complex128)
        coeffs[index] = 1.0
        return Element(self, coeffs)

    def __iter__(self) -> Iterator[Element]:
        """Iterate over basis elements."""
        return (self.basis(i) for i in range(self.n))

    def zero(self) -> Element:
        """Return zero element."""
        return Element(self, np.zeros(self.n))

    @property
    def identity(self) -> Element:
        """Product unit id."""
        return Element(self, self.unit_coeffs)

    @property
    def jones(self) -> Element:
        """Jones projection e."""
        return Element(self, self.jones_coeffs)

    @property
    def coproduct_unit(self) -> Element:
        """Coproduct unit δe."""
        return Element(self, self.delta * self.jones_coeffs)

    @staticmethod
    def _one_hot(coeffs: np.ndarray) -> int | None:
        index = int(np.argmax(np.abs(coeffs)))
        expected = np.zeros_like(coeffs)
        expected[index] = 1.0
        if np.allclose(coeffs, expected, rtol=0, atol=1e-14):
            return index
        return None

    @property
    def unit_index(self) -> int | None:
        """Basis position of id or None if id is not a basis element."""
        return self._one_hot(self.unit_coeffs)

    @property
    def jones_index(self) -> int | None:
        """Basis position of e or None if e is not a basis element."""
        return self._one_hot(self.jones_coeffs)

    def annotation(self, key: str) -> Element | None:
        """Return annotated element, e.g. ``separator`` of free product."""
        if key in self.annotations:
            return Element(self, self.annotations[key])
        return None

    # Operations

    def _own(self, *elements: Element) -> None:
        for element in elements:
            if not isinstance(element, Element):
                raise TypeError(
                    f'Element expected, got {type(element).__name__}'
                )
            if element.owner is not self:
                raise OwnerMismatchError(self.name, element.owner.name)

    def multiply(self, a: Element, b: Element) -> Element:
        """Return product a·b."""
        self._own(a, b)
        return Element(
            self, np.einsum('i,j,ijk->k', a.coeffs, b.coeffs, self.product)
        )

    def coproduct(self, a: Element, b: Element) -> Element:
        """Return coproduct a*b."""
        self._own(a, b)
        return Element(
            self,
            np.einsum('i,j,ijk->k', a.coeffs, b.coeffs, self.coproduct_table),
        )

    def contragredient(self, a: Element) -> Element:
        """Return contragredient a′."""
        self._own(a)
        return Element(self, self.contragredient_matrix @ a.coeffs)

    def adjoint(self, a: Element) -> Element:
        """Return adjoint a*."""
        self._own(a)
        return Element(self, self.adjoint_matrix @ a.coeffs.conj())

    def trace(self, a: Element) -> complex:
        """Return Markov trace tr(a)."""
        self._own(a)
        return complex(self.trace_vector @ a.coeffs)

    def inner(self, x: Element, y: Element) -> complex:
        """Return ⟨x, y⟩ = tr(x*·y)."""
        return self.trace(self.multiply(self.adjoint(x), y))

    # Regular representations in coefficient coordinates

    def left_matrix(self, a: Element) -> ComplexMatrix:
        """Matrix of x ↦ a·x."""
        self._own(a)
        return np.einsum('i,ijk->kj', a.coeffs, self.product)

    def right_matrix(self, a: Element) -> ComplexMatrix:
        """Matrix of x ↦ x·a."""
        self._own(a)
        return np.einsum('j,ijk->ki', a.coeffs, self.product)

    def left_convolution_matrix(self, a: Element) -> ComplexMatrix:
        """Matrix of x ↦ a*x."""
        self._own(a)
        return np.einsum('i,ijk->kj', a.coeffs, self.coproduct_table)

    def right_convolution_matrix(self, a: Element) -> ComplexMatrix:
        """Matrix of x ↦ x*a."""
        self._own(a)
        return np.einsum('j,ijk->ki', a.coeffs, self.coproduct_table)

    # Orthonormal coordinates for the trace inner product

    @cached_property
    def gram(self) -> ComplexMatrix:
        """Gram matrix ``G[i, j] = tr(b_i*·b_j)``."""
        traces = np.einsum('ijk,k->ij', self.product, self.trace_vector)
        return self.adjoint_matrix.T @ traces

    @cached_property
    def _orthonormalizer(self) -> tuple[ComplexMatrix, ComplexMatrix]:
        gram = (self.gram + self.gram.conj().T) / 2
        try:
            lower = np.linalg.cholesky(gram)
        except np.linalg.LinAlgError as e:
            raise NumericallyDegenerateError(
                f'{self.name}: Markov form is not positive definite'
            ) from e
        upper = lower.conj().T
        return upper, np.linalg.inv(upper)

    def to_orthonormal(self, matrix: npt.ArrayLike) -> ComplexMatrix:
        """Express operator given in coefficient coordinates orthonormally."""
        upper, inverse = self._orthonormalizer
        return upper @ np.asarray(matrix) @ inverse

    def from_orthonormal(self, matrix: npt.ArrayLike) -> ComplexMatrix:
        """Express operator given orthonormally in coefficient coordinates."""
        upper, inverse = self._orthonormalizer
        return inverse @ np.asarray(matrix) @ upper

    def left_operator(self, a: Element) -> ComplexMatrix:
        """Left regular representation of `a`, orthonormal coordinates."""
        return self.to_orthonormal(self.left_matrix(a))

    def convolution_operator(self, a: Element) -> ComplexMatrix:
        """Matrix of x ↦ a*x, orthonormal coordinates."""
        return self.to_orthonormal(self.left_convolution_matrix(a))

    def element_of_left_operator(self, matrix: npt.ArrayLike) -> Element:
        """Return `a` whose left regular representation is `matrix`."""
        return Element(self, self.from_orthonormal(matrix) @ self.unit_coeffs)

    def element_of_convolution_operator(
        self, matrix: npt.ArrayLike
    ) -> Element:
        """Return `a` whose left convolution operator is `matrix`."""
        return Element(
            self,
            self.from_orthonormal(matrix) @ self.coproduct_unit.coeffs,
        )

    # Spectral calculus in the product algebra

    def is_self_adjoint(
        self, a: Element, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> bool:
        """Return True if a = a*."""
        return a.is_close(self.adjoint(a), tol)

    def projection_residual(self, a: Element) -> float:
        """Return max residual of a = a* and a = a·a."""
        return max(a.residual(self.adjoint(a)), a.residual(a @ a))

    def spectrum(
        self, a: Element, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> npt.NDArray[np.float64]:
        """Eigenvalues of self-adjoint `a` in the regular representation."""
        return hermitian_eig(self.left_operator(a), tol).eigenvalues

    def apply_function(
        self,
        a: Element,
        func: Callable[[np.ndarray], np.ndarray],
        tol: Tolerance = DEFAULT_TOLERANCE,
    ) -> Element:
        """Return f(a) for self-adjoint `a` by functional calculus."""
        values, vectors = hermitian_eig(self.left_operator(a), tol)
        matrix = vectors @ np.diag(func(values)) @ vectors.conj().T
        return self.element_of_left_operator(matrix)

    def support(
        self, a: Element, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> Element:
        """
        Return support projection of positive `a`.

        Eigenvalues not above ``rank_tol * max(1, λ_max)`` count as zero.

        :raise: :class:`NotPositiveError`
        """
        return self.element_of_left_operator(
            support_projection(self.left_operator(a), tol)
        )

    def is_positive(
        self, a: Element, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> bool:
        """Return True if `a` is self-adjoint with non-negative spectrum."""
        if not self.is_self_adjoint(a, tol):
            return False
        values = self.spectrum(a, tol)
        return values[0] >= -tol.rank_tol * max(1.0, float(values[-1]))

    def sample_positive(self, rng: np.random.Generator) -> Element:
        """Return random positive element x*·x."""
        x = Element(
            self,
            rng.standard_normal(self.n) + 1j * rng.standard_normal(self.n),
        )
        return self.adjoint(x) @ x

    def sample_self_adjoint(self, rng: np.random.Generator) -> Element:
        """Return random self-adjoint element."""
        x = Element(
            self,
            rng.standard_normal(self.n) + 1j * rng.standard_normal(self.n),
        )
        return (x + self.adjoint(x)) / 2

    # Commutativity

    def product_is_commutative(
        self, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> bool:
        """Return True if the product algebra is abelian."""
        swapped = self.product.transpose(1, 0, 2)
        return relative_residual(self.product, swapped) <= tol.eq_tol

    def coproduct_is_commutative(
        self, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> bool:
        """Return True if the coproduct (dual) algebra is abelian."""
        swapped = self.coproduct_table.transpose(1, 0, 2)
        return relative_residual(self.coproduct_table, swapped) <= tol.eq_tol

    def tables_residual(self, other: 'TwoBoxStructure') -> float:
        """Max relative residual between tables of two structures."""
        if other.n != self.n:
            return float('inf')
        pairs = [
            (self.product, other.product),
            (self.coproduct_table, other.coproduct_table),
            (self.trace_vector, other.trace_vector),
            (self.contragredient_matrix, other.contragredient_matrix),
            (self.adjoint_matrix, other.adjoint_matrix),
            (self.unit_coeffs, other.unit_coeffs),
            (self.jones_coeffs, other.jones_coeffs),
            ([self.delta], [other.delta]),
        ]
        return max(relative_residual(a, b) for a, b in pairs)


def multiply(a: Element, b: Element) -> Element:
    """
    Return product a·b.

    :raise: :class:`OwnerMismatchError`
    """
    return a.owner.multiply(a, b)


def coproduct(a: Element, b: Element) -> Element:
    """
    Return coproduct a*b.

    :raise: :class:`OwnerMismatchError`
    """
    return a.owner.coproduct(a, b)


def contragredient(a: Element) -> Element:
    """Return contragredient a′."""
    return a.owner.contragredient(a)


def adjoint(a: Element) -> Element:
    """Return adjoint a*."""
    return a.owner.adjoint(a)


def trace(a: Element) -> complex:
    """Return Markov trace tr(a)."""
    return a.owner.trace(a)
