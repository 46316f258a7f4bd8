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

"""Exceptions."""

from collections.abc import Iterable


class TwoBoxError(Exception):
    """Basic exception class."""


class ConfigLoaderError(TwoBoxError):
    """Something went wrong when loading configuration."""


class LinalgError(TwoBoxError):
    """Something went wrong in dense linear algebra routines."""


class NotSquareError(LinalgError):
    """Matrix is not square."""

    def __init__(self, shape: tuple):
        """Initialise NotSquareError."""
        super().__init__(f'square matrix expected, got shape {shape}')


class NonFiniteError(LinalgError):
    """Matrix or scalar contains NaN or infinite entries."""

    def __init__(self, what: str = 'matrix'):
        """Initialise NonFiniteError."""
        super().__init__(f'{what} contains NaN or infinite entries')


class NotHermitianError(LinalgError):
    """Matrix is not Hermitian within tolerance."""

    def __init__(self, residual: float):
        """Initialise NotHermitianError."""
        self.residual = residual
        super().__init__(f'matrix is not Hermitian: residual {residual:.3e}')


class NotPositiveError(LinalgError):
    """Matrix or element is not positive semidefinite."""

    def __init__(self, min_eigenvalue: float):
        """Initialise NotPositiveError."""
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f'positive semidefinite input expected, '
            f'minimal eigenvalue is {min_eigenvalue:.3e}'
        )


class NoConvergenceError(LinalgError):
    """Iterative routine reached its iteration cap."""

    def __init__(self, sweeps: int, off: float):
        """Initialise NoConvergenceError."""
        super().__init__(
            f'Jacobi iteration did not converge in {sweeps} sweeps, '
            f'off-diagonal norm {off:.3e}'
        )


class StructureError(TwoBoxError):
    """Something went wrong with a structure of 2-boxes."""


class StructureShapeError(StructureError):
    """Structure tables have inconsistent shapes."""


class OwnerMismatchError(StructureError):
    """Elements belong to different structures."""

    def __init__(self, left: str, right: str):
        """Initialise OwnerMismatchError."""
        super().__init__(
            f"elements of different structures: '{left}' and '{right}'"
        )


class BadDeltaError(StructureError):
    """Loop value is out of the admissible range."""

    def __init__(self, delta: float, bound: str = '1'):
        """Initialise BadDeltaError."""
        super().__init__(f'loop value must be > {bound}, got {delta!r}')


class NumericallyDegenerateError(StructureError):
    """Decomposition is ambiguous at the given tolerance."""


class NotCentralMinimalError(StructureError):
    """Element is not a central minimal projection."""

    def __init__(self, label: str = 'element'):
        """Initialise NotCentralMinimalError."""
        super().__init__(f'{label} is not a central minimal projection')


class CatalogError(TwoBoxError):
    """Something went wrong while constructing a catalog structure."""


class BadPrimeError(CatalogError):
    """Argument is not an odd prime."""

    def __init__(self, p: object):
        """Initialise BadPrimeError."""
        super().__init__(f'odd prime p >= 3 expected, got {p!r}')


class BadGroupError(CatalogError):
    """Group table violates the group axioms."""


class UnknownNameError(CatalogError):
    """No catalog entry with such name or parameters."""

    def __init__(self, name: str, known: Iterable[str] = ()):
        """Initialise UnknownNameError."""
        known = ', '.join(known)
        msg = f"unknown catalog name '{name}'"
        super().__init__(f'{msg}, known names are: {known}' if known else msg)


class ClosureFailureError(CatalogError):
    """Product or coproduct leaves the span of a substructure."""

    def __init__(self, operation: str, residual: float):
        """Initialise ClosureFailureError."""
        self.residual = residual
        super().__init__(
            f'{operation} leaves the span, residual {residual:.3e}'
        )


class DualAxiomFailureError(CatalogError):
    """Fourier dual fails axiom verification."""

    def __init__(self, failed: Iterable[str]):
        """Initialise DualAxiomFailureError."""
        super().__init__(
            'Fourier dual fails axioms: ' + ', '.join(failed)
        )


class PositivityError(TwoBoxError):
    """Something went wrong in positivity or biprojection machinery."""


class NotAProjectionError(PositivityError):
    """Element is not a self-adjoint idempotent."""

    def __init__(self, residual: float):
        """Initialise NotAProjectionError."""
        super().__init__(
            f'element is not a projection, residual {residual:.3e}'
        )


class TheoremViolationError(PositivityError):
    """
    Identity which holds in every subfactor planar algebra fails.

    It means the input is not the structure of 2-boxes of any
    subfactor planar algebra.
    """

    def __init__(self, identity: str, residual: float | None = None):
        """Initialise TheoremViolationError."""
        self.identity = identity
        msg = f'identity violated: {identity}'
        if residual is not None:
            msg += f' (residual {residual:.3e})'
        super().__init__(msg)


class NoStabilizationError(PositivityError):
    """Support iteration does not stabilize."""

    def __init__(self, iterations: int):
        """Initialise NoStabilizationError."""
        super().__init__(
            f'support iteration did not stabilize in {iterations} steps'
        )


class UnsupportedNonCentralSearchError(PositivityError):
    """Search over non-central projections is not supported."""

    def __init__(self, what: str = 'biprojection search'):
        """Initialise UnsupportedNonCentralSearchError."""
        super().__init__(
            f'{what} over nonabelian blocks is not supported'
        )


class NotVirtualNormalizerError(PositivityError):
    """Projection is not a virtual normalizer."""

    def __init__(self, label: str = 'projection'):
        """Initialise NotVirtualNormalizerError."""
        super().__init__(f'{label} is not a virtual normalizer')


class ClassifyError(TwoBoxError):
    """Something went wrong in classification routines."""


class NonabelianDualError(ClassifyError):
    """Coproduct (dual) algebra is not abelian."""

    def __init__(self):
        """Initialise NonabelianDualError."""
        super().__init__('coproduct algebra is not abelian')


class NonabelianEitherSideError(ClassifyError):
    """Product or coproduct algebra is not abelian."""

    def __init__(self, side: str):
        """Initialise NonabelianEitherSideError."""
        super().__init__(f'{side} algebra is not abelian')


class SearchSpaceTooLargeError(ClassifyError):
    """Too many candidates to enumerate."""

    def __init__(self, candidates: int, limit: int):
        """Initialise SearchSpaceTooLargeError."""
        super().__init__(
            f'{candidates} candidate bijections exceed the limit {limit}'
        )


class DocumentError(TwoBoxError):
    """Something went wrong with a tbx document."""


class TbxSyntaxError(DocumentError):
    """Document is malformed."""

    def __init__(self, msg: str, line: int | None = None,
                 column: int | None = None):
        """Initialise TbxSyntaxError."""
        self.line = line
        self.column = column
        if line is not None and column is not None:
            msg = f'line {line}, column {column}: {msg}'
        elif line is not None:
            msg = f'line {line}: {msg}'
        super().__init__(msg)


class VersionMismatchError(DocumentError):
    """Unsupported document format version."""

    def __init__(self, found: object, expected: str):
        """Initialise VersionMismatchError."""
        super().__init__(
            f'unsupported format version {found!r}, expected {expected!r}'
        )


class AxiomFailureError(DocumentError):
    """Document describes a structure which fails axiom verification."""

    def __init__(self, residuals: dict[str, float]):
        """Initialise AxiomFailureError."""
        self.residuals = residuals
        listing = ', '.join(f'{k}={v:.3e}' for k, v in residuals.items())
        super().__init__(f'axioms failed: {listing}')
