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
Axiom verification.

Every check yields a relative residual, a structure passes when all
residuals are within ``eq_tol``. Checks never raise: a failure inside a
check (for instance an indefinite Markov form) is reported as an
infinite residual.
"""

__all__ = ['AxiomCheck', 'AxiomReport', 'schur_residual', 'verify_axioms']

import logging
from collections.abc import Callable
from typing import NamedTuple

import numpy as np

from twobox.abstract import Report, rounded
from twobox.exceptions import TwoBoxError
from twobox.linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    hermitian_eig,
    relative_residual,
)

from .blocks import block_decomposition
from .structure import Element, TwoBoxStructure


log = logging.getLogger(__name__)

DEFAULT_TRIALS = 200
DEFAULT_SEED = 20231


class AxiomCheck(NamedTuple):
    """Outcome of a single axiom check."""

    name: str
    residual: float
    passed: bool


class AxiomReport(Report):
    """Per-axiom residuals of a structure."""

    def __init__(self, name: str, checks: list[AxiomCheck], tol: Tolerance):
        """
        Initialise AxiomReport.

        :param name: Structure name.
        :param checks: Checks in evaluation order.
        :param tol: Tolerance the checks were evaluated with.
        """
        self.name = name
        self.checks = checks
        self.tol = tol

    @property
    def passed(self) -> bool:
        """Overall verdict."""
        return all(check.passed for check in self.checks)

    def failed(self) -> dict[str, float]:
        """Return residuals of failed checks."""
        return {c.name: c.residual for c in self.checks if not c.passed}

    def __getitem__(self, name: str) -> AxiomCheck:
        """Return check by name."""
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def as_dict(self) -> dict:
        """Return report as dict."""
        return {
            'structure': self.name,
            'passed': self.passed,
            'eq_tol': self.tol.eq_tol,
            'checks': [
                {
                    'axiom': check.name,
                    'residual': (
                        rounded(check.residual, 6)
                        if np.isfinite(check.residual) else None
                    ),
                    'passed': check.passed,
                }
                for check in self.checks
            ],
        }


def _associativity(table: np.ndarray) -> float:
    left = np.einsum('ijm,mkl->ijkl', table, table)
    right = np.einsum('jkm,iml->ijkl', table, table)
    return relative_residual(left, right)


def _unit(S: TwoBoxStructure, unit: Element, table: np.ndarray) -> float:
    left = np.einsum('i,ijk->kj', unit.coeffs, table)
    right = np.einsum('j,ijk->ki', unit.coeffs, table)
    identity = np.eye(S.n)
    return max(
        relative_residual(left, identity), relative_residual(right, identity)
    )


def _anti(matrix: np.ndarray, table: np.ndarray) -> float:
    """Residual of ``(b_i b_j)′ = b_j′ b_i′`` for a linear map."""
    left = np.einsum('kl,ijl->ijk', matrix, table)
    right = np.einsum('pj,qi,pqk->ijk', matrix, matrix, table)
    return relative_residual(left, right)


def _trace_form(S: TwoBoxStructure) -> np.ndarray:
    """Bilinear form ``tr(b_p·b_q)``."""
    return np.einsum('pqk,k->pq', S.product, S.trace_vector)


def _markov_positive(S: TwoBoxStructure, tol: Tolerance) -> float:
    gram = S.gram
    hermitian = relative_residual(gram, gram.conj().T)
    values = hermitian_eig((gram + gram.conj().T) / 2, tol).eigenvalues
    margin = tol.rank_tol * max(1.0, float(values[-1]))
    deficit = 0.0
    if values[0] < margin:
        deficit = (margin - float(values[0])) / (1.0 + abs(float(values[-1])))
        deficit = max(deficit, 10 * tol.eq_tol)
    return max(hermitian, deficit)


def _jones_minimal(S: TwoBoxStructure) -> float:
    sigma = np.linalg.svd(S.left_matrix(S.jones), compute_uv=False)
    if sigma[0] == 0:
        return float('inf')
    return float(sigma[1] / sigma[0]) if sigma.size > 1 else 0.0


def _min_eigenvalue(S: TwoBoxStructure, x: Element, tol: Tolerance) -> float:
    """Relative negative part of the spectrum of self-adjoint `x`."""
    values = hermitian_eig(S.left_operator(x), tol).eigenvalues
    return max(0.0, -float(values[0])) / (1.0 + abs(float(values[-1])))


def schur_residual(
    S: TwoBoxStructure,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> tuple[float, float]:
    """
    Sample the Schur product property.

    Coproducts of all pairs of minimal projections and of `trials`
    random positive pairs are diagonalized.

    :return: Largest relative negative eigenvalue of a*b and smallest
        value of tr(a*b) / (tr(a)·tr(b)) over the sampled pairs.
    """
    minimal = block_decomposition(S, tol).minimal
    pairs = [(p, q) for p in minimal for q in minimal]
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        pairs.append((S.sample_positive(rng), S.sample_positive(rng)))
    worst, smallest_trace = 0.0, float('inf')
    for a, b in pairs:
        product = a.coproduct(b)
        worst = max(worst, _min_eigenvalue(S, product, tol))
        ratio = product.trace().real / (a.trace().real * b.trace().real)
        smallest_trace = min(smallest_trace, ratio)
    log.debug(
        'Schur sampling on %s: %s pairs, residual %.3e',
        S.name, len(pairs), worst,
    )
    return worst, smallest_trace


def verify_axioms(
    S: TwoBoxStructure,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> AxiomReport:
    """
    Check the axioms of a structure of 2-boxes.

    :param S: Structure to check.
    :param tol: Residuals above `tol.eq_tol` fail.
    :param trials: Number of random positive pairs for the Schur
        product check.
    :param seed: Seed of the random pairs.
    """
    n, delta = S.n, S.delta
    P, C = S.product, S.coproduct_table
    K, J = S.contragredient_matrix, S.adjoint_matrix
    unit, jones = S.identity, S.jones
    t = S.trace_vector

    def cyclic_traces() -> float:
        form = _trace_form(S)
        first = np.einsum('ijp,pq,qk->ijk', C, form, K)
        second = np.einsum('jki->ijk', first)
        third = np.einsum('kij->ijk', first)
        return max(
            relative_residual(first, second), relative_residual(first, third)
        )

    def jones_traces() -> float:
        form = _trace_form(S)
        left = np.einsum('ijp,pq,q->ij', C, form, jones.coeffs)
        right = K.T @ form / delta
        return relative_residual(left, right)

    def trace_by_identity() -> float:
        left = np.einsum('j,ijk->ik', unit.coeffs, C)
        right = np.einsum('i,jik->jk', unit.coeffs, C)
        expected = np.outer(t / delta, unit.coeffs)
        return max(
            relative_residual(left, expected),
            relative_residual(right, expected),
        )

    def jones_central() -> float:
        return relative_residual(
            S.left_matrix(jones), S.right_matrix(jones)
        )

    def schur() -> float:
        worst, smallest_trace = schur_residual(S, trials, seed, tol)
        if smallest_trace <= 0:
            return float('inf')
        return worst

    checks: list[tuple[str, Callable[[], float]]] = [
        ('product_associative', lambda: _associativity(P)),
        ('product_unit', lambda: _unit(S, unit, P)),
        ('coproduct_associative', lambda: _associativity(C)),
        ('coproduct_unit', lambda: _unit(S, S.coproduct_unit, C)),
        ('circle', lambda: unit.coproduct(unit).residual(delta * unit)),
        ('trace_by_identity', trace_by_identity),
        ('unit_trace', lambda: abs(unit.trace() - delta**2) / delta**2),
        (
            'contragredient_involution',
            lambda: relative_residual(K @ K, np.eye(n)),
        ),
        ('contragredient_product', lambda: _anti(K, P)),
        ('contragredient_coproduct', lambda: _anti(K, C)),
        (
            'contragredient_units',
            lambda: max(
                unit.contragredient().residual(unit),
                jones.contragredient().residual(jones),
            ),
        ),
        (
            'adjoint_involution',
            lambda: relative_residual(J @ J.conj(), np.eye(n)),
        ),
        (
            'adjoint_product',
            lambda: relative_residual(
                np.einsum('kl,ijl->ijk', J, P.conj()),
                np.einsum('pj,qi,pqk->ijk', J, J, P),
            ),
        ),
        (
            'adjoint_coproduct',
            lambda: relative_residual(
                np.einsum('kl,ijl->ijk', J, C.conj()),
                np.einsum('pi,qj,pqk->ijk', J, J, C),
            ),
        ),
        ('markov_positive', lambda: _markov_positive(S, tol)),
        ('trace_cyclic', cyclic_traces),
        ('trace_jones', jones_traces),
        ('jones_projection', lambda: S.projection_residual(jones)),
        ('jones_central', jones_central),
        ('jones_minimal', lambda: _jones_minimal(S)),
        ('jones_trace', lambda: abs(jones.trace() - 1.0)),
        ('schur_positivity', schur),
    ]
    results = []
    for name, check in checks:
        try:
            residual = float(check())
        except (TwoBoxError, np.linalg.LinAlgError) as e:
            log.debug('Check %s on %s raised: %s', name, S.name, e)
            residual = float('inf')
        if not np.isfinite(residual):
            residual = float('inf')
        results.append(AxiomCheck(name, residual, residual <= tol.eq_tol))
    report = AxiomReport(S.name, results, tol)
    log.debug('Axioms of %s: failed=%s', S.name, report.failed())
    return report
