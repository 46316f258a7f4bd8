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

"""CLI commands."""

import argparse
import json
import logging
from pathlib import Path
from typing import NamedTuple

import numpy as np

from twobox.abstract import rounded
from twobox.catalog import (
    catalog_entries,
    fourier_dual,
    free_product,
    named,
    tensor_product,
)
from twobox.classify import (
    check_commute_relation_necessary,
    classify_dim4,
    commute_type,
    dim_bound_report,
    find_isomorphism,
    lambda_matrix,
)
from twobox.cli.term import Table, format_number
from twobox.config import Config
from twobox.document import dump, dumps_report, load, serialize
from twobox.exceptions import TwoBoxError, UnknownNameError
from twobox.linalg import Tolerance
from twobox.positivity import (
    biprojection_lattice,
    enumerate_biprojections,
    virtual_normalizers,
)
from twobox.structure import (
    Element,
    TwoBoxStructure,
    block_decomposition,
    verify_axioms,
)


log = logging.getLogger(__name__)

DOCUMENT_SUFFIX = '.tbx'


class Context(NamedTuple):
    """Configuration and tolerance of a CLI invocation."""

    config: Config
    tol: Tolerance

    @property
    def trials(self) -> int:
        """Random pairs for Schur positivity checks."""
        return self.config['search']['schur_trials']

    @property
    def seed(self) -> int:
        """Seed for random sampling."""
        return self.config['search']['seed']

    @property
    def max_candidates(self) -> int:
        """Limit for isomorphism search."""
        return self.config['search']['max_candidates']


def _load(
    ctx: Context, path: Path, args: argparse.Namespace
) -> TwoBoxStructure:
    return load(
        path,
        ctx.tol,
        force=getattr(args, 'force', False),
        trials=ctx.trials,
        seed=ctx.seed,
    )


def _resolve(
    ctx: Context, ref: str, args: argparse.Namespace
) -> TwoBoxStructure:
    """Return structure from tbx-1 file or catalog name."""
    path = Path(ref)
    if path.suffix == DOCUMENT_SUFFIX or path.is_file():
        return _load(ctx, path, args)
    return named(ref)


def _emit(S: TwoBoxStructure, args: argparse.Namespace) -> int:
    if args.output is None:
        print(serialize(S), end='')
    else:
        dump(S, args.output)
        print(f'{S.name}: written to {args.output}')
    return 0


def _print_json(data: dict) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False))


def _combination(x: Element) -> str:
    terms = [
        f'{format_number(c, 6)}·{label}'
        for c, label in zip(x.coeffs, x.owner.labels, strict=True)
        if abs(c) > 1e-12  # noqa: PLR2004
    ]
    return ' + '.join(terms) or '0'


def _element_dict(x: Element) -> dict:
    return {
        'trace': rounded(x.trace()),
        'coefficients': [rounded(c) for c in x.coeffs],
    }


def _parse_params(items: list[str] | None) -> dict[str, str]:
    params = {}
    for item in items or []:
        key, sep, value = item.partition('=')
        if not sep or not key.strip():
            raise UnknownNameError(f'parameter {item!r}, expected k=v')
        params[key.strip()] = value.strip()
    return params


def make(ctx: Context, args: argparse.Namespace) -> int:  # noqa: ARG001
    """
    Build structure from the catalog.

    Catalog names take parameters either in parentheses, e.g. 'TL(3)',
    or as --param options. Without -o the tbx-1 document is printed.
    """
    if args.list:
        table = Table()
        table.header = ['NAME', 'DESCRIPTION']
        table.add_rows(catalog_entries())
        print(table)
        return 0
    if args.name is None:
        raise UnknownNameError('', [s for s, _ in catalog_entries()])
    return _emit(named(args.name, **_parse_params(args.param)), args)


def free(ctx: Context, args: argparse.Namespace) -> int:
    """Build free product of two structures."""
    A, B = _resolve(ctx, args.left, args), _resolve(ctx, args.right, args)
    return _emit(free_product(A, B, ctx.tol), args)


def tensor(ctx: Context, args: argparse.Namespace) -> int:
    """Build tensor product of two structures."""
    A, B = _resolve(ctx, args.left, args), _resolve(ctx, args.right, args)
    return _emit(tensor_product(A, B), args)


def dual(ctx: Context, args: argparse.Namespace) -> int:
    """Build Fourier dual of structure."""
    S = _resolve(ctx, args.structure, args)
    return _emit(fourier_dual(S, ctx.tol), args)


def verify(ctx: Context, args: argparse.Namespace) -> int:
    """
    Verify axioms of structure stored in tbx-1 file.

    Exit status is 1 if some axiom fails.
    """
    S = load(args.file, ctx.tol, force=True)
    report = verify_axioms(S, ctx.tol, trials=ctx.trials, seed=ctx.seed)
    if args.json:
        print(dumps_report(report), end='')
        return 0 if report.passed else 1
    table = Table()
    table.header = ['AXIOM', 'RESIDUAL', 'STATUS']
    for check in report.checks:
        table.add_row(
            [
                check.name,
                f'{check.residual:.3e}',
                'ok' if check.passed else 'FAILED',
            ]
        )
    print(table)
    if report.passed:
        print(f'{S.name}: all axioms hold at eq_tol={ctx.tol.eq_tol:g}')
        return 0
    print(f'{S.name}: failed: {", ".join(report.failed())}')
    return 1


def classify(ctx: Context, args: argparse.Namespace) -> int:
    """Classify structure of dimension 4 stored in tbx-1 file."""
    S = _load(ctx, args.file, args)
    verdict = classify_dim4(S, ctx.tol, max_candidates=ctx.max_candidates)
    if args.json:
        print(dumps_report(verdict), end='')
        return 0
    print(f'structure: {S.name}')
    if verdict.classified:
        print(f'class: {verdict.class_number} ({verdict.tag})')
    else:
        print(f'class: none ({verdict.tag}: {verdict.reason})')
    if verdict.group is not None:
        print(f'group: {verdict.group}')
    for key, value in verdict.constants.items():
        print(f'{key}: {format_number(value)}')
    if verdict.new_part is not None:
        print(f'new_part_dimension: {verdict.new_part}')
    for witness in verdict.witnesses:
        line = f'witness: {witness.kind}'
        if witness.element is not None:
            line += f' {_combination(witness.element)}'
        for key, value in (witness.details or {}).items():
            line += f' {key}={value}'
        print(line)
    for diagnostic in verdict.diagnostics:
        print(f'note: {diagnostic}')
    return 0


def _coproduct_terms(S: TwoBoxStructure) -> list[dict]:
    terms = []
    for i, j in np.ndindex(S.n, S.n):
        x = S.element(S.coproduct_table[i, j])
        terms.append(
            {
                'left': S.labels[i],
                'right': S.labels[j],
                'terms': {
                    label: rounded(c)
                    for c, label in zip(x.coeffs, S.labels, strict=True)
                    if abs(c) > 1e-12  # noqa: PLR2004
                },
            }
        )
    return terms


def summary(S: TwoBoxStructure, ctx: Context) -> dict:
    """Return report data of structure as JSON-compatible dict."""
    tol = ctx.tol
    blocks = block_decomposition(S, tol)
    biprojections = enumerate_biprojections(
        S, tol, central_only=not blocks.is_abelian
    )
    try:
        lam = lambda_matrix(S, tol)
        lambdas = {
            'row_traces': [rounded(P.trace()) for P in lam.rows],
            'values': [[rounded(v) for v in row] for row in lam.values],
        }
    except TwoBoxError as e:
        log.debug('No lambda matrix for %s: %s', S.name, e)
        lambdas = None
    bound = dim_bound_report(S, tol)
    flags = commute_type(S, tol)
    return {
        'structure': S.name,
        'dim': S.n,
        'delta': rounded(S.delta),
        'labels': list(S.labels),
        'traces': [rounded(t) for t in S.trace_vector],
        'block_dims': list(blocks.block_dims),
        'coproduct': _coproduct_terms(S),
        'biprojections': [_element_dict(b.element) for b in biprojections],
        'biprojection_lattice': [
            list(pair) for pair in biprojection_lattice(biprojections, tol)
        ],
        'virtual_normalizers': [
            _element_dict(P) for P in virtual_normalizers(S, tol)
        ],
        'lambda_matrix': lambdas,
        'new_part_dimension': bound.new_part,
        'dim_bound': bound.as_dict(),
        'commute_type': None if flags is None else str(flags),
        'commute': check_commute_relation_necessary(S, tol).as_dict(),
    }


def report(ctx: Context, args: argparse.Namespace) -> int:
    """
    Report invariants of structure stored in tbx-1 file.

    Includes traces, coproduct table, biprojections, virtual normalizers,
    λ-matrix, new part dimension and dimension bound of 3-boxes.
    """
    S = _load(ctx, args.file, args)
    data = summary(S, ctx)
    if args.json:
        _print_json(data)
        return 0
    print(f'structure: {data["structure"]}')
    print(f'dim: {data["dim"]}')
    print(f'delta: {format_number(S.delta)}')
    print(f'block dims: {data["block_dims"]}')
    table = Table()
    table.header = ['LABEL', 'TRACE']
    table.add_rows(
        [label, format_number(t)]
        for label, t in zip(S.labels, S.trace_vector, strict=True)
    )
    print(table)
    print('coproduct:')
    for item in data['coproduct']:
        terms = ' + '.join(
            f'{format_number(complex(*v) if isinstance(v, list) else v, 6)}'
            f'·{label}'
            for label, v in item['terms'].items()
        )
        print(f'  {item["left"]} * {item["right"]} = {terms or "0"}')
    print('biprojections:')
    for b in data['biprojections']:
        print(f'  trace {format_number(b["trace"])}')
    print(f'biprojection lattice: {data["biprojection_lattice"]}')
    traces = [format_number(P['trace']) for P in data['virtual_normalizers']]
    print(f'virtual normalizers: {", ".join(traces) or "none"}')
    if data['lambda_matrix'] is not None:
        print('lambda matrix:')
        for row in data['lambda_matrix']['values']:
            print(
                '  ' + '  '.join(
                    format_number(complex(*v) if isinstance(v, list) else v, 6)
                    for v in row
                )
            )
    new_part = data['new_part_dimension']
    print(f'new_part_dimension: {"-" if new_part is None else new_part}')
    print(f'dim bound: {data["dim_bound"]["bound"]}')
    estimate = data['dim_bound']['estimate']
    print(f'dim estimate: {"-" if estimate is None else estimate}')
    print(f'commute type: {data["commute_type"] or "-"}')
    return 0


def iso(ctx: Context, args: argparse.Namespace) -> int:
    """
    Search structure preserving bijection between two structures.

    Exit status is 1 if structures are not isomorphic.
    """
    S, T = _resolve(ctx, args.left, args), _resolve(ctx, args.right, args)
    M = find_isomorphism(S, T, ctx.tol, max_candidates=ctx.max_candidates)
    if args.json:
        _print_json(
            {
                'left': S.name,
                'right': T.name,
                'isomorphic': M is not None,
                'matrix': (
                    None if M is None
                    else [[rounded(v) for v in row] for row in M]
                ),
            }
        )
    elif M is None:
        print(f'{S.name} and {T.name} are not isomorphic')
    else:
        print(f'{S.name} and {T.name} are isomorphic')
        table = Table()
        table.header = ['', *T.labels]
        for label, column in zip(S.labels, M.T, strict=True):
            table.add_row([label, *(format_number(v, 6) for v in column)])
        print(table)
    return 1 if M is None else 0
