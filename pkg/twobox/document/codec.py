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
Reading and writing tbx-1 documents.

A document is a JSON object with one top level key per line. Numbers
are written as shortest round-trip decimals, so serialization is
deterministic and parsing restores the tables bit for bit.
"""

__all__ = ['dump', 'dumps_report', 'load', 'parse', 'serialize']

import json
import logging
from pathlib import Path

import pydantic

from twobox.abstract import Report
from twobox.exceptions import (
    AxiomFailureError,
    StructureError,
    TbxSyntaxError,
    VersionMismatchError,
)
from twobox.linalg import DEFAULT_TOLERANCE, Tolerance
from twobox.structure import TwoBoxStructure, verify_axioms
from twobox.structure.axioms import DEFAULT_SEED, DEFAULT_TRIALS

from .schemas import FORMAT_VERSION, TbxDocument


log = logging.getLogger(__name__)


def serialize(S: TwoBoxStructure) -> str:
    """Return tbx-1 document describing `S`."""
    data = TbxDocument.from_structure(S).dict(exclude_none=True)
    lines = [
        f'  {json.dumps(key)}: '
        f'{json.dumps(value, separators=(",", ":"), ensure_ascii=False)}'
        for key, value in data.items()
    ]
    return '{\n' + ',\n'.join(lines) + '\n}\n'


def _locate(text: str, key: str) -> tuple[int | None, int | None]:
    """Return line and column where top level `key` starts."""
    needle = f'{json.dumps(key)}:'
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.lstrip()
        if stripped.startswith(needle):
            return number, len(line) - len(stripped) + 1
    return None, None


def _document(text: str) -> TbxDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise TbxSyntaxError(e.msg, e.lineno, e.colno) from e
    if not isinstance(data, dict):
        raise TbxSyntaxError('document must be an object', 1, 1)
    version = data.get('format_version')
    if version != FORMAT_VERSION:
        raise VersionMismatchError(version, FORMAT_VERSION)
    try:
        return TbxDocument.parse_obj(data)
    except pydantic.ValidationError as e:
        error = e.errors()[0]
        location = [str(item) for item in error['loc']]
        line, column = (
            _locate(text, location[0]) if location else (None, None)
        )
        raise TbxSyntaxError(
            f"{'.'.join(location)}: {error['msg']}", line, column
        ) from e


def parse(
    text: str,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    force: bool = False,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> TwoBoxStructure:
    """
    Parse tbx-1 document and verify axioms of the structure.

    :param force: Skip axiom verification.
    :param trials: Random pairs for the Schur product check.
    :param seed: Seed of random sampling.
    :raise: :class:`TbxSyntaxError`, :class:`VersionMismatchError`,
        :class:`AxiomFailureError`
    """
    document = _document(text)
    try:
        S = document.to_structure()
    except StructureError as e:
        raise TbxSyntaxError(str(e)) from e
    if force:
        log.debug('Axiom verification of %s skipped', S.name)
        return S
    report = verify_axioms(S, tol, trials=trials, seed=seed)
    if not report.passed:
        raise AxiomFailureError(report.failed())
    return S


def load(
    path: Path | str,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    force: bool = False,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> TwoBoxStructure:
    """
    Read structure from tbx-1 file.

    :raise: :class:`OSError` and the errors of :func:`parse`
    """
    path = Path(path)
    log.debug('Loading %s', path)
    return parse(
        path.read_text(encoding='utf-8'),
        tol,
        force=force,
        trials=trials,
        seed=seed,
    )


def dump(S: TwoBoxStructure, path: Path | str) -> None:
    """Write structure to tbx-1 file."""
    path = Path(path)
    path.write_text(serialize(S), encoding='utf-8')
    log.debug('Structure %s written to %s', S.name, path)


def dumps_report(report: Report) -> str:
    """Return report as deterministic JSON text."""
    return json.dumps(report.as_dict(), indent=2, ensure_ascii=False) + '\n'
