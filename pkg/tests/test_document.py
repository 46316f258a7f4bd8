import json

import numpy as np
import pytest

from twobox.catalog import named
from twobox.document import dump, dumps_report, load, parse, serialize
from twobox.exceptions import (
    AxiomFailureError,
    TbxSyntaxError,
    VersionMismatchError,
)
from twobox.structure import TwoBoxStructure, verify_axioms


@pytest.mark.parametrize(
    'name', ['TL(2.5)', 'Z4', 'Z2subZ7', 'TL-free-Z3', 'dual-S3']
)
def test_round_trip_is_exact(name):
    S = named(name)
    text = serialize(S)
    T = parse(text, trials=10)
    assert T.tables_residual(S) == 0.0
    assert T.labels == S.labels
    assert T.name == S.name
    assert serialize(T) == text


def test_annotations_survive(tl_free_z3):
    T = parse(serialize(tl_free_z3), force=True)
    assert np.allclose(
        T.annotation('separator').coeffs,
        tl_free_z3.annotation('separator').coeffs,
    )


def test_layout(tl):
    lines = serialize(tl).splitlines()
    assert lines[0] == '{'
    assert lines[1] == '  "format_version": "tbx-1",'
    assert lines[-1] == '}'
    assert '  "unit_index": 1,' in lines
    assert lines[-2] == '  "jones_index": 0'


def test_json_syntax_error():
    with pytest.raises(TbxSyntaxError) as exc:
        parse('{\n  "format_version": "tbx-1",\n')
    assert exc.value.line is not None
    with pytest.raises(TbxSyntaxError) as exc:
        parse('[1, 2]')
    assert (exc.value.line, exc.value.column) == (1, 1)


def test_version_mismatch(z4):
    text = serialize(z4).replace('"tbx-1"', '"tbx-2"')
    with pytest.raises(VersionMismatchError):
        parse(text)


def test_schema_error_points_to_line(z4):
    text = serialize(z4).replace('  "dim": 4,', '  "dim": 3,')
    with pytest.raises(TbxSyntaxError) as exc:
        parse(text)
    expected = next(
        number for number, line in enumerate(text.splitlines(), start=1)
        if line.startswith('  "labels"')
    )
    assert (exc.value.line, exc.value.column) == (expected, 3)
    assert 'labels' in str(exc.value)


def test_schema_error_column_follows_indent(z4):
    text = serialize(z4).replace('\n  "dim": 4,', '\n      "dim": 0,')
    with pytest.raises(TbxSyntaxError) as exc:
        parse(text)
    assert exc.value.column == 7
    assert str(exc.value).startswith(f'line {exc.value.line}, column 7: ')


def test_root_schema_error_has_no_location(tl):
    text = serialize(tl).replace('  "unit_index": 1,\n', '')
    with pytest.raises(TbxSyntaxError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (None, None)


def test_missing_unit(tl):
    lines = [
        line for line in serialize(tl).splitlines()
        if not line.startswith('  "unit_index"')
    ]
    with pytest.raises(TbxSyntaxError):
        parse('\n'.join(lines))


def test_bad_structure_values(tl):
    text = serialize(tl).replace('"delta": 2.0', '"delta": 0.5')
    with pytest.raises(TbxSyntaxError):
        parse(text)


def test_axiom_failure(tl):
    broken = TwoBoxStructure(
        'broken', tl.labels, tl.delta, tl.product, 2 * tl.coproduct_table,
        tl.trace_vector, tl.contragredient_matrix, tl.adjoint_matrix,
        tl.unit_coeffs, tl.jones_coeffs,
    )
    text = serialize(broken)
    with pytest.raises(AxiomFailureError) as exc:
        parse(text, trials=0)
    assert 'circle' in exc.value.residuals
    assert parse(text, force=True).name == 'broken'


def test_dump_and_load(tmp_path, z2subz7):
    path = tmp_path / 'z2subz7.tbx'
    dump(z2subz7, path)
    assert path.read_text(encoding='utf-8') == serialize(z2subz7)
    assert load(path, trials=10).tables_residual(z2subz7) == 0.0


def test_dumps_report_is_deterministic(z4):
    first = dumps_report(verify_axioms(z4, trials=10))
    second = dumps_report(verify_axioms(z4, trials=10))
    assert first == second
    assert first.endswith('}\n')
    data = json.loads(first)
    assert data['structure'] == 'Z4'
    assert data['passed'] is True
