import json
from pathlib import Path

import pytest

from twobox.cli.parser import main
from twobox.cli.term import Table, format_number


@pytest.fixture(autouse=True)
def _no_config(tmp_path, monkeypatch):
    monkeypatch.setenv('TBX_CONFIG', str(tmp_path / 'absent.toml'))


@pytest.fixture()
def make(tmp_path, capsys):
    def build(*argv: str) -> str:
        path = tmp_path / f'{len(list(tmp_path.iterdir()))}.tbx'
        assert main([*argv, '-o', str(path)]) == 0
        capsys.readouterr()
        return str(path)

    return build


def test_make_prints_document(capsys):
    assert main(['make', 'Z4']) == 0
    out = capsys.readouterr().out
    assert json.loads(out)['format_version'] == 'tbx-1'
    assert json.loads(out)['name'] == 'Z4'


def test_make_writes_file(tmp_path, capsys):
    path = tmp_path / 'tl.tbx'
    assert main(['make', 'TL', '-p', 'delta=3', '-o', str(path)]) == 0
    assert capsys.readouterr().out == f'TL(3): written to {path}\n'
    assert json.loads(path.read_text())['delta'] == 3.0


def test_make_list(capsys):
    assert main(['make', '--list']) == 0
    out = capsys.readouterr().out
    assert out.startswith('NAME')
    assert 'Z2subZ<p>' in out


@pytest.mark.parametrize(
    'argv',
    [['make', 'Nope'], ['make', 'TL(1)'], ['make', 'Z2subZ9'],
     ['make'], ['make', 'TL', '-p', 'delta'],
     ['classify', 'missing.tbx'], ['make', 'Z4', '--tol', '0']],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith('error: ')


def test_no_command(capsys):
    assert main([]) == 0
    assert 'usage:' in capsys.readouterr().out


def test_verify(make, capsys):
    path = make('make', 'Z2subZ7')
    assert main(['verify', path]) == 0
    out = capsys.readouterr().out
    assert out.startswith('AXIOM')
    assert 'Z2subZ7: all axioms hold at eq_tol=1e-09' in out


def test_verify_failure(tmp_path, make, capsys):
    path = make('make', 'TL(2)')
    data = json.loads(Path(path).read_text())
    data['coproduct'] = [
        [[[2 * re, 2 * im] for re, im in row] for row in table]
        for table in data['coproduct']
    ]
    broken = tmp_path / 'broken.tbx'
    broken.write_text(json.dumps(data))
    assert main(['verify', str(broken)]) == 1
    assert 'failed: ' in capsys.readouterr().out
    assert main(['classify', str(broken)]) == 2
    assert 'axioms failed' in capsys.readouterr().err


@pytest.mark.parametrize(
    ('argv', 'line'),
    [(['make', 'Z4'], 'class: 1 (depth2)'),
     (['free', 'TL(2)', 'Z3'], 'class: 2 (free-product-split)'),
     (['tensor', 'Z2', 'TL(2)'], 'class: 3 (tensor-split)'),
     (['make', 'Z2subZ7'], 'class: 4 (subgroup-z2-z7)'),
     (['make', 'Z2subZ5'], 'class: none (unclassified: dimension)')],
)
def test_classify(make, capsys, argv, line):
    path = make(*argv)
    assert main(['classify', path]) == 0
    assert line in capsys.readouterr().out.splitlines()


def test_classify_details(make, capsys):
    path = make('make', 'Z2subZ7')
    main(['classify', path])
    lines = capsys.readouterr().out.splitlines()
    assert 'c: 2' in lines
    assert 'new_part_dimension: 9' in lines
    assert 'witness: isomorphism target=Z2subZ7' in lines


def test_classify_json_is_deterministic(make, capsys):
    path = make('make', 'Z2subZ7')
    assert main(['classify', '--json', path]) == 0
    first = capsys.readouterr().out
    assert main(['classify', '--json', path]) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)['class'] == 4


def test_report(make, capsys):
    path = make('make', 'Z2subZ7')
    assert main(['report', path]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert 'new_part_dimension: 9' in lines
    assert 'dim bound: 25' in lines
    assert 'dim estimate: 25' in lines
    assert 'commute type: AA' in lines
    assert 'virtual normalizers: none' in lines


def test_report_json(make, capsys):
    path = make('make', 'TL-free-Z3')
    assert main(['report', '--json', path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['dim'] == 4
    assert data['virtual_normalizers'][0]['trace'] == 4.0


def test_dual(capsys):
    assert main(['dual', 'Z4']) == 0
    assert json.loads(capsys.readouterr().out)['name'] == 'dual(Z4)'


def test_iso(make, capsys):
    path = make('make', 'dual-Z4')
    assert main(['iso', 'Z4', path]) == 0
    assert 'are isomorphic' in capsys.readouterr().out
    assert main(['iso', 'Z4', 'Z2xZ2']) == 1
    assert 'not isomorphic' in capsys.readouterr().out
    assert main(['iso', '--json', 'Z4', 'Z2xZ2']) == 1
    assert json.loads(capsys.readouterr().out)['isomorphic'] is False


def test_format_number():
    assert format_number(None) == '-'
    assert format_number(2.0) == '2'
    assert format_number(-0.0) == '0'
    assert format_number(1 + 2j) == '1+2i'
    assert format_number(1 + 1e-20j) == '1'


def test_table():
    table = Table()
    table.header = ['name', 'value']
    table.add_rows([['a', 1], ['long', 22]])
    assert str(table) == 'NAME  VALUE\na     1\nlong  22'
    assert str(table) == str(table)
