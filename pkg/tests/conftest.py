import pytest

from twobox.catalog import named
from twobox.structure import TwoBoxStructure


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for key in ('TBX_CONFIG', 'TBX_TOL', 'TBX_LOG'):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture(scope='session')
def tl() -> TwoBoxStructure:
    return named('TL', delta=2)


@pytest.fixture(scope='session')
def z4() -> TwoBoxStructure:
    return named('Z4')


@pytest.fixture(scope='session')
def z2xz2() -> TwoBoxStructure:
    return named('Z2xZ2')


@pytest.fixture(scope='session')
def s3() -> TwoBoxStructure:
    return named('S3')


@pytest.fixture(scope='session')
def z2subz7() -> TwoBoxStructure:
    return named('Z2subZ7')


@pytest.fixture(scope='session')
def tl_free_z3() -> TwoBoxStructure:
    return named('TL-free-Z3')


@pytest.fixture(scope='session')
def z3_free_tl() -> TwoBoxStructure:
    return named('Z3-free-TL')


@pytest.fixture(scope='session')
def z2_tensor_tl() -> TwoBoxStructure:
    return named('Z2-tensor-TL')
