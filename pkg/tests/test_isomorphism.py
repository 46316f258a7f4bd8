import numpy as np
import pytest

from twobox.catalog import cyclic, fourier_dual, make_group, named
from twobox.catalog.groups import GroupPresentation
from twobox.classify import (
    case_d_model,
    coproduct_coefficients,
    find_isomorphism,
    identify_group,
    small_groups,
    structure_map_residual,
)
from twobox.exceptions import (
    SearchSpaceTooLargeError,
    UnsupportedNonCentralSearchError,
)
from twobox.structure import block_decomposition


def relabeled_z4():
    swap = [0, 2, 1, 3]
    Z4 = cyclic(4)
    table = [
        [swap[Z4.table[swap[a]][swap[b]]] for b in range(4)]
        for a in range(4)
    ]
    return make_group(
        GroupPresentation.from_table('Z4*', ['0', '2', '1', '3'], table)
    )


def test_identity_isomorphism(z4):
    M = find_isomorphism(z4, z4)
    assert M is not None
    assert structure_map_residual(z4, z4, M) <= 1e-9


def test_relabeled_isomorphism(z4):
    T = relabeled_z4()
    assert z4.tables_residual(T) > 1e-3
    M = find_isomorphism(z4, T)
    assert M is not None
    assert structure_map_residual(z4, T, M) <= 1e-9
    assert np.allclose(np.abs(M) ** 2, np.abs(M))


def test_not_isomorphic(z4, z2xz2, tl_free_z3):
    assert find_isomorphism(z4, z2xz2) is None
    assert find_isomorphism(z4, tl_free_z3) is None
    assert find_isomorphism(z4, named('Z5')) is None


def test_search_limit(z4):
    with pytest.raises(SearchSpaceTooLargeError):
        find_isomorphism(z4, z4, max_candidates=1)


def test_nonabelian_search(s3):
    dual = fourier_dual(s3)
    assert find_isomorphism(dual, dual) is not None
    with pytest.raises(UnsupportedNonCentralSearchError):
        find_isomorphism(dual, fourier_dual(named('D3')))


def test_case_d_model_is_subgroup(z2subz7):
    M = find_isomorphism(case_d_model(2), z2subz7)
    assert M is not None
    assert np.allclose(M, np.eye(4))


def test_coproduct_coefficients(z2subz7):
    minimal = block_decomposition(z2subz7).minimal
    C = coproduct_coefficients(minimal)
    delta = z2subz7.delta
    assert C[1, 1, 0] == pytest.approx(2 / delta)
    assert C[1, 1, 2] == pytest.approx(1 / delta)
    assert C[1, 1, 1] == pytest.approx(0, abs=1e-12)


def test_small_groups():
    assert [G.name for G in small_groups(4)] == ['Z2xZ2', 'Z4']
    assert [G.name for G in small_groups(6)] == ['Z6', 'S3']
    assert [G.name for G in small_groups(8)] == [
        'Z2xZ2xZ2', 'Z2xZ4', 'Z8', 'D4',
    ]


@pytest.mark.parametrize(
    ('name', 'group'),
    [('Z4', 'Z4'), ('Z2xZ2', 'Z2xZ2'), ('S3', 'S3'), ('D3', 'S3'),
     ('D4', 'D4'), ('Z2xZ4', 'Z2xZ4'), ('dual-Z4', 'Z4'),
     ('Z2subZ7', None), ('TL-free-Z3', None)],
)
def test_identify_group(name, group):
    assert identify_group(named(name)) == group
