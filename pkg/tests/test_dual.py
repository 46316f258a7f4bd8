import numpy as np
import pytest

from twobox.catalog import fourier_dual, make_subgroup_2p2, named
from twobox.classify import (
    CommuteType,
    commute_type,
    depth2_support,
    dim_bound_report,
    dimension_bound,
    dual_idempotents,
    lambda_matrix,
    new_part_dimension,
    new_part_profile,
)
from twobox.exceptions import NonabelianDualError, NonabelianEitherSideError


def test_dual_idempotents(z4):
    basis = dual_idempotents(z4)
    assert len(basis.idempotents) == 4
    assert basis.e2.is_close(z4.identity / z4.delta)
    for q in basis.idempotents:
        assert q.coproduct(q).is_close(q)
    for i, p in enumerate(basis.idempotents):
        for q in basis.idempotents[i + 1:]:
            assert p.coproduct(q).is_zero()


def test_dual_idempotents_are_memoized(z2subz7):
    assert dual_idempotents(z2subz7) is dual_idempotents(z2subz7)


def test_dual_idempotents_need_abelian_dual(s3):
    with pytest.raises(NonabelianDualError):
        dual_idempotents(s3)


def test_lambda_matrix(z2subz7):
    lam = lambda_matrix(z2subz7)
    assert lam.values.shape == (3, 3)
    assert np.allclose(lam.row_norms, 2 / np.sqrt(7))
    assert lam.new_part_mask().all()


def test_lambda_matrix_of_group(z4):
    lam = lambda_matrix(z4)
    assert np.allclose(np.abs(lam.values), 1 / z4.delta)
    assert not lam.new_part_mask().any()


def test_lambda_matrix_needs_abelian_algebras(s3):
    with pytest.raises(NonabelianEitherSideError):
        lambda_matrix(s3)
    with pytest.raises(NonabelianEitherSideError):
        lambda_matrix(fourier_dual(s3))


@pytest.mark.parametrize(('p', 'expected'), [(3, 1), (5, 4), (7, 9),
                                             (11, 25)])
def test_new_part_of_subgroups(p, expected):
    S = make_subgroup_2p2(p)
    assert new_part_dimension(S) == expected
    h = (p - 1) // 2
    assert new_part_profile(S) == [h] * h


@pytest.mark.parametrize('name', ['Z4', 'Z2xZ2', 'S3', 'D4'])
def test_groups_are_depth2(name):
    S = named(name)
    assert new_part_dimension(S) == 0
    assert depth2_support(S).is_close(S.identity)


def test_depth2_part_of_subgroup(z2subz7):
    assert depth2_support(z2subz7).is_close(z2subz7.jones)


def test_dimension_bound(z2subz7):
    assert dimension_bound(4, 4, 2) == 25
    assert dimension_bound(25, 4, 3) == 652
    report = dim_bound_report(z2subz7)
    assert report.bound == 25
    assert report.new_part == 9
    assert report.estimate == 25
    assert report.as_dict() == {
        'dim_2': 4,
        'bound': 25,
        'new_part_dimension': 9,
        'estimate': 25,
        'product_abelian': True,
        'dual_abelian': True,
    }


def test_dimension_bound_without_certificate(s3):
    report = dim_bound_report(fourier_dual(s3))
    assert report.new_part is None
    assert report.estimate is None
    assert report.bound == 36 + 25


def test_commute_type(z4, s3):
    assert commute_type(z4) == CommuteType.AA
    assert commute_type(s3) == CommuteType.AN
    assert commute_type(fourier_dual(s3)) == CommuteType.NA
