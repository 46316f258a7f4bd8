import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twobox.catalog import (
    catalog_entries,
    chi,
    cut_down,
    cyclic,
    dihedral,
    direct_product,
    fourier_dual,
    free_product,
    make_group,
    make_subgroup_2p2,
    make_TL,
    named,
    parse_group,
    symmetric,
    tensor_product,
)
from twobox.catalog.groups import GroupPresentation
from twobox.classify import find_isomorphism
from twobox.exceptions import (
    BadDeltaError,
    BadGroupError,
    BadPrimeError,
    UnknownNameError,
)
from twobox.structure import verify_axioms


def test_temperley_lieb():
    S = make_TL(3)
    assert S.n == 2
    assert list(S.trace_vector) == [1.0, 9.0]
    assert S.jones.coproduct(S.jones).is_close(S.jones / 3)
    assert S.identity.coproduct(S.identity).is_close(S.identity * 3)
    with pytest.raises(BadDeltaError):
        make_TL(1.3)
    with pytest.raises(BadDeltaError):
        make_TL(1.414)
    assert verify_axioms(make_TL(math.sqrt(2)), trials=20).passed
    with pytest.raises(BadDeltaError):
        make_TL(float('inf'))


@pytest.mark.parametrize(
    ('group', 'order', 'abelian'),
    [(cyclic(6), 6, True), (symmetric(3), 6, False), (dihedral(4), 8, False),
     (direct_product(cyclic(2), cyclic(2)), 4, True)],
)
def test_groups(group, order, abelian):
    assert group.order == order
    assert group.is_abelian is abelian
    for g in range(order):
        assert group.table[g][group.inverse[g]] == group.identity


def test_parse_group():
    assert parse_group('Z2xZ2').name == 'Z2xZ2'
    assert parse_group('D5').order == 10
    assert parse_group('Z4').element_order(1) == 4
    with pytest.raises(UnknownNameError):
        parse_group('Q8')


def test_bad_group_table():
    with pytest.raises(BadGroupError):
        GroupPresentation.from_table('bad', ['a', 'b'], [[0, 1], [1, 1]])


def test_group_subfactor(s3):
    assert s3.n == 6
    assert s3.delta == pytest.approx(math.sqrt(6))
    P = [s3.basis(g) for g in range(6)]
    group = symmetric(3)
    for g, h in [(1, 2), (3, 4), (5, 5)]:
        expected = P[group.table[g][h]] / s3.delta
        assert P[g].coproduct(P[h]).is_close(expected)
    assert P[1].contragredient().is_close(P[group.inverse[1]])


@pytest.mark.parametrize('p', [1, 2, 9, 15, True, 7.0])
def test_subgroup_rejects(p):
    with pytest.raises(BadPrimeError):
        make_subgroup_2p2(p)


def test_subgroup_table(z2subz7):
    assert z2subz7.n == 4
    assert z2subz7.delta**2 == pytest.approx(7)
    e, g1, g2, g3 = (z2subz7.basis(k) for k in range(4))
    delta = z2subz7.delta
    assert (g1.coproduct(g1) * delta).is_close(e * 2 + g2)
    assert (g1.coproduct(g2) * delta).is_close(g3 + g1)
    assert (g3.coproduct(g3) * delta).is_close(e * 2 + g1)
    assert list(z2subz7.trace_vector) == [1.0, 2.0, 2.0, 2.0]


@pytest.mark.parametrize('p', [3, 5, 7, 11])
def test_chi_projections(p):
    S = make_subgroup_2p2(p)
    h = (p - 1) // 2
    chis = [chi(S, k) for k in range(1, h + 1)]
    total = S.identity / S.delta
    for j, a in enumerate(chis):
        operator = S.convolution_operator(a)
        assert np.allclose(operator @ operator, operator, atol=1e-10)
        assert np.allclose(operator, operator.conj().T, atol=1e-10)
        for b in chis[j + 1:]:
            assert a.coproduct(b).is_zero()
        total = total + a
    assert total.is_close(S.coproduct_unit)
    assert chi(S, 0).is_close(S.identity * (2 / S.delta))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(['Z4', 'S3', 'Z2subZ7', 'TL-free-Z3',
                        'FussCatalan(2, 3)']))
def test_fourier_dual_involution(name):
    S = named(name)
    dual = fourier_dual(S)
    assert dual.n == S.n
    assert fourier_dual(dual).tables_residual(S) < 1e-12
    assert verify_axioms(dual, trials=10).passed


def test_tensor_product(z2_tensor_tl):
    assert z2_tensor_tl.n == 4
    assert z2_tensor_tl.delta == pytest.approx(2 * math.sqrt(2))
    assert z2_tensor_tl.annotation('left') is not None
    assert z2_tensor_tl.annotation('right') is not None
    assert verify_axioms(z2_tensor_tl, trials=20).passed


def test_free_product(tl_free_z3):
    assert tl_free_z3.n == 4
    assert tl_free_z3.delta == pytest.approx(2 * math.sqrt(3))
    separator = tl_free_z3.annotation('separator')
    assert separator.trace().real == pytest.approx(4.0)
    assert verify_axioms(tl_free_z3, trials=20).passed


def test_free_product_of_free_product():
    S = named('TL-free-FussCatalan')
    assert S.n == 4
    assert verify_axioms(S, trials=10).passed


def test_cut_down_recovers_factors():
    A, B = make_group(cyclic(2)), make_group(cyclic(3))
    S = free_product(A, B)
    lower, upper = cut_down(S, S.annotation('separator'))
    assert (lower.n, upper.n) == (2, 3)
    assert lower.delta == pytest.approx(A.delta)
    assert upper.delta == pytest.approx(B.delta)
    assert find_isomorphism(lower, A) is not None
    assert find_isomorphism(upper, B) is not None


def test_tensor_of_groups_is_group():
    S = tensor_product(make_group(cyclic(2)), make_group(cyclic(3)))
    assert find_isomorphism(S, named('Z6')) is not None


def test_named():
    assert named('TL(3)').delta == 3
    assert named('TL', delta=2.5).delta == 2.5
    assert named('Z2subZp', p=5).n == 3
    assert named('dual-Z4').name == 'dual(Z4)'
    assert ('TL(delta)', 'Temperley-Lieb TL(δ), δ ≥ √2') in catalog_entries()


@pytest.mark.parametrize(
    ('name', 'params'),
    [('Nope', {}), ('TL(1, 2)', {}), ('TL', {'foo': 1}),
     ('TL', {'delta': 'x'}), ('Z4(2)', {})],
)
def test_named_rejects(name, params):
    with pytest.raises(UnknownNameError):
        named(name, **params)
