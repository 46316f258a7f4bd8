import itertools
import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twobox.catalog import cut_down, free_product, named
from twobox.exceptions import (
    NoStabilizationError,
    NotAProjectionError,
    NotVirtualNormalizerError,
)
from twobox.positivity import (
    Side,
    biprojection_lattice,
    convolution_operator,
    coproduct_rank_profile,
    cut_down_check,
    enumerate_biprojections,
    find_separating_biprojection,
    free_separation_dims,
    generated_biprojection,
    is_biprojection,
    is_free_separating,
    is_group_like,
    is_tensor_separating,
    is_virtual_normalizer,
    jones_e2,
    norm_check,
    precedes,
    schur_product_check,
    spectral_biprojection_check,
    trace_dichotomy_check,
    virtual_normalizers,
)
from twobox.structure import block_decomposition, verify_axioms


def test_jones_e2(z2subz7):
    e2 = jones_e2(z2subz7).matrix
    assert np.allclose(e2 @ e2, e2)
    assert np.allclose(e2, e2.conj().T)
    assert np.trace(e2).real == pytest.approx(1.0)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(['Z4', 'S3', 'TL-free-Z3', 'dual-S3']),
       st.integers(0, 2**32 - 1))
def test_convolution_operators(name, seed):
    S = named(name)
    rng = np.random.default_rng(seed)
    a, b = S.sample_positive(rng), S.sample_positive(rng)
    A, B = convolution_operator(a), convolution_operator(b)
    scale = 1.0 + np.linalg.norm(A.matrix) * np.linalg.norm(B.matrix)
    assert np.allclose(A.compose(B).matrix, A.matrix @ B.matrix,
                       atol=1e-9 * scale)
    assert np.allclose(A.adjoint().matrix, A.matrix.conj().T,
                       atol=1e-9 * (1 + np.linalg.norm(A.matrix)))
    assert norm_check(a) == pytest.approx(a.trace().real / S.delta)


@pytest.mark.parametrize('name', ['Z4', 'TL-free-Z3', 'Z2subZ7'])
def test_schur_product_check(name):
    assert schur_product_check(named(name), trials=20).passed


def test_biprojections_of_group(z4):
    P = [z4.basis(g) for g in range(4)]
    assert is_biprojection(P[0] + P[2])
    assert not is_biprojection(P[0] + P[1])
    assert is_biprojection(z4.jones)
    assert is_biprojection(z4.identity)
    with pytest.raises(NotAProjectionError):
        is_biprojection(P[0] * 2)
    traces = [b.trace for b in enumerate_biprojections(z4)]
    assert traces == pytest.approx([1.0, 2.0, 4.0])


def test_biprojections_of_prime_subgroup(z2subz7):
    traces = [b.trace for b in enumerate_biprojections(z2subz7)]
    assert traces == pytest.approx([1.0, 7.0])


def test_biprojection_lattice(z4):
    found = enumerate_biprojections(z4)
    assert biprojection_lattice(found) == [(0, 1), (1, 2)]


def test_generated_biprojection(z4):
    assert generated_biprojection(z4.basis(1)).element.is_close(z4.identity)
    generated = generated_biprojection(z4.basis(2))
    assert generated.element.is_close(z4.basis(0) + z4.basis(2))
    assert generated.trace == pytest.approx(2.0)


@pytest.mark.parametrize('g', [1, 2])
def test_spectral_biprojection(z4, g):
    check = spectral_biprojection_check(z4.basis(g))
    assert check.passed


def test_cut_down_check(z4):
    B = z4.basis(0) + z4.basis(2)
    Q = B * (z4.delta / 2)
    check = cut_down_check(Q, B)
    assert check is not None
    assert check.passed
    assert cut_down_check(Q, z4.basis(1)) is None
    with pytest.raises(NotAProjectionError):
        cut_down_check(z4.basis(1), B)


def test_virtual_normalizers_of_free_product(tl_free_z3):
    found = virtual_normalizers(tl_free_z3)
    assert found
    assert found[0].trace().real == pytest.approx(4.0)
    Q = find_separating_biprojection(found[0])
    assert Q.trace == pytest.approx(4.0)
    assert Q.element.is_close(tl_free_z3.annotation('separator'))
    assert is_free_separating(Q.element)
    assert free_separation_dims(Q.element) == (2, 3, 4)


def test_no_virtual_normalizers(z2_tensor_tl, z4):
    assert virtual_normalizers(z2_tensor_tl) == []
    assert not is_virtual_normalizer(z4.jones, Side.LEFT)
    with pytest.raises(NotVirtualNormalizerError):
        find_separating_biprojection(z4.jones)


def test_tensor_separating(z2_tensor_tl):
    left = z2_tensor_tl.annotation('left')
    right = z2_tensor_tl.annotation('right')
    assert is_tensor_separating(left, right)
    assert not is_tensor_separating(left, z2_tensor_tl.identity)


def test_group_like(z4, z2subz7):
    assert is_group_like(z4)
    assert (coproduct_rank_profile(z4) == 1).all()
    assert not is_group_like(z2subz7)


def test_trace_dichotomy():
    S = named('FussCatalan(2, 3)')
    outside = block_decomposition(S).minimal[1:]
    result = trace_dichotomy_check(S, outside)
    assert result.passed
    assert result.checked == 6


def test_trace_dichotomy_fails_for_subgroup(z2subz7):
    outside = block_decomposition(z2subz7).minimal[1:]
    assert not trace_dichotomy_check(z2subz7, outside).passed


ABELIAN = ['TL(2)', 'Z4', 'Z2xZ2', 'Z2subZ5', 'Z2subZ7', 'TL-free-Z3']
CATALOG = [*ABELIAN, 'S3', 'dual-S3', 'FussCatalan(2, 3)']


@pytest.mark.parametrize('name', CATALOG)
def test_schur_product_check_thorough(name):
    check = schur_product_check(named(name), trials=1000)
    assert check.passed


@pytest.mark.parametrize('name', CATALOG)
def test_norm_law(name):
    S = named(name)
    rng = np.random.default_rng(7)
    for _ in range(200):
        A = S.sample_positive(rng)
        assert norm_check(A) == pytest.approx(A.trace().real / S.delta)


@pytest.mark.parametrize('name', CATALOG)
def test_spectral_biprojection_on_samples(name):
    S = named(name)
    for P in block_decomposition(S).minimal:
        assert spectral_biprojection_check(P).passed
    rng = np.random.default_rng(11)
    for _ in range(50):
        assert spectral_biprojection_check(S.sample_positive(rng)).passed


@pytest.mark.parametrize(('name', 'count'), [
    ('Z4', 3), ('Z2xZ2', 5), ('Z2subZ7', 2), ('FussCatalan(2, 3)', 3),
])
def test_biprojection_counts(name, count):
    assert len(enumerate_biprojections(named(name))) == count


def test_free_product_biprojections_are_comparable():
    S = named('FussCatalan(2, 3)')
    separator = S.annotation('separator')
    for b in enumerate_biprojections(S):
        assert precedes(b.element, separator) or precedes(
            separator, b.element
        )


@pytest.mark.parametrize('p', [5, 7])
def test_generated_by_rotation_is_identity(p):
    S = named(f'Z2subZ{p}')
    generated = generated_biprojection(S.basis('g1'))
    assert generated.element.is_close(S.identity)
    assert generated.trace == pytest.approx(p)


def test_generated_biprojection_stabilizes_within_dim(z2subz7, caplog):
    logger = 'twobox.positivity.biprojections'
    with caplog.at_level(logging.DEBUG, logger=logger):
        generated_biprojection(z2subz7.basis('g1'))
    steps = [
        record.args[0] for record in caplog.records
        if record.msg.startswith('Generated biprojection stable')
    ]
    assert steps
    assert all(step < z2subz7.n for step in steps)


def test_generated_biprojection_gives_up(monkeypatch):
    S = named('Z4')
    calls = itertools.count()

    def flip(x, tol=None):
        return S.jones if next(calls) % 2 == 0 else S.identity

    monkeypatch.setattr(S, 'support', flip)
    with pytest.raises(NoStabilizationError, match='in 4 steps'):
        generated_biprojection(S.basis(1))
    assert next(calls) == S.n + 1


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from(['Z4', 'Z2xZ2', 'Z2subZ7', 'TL-free-Z3']),
    st.lists(st.integers(0, 3), min_size=4, max_size=4),
    st.lists(st.integers(0, 3), min_size=4, max_size=4),
)
def test_generated_biprojection_is_monotone(name, left, right):
    S = named(name)
    minimal = block_decomposition(S).minimal
    y = S.zero()
    z = S.zero()
    for P, a, b in zip(minimal, left, right, strict=False):
        y = y + P * a
        z = z + P * b
    smaller = generated_biprojection(y).element
    larger = generated_biprojection(y + z).element
    assert precedes(smaller, larger)


FREE_PRODUCTS = [
    ('TL(2)', 'Z3'), ('Z3', 'TL(2)'), ('TL(2)', 'FussCatalan(2, 3)'),
]


@pytest.mark.parametrize(('left', 'right'), FREE_PRODUCTS)
def test_free_product_separation(left, right):
    A, B = named(left), named(right)
    S = free_product(A, B)
    separator = S.annotation('separator')
    assert is_free_separating(separator)
    assert free_separation_dims(separator) == (A.n, B.n, S.n)
    lower, upper = cut_down(S, separator)
    assert (lower.n, upper.n) == (A.n, B.n)
    assert verify_axioms(lower, trials=20).passed
    assert verify_axioms(upper, trials=20).passed

    found = virtual_normalizers(S)
    assert found
    separating = []
    for P in found:
        assert is_virtual_normalizer(P, Side.BOTH)
        Q = find_separating_biprojection(P).element
        if is_free_separating(Q):
            separating.append(Q)
    assert separating
    for Q in separating:
        inner, outer, _ = free_separation_dims(Q)
        assert inner + outer > S.n
