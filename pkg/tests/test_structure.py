import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from twobox.catalog import fourier_dual, named
from twobox.exceptions import (
    BadDeltaError,
    NotCentralMinimalError,
    OwnerMismatchError,
    StructureShapeError,
)
from twobox.linalg import Tolerance
from twobox.structure import (
    TwoBoxStructure,
    block_decomposition,
    central_minimal_index,
    rank,
    verify_axioms,
)


coefficient = st.floats(-2, 2, allow_nan=False, allow_subnormal=False)
ALGEBRAS = ['Z4', 'S3', 'TL-free-Z3', 'Z2subZ7', 'dual-S3']


def elements(S: TwoBoxStructure) -> st.SearchStrategy:
    return st.builds(
        lambda re, im: S.element(re + 1j * im),
        arrays(np.float64, S.n, elements=coefficient),
        arrays(np.float64, S.n, elements=coefficient),
    )


def with_elements(count: int) -> st.SearchStrategy:
    return st.sampled_from(ALGEBRAS).map(named).flatmap(
        lambda S: st.tuples(*[elements(S)] * count)
    )


def close(x, y) -> bool:
    scale = 1.0 + max(x.norm(), y.norm())
    return (x - y).norm() <= 1e-9 * scale


def test_units(z4):
    x = z4.element(np.arange(4.0))
    assert (z4.identity @ x).is_close(x)
    assert (x @ z4.identity).is_close(x)
    assert z4.coproduct_unit.coproduct(x).is_close(x)
    assert z4.identity.trace() == pytest.approx(z4.delta**2)
    assert z4.jones.trace() == pytest.approx(1.0)
    assert (z4.jones @ z4.jones).is_close(z4.jones)


def test_element_guards(z4, z2xz2):
    with pytest.raises(OwnerMismatchError):
        z4.identity + z2xz2.identity
    with pytest.raises(TypeError):
        z4.identity * z4.jones
    with pytest.raises(StructureShapeError):
        z4.element([1.0, 2.0])


def test_structure_guards(tl):
    with pytest.raises(BadDeltaError):
        TwoBoxStructure(
            'bad', ['e', 'id'], 1.0, tl.product, tl.coproduct_table,
            tl.trace_vector, np.eye(2), np.eye(2), [0, 1], [1, 0],
        )
    with pytest.raises(StructureShapeError):
        TwoBoxStructure(
            'bad', ['e', 'e'], 2.0, tl.product, tl.coproduct_table,
            tl.trace_vector, np.eye(2), np.eye(2), [0, 1], [1, 0],
        )


@settings(max_examples=30, deadline=None)
@given(with_elements(2))
def test_involutions(pair):
    a, b = pair
    assert close((a @ b).contragredient(),
                 b.contragredient() @ a.contragredient())
    assert close(a.coproduct(b).contragredient(),
                 b.contragredient().coproduct(a.contragredient()))
    assert close((a @ b).adjoint(), b.adjoint() @ a.adjoint())
    assert close(a.coproduct(b).adjoint(),
                 a.adjoint().coproduct(b.adjoint()))
    assert close(a.adjoint().adjoint(), a)
    assert close(a.contragredient().contragredient(), a)


@settings(max_examples=30, deadline=None)
@given(with_elements(3))
def test_associativity_and_trace(triple):
    a, b, c = triple
    assert close((a @ b) @ c, a @ (b @ c))
    assert close(a.coproduct(b).coproduct(c), a.coproduct(b.coproduct(c)))
    scale = 1.0 + a.norm() * b.norm()
    assert abs((a @ b).trace() - (b @ a).trace()) <= 1e-9 * scale


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(ALGEBRAS), st.integers(0, 2**32 - 1))
def test_schur_product(name, seed):
    S = named(name)
    rng = np.random.default_rng(seed)
    a, b = S.sample_positive(rng), S.sample_positive(rng)
    assert S.is_positive(a.coproduct(b))


@pytest.mark.parametrize('name', ['TL(1.5)', 'Z5', 'S3', 'dual-S3',
                                  'Z2subZ5', 'FussCatalan(2, 3)'])
def test_catalog_axioms(name):
    report = verify_axioms(named(name), trials=20)
    assert report.passed, report.failed()


def test_broken_coproduct_fails(tl):
    broken = TwoBoxStructure(
        'broken', tl.labels, tl.delta, tl.product, 2 * tl.coproduct_table,
        tl.trace_vector, tl.contragredient_matrix, tl.adjoint_matrix,
        tl.unit_coeffs, tl.jones_coeffs,
    )
    report = verify_axioms(broken, trials=0)
    assert not report.passed
    assert 'circle' in report.failed()
    assert report['product_associative'].passed


def test_blocks_of_group_algebra(s3):
    blocks = block_decomposition(fourier_dual(s3))
    assert not blocks.is_abelian
    assert blocks.block_dims[0] == 1
    assert sorted(blocks.block_dims) == [1, 1, 2]
    assert len(blocks.minimal) == 4
    assert block_decomposition(s3).is_abelian


def test_blocks_order(z2subz7):
    blocks = block_decomposition(z2subz7)
    assert blocks.minimal[0].is_close(z2subz7.jones)
    assert blocks.block_traces == pytest.approx([1.0, 2.0, 2.0, 2.0])
    for P, label in zip(blocks.minimal[1:], ['g1', 'g2', 'g3'], strict=True):
        assert P.is_close(z2subz7.basis(label))


def test_rank(z4):
    assert rank(z4.identity) == 4
    assert rank(z4.jones) == 1
    assert central_minimal_index(z4.jones) == 0
    with pytest.raises(NotCentralMinimalError):
        central_minimal_index(z4.identity)


def test_rank_of_small_elements(z4):
    x = (z4.basis(0) + z4.basis(2)) * 1e-9
    assert rank(x) == 0
    assert rank(x, Tolerance(rank_tol=1e-12)) == 2
    assert rank(x * 1e9) == 2
    assert z4.support(x, Tolerance(rank_tol=1e-12)).is_close(
        z4.basis(0) + z4.basis(2)
    )


def test_functional_calculus(z4):
    x = z4.element([1.0, 4.0, 9.0, 0.0])
    root = z4.apply_function(x, lambda v: np.sqrt(np.clip(v, 0, None)))
    assert (root @ root).is_close(x)
    assert z4.support(x).is_close(z4.element([1.0, 1.0, 1.0, 0.0]))
