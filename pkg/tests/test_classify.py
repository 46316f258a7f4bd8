import pytest

from twobox.catalog import cyclic, free_product, make_group, make_TL, named
from twobox.classify import (
    ClassTag,
    SplitKind,
    UnclassifiedReason,
    case_d_defect,
    case_d_model,
    check_commute_relation_necessary,
    classify_dim4,
    derive_case_d_constant,
    split_tree,
)
from twobox.classify.driver import CASE_D_SAMPLES
from twobox.structure import verify_axioms


def witnesses(verdict, kind):
    return [w for w in verdict.witnesses if w.kind == kind]


@pytest.mark.parametrize('group', ['Z4', 'Z2xZ2'])
def test_groups_are_class_1(group):
    verdict = classify_dim4(named(group))
    assert verdict.class_number == 1
    assert verdict.tag == ClassTag.DEPTH2
    assert verdict.group == group
    assert witnesses(verdict, 'depth2-support')


def test_dual_group_is_class_1():
    verdict = classify_dim4(named('dual-Z2xZ2'))
    assert verdict.class_number == 1
    assert verdict.group == 'Z2xZ2'


def test_free_product_is_class_2(tl_free_z3):
    verdict = classify_dim4(tl_free_z3)
    assert verdict.class_number == 2
    assert verdict.tag == ClassTag.FREE_PRODUCT_SPLIT
    found = witnesses(verdict, 'free-separator')
    assert found
    assert found[0].details == {'inner_dim': 2, 'outer_dim': 3}
    assert found[0].element.trace().real == pytest.approx(4.0)


def test_reversed_free_product_is_class_2(z3_free_tl):
    verdict = classify_dim4(z3_free_tl)
    assert verdict.class_number == 2
    details = witnesses(verdict, 'free-separator')[0].details
    assert sorted(details.values()) == [2, 3]


def test_tensor_product_is_class_3(z2_tensor_tl):
    verdict = classify_dim4(z2_tensor_tl)
    assert verdict.class_number == 3
    assert verdict.tag == ClassTag.TENSOR_SPLIT
    assert not witnesses(verdict, 'free-separator')
    assert witnesses(verdict, 'tensor-left')
    assert witnesses(verdict, 'tensor-right')


def test_subgroup_is_class_4(z2subz7):
    verdict = classify_dim4(z2subz7)
    assert verdict.class_number == 4
    assert verdict.tag == ClassTag.SUBGROUP_Z2_Z7
    assert verdict.new_part == 9
    assert verdict.constants['c'] == pytest.approx(2.0)
    assert verdict.constants['c_derived'] == pytest.approx(2.0)
    assert verdict.isomorphism is not None
    assert witnesses(verdict, 'isomorphism')[0].details == {
        'target': 'Z2subZ7'
    }


def test_case_d_constant():
    assert derive_case_d_constant() == pytest.approx(2.0)
    for c in CASE_D_SAMPLES:
        assert case_d_defect(c) == pytest.approx((c - 1) - (c - 1) ** 2)
    assert case_d_defect(2) == pytest.approx(0, abs=1e-12)


def test_case_d_model_off_constant():
    S = case_d_model(3)
    report = verify_axioms(S, trials=0)
    assert not report['coproduct_associative'].passed
    verdict = classify_dim4(S)
    assert not verdict.classified
    assert verdict.reason == UnclassifiedReason.AXIOMS


@pytest.mark.parametrize(
    ('name', 'reason'),
    [('TL(3)', UnclassifiedReason.DIMENSION),
     ('S3', UnclassifiedReason.DIMENSION),
     ('Z2subZ5', UnclassifiedReason.DIMENSION)],
)
def test_unclassified(name, reason):
    verdict = classify_dim4(named(name))
    assert verdict.class_number is None
    assert verdict.reason == reason
    assert verdict.diagnostics


def test_verdict_as_dict(z2subz7):
    data = classify_dim4(z2subz7).as_dict()
    assert list(data) == [
        'structure', 'class', 'tag', 'reason', 'group', 'constants',
        'new_part_dimension', 'witnesses', 'diagnostics',
    ]
    assert data['class'] == 4
    assert data['tag'] == 'subgroup-z2-z7'
    assert data['reason'] is None


def test_split_tree_of_groups():
    S = free_product(make_group(cyclic(2)), make_group(cyclic(3)))
    tree = split_tree(S)
    assert tree.kind == SplitKind.FREE_PRODUCT
    assert tree.separator_trace == pytest.approx(2.0)
    assert [leaf.name for leaf in tree.leaves] == ['Z2', 'Z3']
    assert [leaf.kind for leaf in tree.leaves] == [SplitKind.DEPTH2] * 2
    assert tree.as_dict()['children'][1]['dim'] == 3


def test_split_tree_leaves(tl_free_z3):
    tree = split_tree(tl_free_z3)
    assert [leaf.kind for leaf in tree.leaves] == [
        SplitKind.TEMPERLEY_LIEB, SplitKind.DEPTH2,
    ]
    assert split_tree(make_TL(3)).kind == SplitKind.TEMPERLEY_LIEB


def test_commute_relation_conditions(z4, z2subz7):
    assert check_commute_relation_necessary(z4).consistent
    assert check_commute_relation_necessary(z4).is_depth2
    report = check_commute_relation_necessary(named('FussCatalan(2, 3)'))
    assert report.all_virtual_normalizers
    assert report.tree is not None
    assert report.consistent
    report = check_commute_relation_necessary(z2subz7)
    assert not report.all_virtual_normalizers
    assert not report.consistent
    assert report.as_dict()['commute_type'] == 'AA'


@pytest.mark.parametrize('name', ['TL-free-FussCatalan', 'Z3-free-TL'])
def test_other_free_products_are_class_2(name):
    S = named(name)
    verdict = classify_dim4(S)
    assert verdict.class_number == 2
    assert witnesses(verdict, 'free-separator')
    for witness in witnesses(verdict, 'free-separator'):
        details = witness.details
        assert details['inner_dim'] + details['outer_dim'] > S.n
