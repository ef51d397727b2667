import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derangement_cliques.covering import (
    CoveringInstance,
    class_distinct_tuple,
    class_labels,
    conjugate_union,
    is_covering_subgroup,
    kernel_derangement,
    kernel_point_stabilizer_instance,
    pigeonhole_fixity_check,
    saxl_check,
    two_generated_subgroups,
    verify_neumann_praeger_n3,
)
from derangement_cliques.errors import NotASubgroup, NotCovering, NotIndexThree, NotNormalized, PreconditionError
from derangement_cliques.perm import (
    PermGroup,
    alt4_on_pairs,
    alternating_group,
    cyclic_group,
    stabilizer,
    symmetric_group,
    wreath_imprimitive,
)

A5 = alternating_group(5)
S5 = symmetric_group(5)


def test_instance_validation():
    S4 = symmetric_group(4)
    with pytest.raises(NotNormalized):
        CoveringInstance(S4, stabilizer(S4, point=0), stabilizer(S4, pointwise=[0, 1]))
    with pytest.raises(NotASubgroup):
        CoveringInstance(S4, alternating_group(4), stabilizer(S4, point=0))


def test_alt5_subgroup_count():
    subs = two_generated_subgroups(A5)
    assert len(subs) == 59
    assert sorted({H.order for H in subs}) == [1, 2, 3, 4, 5, 6, 10, 12, 60]


def test_covering_matches_conjugate_union():
    for M in two_generated_subgroups(A5):
        inst = CoveringInstance(S5, A5, M)
        assert is_covering_subgroup(inst) == (conjugate_union(S5, M) == A5.element_set)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_covering_oracle_in_sym4(seed):
    S4 = symmetric_group(4)
    elems = S4.elements
    gens = [elems[seed % 24], elems[(seed // 24) % 24]]
    U = PermGroup(4, gens)
    inst = CoveringInstance(S4, S4, U)
    assert is_covering_subgroup(inst) == (conjugate_union(S4, U) == S4.element_set)


def test_saxl_for_alt5():
    covering = [M.order for M in two_generated_subgroups(A5) if saxl_check(A5, M, S5)]
    assert covering == [60]


def test_saxl_rejects_foreign_subgroup():
    with pytest.raises(NotASubgroup):
        saxl_check(A5, S5, S5)


def test_neumann_praeger_on_alt4_wreath():
    # Alt(3) wr Alt(3) style example: kernel of the three-block action
    G = wreath_imprimitive(cyclic_group(3), alternating_group(3))
    inst = kernel_point_stabilizer_instance(G)
    assert inst.n == 3
    assert not is_covering_subgroup(inst)
    with pytest.raises(NotCovering):
        verify_neumann_praeger_n3(inst)


def test_neumann_praeger_requires_index_three():
    S4 = symmetric_group(4)
    inst = CoveringInstance(S4, alternating_group(4), stabilizer(alternating_group(4), point=0))
    with pytest.raises(NotIndexThree):
        verify_neumann_praeger_n3(inst)


def test_kernel_derangement():
    # the kernel V4 of Alt(4) on pairs fixes two pairs with each involution
    assert kernel_derangement(alt4_on_pairs()) is None
    k = kernel_derangement(wreath_imprimitive(cyclic_group(3), alternating_group(3)))
    assert k is not None and k.is_derangement()
    with pytest.raises(PreconditionError):
        kernel_derangement(symmetric_group(5))


def test_class_helpers():
    labels = class_labels(A5, S5)
    assert len(set(labels.values())) == 4
    tup = class_distinct_tuple(A5, S5, 4)
    assert len({labels[x] for x in tup}) == 4
    assert class_distinct_tuple(A5, S5, 5) is None


def test_pigeonhole():
    assert pigeonhole_fixity_check(A5, S5, 5, samples=2000)
    with pytest.raises(PreconditionError):
        pigeonhole_fixity_check(A5, S5, 4)
    # exhaustive branch on a small group
    assert pigeonhole_fixity_check(symmetric_group(3), symmetric_group(3), 4)
