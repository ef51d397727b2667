import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import perm_pairs, permutations
from derangement_cliques.errors import (
    ClosureExceedsCap,
    InvalidBlockSystem,
    InvalidCayleyTable,
    InvalidPermutation,
    NotASubgroup,
)
from derangement_cliques.perm import (
    BlockSystem,
    CayleyTable,
    PermGroup,
    Permutation,
    action_on_subsets,
    affine_line_group,
    alt4_on_pairs,
    alternating_group,
    block_system_with,
    blocks_action,
    compose,
    conjugacy_classes,
    conjugation_orbits,
    coset_action,
    cyclic_group,
    dihedral_group,
    group_from_elements,
    inverse,
    minimal_block_systems,
    orbit,
    regular_reps,
    stabilizer,
    symmetric_group,
    wreath_imprimitive,
)


def test_compose_applies_left_first():
    p = Permutation([1, 2, 0])
    q = Permutation([0, 2, 1])
    # 0 -> 1 under p, then 1 -> 2 under q
    assert compose(p, q).images == (2, 1, 0)
    assert (p * q)(0) == q(p(0))


def test_invalid_permutations_rejected():
    with pytest.raises(InvalidPermutation):
        Permutation([0, 0, 1])
    with pytest.raises(InvalidPermutation):
        Permutation([1, 2, 3])
    with pytest.raises(InvalidPermutation):
        Permutation.from_cycles(3, [(0, 1), (1, 2)])


def test_cycle_string_and_type():
    g = Permutation.from_cycles(6, [(0, 3, 1), (2, 4)])
    assert g.cycle_string() == "(0 3 1)(2 4)"
    assert g.cycle_type() == (1, 2, 3)
    assert g.order() == 6
    assert not g.is_derangement()
    assert Permutation.identity(4).cycle_string() == "()"


@given(permutations())
def test_inverse_laws(p):
    e = Permutation.identity(p.degree)
    assert p * inverse(p) == e
    assert inverse(p) * p == e
    assert inverse(inverse(p)) == p
    assert p ** p.order() == e


@given(perm_pairs(count=3))
def test_composition_associative(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)


@given(perm_pairs())
def test_inverse_of_product(pair):
    a, b = pair
    assert inverse(a * b) == inverse(b) * inverse(a)


@given(perm_pairs())
def test_conjugation_preserves_cycle_type(pair):
    x, a = pair
    assert x.conjugate(a).cycle_type() == x.cycle_type()
    assert x.conjugate(a) == inverse(a) * x * a


@pytest.mark.parametrize("G, order", [
    (symmetric_group(4), 24), (alternating_group(5), 60), (cyclic_group(7), 7),
    (dihedral_group(5), 10), (affine_line_group(5), 20), (affine_line_group(7), 42),
    (alt4_on_pairs(), 12), (action_on_subsets(alternating_group(5), 2), 60),
])
def test_standard_group_orders(G, order):
    assert G.order == order
    assert G.is_transitive()


def test_affine_line_group_needs_prime():
    with pytest.raises(ValueError):
        affine_line_group(6)


def test_closure_cap():
    G = PermGroup(7, symmetric_group(7).generators, cap=100)
    assert not G.materialize()
    with pytest.raises(ClosureExceedsCap):
        G.elements


@settings(max_examples=30, deadline=None)
@given(st.lists(permutations(n=6), min_size=1, max_size=3), st.integers(0, 5))
def test_orbit_stabilizer(gens, point):
    G = PermGroup(6, gens)
    assert len(orbit(G, point)) * stabilizer(G, point=point).order == G.order


def test_stabilizer_variants():
    S4 = symmetric_group(4)
    assert stabilizer(S4, pointwise=[0, 1]).order == 2
    assert stabilizer(S4, setwise=[0, 1]).order == 4
    with pytest.raises(ValueError):
        stabilizer(S4)


def test_normality():
    S4, A4 = symmetric_group(4), alternating_group(4)
    assert A4.is_normal_in(S4)
    assert not stabilizer(S4, point=0).is_normal_in(S4)


def test_blocks_of_alt4_on_pairs():
    G = alt4_on_pairs()
    systems = minimal_block_systems(G)
    assert [(s.num_blocks, s.block_size) for s in systems] == [(3, 2)]
    sigma = systems[0]
    assert sigma.is_invariant(G)
    image, kernel = blocks_action(G, sigma)
    assert image.order == 3 and kernel.order == 4


def test_primitive_groups_have_no_blocks():
    assert minimal_block_systems(symmetric_group(5)) == []
    assert minimal_block_systems(cyclic_group(7)) == []


def test_cyclic_blocks():
    # one system per minimal block through {0, beta}
    sizes = sorted(s.block_size for s in minimal_block_systems(cyclic_group(12)))
    assert sizes == [2, 3, 4, 6]


@settings(max_examples=25, deadline=None)
@given(st.lists(permutations(n=8), min_size=1, max_size=2))
def test_minimal_blocks_are_invariant(gens):
    G = PermGroup(8, gens)
    if not G.is_transitive():
        return
    for sigma in minimal_block_systems(G):
        assert sigma.is_invariant(G)
        assert len({len(b) for b in sigma.blocks}) == 1


def test_block_system_validation():
    with pytest.raises(InvalidBlockSystem):
        BlockSystem.from_blocks([(0, 1), (2,)])


def test_wreath_order_and_blocks():
    W = wreath_imprimitive(cyclic_group(3), alt4_on_pairs())
    assert W.degree == 18
    assert W.order == 3 ** 6 * 12
    assert block_system_with(W, 6) is not None


def test_coset_action_matches_natural_action():
    S4 = symmetric_group(4)
    U = stabilizer(S4, point=0)
    action = coset_action(S4, U)
    assert action.degree == 4 and action.order == 24 and action.is_transitive()


def test_coset_action_requires_subgroup():
    X = CayleyTable.cyclic(6)
    with pytest.raises(NotASubgroup):
        coset_action(X, [0, 1])


def test_cayley_table_validation():
    with pytest.raises(InvalidCayleyTable):
        CayleyTable(((0, 1), (0, 1)), 0)
    # a Latin square that is not associative
    loop = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(InvalidCayleyTable):
        CayleyTable(loop, 0)


def test_regular_reps_commute():
    R, L = regular_reps(CayleyTable.from_group(symmetric_group(3)))
    assert R.order == L.order == 6
    assert all(r * l == l * r for r in R.elements for l in L.elements)


def test_conjugacy_classes_counts():
    assert len(conjugacy_classes(symmetric_group(4))) == 5
    assert len(conjugacy_classes(alternating_group(5))) == 5
    # Sym(5) fuses the two classes of 5-cycles
    assert len(conjugation_orbits(symmetric_group(5), alternating_group(5))) == 4


def test_group_from_elements_round_trip():
    S3 = symmetric_group(3)
    G = group_from_elements(3, S3.elements)
    assert G.same_group(S3)
