import pytest
from hypothesis import given
from hypothesis import strategies as st

from derangement_cliques.conjclasses import aut_class_count, brute_force_power_classes, stars_and_bars
from derangement_cliques.errors import CapExceeded
from derangement_cliques.perm import (
    PermGroup,
    alternating_group,
    cyclic_group,
    dihedral_group,
    symmetric_group,
)


def test_class_counts():
    assert aut_class_count(alternating_group(5), symmetric_group(5)) == 4
    assert aut_class_count(alternating_group(5), alternating_group(5)) == 5
    assert aut_class_count(symmetric_group(4), symmetric_group(4)) == 5


@given(st.integers(1, 30), st.integers(1, 6))
def test_stars_and_bars_recurrence(t, k):
    # multisets either avoid the last class or use it at least once
    if t == 1:
        assert stars_and_bars(t, k) == 1
    else:
        assert stars_and_bars(t, k) == stars_and_bars(t - 1, k) + (stars_and_bars(t, k - 1) if k > 1 else 1)


def test_stars_and_bars_rejects_bad_input():
    with pytest.raises(ValueError):
        stars_and_bars(0, 2)
    with pytest.raises(ValueError):
        stars_and_bars(3, 0)


@pytest.mark.parametrize("T, aut, kappa", [
    (alternating_group(5), symmetric_group(5), 1),
    (alternating_group(5), symmetric_group(5), 2),
    (symmetric_group(3), symmetric_group(3), 2),
    (symmetric_group(3), symmetric_group(3), 3),
    (cyclic_group(5), cyclic_group(5), 2),
    (dihedral_group(4), dihedral_group(4), 2),
    (alternating_group(4), symmetric_group(4), 3),
])
def test_brute_force_matches_formula(T, aut, kappa):
    t = aut_class_count(T, aut)
    assert brute_force_power_classes(T, aut, kappa) == stars_and_bars(t, kappa)


def test_power_classes_cap():
    with pytest.raises(CapExceeded):
        brute_force_power_classes(alternating_group(5), symmetric_group(5), 5)


def test_aut_must_normalize():
    S3 = symmetric_group(3)
    C2 = PermGroup(3, [S3.elements[1]]) if S3.elements[1].order() == 2 else PermGroup(3, [S3.elements[2]])
    with pytest.raises(ValueError):
        brute_force_power_classes(C2, S3, 1)
