import itertools

import pytest
from hypothesis import strategies as st

from derangement_cliques.perm import Permutation, inverse


@st.composite
def permutations(draw, n=None, max_n=8):
    if n is None:
        n = draw(st.integers(1, max_n))
    return Permutation(draw(st.permutations(range(n))))


@st.composite
def perm_pairs(draw, max_n=8, count=2):
    n = draw(st.integers(1, max_n))
    return tuple(draw(permutations(n=n)) for _ in range(count))


def brute_force_has_clique(G, k):
    """Plain subset search over all k-sets of elements."""
    elems = G.elements
    for S in itertools.combinations(elems, k):
        if all((x * inverse(y)).is_derangement() for x, y in itertools.combinations(S, 2)):
            return True
    return False


@pytest.fixture(scope="session")
def catalog_records():
    from derangement_cliques.catalog import load_catalog

    return {r.name: r for r in load_catalog()}


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
