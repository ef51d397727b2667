"""Covering subgroups: ``U <= H`` normal in ``A`` with ``H`` the union of the ``A``-conjugates of ``U``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .derangement import DerangementGraph, clique_number, has_kclique
from .errors import CapExceeded, NotASubgroup, NotCovering, NotIndexThree, NotNormalized, PreconditionError
from .perm import (
    PermGroup,
    Permutation,
    blocks_action,
    block_system_with,
    conjugation_orbits,
    coset_action,
    inverse,
    stabilizer,
)

EXHAUSTIVE_TUPLES = 10 ** 6


@dataclass(frozen=True)
class CoveringInstance:
    A: PermGroup
    H: PermGroup
    U: PermGroup

    def __post_init__(self):
        if not self.H.is_normal_in(self.A):
            raise NotNormalized("H is not a normal subgroup of A")
        if not self.U.element_set <= self.H.element_set:
            raise NotASubgroup("U is not contained in H")

    @property
    def n(self) -> int:
        return self.A.order // self.H.order


def conjugate_union(A: PermGroup, U: PermGroup) -> frozenset[Permutation]:
    """Union of ``a^-1 U a`` over all ``a`` in ``A`` (plain enumeration)."""
    out = set()
    for a in A.elements:
        ai = inverse(a)
        out.update(ai * u * a for u in U.elements)
    return frozenset(out)


def is_covering_subgroup(inst: CoveringInstance) -> bool:
    """``U`` meets every ``A``-conjugacy class inside ``H``."""
    Uset = inst.U.element_set
    return all(not cls.isdisjoint(Uset) for cls in conjugation_orbits(inst.A, inst.H))


@dataclass
class NeumannPraegerReport:
    n: int
    index_HU: int
    coset_degree: int
    omega: int
    omega_ok: bool
    degree_ok: bool
    index_ok: bool

    @property
    def passed(self) -> bool:
        return self.omega_ok and self.degree_ok and self.index_ok

    def items(self) -> list[tuple[str, str]]:
        return [("n", str(self.n)), ("index_HU", str(self.index_HU)),
                ("coset_degree", str(self.coset_degree)), ("omega", str(self.omega)),
                ("omega_le_3", str(self.omega_ok).lower()), ("degree_le_30", str(self.degree_ok).lower()),
                ("index_HU_le_10", str(self.index_ok).lower())]


def _omega_at_most_3(graph: DerangementGraph) -> int:
    if has_kclique(graph, 4) is None:
        return 3 if has_kclique(graph, 3) is not None else clique_number(graph)
    try:
        return clique_number(graph)
    except CapExceeded:
        return 4  # only "at least 4" is known, which already breaks the bound


def verify_neumann_praeger_n3(inst: CoveringInstance) -> NeumannPraegerReport:
    """Index-3 case: cliques of the coset action have at most 3 elements, which
    caps the coset degree at 30 and ``|H:U|`` at 10."""
    if inst.n != 3:
        raise NotIndexThree(f"|A:H| = {inst.n}, expected 3")
    if not is_covering_subgroup(inst):
        raise NotCovering("the A-conjugates of U do not cover H")
    action = coset_action(inst.A, inst.U)
    omega = _omega_at_most_3(DerangementGraph(action))
    degree = action.degree
    index = inst.H.order // inst.U.order
    return NeumannPraegerReport(3, index, degree, omega, omega <= 3, degree <= 30, index <= 10)


def kernel_point_stabilizer_instance(G: PermGroup, num_blocks: int = 3, point: int = 0) -> CoveringInstance:
    """``A = G``, ``H`` the kernel of the action on a ``num_blocks``-block system, ``U = G_point``."""
    sigma = block_system_with(G, num_blocks)
    if sigma is None:
        raise PreconditionError(f"no block system with {num_blocks} blocks")
    _, kernel = blocks_action(G, sigma)
    return CoveringInstance(G, kernel, stabilizer(G, point=point))


def kernel_derangement(G: PermGroup, num_blocks: int = 3) -> Permutation | None:
    """A derangement inside the kernel of the action on a block system, if any."""
    sigma = block_system_with(G, num_blocks)
    if sigma is None:
        raise PreconditionError(f"no block system with {num_blocks} blocks")
    _, kernel = blocks_action(G, sigma)
    return next((k for k in kernel.elements if k.is_derangement()), None)


# -- simple groups -----------------------------------------------------------


def saxl_check(T: PermGroup, M: PermGroup, aut: PermGroup) -> bool:
    """Whether the ``aut``-conjugates of ``M`` cover ``T``."""
    if not M.element_set <= T.element_set:
        raise NotASubgroup("M is not a subgroup of T")
    return is_covering_subgroup(CoveringInstance(aut, T, M))


def two_generated_subgroups(T: PermGroup) -> list[PermGroup]:
    """Distinct subgroups generated by at most two elements, by closure."""
    seen = {}
    elems = T.elements
    for gens in itertools.chain([()], ((x,) for x in elems), itertools.combinations(elems, 2)):
        if len(gens) == 2:
            known = seen.get(frozenset(gens))
            if known is not None:
                continue
        H = PermGroup(T.degree, gens)
        key = H.element_set
        if key not in seen:
            seen[key] = H
    return sorted(seen.values(), key=lambda H: (H.order, H.elements))


def class_labels(T: PermGroup, aut: PermGroup) -> dict[Permutation, int]:
    labels = {}
    for i, cls in enumerate(sorted(conjugation_orbits(aut, T), key=min)):
        for x in cls:
            labels[x] = i
    return labels


def class_distinct_tuple(T: PermGroup, aut: PermGroup, tuple_len: int) -> tuple[Permutation, ...] | None:
    """``tuple_len`` elements from pairwise different ``aut``-classes, if there are enough classes."""
    classes = sorted(conjugation_orbits(aut, T), key=min)
    if tuple_len > len(classes):
        return None
    return tuple(min(c) for c in classes[:tuple_len])


def pigeonhole_fixity_check(T: PermGroup, aut: PermGroup, tuple_len: int, samples: int = 10_000,
                            seed: int = 0) -> bool:
    """Every checked ``tuple_len``-tuple of ``T`` repeats an ``aut``-class.

    All tuples are checked when there are at most 10^6 of them, otherwise
    ``samples`` random tuples.
    """
    labels = class_labels(T, aut)
    t = len(set(labels.values()))
    if tuple_len <= t:
        raise PreconditionError(f"tuple length {tuple_len} does not exceed the {t} classes")
    elems = T.elements
    if len(elems) ** tuple_len <= EXHAUSTIVE_TUPLES:
        tuples = itertools.product(elems, repeat=tuple_len)
    else:
        rng = random.Random(seed)
        tuples = ([rng.choice(elems) for _ in range(tuple_len)] for _ in range(samples))
    return all(len({labels[x] for x in tup}) < tuple_len for tup in tuples)

