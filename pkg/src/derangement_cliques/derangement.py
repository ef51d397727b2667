"""Derangement graphs, their cliques and cocliques, and intersection density.

Two group elements ``x`` and ``y`` are adjacent when ``x * y**-1`` has no fixed
point.  The graph is a Cayley graph, so right translation is an automorphism:
every clique (or coclique) can be moved to one through the identity.  Inner
automorphisms fix the identity and preserve the derangement set, so the
second vertex of a rooted clique can be taken from a list of conjugacy-class
representatives.  All searches below use both reductions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .cliques import max_clique
from .errors import CapExceeded, InvalidWitness, NotTransitive
from .perm import BlockSystem, CayleyTable, PermGroup, Permutation, conjugation_orbits, inverse

BITMATRIX_LIMIT = 20_000
COCLIQUE_CAP = 2_000
CLIQUE_CAP = 2_000


def derangements(G: PermGroup) -> frozenset[Permutation]:
    return frozenset(g for g in G.elements if g.is_derangement())


def is_clique(elements: Sequence[Permutation]) -> bool:
    """Pairwise quotients are derangements (on the elements' own domain)."""
    elems = list(elements)
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            if not (x * inverse(y)).is_derangement():
                return False
    return len(set(elems)) == len(elems)


def is_intersecting(elements: Sequence[Permutation]) -> bool:
    elems = list(elements)
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            if (x * inverse(y)).is_derangement():
                return False
    return True


@dataclass(frozen=True)
class CliqueWitness:
    elements: tuple[Permutation, ...]

    def __post_init__(self):
        if not is_clique(self.elements):
            raise InvalidWitness("pairwise quotients are not all derangements")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def cycle_strings(self) -> list[str]:
        return [g.cycle_string() for g in self.elements]


class DerangementGraph:
    """Cayley graph of a materialized group with connection set the derangements."""

    def __init__(self, G: PermGroup):
        self.group = G
        self.vertices = G.elements
        self.identity = G.identity
        self.derangement_set = frozenset(g for g in self.vertices if g.is_derangement())
        self.derangement_list = [g for g in self.vertices if g in self.derangement_set]

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def valency(self) -> int:
        return len(self.derangement_list)

    @cached_property
    def index(self) -> dict[Permutation, int]:
        return {g: i for i, g in enumerate(self.vertices)}

    @cached_property
    def inverses(self) -> dict[Permutation, Permutation]:
        return {g: inverse(g) for g in self.vertices}

    @cached_property
    def classes(self) -> list[frozenset[Permutation]]:
        return conjugation_orbits(self.group, self.group)

    def class_representatives(self, subset) -> list[Permutation]:
        """Smallest element of every conjugacy class that lies in ``subset``."""
        return sorted(min(c) for c in self.classes if next(iter(c)) in subset)

    def adjacent(self, x: Permutation, y: Permutation) -> bool:
        return x != y and x * self.inverses[y] in self.derangement_set

    def neighbours(self, y: Permutation) -> list[Permutation]:
        return [d * y for d in self.derangement_list]

    @cached_property
    def adjacency(self) -> list[int]:
        """Bit-matrix rows indexed like ``vertices`` (only for modest orders)."""
        if self.order > BITMATRIX_LIMIT:
            raise CapExceeded(f"bit matrix refused for {self.order} > {BITMATRIX_LIMIT} vertices")
        index = self.index
        rows = []
        for y in self.vertices:
            row = 0
            for d in self.derangement_list:
                row |= 1 << index[d * y]
            rows.append(row)
        return rows

    def local_graph(self, elems: Sequence[Permutation], complement: bool = False) -> list[int]:
        """Adjacency bitsets of the subgraph on ``elems`` (or of its complement)."""
        inv = self.inverses
        D = self.derangement_set
        adj = [0] * len(elems)
        for i, x in enumerate(elems):
            for j in range(i + 1, len(elems)):
                if (x * inv[elems[j]] in D) != complement:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return adj

    def _rooted_candidates(self, r: Permutation, pool: Sequence[Permutation], complement: bool):
        inv = self.inverses
        D = self.derangement_set
        return [x for x in pool if x != r and (r * inv[x] in D) != complement]


def derangement_graph(G: PermGroup) -> DerangementGraph:
    return DerangementGraph(G)


def _as_graph(obj) -> DerangementGraph:
    return obj if isinstance(obj, DerangementGraph) else DerangementGraph(obj)


def has_kclique(graph, k: int) -> CliqueWitness | None:
    """A ``k``-clique through the identity, or ``None`` when there is none."""
    if k < 1:
        raise ValueError("k must be at least 1")
    gamma = _as_graph(graph)
    ident = gamma.identity
    if k == 1:
        return CliqueWitness((ident,))
    D = gamma.derangement_list
    if not D:
        return None
    if k == 2:
        return CliqueWitness((ident, D[0]))
    inv = gamma.inverses
    Dset = gamma.derangement_set

    # adjacency is evaluated lazily so that a witness stops the search early
    def extend(chosen, cand, need):
        if need == 0:
            return chosen
        for i, x in enumerate(cand):
            if len(cand) - i < need:
                return None
            rest = [y for y in cand[i + 1:] if x * inv[y] in Dset] if need > 1 else []
            if len(rest) >= need - 1:
                found = extend(chosen + (x,), rest, need - 1)
                if found is not None:
                    return found
        return None

    for r in gamma.class_representatives(Dset):
        cand = gamma._rooted_candidates(r, D, complement=False)
        found = extend((ident, r), cand, k - 2)
        if found is not None:
            return CliqueWitness(found)
    return None


def max_clique_witness(graph, cap: int = CLIQUE_CAP) -> CliqueWitness:
    """A maximum clique through the identity."""
    gamma = _as_graph(graph)
    if gamma.order > cap:
        raise CapExceeded(f"clique search refused for |G| = {gamma.order} > {cap}")
    ident = gamma.identity
    D = gamma.derangement_list
    if not D:
        return CliqueWitness((ident,))
    # every clique has pairwise distinct images of each point
    upper = gamma.group.degree
    best = (ident, D[0])
    for r in gamma.class_representatives(gamma.derangement_set):
        if len(best) >= upper:
            break
        cand = gamma._rooted_candidates(r, D, complement=False)
        if len(cand) + 2 <= len(best):
            continue
        adj = gamma.local_graph(cand)
        found = max_clique(adj, lower=len(best) - 2, upper=upper - 2)
        if found:
            best = (ident, r) + tuple(cand[i] for i in found)
    return CliqueWitness(best)


def clique_number(graph, cap: int = CLIQUE_CAP) -> int:
    return len(max_clique_witness(graph, cap=cap))


def max_coclique(graph, cap: int = COCLIQUE_CAP) -> tuple[int, frozenset[Permutation]]:
    """Exact independence number with an intersecting-family witness."""
    gamma = _as_graph(graph)
    if gamma.order > cap:
        raise CapExceeded(f"coclique search refused for |G| = {gamma.order} > {cap}")
    ident = gamma.identity
    pool = [g for g in gamma.vertices if g not in gamma.derangement_set and g != ident]
    best: tuple[Permutation, ...] = (ident,)
    if pool:
        best = (ident, pool[0])
    for r in gamma.class_representatives(set(pool)):
        cand = gamma._rooted_candidates(r, pool, complement=True)
        if len(cand) + 2 <= len(best):
            continue
        adj = gamma.local_graph(cand, complement=True)
        found = max_clique(adj, lower=len(best) - 2)
        if found:
            best = (ident, r) + tuple(cand[i] for i in found)
    witness = frozenset(best)
    assert is_intersecting(list(witness))
    return len(witness), witness


def intersection_density(G: PermGroup, cap: int = COCLIQUE_CAP) -> Fraction:
    if not G.is_transitive():
        raise NotTransitive("intersection density is defined here for transitive groups")
    alpha, _ = max_coclique(DerangementGraph(G), cap=cap)
    return Fraction(alpha * G.degree, G.order)


@dataclass
class CliqueCocliqueReport:
    degree: int
    order: int
    alpha: int
    omega: int
    rho: Fraction
    density_bound: Fraction
    product_bound_holds: bool
    product_bound_tight: bool
    density_bound_holds: bool
    density_bound_tight: bool

    @property
    def ok(self) -> bool:
        return self.product_bound_holds and self.density_bound_holds


def clique_coclique_check(G: PermGroup, cap: int = COCLIQUE_CAP) -> CliqueCocliqueReport:
    """Evaluate ``alpha * omega <= |G|`` and ``rho <= n / omega`` exactly."""
    gamma = DerangementGraph(G)
    alpha, _ = max_coclique(gamma, cap=cap)
    omega = clique_number(gamma)
    n, order = G.degree, G.order
    rho = Fraction(alpha * n, order)
    bound = Fraction(n, omega)
    return CliqueCocliqueReport(
        degree=n, order=order, alpha=alpha, omega=omega, rho=rho, density_bound=bound,
        product_bound_holds=alpha * omega <= order, product_bound_tight=alpha * omega == order,
        density_bound_holds=rho <= bound, density_bound_tight=rho == bound,
    )


def _is_prime_power(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def prime_power_derangement(G: PermGroup, p: int) -> Permutation | None:
    """A fixed-point-free element whose order is a power of ``p``."""
    for g in G.elements:
        if g.is_derangement() and _is_prime_power(g.order(), p):
            return g
    return None


def lift_clique_check(G: PermGroup, sigma: BlockSystem, clique: Sequence[Permutation]) -> bool:
    """Check that a clique of the action on ``sigma`` is a clique on the points.

    Raises ``InvalidWitness`` when ``clique`` is not a clique for the block action.
    """
    elems = list(clique)
    if any(g not in G for g in elems):
        raise InvalidWitness("witness elements must belong to G")
    on_blocks = [sigma.block_permutation(g) for g in elems]
    if len(set(on_blocks)) != len(on_blocks) or not is_clique(on_blocks):
        raise InvalidWitness("not a clique for the action on the block system")
    return is_clique(elems)


def regular_product_derangement(X: CayleyTable) -> tuple[int, int] | None:
    """Non-identity ``x, y`` with ``rho_x * lambda_y`` fixed-point-free, or ``None``.

    ``rho_x: w -> w x`` and ``lambda_y: w -> y^-1 w`` are the commuting right and
    left regular representations; all pairs are tried.
    """
    k = X.order
    t = X.table
    e = X.identity
    rho = [Permutation([t[w][x] for w in range(k)], check=False) for x in range(k)]
    lam = [Permutation([t[X.inv(y)][w] for w in range(k)], check=False) for y in range(k)]
    for x in range(k):
        if x == e:
            continue
        for y in range(k):
            if y != e and (rho[x] * lam[y]).is_derangement():
                return x, y
    return None


def translation_preserves_adjacency(graph, samples: int = 20, seed: int = 0) -> bool:
    """Sampled check that ``x -> x g`` is a graph automorphism."""
    gamma = _as_graph(graph)
    rng = random.Random(seed)
    V = gamma.vertices
    for _ in range(samples):
        g, x, y = rng.choice(V), rng.choice(V), rng.choice(V)
        if gamma.adjacent(x, y) != gamma.adjacent(x * g, y * g):
            return False
    return True
