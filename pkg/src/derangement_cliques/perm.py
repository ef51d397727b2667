"""Permutations and finite permutation groups.

Points are ``0..n-1`` and a permutation is stored as its image array.
Products act on the right: ``p * q`` applies ``p`` first and then ``q``, so
``i ** (p * q) == q(p(i))``.  Conjugation follows the same convention,
``x ** a == a**-1 * x * a``.

Groups keep their generators and materialize the full element set on demand
(breadth-first closure) as long as the order stays below a cap.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    ClosureExceedsCap,
    InvalidBlockSystem,
    InvalidCayleyTable,
    InvalidPermutation,
    NotASubgroup,
    NotNormalized,
    NotTransitive,
)

DEFAULT_CAP = 200_000
COSET_DEGREE_CAP = 10_000
ASSOCIATIVITY_CHECK_LIMIT = 64


class Permutation:
    """A bijection of ``{0, ..., n-1}`` given by its image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise InvalidPermutation(f"not a permutation of 0..{len(images) - 1}: {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if x in seen or not 0 <= x < n:
                    raise InvalidPermutation(f"bad cycle {tuple(cyc)} on {n} points")
                seen.add(x)
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.images)

    def __repr__(self):
        return f"Permutation({self.cycle_string()})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i == x]

    def is_derangement(self) -> bool:
        return all(i != x for i, x in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths, fixed points included."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def order(self) -> int:
        from math import lcm

        return lcm(*self.cycle_type()) if self.images else 1

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def conjugate(self, a: Permutation) -> Permutation:
        """``a^-1 * self * a``."""
        return compose(compose(inverse(a), self), a)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if len(p.images) != len(q.images):
        raise ValueError(f"degree mismatch: {len(p.images)} != {len(q.images)}")
    return Permutation(map(q.images.__getitem__, p.images), check=False)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p.images)
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(inv, check=False)


def _closure(degree: int, gens: Sequence[Permutation], cap: int) -> list[Permutation] | None:
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    gen_images = [g.images for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            xi = x.images
            for gi in gen_images:
                y = Permutation(map(gi.__getitem__, xi), check=False)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            return None
        frontier = nxt
    return sorted(seen)


class PermGroup:
    """A permutation group given by generators, with a lazily built element list.

    ``elements`` is sorted by image array, so the identity always comes first.
    Materialization happens at most once and is guarded by a lock.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation], cap: int = DEFAULT_CAP,
                 name: str | None = None, elements: Iterable[Permutation] | None = None):
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        if not gens:
            gens = (Permutation.identity(degree),)
        self.degree = degree
        self.generators = gens
        self.cap = cap
        self.name = name
        self._lock = threading.Lock()
        self._elements: tuple[Permutation, ...] | None = None
        self._element_set: frozenset[Permutation] | None = None
        self._capped = False
        if elements is not None:
            self._set_elements(sorted(set(elements)))

    def _set_elements(self, elems):
        self._elements = tuple(elems)
        self._element_set = frozenset(self._elements)

    def __repr__(self):
        label = self.name or "PermGroup"
        order = len(self._elements) if self._elements is not None else "?"
        return f"<{label} degree={self.degree} order={order} gens={len(self.generators)}>"

    def materialize(self) -> bool:
        """Try to build the element set; returns False (capped state) when too big."""
        if self._elements is not None:
            return True
        if self._capped:
            return False
        with self._lock:
            if self._elements is None and not self._capped:
                elems = _closure(self.degree, self.generators, self.cap)
                if elems is None:
                    self._capped = True
                else:
                    self._set_elements(elems)
        return self._elements is not None

    @property
    def capped(self) -> bool:
        return not self.materialize()

    @property
    def elements(self) -> tuple[Permutation, ...]:
        if not self.materialize():
            raise ClosureExceedsCap(f"group of degree {self.degree} has more than {self.cap} elements")
        return self._elements

    @property
    def element_set(self) -> frozenset[Permutation]:
        self.elements
        return self._element_set

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self.element_set

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def fingerprint(self):
        return (self.degree, self.order, hash(self.elements))

    def same_group(self, other: PermGroup) -> bool:
        return (self.degree == other.degree and self.order == other.order
                and self.element_set == other.element_set)

    def orbit(self, point: int) -> frozenset[int]:
        return orbit(self, point)

    def orbits(self) -> list[frozenset[int]]:
        left = set(range(self.degree))
        out = []
        while left:
            o = orbit(self, min(left))
            out.append(o)
            left -= o
        return out

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(orbit(self, 0)) == self.degree

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def is_normal_in(self, other: PermGroup) -> bool:
        if not self.is_subgroup_of(other):
            return False
        return all(x.conjugate(a) in self for a in other.generators for x in self.generators)

    def subgroup(self, elements_or_gens: Iterable[Permutation], name: str | None = None) -> PermGroup:
        return PermGroup(self.degree, elements_or_gens, cap=self.cap, name=name)


def generate_group(degree: int, gens: Sequence[Permutation], cap: int = DEFAULT_CAP,
                   name: str | None = None) -> PermGroup:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if not gens:
        raise ValueError("need at least one generator")
    G = PermGroup(degree, gens, cap=cap, name=name)
    G.materialize()
    return G


def group_from_elements(degree: int, elements: Iterable[Permutation], name: str | None = None,
                        cap: int = DEFAULT_CAP) -> PermGroup:
    """Wrap an element set that is already known to be closed."""
    elems = sorted(set(elements))
    return PermGroup(degree, elems, cap=max(cap, len(elems)), name=name, elements=elems)


def orbit(G: PermGroup, point: int) -> frozenset[int]:
    if not 0 <= point < G.degree:
        raise ValueError(f"point {point} outside 0..{G.degree - 1}")
    seen = {point}
    stack = [point]
    gens = [g.images for g in G.generators]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def stabilizer(G: PermGroup, point: int | None = None, pointwise: Iterable[int] | None = None,
               setwise: Iterable[int] | None = None) -> PermGroup:
    """Point stabilizer, pointwise stabilizer or setwise stabilizer of a set.

    Exactly one of ``point``, ``pointwise`` and ``setwise`` must be given.
    """
    given = [x is not None for x in (point, pointwise, setwise)]
    if sum(given) != 1:
        raise ValueError("give exactly one of point, pointwise, setwise")
    if point is not None:
        elems = [g for g in G.elements if g.images[point] == point]
    elif pointwise is not None:
        pts = list(pointwise)
        elems = [g for g in G.elements if all(g.images[x] == x for x in pts)]
    else:
        pts = frozenset(setwise)
        elems = [g for g in G.elements if all(g.images[x] in pts for x in pts)]
    return group_from_elements(G.degree, elems)


@dataclass(frozen=True)
class BlockSystem:
    """A partition of ``0..n-1`` into ``m`` cells of equal size ``d``."""

    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...] = field(compare=False, repr=False)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> BlockSystem:
        cells = sorted(tuple(sorted(b)) for b in blocks)
        n = sum(len(c) for c in cells)
        if not cells:
            raise InvalidBlockSystem("empty partition")
        block_of = [-1] * n
        for j, c in enumerate(cells):
            if len(c) != len(cells[0]):
                raise InvalidBlockSystem("blocks of unequal size")
            for x in c:
                if not 0 <= x < n or block_of[x] != -1:
                    raise InvalidBlockSystem(f"cells overlap or leave the domain 0..{n - 1}")
                block_of[x] = j
        return cls(tuple(cells), tuple(block_of))

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def degree(self) -> int:
        return len(self.block_of)

    def is_trivial(self) -> bool:
        return self.num_blocks == 1 or self.block_size == 1

    def is_invariant(self, G: PermGroup) -> bool:
        if G.degree != self.degree:
            return False
        for g in G.generators:
            for cell in self.blocks:
                target = self.block_of[g.images[cell[0]]]
                if any(self.block_of[g.images[x]] != target for x in cell):
                    return False
        return True

    def block_permutation(self, g: Permutation) -> Permutation:
        return Permutation([self.block_of[g.images[c[0]]] for c in self.blocks], check=False)

    def refines(self, other: BlockSystem) -> bool:
        return all(len({other.block_of[x] for x in c}) == 1 for c in self.blocks)


def _minimal_block(G: PermGroup, alpha: int, beta: int) -> BlockSystem:
    n = G.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = [g.images for g in G.generators]
    pending = [(alpha, beta)]
    while pending:
        a, b = pending.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[rb] = ra
        for g in gens:
            pending.append((g[a], g[b]))
    cells: dict[int, list[int]] = {}
    for x in range(n):
        cells.setdefault(find(x), []).append(x)
    return BlockSystem.from_blocks(cells.values())


def minimal_block_systems(G: PermGroup) -> list[BlockSystem]:
    """Minimal block systems containing ``{0, beta}`` in one cell, for every ``beta``.

    Trivial partitions are dropped, so the list is empty exactly when ``G`` is
    primitive.  Sorted by number of blocks, then lexicographically.
    """
    if not G.is_transitive():
        raise NotTransitive(f"{G!r} is not transitive")
    found = set()
    for beta in range(1, G.degree):
        sigma = _minimal_block(G, 0, beta)
        if not sigma.is_trivial():
            found.add(sigma)
    return sorted(found, key=lambda s: (s.num_blocks, s.blocks))


def block_system_with(G: PermGroup, num_blocks: int) -> BlockSystem | None:
    """First minimal block system with the requested number of blocks, if any."""
    for sigma in minimal_block_systems(G):
        if sigma.num_blocks == num_blocks:
            return sigma
    return None


def singleton_blocks(n: int) -> BlockSystem:
    return BlockSystem.from_blocks([[i] for i in range(n)])


def blocks_action(G: PermGroup, sigma: BlockSystem) -> tuple[PermGroup, PermGroup]:
    """Induced group on the blocks and the kernel of that action."""
    if not sigma.is_invariant(G):
        raise InvalidBlockSystem("partition is not G-invariant")
    image = generate_group(sigma.num_blocks, [sigma.block_permutation(g) for g in G.generators],
                           cap=G.cap)
    block_of = sigma.block_of
    reps = [c[0] for c in sigma.blocks]
    kernel = [g for g in G.elements if all(block_of[g.images[r]] == j for j, r in enumerate(reps))]
    return image, group_from_elements(G.degree, kernel)


@dataclass(frozen=True)
class CayleyTable:
    """Multiplication table of an abstract group on ``0..k-1``.

    ``table[i][j]`` is the product of element ``i`` followed by element ``j``.
    """

    table: tuple[tuple[int, ...], ...]
    identity: int
    trusted: bool = False

    def __post_init__(self):
        k = len(self.table)
        full = tuple(range(k))
        for i, row in enumerate(self.table):
            if len(row) != k or tuple(sorted(row)) != full:
                raise InvalidCayleyTable(f"row {i} is not a permutation")
        for j in range(k):
            if tuple(sorted(self.table[i][j] for i in range(k))) != full:
                raise InvalidCayleyTable(f"column {j} is not a permutation")
        if any(self.table[self.identity][j] != j for j in range(k)):
            raise InvalidCayleyTable("identity row is wrong")
        if k <= ASSOCIATIVITY_CHECK_LIMIT:
            t = self.table
            for a in range(k):
                ta = t[a]
                for b in range(k):
                    tab = t[ta[b]]
                    tb = t[b]
                    for c in range(k):
                        if tab[c] != ta[tb[c]]:
                            raise InvalidCayleyTable(f"not associative at {(a, b, c)}")
            object.__setattr__(self, "trusted", False)
        else:
            object.__setattr__(self, "trusted", True)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)

    @classmethod
    def from_group(cls, G: PermGroup) -> CayleyTable:
        elems = G.elements
        index = {g: i for i, g in enumerate(elems)}
        table = tuple(tuple(index[x * y] for y in elems) for x in elems)
        return cls(table, index[G.identity])

    @classmethod
    def cyclic(cls, k: int) -> CayleyTable:
        return cls(tuple(tuple((i + j) % k for j in range(k)) for i in range(k)), 0)


def _subgroup_elements_of_table(X: CayleyTable, U: Iterable[int]) -> frozenset[int]:
    U = frozenset(U)
    if X.identity not in U or any(X.mul(a, X.inv(b)) not in U for a in U for b in U):
        raise NotASubgroup("index set is not a subgroup")
    return U


def coset_action(A: PermGroup | CayleyTable, U: PermGroup | Iterable, return_map: bool = False):
    """Right-multiplication action of ``A`` on the right cosets of ``U``.

    ``A`` is a materialized permutation group (then ``U`` is a subgroup or an
    iterable of its elements) or a Cayley table (then ``U`` is a set of
    indices).  The coset ``U`` itself is point 0.  With ``return_map`` the
    element-to-permutation homomorphism is returned as well.
    """
    if isinstance(A, CayleyTable):
        elems = list(range(A.order))
        mul = A.mul
        Uset = _subgroup_elements_of_table(A, U)
        ident = A.identity
        gens = elems
    else:
        elems = list(A.elements)
        mul = compose
        Uset = frozenset(U.elements if isinstance(U, PermGroup) else U)
        if not Uset <= A.element_set:
            raise NotASubgroup("U is not contained in A")
        if A.identity not in Uset or any(x * y not in Uset for x in Uset for y in Uset):
            raise NotASubgroup("U is not closed")
        ident = A.identity
        gens = list(A.generators)
    if len(elems) % len(Uset):
        raise NotASubgroup("|U| does not divide |A|")
    degree = len(elems) // len(Uset)
    if degree > COSET_DEGREE_CAP:
        raise ClosureExceedsCap(f"coset action of degree {degree} exceeds {COSET_DEGREE_CAP}")
    coset_of = {}
    reps = []
    for x in [ident] + elems:
        if x in coset_of:
            continue
        j = len(reps)
        reps.append(x)
        for u in Uset:
            coset_of[mul(u, x)] = j

    def act(a):
        return Permutation([coset_of[mul(r, a)] for r in reps], check=False)

    image = PermGroup(degree, [act(a) for a in gens])
    if return_map:
        return image, {a: act(a) for a in elems}
    return image


def wreath_imprimitive(K: PermGroup, P: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    """``K wr P`` in its imprimitive action on ``d * m`` points.

    Point ``(i, j)`` (``i`` in the ``K``-domain, ``j`` in the ``P``-domain) is
    numbered ``j * d + i``; block ``j`` is ``{j*d, ..., j*d + d - 1}``.
    """
    d, m = K.degree, P.degree
    n = d * m
    gens = []
    for k in K.generators:
        if k.is_identity():
            continue
        for j in range(m):
            img = list(range(n))
            for i in range(d):
                img[j * d + i] = j * d + k.images[i]
            gens.append(Permutation(img, check=False))
    for s in P.generators:
        if s.is_identity():
            continue
        gens.append(Permutation([s.images[j] * d + i for j in range(m) for i in range(d)],
                                check=False))
    return PermGroup(n, gens, cap=cap)


def wreath_element(base: Sequence[Permutation], top: Permutation) -> Permutation:
    """The element ``(k_0, ..., k_{m-1}) top``: apply ``k_j`` inside block ``j``, then move blocks."""
    m = top.degree
    d = base[0].degree
    return Permutation([top.images[j] * d + base[j].images[i] for j in range(m) for i in range(d)],
                       check=False)


def regular_reps(X: CayleyTable) -> tuple[PermGroup, PermGroup]:
    """Right regular ``x -> (w -> w x)`` and left ``x -> (w -> x^-1 w)`` representations."""
    k = X.order
    t = X.table
    R = [Permutation([t[w][x] for w in range(k)], check=False) for x in range(k)]
    L = [Permutation([t[X.inv(x)][w] for w in range(k)], check=False) for x in range(k)]
    return group_from_elements(k, R), group_from_elements(k, L)


def conjugation_orbits(A: PermGroup, N: PermGroup) -> list[frozenset[Permutation]]:
    """Orbits of ``N`` under ``x -> a^-1 x a`` for ``a`` in ``A``."""
    nset = N.element_set
    inv_gens = [(inverse(a), a) for a in A.generators]
    for ai, a in inv_gens:
        for x in N.generators:
            if ai * x * a not in nset:
                raise NotNormalized("A does not normalize N")
    left = set(nset)
    out = []
    for x in N.elements:
        if x not in left:
            continue
        orb = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for ai, a in inv_gens:
                z = ai * y * a
                if z not in orb:
                    orb.add(z)
                    stack.append(z)
        left -= orb
        out.append(frozenset(orb))
    return out


def conjugacy_classes(G: PermGroup) -> list[frozenset[Permutation]]:
    return conjugation_orbits(G, G)


# -- standard groups ---------------------------------------------------------


def symmetric_group(n: int, cap: int = DEFAULT_CAP) -> PermGroup:
    if n <= 1:
        return PermGroup(max(n, 1), [], cap=cap, name=f"Sym({n})")
    gens = [Permutation.from_cycles(n, [tuple(range(n))])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
    return PermGroup(n, gens, cap=cap, name=f"Sym({n})")


def alternating_group(n: int, cap: int = DEFAULT_CAP) -> PermGroup:
    if n <= 2:
        return PermGroup(max(n, 1), [], cap=cap, name=f"Alt({n})")
    gens = [Permutation.from_cycles(n, [(i, i + 1, i + 2)]) for i in range(n - 2)]
    return PermGroup(n, gens, cap=cap, name=f"Alt({n})")


def cyclic_group(n: int) -> PermGroup:
    """Regular cyclic group of degree ``n``."""
    return PermGroup(n, [Permutation.from_cycles(n, [tuple(range(n))])], name=f"C{n}")


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order ``2n`` on the ``n`` vertices of a polygon."""
    rot = Permutation.from_cycles(n, [tuple(range(n))])
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, refl], name=f"D{2 * n}")


def affine_line_group(p: int) -> PermGroup:
    """``AGL(1, p)``: the maps ``x -> m*x + a`` of ``Z/p`` with ``m`` a unit (``p`` prime)."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not a prime")
    shift = Permutation([(x + 1) % p for x in range(p)])
    if p == 2:
        return PermGroup(2, [shift], name="AGL(1,2)")
    # a primitive root generates the multiplier group
    root = next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1
                                               for q in range(2, p) if (p - 1) % q == 0
                                               and all(q % r for r in range(2, q))))
    scale = Permutation([(root * x) % p for x in range(p)])
    return PermGroup(p, [shift, scale], name=f"AGL(1,{p})")


def regular_representation(G: PermGroup, name: str | None = None) -> PermGroup:
    """Right regular action of ``G`` on its own elements."""
    R = coset_action(G, [G.identity])
    R.name = name
    return R


def action_on_subsets(G: PermGroup, k: int, name: str | None = None) -> PermGroup:
    """Induced action on the ``k``-subsets of the domain, in lexicographic order."""
    subsets = list(itertools.combinations(range(G.degree), k))
    index = {s: i for i, s in enumerate(subsets)}
    gens = [Permutation([index[tuple(sorted(g.images[x] for x in s))] for s in subsets], check=False)
            for g in G.generators]
    return PermGroup(len(subsets), gens, cap=G.cap, name=name)


def alt4_on_pairs() -> PermGroup:
    """``Alt(4)`` on the six 2-subsets of ``{0,1,2,3}``, built as a coset action."""
    A4 = alternating_group(4)
    U = generate_group(4, [Permutation.from_cycles(4, [(0, 1), (2, 3)])])
    G = coset_action(A4, U)
    G.name = "Alt(4) on 2-subsets"
    return G
