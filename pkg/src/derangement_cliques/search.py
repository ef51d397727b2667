"""Randomized search for transitive groups of degree ``6p`` without 4-cliques.

The ambient is ``AGL(1,p) wr Alt(4)`` acting on ``6p`` points, with ``Alt(4)``
in its action on the six 2-subsets.  An element is modelled as an affine map
of ``F_p^6``: point ``(i, j)`` goes to ``(m_j * i + a_j, s(j))``.  Working in
this model lets a restart compute the group order and its translation
subgroup with small linear algebra before any permutation closure happens.

A restart draws

* lifts of the two ``Alt(4)`` generators whose multiplier parts generate a
  small group (the lift table is precomputed; the 3-cycle lift is normalized
  by diagonal conjugation so that one multiplier per cycle is free),
* random offsets for the lifts, and occasionally a scalar or diagonal
  multiplier as an extra base element,
* one translation vector taken from the null space of a random element of
  the group algebra (the usual way to find small submodules), and

then closes the group, filters for transitivity and checks for 4-cliques.

A certified prune drops groups whose translation subgroup contains a vector
with no zero coordinate: such a translation is a derangement fixing every
block of the 3-block system, and together with a block 3-cycle lift ``c`` it
spans the clique ``{1, c, c^2, k}``.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .derangement import DerangementGraph, has_kclique
from .groupfile import GroupRecord
from .perm import PermGroup, Permutation, alt4_on_pairs, minimal_block_systems

SEARCH_ORDER_CAP = 5_000
LIFT_LINEAR_CAP = 96
LINEAR_GROUP_CAP = 800
SUBMODULE_TRIES = 8

_TOP = tuple(tuple(g.images) for g in alt4_on_pairs().generators)
_ID6 = tuple(range(6))


def _check_prime(p: int):
    if p not in (3, 5):
        raise ValueError(f"the search covers p = 3 and p = 5, not {p}")


# -- affine model ------------------------------------------------------------


def _linear_mul(f, g, p):
    """Multiplier/coordinate part of ``f`` followed by ``g``."""
    s, m = f
    t, n = g
    return tuple(t[s[j]] for j in range(6)), tuple(n[s[j]] * m[j] % p for j in range(6))


def _affine_mul(f, g, p):
    s, m, a = f
    t, n, b = g
    return (tuple(t[s[j]] for j in range(6)),
            tuple(n[s[j]] * m[j] % p for j in range(6)),
            tuple((n[s[j]] * a[j] + b[s[j]]) % p for j in range(6)))


def _act(L, x, p):
    """Image of a translation vector under conjugation by the linear part ``L``."""
    s, m = L
    y = [0] * 6
    for j in range(6):
        y[s[j]] = m[j] * x[j] % p
    return tuple(y)


def _linear_closure(gens, p, cap):
    ident = (_ID6, (1,) * 6)
    seen = {ident}
    stack = [ident]
    while stack:
        f = stack.pop()
        for g in gens:
            h = _linear_mul(f, g, p)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    return None
                stack.append(h)
    return sorted(seen)


class _Span:
    """Reduced row echelon basis of a subspace of ``F_p^6``."""

    def __init__(self, p):
        self.p = p
        self.rows: dict[int, tuple[int, ...]] = {}

    def reduce(self, x):
        p = self.p
        x = list(x)
        for piv, r in self.rows.items():
            c = x[piv]
            if c:
                x = [(u - c * v) % p for u, v in zip(x, r)]
        return tuple(x)

    def add(self, x) -> bool:
        p = self.p
        x = self.reduce(x)
        if not any(x):
            return False
        piv = next(i for i, u in enumerate(x) if u)
        inv = pow(x[piv], -1, p)
        x = tuple(u * inv % p for u in x)
        for k, r in list(self.rows.items()):
            c = r[piv]
            if c:
                self.rows[k] = tuple((u - c * v) % p for u, v in zip(r, x))
        self.rows[piv] = x
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def vectors(self):
        basis = list(self.rows.values())
        for coeffs in itertools.product(range(self.p), repeat=len(basis)):
            yield tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) % self.p for j in range(6))


def _spin(W: _Span, x, lin_gens, p):
    """Add the submodule generated by ``x`` to ``W``."""
    stack = [x]
    while stack:
        v = stack.pop()
        if W.add(v):
            stack.extend(_act(L, v, p) for L in lin_gens)


def _affine_structure(gens, translations, p, cap=LINEAR_GROUP_CAP):
    """``(|linear part|, translation subspace)`` of the group, or ``None`` when too big.

    Walks the linear quotient, keeping offsets modulo the translation subspace
    found so far; two paths to the same linear element with different offsets
    contribute their difference as a new translation.
    """
    lin_gens = [g[:2] for g in gens]
    W = _Span(p)
    for v in translations:
        _spin(W, v, lin_gens, p)
    ident = (_ID6, (1,) * 6, (0,) * 6)
    while True:
        seen = {ident[:2]: ident[2]}
        stack = [ident]
        grown = False
        while stack and not grown:
            f = stack.pop()
            for g in gens:
                h = _affine_mul(f, g, p)
                key = h[:2]
                a = W.reduce(h[2])
                if key in seen:
                    diff = tuple((u - v) % p for u, v in zip(a, seen[key]))
                    if any(diff):
                        _spin(W, diff, lin_gens, p)
                        grown = True
                        break
                else:
                    seen[key] = a
                    if len(seen) > cap:
                        return None
                    stack.append((h[0], h[1], a))
        if not grown:
            return len(seen), W


def _nullspace(M, p):
    A = [list(r) for r in M]
    n = len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, len(A)) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [u * inv % p for u in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(u - f * v) % p for u, v in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [0] * n
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = -A[i][free] % p
        basis.append(v)
    return basis


def _matrix(L, p):
    s, m = L
    M = [[0] * 6 for _ in range(6)]
    for j in range(6):
        M[s[j]][j] = m[j] % p
    return M


def _submodule_vector(linear, p, rng):
    """A vector from the null space of ``a - lambda`` for a random group-algebra element ``a``."""
    for _ in range(SUBMODULE_TRIES):
        a = [[0] * 6 for _ in range(6)]
        for L in rng.sample(linear, min(3, len(linear))):
            c = rng.randrange(1, p)
            M = _matrix(L, p)
            a = [[(u + c * v) % p for u, v in zip(ra, rm)] for ra, rm in zip(a, M)]
        lam = rng.randrange(p)
        for i in range(6):
            a[i][i] = (a[i][i] - lam) % p
        basis = _nullspace(a, p)
        if basis:
            v = [0] * 6
            for b in basis:
                c = rng.randrange(p)
                v = [(u + c * w) % p for u, w in zip(v, b)]
            if any(v):
                return tuple(v)
    return None


def affine_to_permutation(f, p) -> Permutation:
    s, m, a = f
    return Permutation([s[j] * p + (m[j] * i + a[j]) % p for j in range(6) for i in range(p)],
                       check=False)


@lru_cache(maxsize=None)
def small_lifts(p: int) -> tuple:
    """Multiplier patterns ``(m_c, m_t)`` for the two top generators with a small linear part.

    The first generator is a product of two 3-cycles on the six coordinates;
    conjugating by a diagonal element makes all multipliers but one per cycle
    equal to 1, so only those two are enumerated.
    """
    _check_prime(p)
    cycles = Permutation(_TOP[0]).cycles()
    free = [c[0] for c in cycles]
    units = range(1, p)
    out = []
    for u, w in itertools.product(units, repeat=2):
        mc = [1] * 6
        mc[free[0]], mc[free[1]] = u, w
        mc = tuple(mc)
        for mt in itertools.product(units, repeat=6):
            if _linear_closure([(_TOP[0], mc), (_TOP[1], mt)], p, LIFT_LINEAR_CAP) is not None:
                out.append((mc, mt))
    return tuple(out)


def kernel_derangement_vector(W: _Span):
    """A translation with every coordinate non-zero, if the subspace has one."""
    for v in W.vectors():
        if all(v):
            return v
    return None


# -- restarts ----------------------------------------------------------------


@dataclass
class SearchStats:
    restarts: int = 0
    outcomes: Counter = field(default_factory=Counter)

    def merge(self, other: SearchStats):
        self.restarts += other.restarts
        self.outcomes.update(other.outcomes)


def _draw(p, rng):
    mc, mt = rng.choice(small_lifts(p))
    units = list(range(1, p))
    zero = rng.random() < 0.5
    gens = []
    for s, m in zip(_TOP, (mc, mt)):
        a = (0,) * 6 if zero else tuple(rng.randrange(p) for _ in range(6))
        gens.append((s, m, a))
    if rng.random() < 0.3:
        lam = rng.choice(units)
        gens.append((_ID6, (lam,) * 6, (0,) * 6))
    if rng.random() < 0.2:
        gens.append((_ID6, tuple(rng.choice(units) for _ in range(6)), (0,) * 6))
    return gens


def _restart(p, seed, index, cap):
    """One restart: ``(outcome, group or None)``."""
    rng = random.Random(f"{seed}:{index}")
    gens = _draw(p, rng)
    linear = _linear_closure([g[:2] for g in gens], p, LINEAR_GROUP_CAP)
    if linear is None:
        return "linear-too-big", None
    v = _submodule_vector(linear, p, rng)
    translations = [v] if v is not None else []
    shape = _affine_structure(gens, translations, p)
    if shape is None:
        return "linear-too-big", None
    q, W = shape
    order = q * p ** W.dim
    if order > cap:
        return "order-too-big", None
    if W.dim == 0:
        return "intransitive", None
    if kernel_derangement_vector(W) is not None:
        return "kernel-derangement", None
    perms = [affine_to_permutation(g, p) for g in gens]
    perms += [affine_to_permutation((_ID6, (1,) * 6, t), p) for t in translations]
    G = PermGroup(6 * p, perms, cap=cap)
    if not G.is_transitive():
        return "intransitive", None
    if G.order != order:
        raise AssertionError(f"affine model predicted order {order}, closure gave {G.order}")
    return "candidate", G


def cheap_fingerprint(G: PermGroup, graph: DerangementGraph | None = None) -> tuple:
    graph = graph or DerangementGraph(G)
    cycle_types = tuple(sorted(Counter(g.cycle_type() for g in G.elements).items()))
    blocks = tuple(sorted((s.num_blocks, s.block_size) for s in minimal_block_systems(G)))
    return (G.order, graph.valency, cycle_types, blocks)


def _scan(p, seed, indices, cap, skip=()):
    """Run restarts; return hits as ``(index, group, fingerprint)`` plus stats."""
    stats = SearchStats()
    hits = []
    seen = set(skip)
    for i in indices:
        stats.restarts += 1
        outcome, G = _restart(p, seed, i, cap)
        if G is None:
            stats.outcomes[outcome] += 1
            continue
        graph = DerangementGraph(G)
        fp = cheap_fingerprint(G, graph)
        if fp in seen:
            stats.outcomes["duplicate"] += 1
            continue
        if has_kclique(graph, 4) is not None:
            stats.outcomes["has-4-clique"] += 1
            continue
        if has_kclique(graph, 3) is None:
            raise AssertionError("transitive group without a triangle")
        stats.outcomes["exception"] += 1
        seen.add(fp)
        hits.append((i, tuple(G.generators), fp))
    return hits, stats


def _scan_chunk(args):
    p, seed, start, stop, cap = args
    return _scan(p, seed, range(start, stop), cap)


def search_exceptional(p: int, budget: int, seed: int = 0, cap: int = SEARCH_ORDER_CAP,
                       workers: int = 1, stats: SearchStats | None = None) -> list[GroupRecord]:
    """Randomized search for degree-``6p`` transitive groups with no 4-clique.

    Records are deduplicated by the invariant fingerprint (order, number of
    derangements, clique number 3, cycle-type multiset, block-system profile)
    and listed in the order of the restart that first found them, so the
    result does not depend on ``workers``.
    """
    _check_prime(p)
    if budget < 0:
        raise ValueError("budget must be non-negative")
    stats = stats if stats is not None else SearchStats()
    if budget == 0:
        return []
    small_lifts(p)
    if workers <= 1:
        hits, st = _scan(p, seed, range(budget), cap)
        stats.merge(st)
    else:
        step = -(-budget // (workers * 4))
        chunks = [(p, seed, s, min(s + step, budget), cap) for s in range(0, budget, step)]
        hits = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for h, st in pool.map(_scan_chunk, chunks):
                hits.extend(h)
                stats.merge(st)
        hits.sort(key=lambda h: h[0])
    records = []
    seen = set()
    for index, gens, fp in hits:
        if fp in seen:
            continue
        seen.add(fp)
        order, valency = fp[0], fp[1]
        tags = (("order", str(order)), ("transitive", "true"), ("exceptional", "true"),
                ("omega", "3"), ("derangements", str(valency)),
                ("search", f"p={p},seed={seed},restart={index}"))
        name = f"exceptional_deg{6 * p}_order{order}_{len(records) + 1}"
        records.append(GroupRecord(name, 6 * p, gens, tags))
    return records
