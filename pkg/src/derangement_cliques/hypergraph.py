"""(a,b)-hypergraphs: edges are partitions of ``ab``-subsets into ``b`` parts of size ``a``.

A colouring is bad on an edge when every part of the edge is monochromatic
(parts may carry different colours).  Vertices are ``0..n-1`` and colours are
``1..c``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ActionDoesNotPreserveEdges, CapExceeded, InvalidHypergraph, ParseError
from .perm import PermGroup, Permutation

EXACT_VERTEX_CAP = 32
RANDOM_TRIALS = 1_000_000
BATCH = 1 << 14

Edge = tuple[tuple[int, ...], ...]


def canonical_edge(parts: Iterable[Iterable[int]]) -> Edge:
    return tuple(sorted(tuple(sorted(p)) for p in parts))


@dataclass(frozen=True)
class ABHypergraph:
    n: int
    a: int
    b: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.a < 2 or self.b < 1:
            raise InvalidHypergraph(f"need a >= 2 and b >= 1, got a={self.a}, b={self.b}")
        canon = []
        for e in self.edges:
            ce = canonical_edge(e)
            if len(ce) != self.b or any(len(p) != self.a for p in ce):
                raise InvalidHypergraph(f"edge {e} is not {self.b} parts of size {self.a}")
            support = [x for p in ce for x in p]
            if len(set(support)) != len(support):
                raise InvalidHypergraph(f"edge {e} has overlapping parts")
            if any(not 0 <= x < self.n for x in support):
                raise InvalidHypergraph(f"edge {e} leaves the vertex set 0..{self.n - 1}")
            canon.append(ce)
        canon = sorted(set(canon))
        object.__setattr__(self, "edges", tuple(canon))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[Iterable[int]]],
                   a: int | None = None, b: int | None = None) -> ABHypergraph:
        edges = [canonical_edge(e) for e in edges]
        if edges:
            a = a if a is not None else len(edges[0][0])
            b = b if b is not None else len(edges[0])
        return cls(n, a if a is not None else 2, b if b is not None else 1, tuple(edges))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def __len__(self):
        return len(self.edges)


def complete_graph(n: int) -> ABHypergraph:
    """``K_n`` as a (2,1)-hypergraph."""
    return ABHypergraph(n, 2, 1, tuple(((i, j),) for i, j in itertools.combinations(range(n), 2)))


# -- colouring ---------------------------------------------------------------


def _check_colouring(H: ABHypergraph, colouring: Sequence[int]):
    if len(colouring) != H.n or any(c is None for c in colouring):
        raise ValueError("colouring must assign a colour to every vertex")


def is_valid_colouring(H: ABHypergraph, colouring: Sequence[int]) -> bool:
    _check_colouring(H, colouring)
    for e in H.edges:
        if all(len({colouring[x] for x in part}) == 1 for part in e):
            return False
    return True


def _part_array(H: ABHypergraph) -> np.ndarray:
    return np.array(H.edges, dtype=np.intp).reshape(len(H.edges), H.b, H.a)


def random_colouring_search(H: ABHypergraph, c: int, trials: int = RANDOM_TRIALS,
                            seed: int = 0) -> tuple[int, ...] | None:
    """First valid colouring among ``trials`` uniform maps ``V -> {1..c}``, or ``None``.

    Maps are drawn in batches from one seeded generator, so the result only
    depends on ``seed`` (and ``trials``).
    """
    if c < 1:
        raise ValueError("need at least one colour")
    rng = np.random.default_rng(seed)
    if not H.edges:
        return (1,) * H.n if trials > 0 else None
    parts = _part_array(H)
    first = parts[:, :, :1]
    rest = parts[:, :, 1:]
    done = 0
    while done < trials:
        size = min(BATCH, trials - done)
        X = rng.integers(0, c, size=(size, H.n), dtype=np.int16)
        mono = (X[:, rest] == X[:, first]).all(axis=-1)   # (size, edges, b)
        bad = mono.all(axis=-1).any(axis=-1)
        good = np.flatnonzero(~bad)
        if good.size:
            return tuple(int(v) + 1 for v in X[good[0]])
        done += size
    return None


def find_colouring(H: ABHypergraph, c: int) -> tuple[int, ...] | None:
    """A valid colouring with at most ``c`` colours by backtracking, or ``None``.

    A vertex may take colour ``k + 1`` only when colours ``1..k`` are in use.
    """
    if H.n > EXACT_VERTEX_CAP:
        raise CapExceeded(f"exact colouring refused for {H.n} > {EXACT_VERTEX_CAP} vertices")
    # edges are checked at the vertex that completes them
    closing: list[list[Edge]] = [[] for _ in range(H.n)]
    for e in H.edges:
        closing[max(x for p in e for x in p)].append(e)
    col = [0] * H.n

    def ok(v):
        for e in closing[v]:
            if all(len({col[x] for x in part}) == 1 for part in e):
                return False
        return True

    def rec(v, used):
        if v == H.n:
            return True
        for k in range(1, min(used + 1, c) + 1):
            col[v] = k
            if ok(v) and rec(v + 1, max(used, k)):
                return True
        col[v] = 0
        return False

    if H.n == 0:
        return ()
    return tuple(col) if rec(0, 0) else None


def exact_chromatic_number(H: ABHypergraph) -> int:
    if H.n > EXACT_VERTEX_CAP:
        raise CapExceeded(f"exact colouring refused for {H.n} > {EXACT_VERTEX_CAP} vertices")
    if H.n == 0:
        return 0
    for c in range(1, H.n + 1):
        if find_colouring(H, c) is not None:
            return c
    raise AssertionError("a colouring with n colours always exists when a >= 2")


# -- group actions -----------------------------------------------------------


def edge_image(g: Permutation, e: Edge) -> Edge:
    return canonical_edge([g.images[x] for x in p] for p in e)


def edge_orbit(G: PermGroup, e: Edge) -> set[Edge]:
    orbit = {e}
    stack = [e]
    while stack:
        f = stack.pop()
        for g in G.generators:
            h = edge_image(g, f)
            if h not in orbit:
                orbit.add(h)
                stack.append(h)
    return orbit


def _check_action(G: PermGroup, H: ABHypergraph):
    if G.degree != H.n:
        raise ActionDoesNotPreserveEdges(f"group degree {G.degree} differs from {H.n} vertices")
    E = set(H.edges)
    for g in G.generators:
        for e in H.edges:
            if edge_image(g, e) not in E:
                raise ActionDoesNotPreserveEdges(f"{g.cycle_string()} maps {e} outside the edge set")


def is_special(G: PermGroup, H: ABHypergraph) -> bool:
    """Vertex- and edge-transitive, edge stabilizers transitive on the parts of
    the edge, and on its support unless ``a == 2``.

    An edgeless hypergraph is never special.
    """
    _check_action(G, H)
    if not H.edges or not G.is_transitive():
        return False
    e = H.edges[0]
    if len(edge_orbit(G, e)) != len(H.edges):
        return False
    stab = [g for g in G.elements if edge_image(g, e) == e]
    part_index = {p: i for i, p in enumerate(e)}
    reached = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for g in stab:
            j = part_index[tuple(sorted(g.images[x] for x in e[i]))]
            if j not in reached:
                reached.add(j)
                stack.append(j)
    if len(reached) != H.b:
        return False
    if H.a == 2:
        return True
    support = {x for p in e for x in p}
    start = e[0][0]
    return {g.images[start] for g in stab} == support


def _set_partitions(items: Sequence[int], a: int):
    """Partitions of ``items`` into blocks of size ``a``, each listed once."""
    if not items:
        yield ()
        return
    head, rest = items[0], items[1:]
    for others in itertools.combinations(rest, a - 1):
        block = (head,) + others
        left = [x for x in rest if x not in others]
        for tail in _set_partitions(left, a):
            yield (block,) + tail


def enumerate_special_hypergraphs(G: PermGroup, a: int, b: int) -> list[ABHypergraph]:
    """All special (a,b)-hypergraphs whose edge set is one ``G``-orbit.

    Seeds run over ``ab``-subsets in lexicographic order and their canonical
    partitions; every orbit is generated once.
    """
    n = G.degree
    if a < 2 or b < 1:
        raise InvalidHypergraph(f"need a >= 2 and b >= 1, got a={a}, b={b}")
    if a * b > n:
        return []
    covered: set[Edge] = set()
    out = []
    for subset in itertools.combinations(range(n), a * b):
        for parts in _set_partitions(subset, a):
            e = canonical_edge(parts)
            if e in covered:
                continue
            orbit = edge_orbit(G, e)
            covered |= orbit
            H = ABHypergraph(n, a, b, tuple(orbit))
            if is_special(G, H):
                out.append(H)
    return out


def point_stabilizer_fixes_edge(stabilizer: PermGroup, H: ABHypergraph) -> Edge | None:
    """First edge (canonical order) fixed as a partition by the whole stabilizer."""
    for e in H.edges:
        if all(edge_image(g, e) == e for g in stabilizer.generators):
            return e
    return None


# -- text format -------------------------------------------------------------


def to_text(H: ABHypergraph) -> str:
    lines = [f"vertices: {H.n}"]
    for e in H.edges:
        lines.append("edge: [" + ",".join("[" + ",".join(map(str, p)) + "]" for p in e) + "]")
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> ABHypergraph:
    """Read the ``vertices:`` / ``edge:`` format; part size and count come from the edges."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip()
        if key == "vertices":
            try:
                n = int(value)
            except ValueError:
                raise ParseError(f"vertex count is not an integer: {value.strip()!r}", lineno) from None
        elif key == "edge":
            try:
                parts = json.loads(value)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad edge: {exc.msg}", lineno) from None
            if not (isinstance(parts, list) and all(isinstance(p, list) for p in parts)):
                raise ParseError("edge must be a list of lists", lineno)
            edges.append(parts)
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if n is None:
        raise ParseError("missing vertices line")
    return ABHypergraph.from_edges(n, edges)
