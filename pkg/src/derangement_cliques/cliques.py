"""Maximum clique on bitset graphs (branch and bound with greedy colouring bound).

Graphs are lists of Python ints: bit ``j`` of ``adj[i]`` is set when ``i`` and
``j`` are adjacent.  Vertex order is the caller's; the search is deterministic.
"""

from __future__ import annotations


def _lsb(x: int) -> int:
    return (x & -x).bit_length() - 1


def _colour_sort(P: int, adj: list[int]) -> tuple[list[int], list[int]]:
    order, bounds = [], []
    colour = 0
    U = P
    while U:
        colour += 1
        Q = U
        while Q:
            v = _lsb(Q)
            bit = 1 << v
            Q &= ~bit & ~adj[v]
            U &= ~bit
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(adj: list[int], candidates: int | None = None, lower: int = 0,
               upper: int | None = None) -> list[int]:
    """A maximum clique inside ``candidates``, or ``[]`` if none beats ``lower``.

    ``lower`` is the size of an incumbent found elsewhere: only strictly larger
    cliques are reported.  ``upper`` is a known bound that allows an early stop.
    """
    if candidates is None:
        candidates = (1 << len(adj)) - 1
    best: list[int] = []
    best_size = [lower]
    R: list[int] = []

    def expand(P: int) -> bool:
        order, bounds = _colour_sort(P, adj)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + bounds[i] <= best_size[0]:
                return False
            v = order[i]
            R.append(v)
            newP = P & adj[v]
            if newP:
                if expand(newP):
                    return True
            elif len(R) > best_size[0]:
                best[:] = R
                best_size[0] = len(R)
                if upper is not None and best_size[0] >= upper:
                    return True
            R.pop()
            P &= ~(1 << v)
        return False

    if candidates:
        expand(candidates)
    return list(best)


def find_clique(adj: list[int], candidates: int, k: int) -> list[int] | None:
    """Any clique of size ``k`` inside ``candidates`` (plain backtracking)."""
    if k <= 0:
        return []

    def rec(P: int, need: int) -> list[int] | None:
        if need == 0:
            return []
        if P.bit_count() < need:
            return None
        while P:
            v = _lsb(P)
            P &= ~(1 << v)
            sub = rec(P & adj[v], need - 1)
            if sub is not None:
                return [v] + sub
        return None

    return rec(candidates, k)


def complement(adj: list[int]) -> list[int]:
    n = len(adj)
    full = (1 << n) - 1
    return [(~a & full) & ~(1 << i) for i, a in enumerate(adj)]
