"""Counting classes under an automorphism action, for one factor and for direct powers.

For ``T^k`` with automorphisms ``Aut(T) wr Sym(k)``, a class is a multiset of
``k`` classes of ``T``, which gives ``binomial(t + k - 1, k)``.  The brute-force
count below walks the orbits of that wreath action on all ``k``-tuples and is
used as an independent check of the formula.
"""

from __future__ import annotations

import math

from .errors import CapExceeded
from .perm import PermGroup, conjugation_orbits, inverse

POWER_STATE_CAP = 10 ** 7


def aut_class_count(N: PermGroup, A: PermGroup) -> int:
    """Number of orbits of ``A`` acting on ``N`` by conjugation."""
    return len(conjugation_orbits(A, N))


def stars_and_bars(t: int, kappa: int) -> int:
    if t < 1 or kappa < 1:
        raise ValueError("t and kappa must be positive")
    return math.comb(t + kappa - 1, kappa)


def brute_force_power_classes(T: PermGroup, aut: PermGroup, kappa: int) -> int:
    """Orbits of ``aut wr Sym(kappa)`` on ``T^kappa``, by walking every orbit.

    Generators of the wreath action: conjugation by a generator of ``aut`` in a
    single coordinate, a swap of the first two coordinates and a cyclic shift.
    Tuples are encoded as integers in base ``|T|``.
    """
    if kappa < 1:
        raise ValueError("kappa must be positive")
    elems = T.elements
    m = len(elems)
    states = m ** kappa
    if states > POWER_STATE_CAP:
        raise CapExceeded(f"{states} tuples exceed the cap {POWER_STATE_CAP}")
    index = {x: i for i, x in enumerate(elems)}
    conj = []
    for a in aut.generators:
        ai = inverse(a)
        images = [index.get(ai * x * a) for x in elems]
        if None in images:
            raise ValueError("aut does not normalize T")
        conj.append(images)
    powers = [m ** i for i in range(kappa)]

    def digits(code):
        return [(code // powers[i]) % m for i in range(kappa)]

    def encode(ds):
        return sum(d * powers[i] for i, d in enumerate(ds))

    def neighbours(code):
        ds = digits(code)
        for c in conj:
            for i in range(kappa):
                moved = ds[:]
                moved[i] = c[ds[i]]
                yield encode(moved)
        if kappa > 1:
            swapped = ds[:]
            swapped[0], swapped[1] = swapped[1], swapped[0]
            yield encode(swapped)
            yield encode(ds[1:] + ds[:1])

    seen = bytearray(states)
    orbits = 0
    for start in range(states):
        if seen[start]:
            continue
        orbits += 1
        seen[start] = 1
        stack = [start]
        while stack:
            code = stack.pop()
            for nxt in neighbours(code):
                if not seen[nxt]:
                    seen[nxt] = 1
                    stack.append(nxt)
    return orbits
