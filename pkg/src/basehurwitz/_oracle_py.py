"""Pure-Python monodromy-tuple counter (fallback for the compiled kernel).

Permutations are tuples ``p`` acting by ``i -> p[i]``; composition is
``(p o q)[i] = p[q[i]]``.  The counted relation is

    s = t_r ... t_1 [a_1, b_1] ... [a_h, b_h],   [a, b] = a b a^-1 b^-1,

i.e. ``t_1 ... t_r s = prod [a_i, b_i]``.
"""
from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Dict, Sequence, Tuple

Perm = Tuple[int, ...]


def _compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def _inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def cycle_type(p: Perm) -> Tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        n = 0
        while not seen[i]:
            seen[i] = True
            i = p[i]
            n += 1
        if n:
            lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def is_transitive(d: int, gens: Sequence[Perm]) -> bool:
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in gens:
        for i, j in enumerate(g):
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    return len({find(i) for i in range(d)}) <= 1


def histogram(d, h, r, connected, perms, transpositions) -> Dict[Tuple[int, ...], int]:
    """Map cycle type of s -> number of tuples (optionally transitive only)."""
    ident = tuple(range(d))
    inverses = {p: _inverse(p) for p in perms}
    hist: Counter = Counter()
    for handles in product(perms, repeat=2 * h):
        comm = ident
        for a, b in zip(handles[::2], handles[1::2]):
            c = _compose(_compose(a, b), _compose(inverses[a], inverses[b]))
            comm = _compose(comm, c)
        for ts in product(transpositions, repeat=r):
            if connected and not is_transitive(d, handles + ts):
                continue
            s = comm
            for t in ts:
                s = _compose(t, s)
            hist[cycle_type(s)] += 1
    return dict(hist)
