"""Integer partitions and irreducible characters of the symmetric groups.

Characters are computed with the Murnaghan-Nakayama rule on beta-sets
(first-column hook lengths), memoized per ``(shape, class)`` pair.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, Iterator, Optional, Tuple


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    The constructor accepts the parts in any order and sorts them, so
    ``Partition([1, 3, 1]) == Partition([3, 1, 1])``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = sorted((int(p) for p in parts), reverse=True)
        if parts and parts[-1] < 1:
            raise ValueError(f"partition parts must be positive, got {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> Dict[int, int]:
        """Map part -> number of times it occurs."""
        return dict(Counter(self))

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def __add__(self, other):
        # multiset union; p_mu * p_nu = p_(mu u nu)
        return Partition(tuple.__add__(self, other))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


EMPTY = Partition()


def _partitions_bounded(d: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions_bounded(d - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(d: int) -> Tuple[Partition, ...]:
    """All partitions of ``d`` in reverse-lexicographic order.

    >>> [list(p) for p in enumerate_partitions(3)]
    [[3], [2, 1], [1, 1, 1]]
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    return tuple(Partition(p) for p in _partitions_bounded(d, d))


def partitions_up_to(D: int) -> Iterator[Partition]:
    for d in range(D + 1):
        yield from enumerate_partitions(d)


def z_of(mu: Partition) -> int:
    """``prod_i m_i! i^m_i``, the order of the centralizer of a permutation of type mu."""
    z = 1
    for part, mult in Counter(mu).items():
        z *= math.factorial(mult) * part**mult
    return z


def class_size(mu: Partition) -> int:
    return math.factorial(sum(mu)) // z_of(mu)


def dim_of(lam: Partition) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook-length formula)."""
    lam = Partition(lam)
    conj = lam.conjugate()
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(lam.size) // hooks


def _beta_set(lam: Tuple[int, ...]) -> Tuple[int, ...]:
    n = len(lam)
    return tuple(part + n - 1 - i for i, part in enumerate(lam))


def _from_beta(beta: Iterable[int]) -> Tuple[int, ...]:
    beads = sorted(beta, reverse=True)
    n = len(beads)
    return tuple(p for p in (b - (n - 1 - i) for i, b in enumerate(beads)) if p > 0)


@lru_cache(maxsize=None)
def _mn(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    beta = _beta_set(lam)
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - k
        if target < 0 or target in occupied:
            continue
        # leg length of the rim hook = beads strictly between target and b
        height = sum(1 for c in beta if target < c < b)
        moved = [c for c in beta if c != b] + [target]
        value = _mn(_from_beta(moved), rest)
        total += -value if height % 2 else value
    return total


def character(lam: Partition, mu: Partition) -> int:
    """Irreducible character of S_d labelled by ``lam`` at the class of cycle type ``mu``."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{list(lam)}| != |{list(mu)}|")
    return _mn(tuple(lam), tuple(mu))


@dataclass(frozen=True)
class CharacterTable:
    degree: int
    partitions: Tuple[Partition, ...]
    entries: Dict[Tuple[Partition, Partition], int] = field(repr=False)
    dims: Dict[Partition, int] = field(repr=False)

    def __call__(self, lam: Partition, mu: Partition) -> int:
        return self.entries[Partition(lam), Partition(mu)]

    def to_json(self) -> dict:
        parts = [list(p) for p in self.partitions]
        rows = [[str(self.entries[lam, mu]) for mu in self.partitions] for lam in self.partitions]
        return {"degree": self.degree, "partitions": parts, "values": rows}

    @classmethod
    def from_json(cls, data: dict) -> "CharacterTable":
        parts = tuple(Partition(p) for p in data["partitions"])
        if parts != enumerate_partitions(data["degree"]):
            raise ValueError("cached character table is not in canonical order")
        entries = {
            (lam, mu): int(v)
            for lam, row in zip(parts, data["values"])
            for mu, v in zip(parts, row)
        }
        ones = Partition([1] * data["degree"])
        dims = {lam: entries[lam, ones] for lam in parts}
        return cls(data["degree"], parts, entries, dims)


def _compute_table(d: int) -> CharacterTable:
    parts = enumerate_partitions(d)
    entries = {(lam, mu): character(lam, mu) for lam in parts for mu in parts}
    dims = {lam: dim_of(lam) for lam in parts}
    return CharacterTable(d, parts, entries, dims)


def _atomic_write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def character_table(d: int, cache_dir: Optional[os.PathLike] = None) -> CharacterTable:
    """Character table of S_d, read from / written to ``chartab_<d>.json`` when a cache dir is given."""
    if cache_dir is None:
        return _compute_table(d)
    path = Path(cache_dir) / f"chartab_{d}.json"
    if path.exists():
        with open(path) as fh:
            return CharacterTable.from_json(json.load(fh))
    table = _compute_table(d)
    _atomic_write_json(path, table.to_json())
    return table
