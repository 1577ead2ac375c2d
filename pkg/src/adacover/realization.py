"""Partial realizations: finite maps from item ids to observed outcomes."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Tuple, Union

Pair = Tuple[int, int]


class PartialRealization:
    """Immutable, hashable map ``item -> outcome`` kept in item-id order.

    The empty realization is ``PartialRealization()``; a full realization is
    one whose domain is every item of the instance.
    """

    __slots__ = ("_pairs", "_map", "_hash")

    def __init__(self, pairs: Union[Iterable[Pair], Mapping[int, int], None] = None):
        if pairs is None:
            items: list = []
        elif isinstance(pairs, Mapping):
            items = list(pairs.items())
        else:
            items = list(pairs)
        mapping: dict = {}
        for e, o in items:
            e, o = int(e), int(o)
            if e < 0 or o < 0:
                raise ValueError(f"negative item or outcome in pair ({e}, {o})")
            if e in mapping and mapping[e] != o:
                raise ValueError(f"item {e} has two outcomes")
            mapping[e] = o
        self._pairs = tuple(sorted(mapping.items()))
        self._map = dict(self._pairs)
        self._hash = hash(self._pairs)

    @classmethod
    def full(cls, outcomes: Iterable[int]) -> "PartialRealization":
        """Full realization from an outcome vector indexed by item id."""
        return cls(enumerate(outcomes))

    @property
    def pairs(self) -> Tuple[Pair, ...]:
        return self._pairs

    @property
    def dom(self) -> frozenset:
        return frozenset(self._map)

    def get(self, e: int, default=None):
        return self._map.get(e, default)

    def items(self):
        return self._pairs

    def extend(self, e: int, outcome: int) -> "PartialRealization":
        if e in self._map:
            if self._map[e] == outcome:
                return self
            raise ValueError(f"item {e} already observed with outcome {self._map[e]}")
        new = PartialRealization.__new__(PartialRealization)
        new._pairs = tuple(sorted(self._pairs + ((e, outcome),)))
        new._map = dict(new._pairs)
        new._hash = hash(new._pairs)
        return new

    def restrict(self, items: Iterable[int]) -> "PartialRealization":
        keep = set(items)
        return PartialRealization(p for p in self._pairs if p[0] in keep)

    def __getitem__(self, e: int) -> int:
        return self._map[e]

    def __contains__(self, e: object) -> bool:
        return e in self._map

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self) -> Iterator[int]:
        return iter(self._map)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialRealization):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self) -> int:
        return self._hash

    def __le__(self, other: "PartialRealization") -> bool:
        return is_subrealization(self, other)

    def __repr__(self) -> str:
        inner = ", ".join(f"{e}:{o}" for e, o in self._pairs)
        return f"PartialRealization({{{inner}}})"


EMPTY = PartialRealization()


def is_subrealization(psi: PartialRealization, psi2: PartialRealization) -> bool:
    """True iff ``psi2`` extends ``psi`` (same outcomes on dom(psi))."""
    if len(psi) > len(psi2):
        return False
    other = psi2._map
    return all(other.get(e, -1) == o for e, o in psi._pairs)


def are_disjoint(psi: PartialRealization, psi2: PartialRealization) -> bool:
    """True iff some shared item carries different outcomes."""
    other = psi2._map
    return any(e in other and other[e] != o for e, o in psi._pairs)
