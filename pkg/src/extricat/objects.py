"""Iso-class handles: finite multisets of ``(catalog id, shift)`` pairs."""

from __future__ import annotations

from collections import Counter
from itertools import combinations_with_replacement


class ObjClass(tuple):
    """A direct sum of shifted indecomposables, kept sorted so equality is structural.

    ``ObjClass()`` is the zero object.  Shift is always 0 in the module backend.
    """

    __slots__ = ()

    def __new__(cls, items=()):
        return super().__new__(cls, sorted((int(i), int(s)) for i, s in items))

    @classmethod
    def ind(cls, i: int, shift: int = 0) -> "ObjClass":
        return cls(((i, shift),))

    def __add__(self, other) -> "ObjClass":  # direct sum
        return ObjClass(tuple.__add__(self, other))

    def __repr__(self):
        return "ObjClass(%s)" % list(self)

    def is_zero(self) -> bool:
        return len(self) == 0

    def is_indecomposable(self) -> bool:
        return len(self) == 1

    @property
    def count(self) -> int:
        return len(self)

    def summands(self) -> list["ObjClass"]:
        return [ObjClass((x,)) for x in self]

    def counter(self) -> Counter:
        return Counter(self)

    def support(self) -> frozenset:
        return frozenset(ObjClass((x,)) for x in self)

    def shift(self, n: int) -> "ObjClass":
        return ObjClass((i, s + n) for i, s in self)

    def minus(self, other) -> "ObjClass":
        c = Counter(self)
        c.subtract(Counter(other))
        if any(v < 0 for v in c.values()):
            raise ValueError("%r is not a summand of %r" % (other, self))
        return ObjClass(c.elements())

    def contains(self, other) -> bool:
        c = Counter(self)
        c.subtract(Counter(other))
        return all(v >= 0 for v in c.values())


ZERO = ObjClass()


def direct_sum(objs) -> ObjClass:
    items = []
    for o in objs:
        items.extend(o)
    return ObjClass(items)


def multisets(support, max_count: int, include_zero: bool = True):
    """All direct sums of members of ``support`` with at most ``max_count`` summands."""
    base = sorted(x for s in support for x in s)
    start = 0 if include_zero else 1
    for k in range(start, max_count + 1):
        for combo in combinations_with_replacement(base, k):
            yield ObjClass(combo)
