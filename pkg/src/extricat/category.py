"""The abstract extriangulated-category interface shared by both backends.

A backend supplies Hom and E dimensions for pairs of shifted indecomposables
and a way to realise one extension class with small ends.  Everything else
(biadditive extension to direct sums, orbit-reduced enumeration of middle
terms, caching) lives here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

import numpy as np

from . import linalg as la
from .catalog import Catalog
from .objects import ObjClass, multisets


class CapExceeded(RuntimeError):
    """An enumeration would exceed a configured cap."""


class WindowError(ValueError):
    """A shift left the configured derived window."""


@dataclass(frozen=True)
class Subcat:
    """``add`` of a finite set of indecomposables."""

    support: frozenset = frozenset()

    @classmethod
    def of(cls, objs: Iterable[ObjClass]) -> "Subcat":
        sup = set()
        for o in objs:
            sup.update(o.support())
        return cls(frozenset(sup))

    def contains(self, obj: ObjClass) -> bool:
        return all(ObjClass((x,)) in self.support for x in obj)

    __contains__ = contains

    def members(self) -> list[ObjClass]:
        return sorted(self.support)

    def __len__(self):
        return len(self.support)

    def __le__(self, other: "Subcat") -> bool:
        return self.support <= other.support

    def objects(self, max_count: int, include_zero: bool = True):
        return multisets(self.members(), max_count, include_zero)


@dataclass
class Conflation:
    """``A -> B -> C`` realising a class; ``witness`` holds explicit maps if available."""

    A: ObjClass
    B: ObjClass
    C: ObjClass
    coords: tuple = ()
    witness: object = field(default=None, repr=False)


class ExtriCat:
    """Common machinery; subclasses define the per-indecomposable data."""

    name = "abstract"

    def __init__(self, cat: Catalog, enum_cap: int = 2**12, hom_cap: int = 2**12):
        self.cat = cat
        self.p = cat.p
        self.enum_cap = enum_cap
        self.hom_cap = hom_cap
        self._mid_cache: dict = {}
        self._core_cache: dict = {}

    # -- to be provided ---------------------------------------------------
    universe: list[ObjClass]

    def _hom_ind(self, a, b) -> int:
        raise NotImplementedError

    def _e_ind(self, c, a) -> int:
        raise NotImplementedError

    def _core_middle(self, C_parts: tuple, A_parts: tuple, coords: np.ndarray) -> ObjClass:
        raise NotImplementedError

    def k0(self, X: ObjClass) -> tuple:
        raise NotImplementedError

    # -- biadditive tables --------------------------------------------------
    def hom_dim(self, X: ObjClass, Y: ObjClass) -> int:
        return sum(self._hom_ind(a, b) for a in X for b in Y)

    def e_dim(self, C: ObjClass, A: ObjClass) -> int:
        return sum(self._e_ind(c, a) for c in C for a in A)

    def is_zero(self, X: ObjClass) -> bool:
        return X.is_zero()

    def label(self, X: ObjClass) -> str:
        return self.cat.label_of(X)

    def parse(self, text: str) -> ObjClass:
        return self.cat.parse(text)

    def parse_set(self, text: str) -> list[ObjClass]:
        text = (text or "").strip()
        if not text:
            return []
        return [self.parse(t) for t in text.split(",") if t.strip()]

    @property
    def whole(self) -> Subcat:
        return Subcat(frozenset(self.universe))

    def is_brick(self, M: ObjClass) -> bool:
        from .reps import is_brick_rep

        if not M.is_indecomposable():
            return False
        i, _ = M[0]
        return is_brick_rep(self.cat.reps[i])

    # -- extension classes and their middles ---------------------------------
    def classes(self, C: ObjClass, A: ObjClass):
        """Every class of ``E(C, A)`` as coordinates, lexicographically."""
        d = self.e_dim(C, A)
        if self.p**d > self.enum_cap:
            raise CapExceeded("enumeration cap exceeded: p^%d classes in E(%s, %s)" % (d, self.label(C), self.label(A)))
        return la.all_vectors(d, self.p)

    def middle(self, C: ObjClass, A: ObjClass, coords) -> ObjClass:
        """Middle term of the class with the given block coordinates."""
        coords = np.asarray(coords, dtype=la.DTYPE) % self.p
        C_parts, A_parts = tuple(C), tuple(A)
        if not coords.any():
            return A + C
        # drop ends that the class does not touch
        widths = [[self._e_ind(c, a) for a in A_parts] for c in C_parts]
        blocks = {}
        pos = 0
        for i in range(len(C_parts)):
            for j in range(len(A_parts)):
                w = widths[i][j]
                blocks[i, j] = coords[pos : pos + w]
                pos += w
        used_c = [i for i in range(len(C_parts)) if any(blocks[i, j].any() for j in range(len(A_parts)))]
        used_a = [j for j in range(len(A_parts)) if any(blocks[i, j].any() for i in range(len(C_parts)))]
        core = np.concatenate([blocks[i, j] for i in used_c for j in used_a]) if used_c else np.zeros(0, dtype=la.DTYPE)
        mid = self._core(tuple(C_parts[i] for i in used_c), tuple(A_parts[j] for j in used_a), core)
        rest = [C_parts[i] for i in range(len(C_parts)) if i not in used_c]
        rest += [A_parts[j] for j in range(len(A_parts)) if j not in used_a]
        return mid + ObjClass(rest)

    def _core(self, C_parts, A_parts, coords) -> ObjClass:
        key = (C_parts, A_parts, coords.tobytes())
        hit = self._core_cache.get(key)
        if hit is None:
            hit = self._core_middle(C_parts, A_parts, coords)
            self._core_cache[key] = hit
        return hit

    def middles(self, C: ObjClass, A: ObjClass) -> frozenset:
        """All middle terms of classes in ``E(C, A)``, split one included.

        Classes are enumerated up to the action of ``GL`` on repeated
        summands of ``A``: the coordinate rows of the copies of one
        indecomposable are brought to reduced echelon form, so each orbit is
        visited once and zero rows split off.
        """
        key = (C, A)
        hit = self._mid_cache.get(key)
        if hit is not None:
            return hit
        if C.is_zero() or A.is_zero() or self.e_dim(C, A) == 0:
            out = frozenset([A + C])
            self._mid_cache[key] = out
            return out
        C_parts, A_parts = tuple(C), tuple(A)
        types = sorted(set(A_parts))
        copies = {t: [j for j, a in enumerate(A_parts) if a == t] for t in types}
        widths = {t: [self._e_ind(c, t) for c in C_parts] for t in types}
        options = []
        total = 1
        for t in types:
            w = sum(widths[t])
            opts = list(la.subspaces(w, min(w, len(copies[t])), self.p)) if w else [la.zeros(0, 0)]
            options.append(opts)
            total *= len(opts)
            if total > self.enum_cap:
                raise CapExceeded(
                    "enumeration cap exceeded: more than %d orbit representatives in E(%s, %s)"
                    % (self.enum_cap, self.label(C), self.label(A))
                )
        out = set()
        for choice in product(*options):
            rows = {}
            for t, basis in zip(types, choice):
                w = sum(widths[t])
                for r, j in enumerate(copies[t]):
                    rows[j] = basis[r] if r < basis.shape[0] else np.zeros(w, dtype=la.DTYPE)
            coords = []
            for i in range(len(C_parts)):
                for j, a in enumerate(A_parts):
                    off = sum(widths[a][:i])
                    coords.append(rows[j][off : off + widths[a][i]])
            out.add(self.middle(C, A, np.concatenate(coords) if coords else np.zeros(0, dtype=la.DTYPE)))
        res = frozenset(out)
        self._mid_cache[key] = res
        return res

    def enumerate_middles(self, C: ObjClass, A: ObjClass) -> frozenset:
        """Middles of every class (exhaustive in coordinates, guarded by the cap)."""
        return frozenset(self.middle(C, A, c) for c in self.classes(C, A))

    def conflations(self, C: ObjClass, A: ObjClass):
        for c in self.classes(C, A):
            yield Conflation(A, self.middle(C, A, c), C, tuple(int(x) for x in c))

    # -- searches ----------------------------------------------------------
    def objects_with_k0(self, support, target, max_count: int, nonzero: bool = True):
        """Direct sums over ``support`` with at most ``max_count`` summands and class ``target``."""
        target = tuple(target)
        for X in multisets(support, max_count, include_zero=not nonzero):
            if self.k0(X) == target:
                yield X
