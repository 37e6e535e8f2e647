"""The module category mod kQ as an extriangulated (exact) category."""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .catalog import Catalog
from .category import Conflation, ExtriCat
from .exact import (
    ExtSpace,
    ShortExact,
    block_map,
    lift_to_resolutions,
    proj_resolution,
    pushout,
    sum_resolution,
)
from .objects import ObjClass
from .reps import Rep, RepMap, combination, direct_sum, hom_space, sum_injections


class BlockExt:
    """``Ext¹(⊕C_i, ⊕A_j)`` with coordinates ordered by ``(i, j, basis index)``."""

    def __init__(self, cat: Catalog, C: ObjClass, A: ObjClass):
        q, p = cat.quiver, cat.p
        self.cat = cat
        self.C_obj, self.A_obj = C, A
        self.C_reps = [cat.reps[i] for i, _ in C]
        self.A_reps = [cat.reps[i] for i, _ in A]
        parts = [proj_resolution(c) for c in self.C_reps]
        if parts:
            self.res = sum_resolution(parts)
        else:
            self.res = proj_resolution(Rep.zero(q, p))
        self.P1_parts = [r.P1 for r in parts]
        self.A = direct_sum(self.A_reps, q, p)
        self.pair = [[ExtSpace(r, a) for a in self.A_reps] for r in parts]
        self.index = [(i, j, k) for i in range(len(parts)) for j in range(len(self.A_reps)) for k in range(self.pair[i][j].dim)]

    @property
    def dim(self) -> int:
        return len(self.index)

    def cocycle(self, coords) -> RepMap:
        coords = np.asarray(coords, dtype=la.DTYPE)
        grid = [[None] * len(self.P1_parts) for _ in self.A_reps]
        pos = 0
        for i in range(len(self.P1_parts)):
            for j in range(len(self.A_reps)):
                e = self.pair[i][j]
                if e.dim:
                    grid[j][i] = e.cocycle(coords[pos : pos + e.dim])
                pos += e.dim
        return block_map(grid, self.res.P1, self.A, self.P1_parts, self.A_reps)

    def coords(self, eta: RepMap) -> np.ndarray:
        """Block coordinates of an arbitrary cocycle ``P1(C) -> A``."""
        q = self.cat.quiver
        ins = sum_injections(self.P1_parts) if self.P1_parts else []
        out = []
        offs = [0] * q.n
        projs = []
        for a in self.A_reps:
            blocks = {}
            for v in range(q.n):
                b = la.zeros(a.dims[v], self.A.dims[v])
                b[:, offs[v] : offs[v] + a.dims[v]] = la.eye(a.dims[v])
                blocks[v] = b
                offs[v] += a.dims[v]
            projs.append(RepMap(self.A, a, blocks, check=False))
        for i in range(len(self.P1_parts)):
            for j in range(len(self.A_reps)):
                e = self.pair[i][j]
                if e.dim:
                    blk = projs[j].compose(eta).compose(RepMap(self.P1_parts[i], self.res.P1, ins[i].blocks, check=False))
                    out.append(e.coords(blk))
        return np.concatenate(out) if out else np.zeros(0, dtype=la.DTYPE)

    def realize(self, coords) -> ShortExact:
        return pushout(self.res, self.cocycle(coords))


class ModuleCategory(ExtriCat):
    """mod kQ with its exact structure; every object has shift 0."""

    name = "module"

    def __init__(self, cat: Catalog, enum_cap: int = 2**12, hom_cap: int = 2**12):
        super().__init__(cat, enum_cap, hom_cap)
        self.universe = [ObjClass.ind(i) for i in cat.ids]
        self._rep_cache: dict = {}
        self._ext_cache: dict = {}

    def _hom_ind(self, a, b) -> int:
        return int(self.cat.hom_dim[a[0], b[0]])

    def _e_ind(self, c, a) -> int:
        return int(self.cat.ext_dim[c[0], a[0]])

    def k0(self, X: ObjClass) -> tuple:
        n = self.cat.quiver.n
        v = [0] * n
        for i, _ in X:
            for k, d in enumerate(self.cat.reps[i].dims):
                v[k] += d
        return tuple(v)

    def rep(self, X: ObjClass) -> Rep:
        r = self._rep_cache.get(X)
        if r is None:
            r = self.cat.rep_of(X)
            self._rep_cache[X] = r
        return r

    def decompose(self, M: Rep) -> ObjClass:
        return self.cat.decompose(M)

    def ext(self, C: ObjClass, A: ObjClass) -> BlockExt:
        key = (C, A)
        e = self._ext_cache.get(key)
        if e is None:
            e = BlockExt(self.cat, C, A)
            self._ext_cache[key] = e
        return e

    def _core_middle(self, C_parts, A_parts, coords) -> ObjClass:
        seq = self.ext(ObjClass(C_parts), ObjClass(A_parts)).realize(coords)
        return self.decompose(seq.B)

    def realize(self, C: ObjClass, A: ObjClass, coords) -> Conflation:
        """Explicit conflation (with witness maps) for block coordinates."""
        seq = self.ext(C, A).realize(coords)
        return Conflation(A, self.decompose(seq.B), C, tuple(int(x) for x in np.asarray(coords) % self.p), seq)

    def act(self, C: ObjClass, A: ObjClass, coords, a: RepMap, c: RepMap, C2: ObjClass, A2: ObjClass) -> np.ndarray:
        """``E(c, a)`` applied to a class: ``a: A -> A2``, ``c: C2 -> C`` on the catalog realisations."""
        src = self.ext(C, A)
        tgt = self.ext(C2, A2)
        eta = src.cocycle(coords)
        _, c1 = lift_to_resolutions(c, tgt.res, src.res)
        return tgt.coords(a.compose(eta).compose(c1))

    def hom_basis(self, X: ObjClass, Y: ObjClass) -> list[RepMap]:
        return hom_space(self.rep(X), self.rep(Y))

    def morphisms(self, X: ObjClass, Y: ObjClass, nonzero: bool = False):
        """Every element of ``Hom(X, Y)`` (guarded by the Hom cap)."""
        basis = self.hom_basis(X, Y)
        if self.p ** len(basis) > self.hom_cap:
            raise OverflowError("Hom cap exceeded: p^%d morphisms %s -> %s" % (len(basis), self.label(X), self.label(Y)))
        for c in la.all_vectors(len(basis), self.p):
            if nonzero and not c.any():
                continue
            yield combination(c, basis, self.rep(X), self.rep(Y))
