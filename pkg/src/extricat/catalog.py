"""The indecomposable catalog of mod kQ, found by closing the simples under extensions."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg as la
from .exact import ExtSpace, ext_space, proj_resolution, realize
from .objects import ObjClass
from .reps import Quiver, Rep, decompose_rep, direct_sum, hom_dim, is_isomorphic

log = logging.getLogger(__name__)


class CatalogError(RuntimeError):
    pass


@dataclass
class Catalog:
    quiver: Quiver
    p: int
    reps: list[Rep]
    labels: list[str]
    hom_dim: np.ndarray  # hom_dim[i, j] = dim Hom(X_i, X_j)
    ext_dim: np.ndarray  # ext_dim[i, j] = dim Ext¹(X_i, X_j)
    _by_dims: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for i, r in enumerate(self.reps):
            self._by_dims.setdefault(r.dims, []).append(i)

    def __len__(self):
        return len(self.reps)

    @property
    def ids(self) -> range:
        return range(len(self.reps))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError("unknown catalog label %r (known: %s)" % (label, ", ".join(self.labels))) from None

    def dims(self, i: int) -> tuple[int, ...]:
        return self.reps[i].dims

    def match(self, M: Rep) -> int | None:
        """Catalog id of an indecomposable ``M`` (by isomorphism test)."""
        for i in self._by_dims.get(M.dims, ()):
            if is_isomorphic(self.reps[i], M):
                return i
        return None

    def decompose(self, M: Rep) -> ObjClass:
        """Fitting decomposition of ``M`` matched against the catalog."""
        ids = []
        for leaf in decompose_rep(M):
            i = self.match(leaf)
            if i is None:
                raise CatalogError("summand with dimension vector %s is not in the catalog" % (leaf.dims,))
            ids.append(i)
        return ObjClass((i, 0) for i in ids)

    def rep_of(self, obj: ObjClass) -> Rep:
        if any(s != 0 for _, s in obj):
            raise ValueError("shifted objects have no module realisation")
        return direct_sum([self.reps[i] for i, _ in obj], self.quiver, self.p)

    def label_of(self, obj: ObjClass) -> str:
        if obj.is_zero():
            return "0"
        parts = []
        for i, s in obj:
            parts.append(self.labels[i] if s == 0 else "%s[%d]" % (self.labels[i], s))
        return "+".join(parts)

    def parse(self, text: str) -> ObjClass:
        """Inverse of :meth:`label_of`; accepts ``S3[-1]`` style shifts."""
        text = text.strip()
        if text in ("", "0"):
            return ObjClass()
        items = []
        for part in text.split("+"):
            part = part.strip()
            shift = 0
            if part.endswith("]") and "[" in part:
                name, sh = part[:-1].split("[", 1)
                shift = int(sh)
            else:
                name = part
            items.append((self.index(name), shift))
        return ObjClass(items)


def _standard_name(q: Quiver, p: int, M: Rep) -> str | None:
    for kind, make in (("S", Rep.simple), ("P", Rep.projective), ("I", Rep.injective)):
        for v in range(q.n):
            std = make(q, p, v)
            if std.dims == M.dims and is_isomorphic(std, M):
                return kind + q.vertices[v]
    return None


def _canonical_rep(q: Quiver, p: int, M: Rep) -> Rep:
    for make in (Rep.simple, Rep.projective, Rep.injective):
        for v in range(q.n):
            std = make(q, p, v)
            if std.dims == M.dims and is_isomorphic(std, M):
                return std
    return M


def build_catalog(q: Quiver, p: int = 2, cap: int = 256, enum_cap: int = 2**12) -> Catalog:
    """Close the simple representations under extensions until no new iso-class appears."""
    found: list[Rep] = [Rep.simple(q, p, v) for v in range(q.n)]
    simples = list(found)

    def absorb(M: Rep, new: list[Rep]):
        for leaf in decompose_rep(M):
            if any(L.dims == leaf.dims and is_isomorphic(L, leaf) for L in found + new):
                continue
            new.append(leaf)
            if len(found) + len(new) > cap:
                raise CatalogError("catalog cap exceeded (%d indecomposables)" % cap)

    def middles(C: Rep, parts: list[Rep], new: list[Rep]):
        res = proj_resolution(C)
        A = direct_sum(parts, q, p)
        ext = ExtSpace(res, A)
        if ext.dim == 0:
            return
        if p**ext.dim > enum_cap:
            raise CatalogError("enumeration cap exceeded (p^%d classes)" % ext.dim)
        for coords in la.all_vectors(ext.dim, p):
            if coords.any():
                absorb(realize(ext, coords).B, new)

    done_pairs: set = set()
    while True:
        new: list[Rep] = []
        for C in found:
            for A in found:
                key = (C.key, (A.key,))
                if key not in done_pairs:
                    done_pairs.add(key)
                    middles(C, [A], new)
        # every indecomposable is an extension of a simple top by a kernel whose
        # summands each carry at most dim Ext(S, K) essential copies
        for S in simples:
            cands = [(K, ext_space(S, K).dim) for K in found]
            cands = [(K, e) for K, e in cands if e]
            for mults in product(*[range(e + 1) for _, e in cands]):
                parts = [K for (K, _), m in zip(cands, mults) for _ in range(m)]
                if len(parts) < 2:
                    continue
                key = (S.key, tuple(K.key for K in parts))
                if key in done_pairs:
                    continue
                done_pairs.add(key)
                middles(S, parts, new)
        if not new:
            break
        found.extend(new)
        log.debug("catalog grew to %d", len(found))

    reps = [_canonical_rep(q, p, M) for M in found]
    reps.sort(key=lambda r: (r.total_dim, tuple(-d for d in r.dims)))
    labels = []
    for r in reps:
        name = _standard_name(q, p, r)
        if name is None or name in labels:
            name = "M" + "".join(str(d) for d in r.dims)
            base, k = name, 2
            while name in labels:
                name = "%s_%d" % (base, k)
                k += 1
        labels.append(name)
    n = len(reps)
    hom = np.zeros((n, n), dtype=int)
    ext = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            hom[i, j] = hom_dim(reps[i], reps[j])
            ext[i, j] = ext_space(reps[i], reps[j]).dim
    return Catalog(q, p, reps, labels, hom, ext)
