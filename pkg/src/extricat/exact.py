"""The exact structure on mod kQ: projective resolutions, Ext¹ with cocycles,
realisation of classes by pushout, and the functorial actions on classes.

Everything here works on concrete :class:`~extricat.reps.Rep` objects; the
catalog-level backend lives in :mod:`extricat.backends`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .linalg import DTYPE
from .reps import (
    Rep,
    RepMap,
    combination,
    coordinates,
    direct_sum,
    hom_space,
    quotient,
)


def path_matrix(M: Rep, path: tuple[str, ...]) -> np.ndarray:
    if not path:
        raise ValueError("trivial path has no fixed vertex here")
    m = None
    for name in path:
        m = M.maps[name] if m is None else la.mul(M.maps[name], m, M.p)
    return m


@dataclass
class ProjResolution:
    """``0 -> P1 --iota--> P0 --eps--> M -> 0`` with ``eps`` a projective cover."""

    M: Rep
    P0: Rep
    P1: Rep
    eps: RepMap
    iota: RepMap
    tops: tuple[int, ...]  # multiplicity of P_v in P0

    def is_exact(self) -> bool:
        p = self.M.p
        if not self.eps.is_surjective() or not self.iota.is_injective():
            return False
        if not self.eps.compose(self.iota).is_zero():
            return False
        return self.P1.total_dim + self.M.total_dim == self.P0.total_dim and all(
            la.rank(self.iota.blocks[v], p) + self.M.dims[v] == self.P0.dims[v] for v in range(self.M.quiver.n)
        )


_RES_CACHE: dict = {}


def proj_resolution(M: Rep) -> ProjResolution:
    """Minimal projective resolution; ``P0 = ⊕ P_v^{dim top_v(M)}``."""
    hit = _RES_CACHE.get(M.key)
    if hit is not None:
        return hit
    q, p = M.quiver, M.p
    gens: list[tuple[int, np.ndarray]] = []
    tops = []
    for v in range(q.n):
        incoming = [M.maps[a.name] for a in q.in_arrows(v) if M.dims[a.source]]
        span = np.concatenate(incoming, axis=1) if incoming else la.zeros(M.dims[v], 0)
        Qv = la.Quotient(span, M.dims[v], p)
        tops.append(Qv.dim)
        for i in Qv.free:
            e = np.zeros(M.dims[v], dtype=DTYPE)
            e[i] = 1
            gens.append((v, e))
    summands = [Rep.projective(q, p, v) for v, _ in gens]
    P0 = direct_sum(summands, q, p)
    eps_blocks = {}
    for w in range(q.n):
        cols = []
        for v, m in gens:
            for path in q.paths_between(v, w):
                cols.append(m if not path else la.mul(path_matrix(M, path), m.reshape(-1, 1), p).reshape(-1))
        eps_blocks[w] = np.stack(cols, axis=1) if cols else la.zeros(M.dims[w], 0)
    eps = RepMap(P0, M, eps_blocks)
    P1, iota = eps.kernel()
    res = ProjResolution(M, P0, P1, eps, iota, tuple(tops))
    _RES_CACHE[M.key] = res
    return res


def sum_resolution(parts: list[ProjResolution]) -> ProjResolution:
    """Direct sum of resolutions (block diagonal maps)."""
    q, p = parts[0].M.quiver, parts[0].M.p
    M = direct_sum([r.M for r in parts], q, p)
    P0 = direct_sum([r.P0 for r in parts], q, p)
    P1 = direct_sum([r.P1 for r in parts], q, p)
    eps = _block_diag([r.eps for r in parts], P0, M)
    iota = _block_diag([r.iota for r in parts], P1, P0)
    tops = tuple(sum(r.tops[v] for r in parts) for v in range(q.n))
    return ProjResolution(M, P0, P1, eps, iota, tops)


def _block_diag(maps: list[RepMap], source: Rep, target: Rep) -> RepMap:
    blocks = {}
    for v in range(source.quiver.n):
        b = la.zeros(target.dims[v], source.dims[v])
        r0 = c0 = 0
        for f in maps:
            blk = f.blocks[v]
            b[r0 : r0 + blk.shape[0], c0 : c0 + blk.shape[1]] = blk
            r0 += blk.shape[0]
            c0 += blk.shape[1]
        blocks[v] = b
    return RepMap(source, target, blocks, check=False)


def block_map(grid, source: Rep, target: Rep, src_parts, tgt_parts) -> RepMap:
    """Assemble a map ``⊕ src_parts -> ⊕ tgt_parts`` from ``grid[j][i]: src_i -> tgt_j``.

    Missing entries (``None``) are zero.
    """
    blocks = {}
    for v in range(source.quiver.n):
        b = la.zeros(target.dims[v], source.dims[v])
        r0 = 0
        for j, T in enumerate(tgt_parts):
            c0 = 0
            for i, S in enumerate(src_parts):
                f = grid[j][i]
                if f is not None:
                    b[r0 : r0 + T.dims[v], c0 : c0 + S.dims[v]] = f.blocks[v]
                c0 += S.dims[v]
            r0 += T.dims[v]
        blocks[v] = b
    return RepMap(source, target, blocks, check=False)


# -- lifting and extending maps ----------------------------------------------


def lift_through(h: RepMap, q: RepMap) -> RepMap | None:
    """Some ``g`` with ``q ∘ g = h`` (``h: X -> Z``, ``q: Y -> Z``), else ``None``."""
    X, Y = h.source, q.source
    basis = hom_space(X, Y)
    if not basis:
        return X.zero_map(Y) if h.is_zero() else None
    A = np.stack([q.compose(b).vector() for b in basis], axis=1)
    c = la.solve(A, h.vector(), h.p)
    return None if c is None else combination(c, basis, X, Y)


def extend_along(h: RepMap, j: RepMap) -> RepMap | None:
    """Some ``g`` with ``g ∘ j = h`` (``h: X -> Z``, ``j: X -> Y``), else ``None``."""
    Y, Z = j.target, h.target
    basis = hom_space(Y, Z)
    if not basis:
        return Y.zero_map(Z) if h.is_zero() else None
    A = np.stack([b.compose(j).vector() for b in basis], axis=1)
    c = la.solve(A, h.vector(), h.p)
    return None if c is None else combination(c, basis, Y, Z)


def lift_to_resolutions(c: RepMap, src: ProjResolution, tgt: ProjResolution) -> tuple[RepMap, RepMap]:
    """Chain map ``(c0, c1)`` between resolutions covering ``c: src.M -> tgt.M``."""
    c0 = lift_through(c.compose(src.eps), tgt.eps)
    if c0 is None:
        raise ArithmeticError("cover map failed to lift; resolution is not projective")
    c1 = lift_through(c0.compose(src.iota), tgt.iota)
    if c1 is None:
        raise ArithmeticError("kernel map failed to lift")
    return c0, c1


# -- Ext¹ -----------------------------------------------------------------------


class ExtSpace:
    """``Ext¹(C, A) = coker(Hom(P0, A) -> Hom(P1, A))`` with a fixed cocycle basis."""

    def __init__(self, res: ProjResolution, A: Rep):
        self.res = res
        self.C = res.M
        self.A = A
        p = A.p
        self.hom1 = hom_space(res.P1, A)
        hom0 = hom_space(res.P0, A)
        n = len(self.hom1)
        if n and hom0:
            images = [coordinates(h.compose(res.iota), self.hom1) for h in hom0]
            span = np.stack(images, axis=1)
        else:
            span = la.zeros(n, 0)
        self.quot = la.Quotient(span, n, p)

    @property
    def dim(self) -> int:
        return self.quot.dim

    def cocycle(self, coords) -> RepMap:
        return combination(self.quot.lift(coords), self.hom1, self.res.P1, self.A)

    def coords(self, eta: RepMap) -> np.ndarray:
        c = coordinates(eta, self.hom1)
        if c is None:
            raise ValueError("map is not a cocycle P1 -> A")
        return self.quot.coords(c)

    def basis(self) -> list[RepMap]:
        return [self.cocycle(e) for e in la.eye(self.dim)]


def ext_space(C: Rep, A: Rep) -> ExtSpace:
    return ExtSpace(proj_resolution(C), A)


def ext_dim(C: Rep, A: Rep) -> int:
    return ext_space(C, A).dim


@dataclass
class ShortExact:
    """``0 -> A --x--> B --y--> C -> 0`` realising a class."""

    A: Rep
    B: Rep
    C: Rep
    x: RepMap
    y: RepMap

    def is_exact(self) -> bool:
        p = self.A.p
        if not self.x.is_injective() or not self.y.is_surjective():
            return False
        if not self.y.compose(self.x).is_zero():
            return False
        return all(
            la.rank(self.x.blocks[v], p) + la.rank(self.y.blocks[v], p) == self.B.dims[v]
            for v in range(self.A.quiver.n)
        )

    def has_retraction(self) -> bool:
        """Whether ``x`` splits; for a realised class this is ``class == 0``."""
        r = extend_along(self.A.identity(), self.x)
        return r is not None


def pushout(res: ProjResolution, eta: RepMap) -> ShortExact:
    """Middle term ``(A ⊕ P0) / {(eta z, -iota z)}`` of the class of ``eta: P1 -> A``."""
    A, C, P0 = eta.target, res.M, res.P0
    q, p = A.quiver, A.p
    S = direct_sum([A, P0], q, p)
    span = {v: np.concatenate([eta.blocks[v], (-res.iota.blocks[v]) % p], axis=0) for v in range(q.n)}
    B, proj = quotient(S, span)
    incl_A = {v: np.concatenate([la.eye(A.dims[v]), la.zeros(P0.dims[v], A.dims[v])], axis=0) for v in range(q.n)}
    x = proj.compose(RepMap(A, S, incl_A, check=False))
    y_blocks = {}
    for v in range(q.n):
        lift = la.zeros(S.dims[v], B.dims[v])
        free = la.Quotient(span[v], S.dims[v], p).free
        for j, i in enumerate(free):
            lift[i, j] = 1
        onto_c = np.concatenate([la.zeros(C.dims[v], A.dims[v]), res.eps.blocks[v]], axis=1)
        y_blocks[v] = la.mul(onto_c, lift, p)
    y = RepMap(B, C, y_blocks)
    return ShortExact(A, B, C, RepMap(A, B, x.blocks), y)


def realize(ext: ExtSpace, coords) -> ShortExact:
    return pushout(ext.res, ext.cocycle(coords))


def pushforward(ext_src: ExtSpace, coords, a: RepMap, ext_tgt: ExtSpace) -> np.ndarray:
    """``a_* δ`` for ``a: A -> A'``; ``ext_tgt`` must be ``Ext¹(C, A')`` on the same resolution."""
    eta = ext_src.cocycle(coords)
    return ext_tgt.coords(a.compose(eta))


def pullback(ext_src: ExtSpace, coords, c: RepMap, ext_tgt: ExtSpace) -> np.ndarray:
    """``c^* δ`` for ``c: C' -> C``; ``ext_tgt`` is ``Ext¹(C', A)``."""
    eta = ext_src.cocycle(coords)
    _, c1 = lift_to_resolutions(c, ext_tgt.res, ext_src.res)
    return ext_tgt.coords(eta.compose(c1))


def act(ext_src: ExtSpace, coords, a: RepMap, c: RepMap, ext_tgt: ExtSpace) -> np.ndarray:
    """``E(c, a)(δ) = a_* c^* δ`` from ``Ext¹(C, A)`` to ``Ext¹(C', A')``."""
    mid = ExtSpace(ext_tgt.res, ext_src.A)
    pulled = pullback(ext_src, coords, c, mid)
    return pushforward(mid, pulled, a, ext_tgt)
