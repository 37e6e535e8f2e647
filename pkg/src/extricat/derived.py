"""A shift window of D^b(kQ) for hereditary kQ.

Objects are formal sums of shifted catalog modules.  Morphisms and
extension classes are described by components: a ``Hom(M, N)`` element for
``M[i] -> N[i]`` and an ``Ext¹(M, N)`` class for ``M[i] -> N[i+1]``.  To
realise a class every summand ``M[s]`` is replaced by its two-term
projective resolution (``P1`` in degree ``-s-1``, ``P0`` in degree ``-s``),
the cocone is assembled as a complex of representations and its cohomology
is decomposed; formality of hereditary complexes gives the middle term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .catalog import Catalog
from .category import Conflation, ExtriCat, WindowError
from .exact import block_map, ext_space, lift_through, lift_to_resolutions, proj_resolution
from .objects import ObjClass
from .reps import Rep, RepMap, combination, coordinates, direct_sum, hom_space, quotient


# -- complexes of representations ---------------------------------------------


class Complex:
    """A bounded complex of representations with named parts in each degree.

    ``pieces`` maps a tag to ``(degree, Rep)``; ``arrows`` maps ``(src_tag,
    tgt_tag)`` to a RepMap from a degree ``n`` piece to a degree ``n+1``
    piece.  Parts inside a degree are ordered by insertion.
    """

    def __init__(self, quiver, p, pieces: dict, arrows: dict):
        self.quiver, self.p = quiver, p
        self.pieces = dict(pieces)
        self.arrows = dict(arrows)
        self.order: dict[int, list] = {}
        for tag, (deg, _) in self.pieces.items():
            self.order.setdefault(deg, []).append(tag)
        self._terms: dict = {}

    @property
    def degrees(self) -> list[int]:
        return sorted(self.order)

    def parts(self, n: int) -> list[Rep]:
        return [self.pieces[t][1] for t in self.order.get(n, [])]

    def term(self, n: int) -> Rep:
        t = self._terms.get(n)
        if t is None:
            t = direct_sum(self.parts(n), self.quiver, self.p)
            self._terms[n] = t
        return t

    def assemble(self, entries: dict, src: "Complex", n_src: int, n_tgt: int) -> RepMap:
        """Map ``src^{n_src} -> self^{n_tgt}`` from part-level ``entries``."""
        s_tags, t_tags = src.order.get(n_src, []), self.order.get(n_tgt, [])
        grid = [[entries.get((a, b)) for a in s_tags] for b in t_tags]
        return block_map(grid, src.term(n_src), self.term(n_tgt), src.parts(n_src), self.parts(n_tgt))

    def d(self, n: int) -> RepMap:
        return self.assemble(self.arrows, self, n, n + 1)

    def shifted(self, k: int) -> "Complex":
        """``X[k]``: degree ``n`` holds ``X^{n+k}``, differential scaled by ``(-1)^k``."""
        sign = -1 if k % 2 else 1
        pieces = {t: (deg - k, r) for t, (deg, r) in self.pieces.items()}
        arrows = {key: m.scale(sign) for key, m in self.arrows.items()}
        return Complex(self.quiver, self.p, pieces, arrows)

    def is_complex(self) -> bool:
        return all(self.d(n + 1).compose(self.d(n)).is_zero() for n in self.degrees)

    def cohomology(self, n: int) -> Rep:
        B = self.term(n)
        prev = self.d(n - 1)
        Q, _ = quotient(B, {v: prev.blocks[v] for v in range(self.quiver.n)})
        lift = {}
        for v in range(self.quiver.n):
            Qv = la.Quotient(prev.blocks[v], B.dims[v], self.p)
            L = la.zeros(B.dims[v], Qv.dim)
            for j, i in enumerate(Qv.free):
                L[i, j] = 1
            lift[v] = L
        nxt = self.d(n)
        induced = RepMap(Q, self.term(n + 1), {v: la.mul(nxt.blocks[v], lift[v], self.p) for v in lift}, check=False)
        H, _ = induced.kernel()
        return H


@dataclass
class ChainMap:
    """Part-level components ``(src_tag, tgt_tag) -> RepMap`` of a degree-preserving map."""

    source: Complex
    target: Complex
    entries: dict

    def at(self, n: int) -> RepMap:
        return self.target.assemble(self.entries, self.source, n, n)

    def is_chain_map(self) -> bool:
        for n in set(self.source.degrees) | set(self.target.degrees):
            lhs = self.target.d(n).compose(self.at(n))
            rhs = self.at(n + 1).compose(self.source.d(n))
            if not (lhs - rhs).is_zero():
                return False
        return True


class HomK:
    """``Hom`` in the homotopy category between two bounded complexes of projectives."""

    def __init__(self, T: Complex, X: Complex):
        self.T, self.X = T, X
        p = T.p
        self.degs = [n for n in T.degrees if n in X.order]
        self.basis = {n: hom_space(T.term(n), X.term(n)) for n in self.degs}
        self.offset = {}
        total = 0
        for n in self.degs:
            self.offset[n] = total
            total += len(self.basis[n])
        self.nvars = total
        # chain condition d_X f^n = f^{n+1} d_T, one block per degree n
        rows = []
        for n in sorted(set(T.degrees) | {m - 1 for m in T.degrees}):
            tgt_dim = sum(T.term(n).dims[v] * X.term(n + 1).dims[v] for v in range(T.quiver.n))
            if tgt_dim == 0:
                continue
            col = np.zeros((tgt_dim, total), dtype=la.DTYPE)
            if n in self.basis:
                dX = X.d(n)
                for k, b in enumerate(self.basis[n]):
                    col[:, self.offset[n] + k] += dX.compose(b).vector()
            if n + 1 in self.basis:
                dT = T.d(n)
                for k, b in enumerate(self.basis[n + 1]):
                    col[:, self.offset[n + 1] + k] -= b.compose(dT).vector()
            rows.append(col % p)
        if total == 0:
            self.Z = la.zeros(0, 0)
        elif rows:
            self.Z = la.kernel_matrix(np.concatenate(rows, axis=0), p)
        else:
            self.Z = la.eye(total)
        # null-homotopic maps d_X h + h d_T
        hcols = []
        for n in T.degrees:
            if n - 1 not in X.order:
                continue
            for h in hom_space(T.term(n), X.term(n - 1)):
                v = np.zeros(total, dtype=la.DTYPE)
                if n in self.basis:
                    v[self.offset[n] : self.offset[n] + len(self.basis[n])] = self._coords(X.d(n - 1).compose(h), n)
                if n - 1 in self.basis:
                    v[self.offset[n - 1] : self.offset[n - 1] + len(self.basis[n - 1])] = self._coords(h.compose(T.d(n - 1)), n - 1)
                hcols.append(v)
        self.H = np.stack(hcols, axis=1) % p if hcols else la.zeros(total, 0)
        self.rank_H = la.rank(self.H, p)
        self.dim = (self.Z.shape[1] if total else 0) - self.rank_H

    def _coords(self, f: RepMap, n: int) -> np.ndarray:
        c = coordinates(f, self.basis[n])
        if c is None:
            raise ArithmeticError("map outside the Hom basis")
        return c

    def maps(self, z: np.ndarray) -> dict:
        out = {}
        for n in self.degs:
            out[n] = combination(z[self.offset[n] : self.offset[n] + len(self.basis[n])], self.basis[n], self.T.term(n), self.X.term(n))
        return out

    def _induced(self, fn, target: "HomK") -> np.ndarray:
        cols = []
        for z in self.Z.T:
            f = self.maps(z)
            v = np.zeros(target.nvars, dtype=la.DTYPE)
            for n in target.degs:
                g = fn(n, f)
                if g is not None:
                    v[target.offset[n] : target.offset[n] + len(target.basis[n])] = target._coords(g, n)
            cols.append(v)
        return np.stack(cols, axis=1) % self.T.p if cols else la.zeros(target.nvars, 0)

    def push(self, u: ChainMap, target: "HomK") -> np.ndarray:
        """Matrix of ``u_*`` from the cycle basis of ``self`` into ``target`` coordinates."""
        return self._induced(lambda n, f: u.at(n).compose(f[n]) if n in f else None, target)

    def pull(self, c: ChainMap, target: "HomK", shift: int = 0) -> np.ndarray:
        """Matrix of ``f -> f[shift] ∘ c`` into ``target = Hom(c.source, X[shift])``."""
        return self._induced(lambda n, f: f[n + shift].compose(c.at(n)) if n + shift in f else None, target)

    def rank_of(self, M: np.ndarray) -> int:
        """Rank modulo null-homotopic maps of a matrix into this space."""
        return la.rank(np.concatenate([M, self.H], axis=1), self.T.p) - self.rank_H

    def induced_rank(self, u: ChainMap, target: "HomK") -> int:
        return target.rank_of(self.push(u, target))


# -- the derived window ---------------------------------------------------------


@dataclass
class Triangle:
    """``A --u--> B --v--> C --w--> A[1]`` at chain level."""

    A: Complex
    B: Complex
    C: Complex
    u: ChainMap
    v: ChainMap
    w: ChainMap


class DerivedCategory(ExtriCat):
    name = "derived"

    def __init__(self, cat: Catalog, window=(-3, 2), inner=None, enum_cap: int = 2**12, hom_cap: int = 2**12):
        super().__init__(cat, enum_cap, hom_cap)
        lo, hi = window
        if lo >= hi:
            raise ValueError("window needs lo < hi, got %r" % (window,))
        self.window = (lo, hi)
        self.inner = tuple(inner) if inner is not None else (lo + 1, hi - 1)
        if not (lo <= self.inner[0] <= self.inner[1] <= hi):
            raise ValueError("inner window %r is not inside %r" % (self.inner, self.window))
        self.universe = sorted(ObjClass.ind(i, s) for s in range(lo, hi + 1) for i in cat.ids)

    # -- window discipline ----------------------------------------------------
    def in_window(self, X: ObjClass, inner: bool = False) -> bool:
        lo, hi = self.inner if inner else self.window
        return all(lo <= s <= hi for _, s in X)

    def inner_universe(self) -> list[ObjClass]:
        return [X for X in self.universe if self.in_window(X, inner=True)]

    def shift(self, X: ObjClass, n: int) -> ObjClass:
        Y = X.shift(n)
        if not self.in_window(Y):
            lo, hi = self.window
            side = "overflow" if any(s > hi for _, s in Y) else "underflow"
            raise WindowError("window %s: %s[%d] leaves [%d, %d]" % (side, self.label(X), n, lo, hi))
        return Y

    # -- tables ---------------------------------------------------------------
    def _hom_ind(self, a, b) -> int:
        (m, i), (n, j) = a, b
        if j == i:
            return int(self.cat.hom_dim[m, n])
        if j == i + 1:
            return int(self.cat.ext_dim[m, n])
        return 0

    def _e_ind(self, c, a) -> int:
        # E(C, A) = Hom(C, A[1])
        return self._hom_ind(c, (a[0], a[1] + 1))

    def k0(self, X: ObjClass) -> tuple:
        v = [0] * self.cat.quiver.n
        for i, s in X:
            sign = -1 if s % 2 else 1
            for k, d in enumerate(self.cat.reps[i].dims):
                v[k] += sign * d
        return tuple(v)

    def hom_d(self, X: ObjClass, Y: ObjClass) -> tuple[int, list]:
        """Dimension of ``Hom(X, Y)`` and its component basis."""
        comps = self._components(X, Y, shift=0)
        return len(comps), comps

    def e_space_d(self, C: ObjClass, A: ObjClass) -> list:
        """Basis of ``Hom(C, A[1])``; entries are ``(i, j, kind, element)``."""
        return self._components(C, A, shift=1)

    def _components(self, X: ObjClass, Y: ObjClass, shift: int) -> list:
        out = []
        for i, (m, s) in enumerate(X):
            for j, (n, t) in enumerate(Y):
                t1 = t + shift
                M, N = self.cat.reps[m], self.cat.reps[n]
                if t1 == s:
                    out.extend((i, j, "hom", f) for f in hom_space(M, N))
                elif t1 == s + 1:
                    out.extend((i, j, "ext", e) for e in ext_space(M, N).basis())
        return out

    # -- complexes --------------------------------------------------------------
    def complex_of(self, X: ObjClass, tag: str = "X") -> Complex:
        pieces, arrows = {}, {}
        for k, (m, s) in enumerate(X):
            res = proj_resolution(self.cat.reps[m])
            pieces[(tag, k, 1)] = (-s - 1, res.P1)
            pieces[(tag, k, 0)] = (-s, res.P0)
            arrows[((tag, k, 1), (tag, k, 0))] = res.iota
        return Complex(self.cat.quiver, self.p, pieces, arrows)

    def _class_blocks(self, C: ObjClass, A: ObjClass, coords) -> dict:
        """Part-level blocks of the chain map ``C -> A[1]`` for a class."""
        coords = np.asarray(coords, dtype=la.DTYPE) % self.p
        comps = self.e_space_d(C, A)
        if len(comps) != len(coords):
            raise ValueError("expected %d coordinates, got %d" % (len(comps), len(coords)))
        blocks: dict = {}

        def add(key, f):
            blocks[key] = f if key not in blocks else blocks[key] + f

        for c, (i, j, kind, f) in zip(coords, comps):
            if not c:
                continue
            f = f.scale(int(c))
            (m, _), (n, _) = C[i], A[j]
            rm, rn = proj_resolution(self.cat.reps[m]), proj_resolution(self.cat.reps[n])
            if kind == "hom":
                f0, f1 = lift_to_resolutions(f, rm, rn)
                add((("C", i, 0), ("A", j, 0)), f0)
                add((("C", i, 1), ("A", j, 1)), f1.scale(-1))
            else:
                lift = lift_through(f, rn.eps)
                if lift is None:
                    raise ArithmeticError("cocycle does not lift to the projective cover")
                add((("C", i, 1), ("A", j, 0)), lift)
        return blocks

    def triangle(self, C: ObjClass, A: ObjClass, coords) -> Triangle:
        """Chain-level triangle ``A -> B -> C -> A[1]`` with ``B`` the cocone of the class."""
        Cx, Ax = self.complex_of(C, "C"), self.complex_of(A, "A")
        g = self._class_blocks(C, A, coords)
        pieces = dict(Cx.pieces)
        pieces.update(Ax.pieces)
        arrows = dict(Cx.arrows)
        arrows.update(Ax.arrows)
        arrows.update(g)
        B = Complex(self.cat.quiver, self.p, pieces, arrows)
        ident = lambda X: {(t, t): X.pieces[t][1].identity() for t in X.pieces}
        u = ChainMap(Ax, B, ident(Ax))
        v = ChainMap(B, Cx, ident(Cx))
        w = ChainMap(Cx, Ax.shifted(1), g)
        return Triangle(Ax, B, Cx, u, v, w)

    def decompose_complex(self, X: Complex) -> ObjClass:
        items = []
        for n in X.degrees:
            H = self.cohomology_rep(X, n)
            items.extend((i, -n) for i, _ in self.cat.decompose(H))
        return ObjClass(items)

    def cohomology_rep(self, X: Complex, n: int) -> Rep:
        return X.cohomology(n)

    def _core_middle(self, C_parts, A_parts, coords) -> ObjClass:
        tri = self.triangle(ObjClass(C_parts), ObjClass(A_parts), coords)
        return self.decompose_complex(tri.B)

    def realize_d(self, C: ObjClass, A: ObjClass, coords) -> Conflation:
        for X in (C, A):
            if not self.in_window(X):
                raise WindowError("object %s outside the window %r" % (self.label(X), self.window))
        tri = self.triangle(C, A, coords)
        B = self.decompose_complex(tri.B)
        if not self.in_window(B):
            raise WindowError("middle term %s leaves the window %r" % (self.label(B), self.window))
        return Conflation(A, B, C, tuple(int(x) for x in np.asarray(coords) % self.p), tri)

    def cone(self, X: ObjClass, Y: ObjClass, coords) -> ObjClass:
        """Cone of ``f: X -> Y`` given by its ``hom_d`` coordinates."""
        # f is also a class in E(X, Y[-1]) = Hom(X, Y); its middle is cone(f)[-1]
        mid = self.middle(X, Y.shift(-1), coords)
        return self.shift(mid, 1)

    def hom_k(self, X: ObjClass, Y: ObjClass) -> int:
        """``Hom`` computed in the homotopy category of projectives (independent of the tables)."""
        return HomK(self.complex_of(X), self.complex_of(Y)).dim
