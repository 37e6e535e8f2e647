"""Quivers, their representations over GF(p), intertwiners and Hom spaces."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .linalg import DTYPE


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic quiver; vertices are referred to by index internally."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex labels")
        if len({a.name for a in self.arrows}) != len(self.arrows):
            raise QuiverError("duplicate arrow names")
        n = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise QuiverError("arrow %r has an endpoint outside the vertex set" % a.name)
        self.topological_order()  # raises on cycles

    @classmethod
    def from_labels(cls, vertices, arrows) -> "Quiver":
        """``arrows`` is a sequence of ``(name, source_label, target_label)``."""
        index = {v: i for i, v in enumerate(vertices)}
        out = []
        for name, s, t in arrows:
            if s not in index or t not in index:
                raise QuiverError("arrow %r refers to an unknown vertex" % name)
            out.append(Arrow(name, index[s], index[t]))
        return cls(tuple(vertices), tuple(out))

    @classmethod
    def linear(cls, n: int, leftward: bool = True) -> "Quiver":
        """Type A_n with vertices ``1..n``: ``1 <- 2 <- ... <- n`` or ``1 -> ... -> n``."""
        verts = [str(i) for i in range(1, n + 1)]
        arrows = []
        for i in range(1, n):
            name = chr(ord("a") + i - 1)
            if leftward:
                arrows.append((name, str(i + 1), str(i)))
            else:
                arrows.append((name, str(i), str(i + 1)))
        return cls.from_labels(verts, arrows)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def topological_order(self) -> list[int]:
        indeg = [0] * self.n
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in range(self.n) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        ready.append(a.target)
        if len(order) != self.n:
            raise QuiverError("quiver has a directed cycle")
        return order

    def out_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    @cached_property
    def paths(self) -> list[tuple[int, int, tuple[str, ...]]]:
        """All paths as ``(source, target, arrow names)``, trivial ones included."""
        out = []

        def walk(start, cur, names):
            out.append((start, cur, names))
            for a in self.out_arrows(cur):
                walk(start, a.target, names + (a.name,))

        for v in range(self.n):
            walk(v, v, ())
        return out

    def paths_between(self, s: int, t: int) -> list[tuple[str, ...]]:
        return [names for (a, b, names) in self.paths if a == s and b == t]


def load_quiver_spec(text: str) -> tuple[Quiver, int]:
    """Parse the JSON quiver spec format; returns the quiver and the prime."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverError("malformed JSON at line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from exc
    if not isinstance(data, dict):
        raise QuiverError("quiver spec must be a JSON object")
    extra = set(data) - {"field", "vertices", "arrows"}
    if extra:
        raise QuiverError("unknown keys in quiver spec: %s" % ", ".join(sorted(extra)))
    p = 2
    if "field" in data:
        fld = data["field"]
        if not isinstance(fld, dict) or set(fld) - {"p"}:
            raise QuiverError("'field' must be an object with the single key 'p'")
        p = fld.get("p", 2)
        if not isinstance(p, int) or not la.is_prime(p):
            raise QuiverError("field characteristic must be a prime, got %r" % (p,))
    if "vertices" not in data or "arrows" not in data:
        raise QuiverError("quiver spec needs 'vertices' and 'arrows'")
    verts = data["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise QuiverError("'vertices' must be a list of strings")
    arrows = []
    for a in data["arrows"]:
        if not isinstance(a, dict) or set(a) != {"name", "from", "to"}:
            raise QuiverError("each arrow needs exactly the keys 'name', 'from', 'to'")
        arrows.append((a["name"], a["from"], a["to"]))
    return Quiver.from_labels(verts, arrows), p


class Rep:
    """A finite-dimensional representation of a quiver over GF(p).

    ``maps[name]`` has shape ``(dim[target], dim[source])``.
    """

    __slots__ = ("quiver", "p", "dims", "maps", "_key")

    def __init__(self, quiver: Quiver, p: int, dims, maps=None):
        self.quiver = quiver
        self.p = p
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != quiver.n or min(self.dims, default=0) < 0:
            raise ValueError("dimension vector does not match the quiver")
        maps = dict(maps or {})
        self.maps = {}
        for a in quiver.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = maps.pop(a.name, None)
            if m is None:
                m = la.zeros(*shape)
            m = np.asarray(m, dtype=DTYPE).reshape(shape) % p
            self.maps[a.name] = m
        if maps:
            raise ValueError("maps given for unknown arrows: %s" % sorted(maps))
        self._key = None

    @property
    def key(self):
        if self._key is None:
            self._key = (self.quiver, self.p, self.dims, tuple(self.maps[a.name].tobytes() for a in self.quiver.arrows))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Rep) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "Rep(dims=%s)" % (self.dims,)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    # -- standard objects ---------------------------------------------------

    @classmethod
    def zero(cls, quiver: Quiver, p: int) -> "Rep":
        return cls(quiver, p, [0] * quiver.n)

    @classmethod
    def simple(cls, quiver: Quiver, p: int, v: int) -> "Rep":
        dims = [0] * quiver.n
        dims[v] = 1
        return cls(quiver, p, dims)

    @classmethod
    def projective(cls, quiver: Quiver, p: int, v: int) -> "Rep":
        """Indecomposable projective at ``v``: basis at ``w`` = paths ``v -> w``."""
        basis = [quiver.paths_between(v, w) for w in range(quiver.n)]
        maps = {}
        for a in quiver.arrows:
            m = la.zeros(len(basis[a.target]), len(basis[a.source]))
            for j, path in enumerate(basis[a.source]):
                m[basis[a.target].index(path + (a.name,)), j] = 1
            maps[a.name] = m
        return cls(quiver, p, [len(b) for b in basis], maps)

    @classmethod
    def injective(cls, quiver: Quiver, p: int, v: int) -> "Rep":
        """Indecomposable injective at ``v``: basis at ``w`` = paths ``w -> v``."""
        basis = [quiver.paths_between(w, v) for w in range(quiver.n)]
        maps = {}
        for a in quiver.arrows:
            m = la.zeros(len(basis[a.target]), len(basis[a.source]))
            for j, path in enumerate(basis[a.source]):
                if path and path[0] == a.name:
                    m[basis[a.target].index(path[1:]), j] = 1
            maps[a.name] = m
        return cls(quiver, p, [len(b) for b in basis], maps)

    # -- constructions ------------------------------------------------------

    def identity(self) -> "RepMap":
        return RepMap(self, self, {v: la.eye(d) for v, d in enumerate(self.dims)})

    def zero_map(self, target: "Rep") -> "RepMap":
        return RepMap(self, target, {v: la.zeros(target.dims[v], d) for v, d in enumerate(self.dims)})


def direct_sum(reps, quiver: Quiver | None = None, p: int | None = None) -> Rep:
    reps = list(reps)
    if not reps:
        if quiver is None:
            raise ValueError("empty direct sum needs the quiver")
        return Rep.zero(quiver, p)
    q, p = reps[0].quiver, reps[0].p
    dims = [sum(r.dims[v] for r in reps) for v in range(q.n)]
    maps = {}
    for a in q.arrows:
        m = la.zeros(dims[a.target], dims[a.source])
        r0 = c0 = 0
        for r in reps:
            blk = r.maps[a.name]
            m[r0 : r0 + blk.shape[0], c0 : c0 + blk.shape[1]] = blk
            r0 += blk.shape[0]
            c0 += blk.shape[1]
        maps[a.name] = m
    return Rep(q, p, dims, maps)


def sum_injections(reps) -> list["RepMap"]:
    """Canonical inclusions of each summand into ``direct_sum(reps)``."""
    total = direct_sum(reps)
    out = []
    offsets = [0] * total.quiver.n
    for r in reps:
        blocks = {}
        for v in range(total.quiver.n):
            b = la.zeros(total.dims[v], r.dims[v])
            b[offsets[v] : offsets[v] + r.dims[v], :] = la.eye(r.dims[v])
            blocks[v] = b
            offsets[v] += r.dims[v]
        out.append(RepMap(r, total, blocks))
    return out


class RepMap:
    """An intertwiner; ``blocks[v]`` has shape ``(target.dims[v], source.dims[v])``."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Rep, target: Rep, blocks, check: bool = True):
        self.source = source
        self.target = target
        p = source.p
        self.blocks = {
            v: np.asarray(blocks[v], dtype=DTYPE).reshape(target.dims[v], source.dims[v]) % p
            for v in range(source.quiver.n)
        }
        if check and not self.commutes():
            raise ValueError("intertwiner squares do not commute")

    @property
    def p(self) -> int:
        return self.source.p

    def commutes(self) -> bool:
        p = self.p
        for a in self.source.quiver.arrows:
            lhs = la.mul(self.blocks[a.target], self.source.maps[a.name], p)
            rhs = la.mul(self.target.maps[a.name], self.blocks[a.source], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def vector(self) -> np.ndarray:
        parts = [self.blocks[v].reshape(-1) for v in range(self.source.quiver.n)]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=DTYPE)

    @classmethod
    def from_vector(cls, source: Rep, target: Rep, vec, check: bool = False) -> "RepMap":
        blocks = {}
        i = 0
        for v in range(source.quiver.n):
            k = target.dims[v] * source.dims[v]
            blocks[v] = np.asarray(vec[i : i + k], dtype=DTYPE).reshape(target.dims[v], source.dims[v])
            i += k
        return cls(source, target, blocks, check=check)

    def compose(self, first: "RepMap") -> "RepMap":
        """``self ∘ first``."""
        p = self.p
        return RepMap(
            first.source,
            self.target,
            {v: la.mul(self.blocks[v], first.blocks[v], p) for v in self.blocks},
            check=False,
        )

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, {v: self.blocks[v] + other.blocks[v] for v in self.blocks}, check=False)

    def __sub__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, {v: self.blocks[v] - other.blocks[v] for v in self.blocks}, check=False)

    def scale(self, c: int) -> "RepMap":
        return RepMap(self.source, self.target, {v: c * b for v, b in self.blocks.items()}, check=False)

    def is_zero(self) -> bool:
        return all(not b.any() for b in self.blocks.values())

    def rank(self) -> int:
        return sum(la.rank(b, self.p) for b in self.blocks.values())

    def is_injective(self) -> bool:
        return self.rank() == self.source.total_dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.total_dim

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def power(self, k: int) -> "RepMap":
        return RepMap(self.source, self.target, {v: la.mat_pow(b, k, self.p) for v, b in self.blocks.items()}, check=False)

    def kernel(self) -> tuple[Rep, "RepMap"]:
        bases = {v: la.kernel_matrix(b, self.p) for v, b in self.blocks.items()}
        return subrep(self.source, bases)

    def image(self) -> tuple[Rep, "RepMap"]:
        bases = {v: la.column_space(b, self.p) for v, b in self.blocks.items()}
        return subrep(self.target, bases)

    def cokernel(self) -> tuple[Rep, "RepMap"]:
        bases = {v: b for v, b in self.blocks.items()}
        return quotient(self.target, bases)


# -- sub and quotient representations ---------------------------------------


def subrep(M: Rep, bases) -> tuple[Rep, RepMap]:
    """Subrepresentation spanned at each vertex by the columns of ``bases[v]``.

    The columns must be linearly independent and the family arrow-stable.
    """
    p, q = M.p, M.quiver
    bases = {v: la.as_cols(bases[v], M.dims[v]) for v in range(q.n)}
    dims = [bases[v].shape[1] for v in range(q.n)]
    maps = {}
    for a in q.arrows:
        img = la.mul(M.maps[a.name], bases[a.source], p)
        X = la.solve_matrix(bases[a.target], img, p)
        if X is None:
            raise ValueError("subspace family is not stable under arrow %r" % a.name)
        maps[a.name] = X
    S = Rep(q, p, dims, maps)
    return S, RepMap(S, M, bases, check=False)


def quotient(M: Rep, span) -> tuple[Rep, RepMap]:
    """``M / U`` where ``U_v`` is spanned by the columns of ``span[v]``."""
    p, q = M.p, M.quiver
    quots = {v: la.Quotient(span[v], M.dims[v], p) for v in range(q.n)}
    proj = {}
    lift = {}
    for v, Qv in quots.items():
        n = M.dims[v]
        proj[v] = np.stack([Qv.coords(e) for e in la.eye(n)], axis=1) if n else la.zeros(Qv.dim, 0)
        proj[v] = proj[v].reshape(Qv.dim, n)
        L = la.zeros(n, Qv.dim)
        for j, i in enumerate(Qv.free):
            L[i, j] = 1
        lift[v] = L
    maps = {}
    for a in q.arrows:
        maps[a.name] = la.mul(proj[a.target], la.mul(M.maps[a.name], lift[a.source], p), p)
    Q = Rep(q, p, [quots[v].dim for v in range(q.n)], maps)
    return Q, RepMap(M, Q, proj, check=False)


# -- Hom spaces ---------------------------------------------------------------

_HOM_CACHE: dict = {}


def hom_space(M: Rep, N: Rep) -> list[RepMap]:
    """A basis of ``Hom(M, N)`` from the kernel of the commuting-square system."""
    if M.quiver != N.quiver or M.p != N.p:
        raise ValueError("representations live over different quivers or fields")
    ck = (M.key, N.key)
    hit = _HOM_CACHE.get(ck)
    if hit is not None:
        return [RepMap(M, N, h.blocks, check=False) for h in hit]
    p, q = M.p, M.quiver
    offs = []
    total = 0
    for v in range(q.n):
        offs.append(total)
        total += N.dims[v] * M.dims[v]
    rows = []
    for a in q.arrows:
        s, t = a.source, a.target
        nrow = N.dims[t] * M.dims[s]
        if nrow == 0:
            continue
        eq = la.zeros(nrow, total)
        # X_t M_a - N_a X_s = 0, row-major vec(A X B) = (A kron B^T) vec(X)
        if N.dims[t] * M.dims[t]:
            eq[:, offs[t] : offs[t] + N.dims[t] * M.dims[t]] += np.kron(la.eye(N.dims[t]), M.maps[a.name].T)
        if N.dims[s] * M.dims[s]:
            eq[:, offs[s] : offs[s] + N.dims[s] * M.dims[s]] -= np.kron(N.maps[a.name], la.eye(M.dims[s]))
        rows.append(eq % p)
    if total == 0:
        basis = []
    elif rows:
        basis = la.kernel_basis(np.concatenate(rows, axis=0), p)
    else:
        basis = list(la.eye(total))
    out = [RepMap.from_vector(M, N, v) for v in basis]
    if len(_HOM_CACHE) > 200000:
        _HOM_CACHE.clear()
    _HOM_CACHE[ck] = out
    return [RepMap(M, N, h.blocks, check=False) for h in out]


def hom_dim(M: Rep, N: Rep) -> int:
    return len(hom_space(M, N))


def coordinates(f: RepMap, basis: list[RepMap]) -> np.ndarray | None:
    """Coordinates of ``f`` in a basis of a Hom space (``None`` if outside the span)."""
    if not basis:
        return np.zeros(0, dtype=DTYPE) if f.is_zero() else None
    B = np.stack([b.vector() for b in basis], axis=1)
    return la.solve(B, f.vector(), f.p)


def combination(coeffs, basis: list[RepMap], M: Rep, N: Rep) -> RepMap:
    p = M.p
    blocks = {v: la.zeros(N.dims[v], M.dims[v]) for v in range(M.quiver.n)}
    for c, b in zip(coeffs, basis):
        if c % p:
            for v in blocks:
                blocks[v] = blocks[v] + int(c) * b.blocks[v]
    return RepMap(M, N, blocks, check=False)


# -- isomorphism and decomposition ------------------------------------------


def is_isomorphic(M: Rep, N: Rep, enum_limit: int = 2**16) -> bool:
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    if M == N:
        return True
    basis = hom_space(M, N)
    if not basis:
        return False
    for b in basis:
        if b.is_iso():
            return True
    p = M.p
    if p ** len(basis) <= enum_limit:
        for c in la.all_vectors(len(basis), p):
            if c.any() and combination(c, basis, M, N).is_iso():
                return True
        return False
    return _multiset_iso(decompose_rep(M), decompose_rep(N))


def _multiset_iso(left: list[Rep], right: list[Rep]) -> bool:
    if len(left) != len(right):
        return False
    remaining = list(right)
    for L in left:
        for i, R in enumerate(remaining):
            if is_isomorphic(L, R):
                del remaining[i]
                break
        else:
            return False
    return True


def _split_candidates(basis: list[RepMap], p: int, seed: int, enum_limit: int):
    yield from basis
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            yield basis[i] + basis[j]
    if p**n <= enum_limit:
        for c in la.all_vectors(n, p):
            if np.count_nonzero(c) > 2:
                yield combination(c, basis, basis[0].source, basis[0].target)
    else:
        rng = random.Random(seed)
        for _ in range(512):
            c = [rng.randrange(p) for _ in range(n)]
            yield combination(c, basis, basis[0].source, basis[0].target)


def fitting_split(M: Rep, enum_limit: int = 2**12, seed: int = 0):
    """Try to split ``M`` with Fitting's lemma.

    Returns ``(K, I)`` with ``M ≅ K ⊕ I`` both nonzero, or ``None`` when no
    tested endomorphism is anything but scalar plus nilpotent.  The search is
    exhaustive whenever ``p ** dim End(M) <= enum_limit``.
    """
    basis = hom_space(M, M)
    if len(basis) <= 1:
        return None
    p = M.p
    N = M.total_dim
    ident = M.identity()
    for phi in _split_candidates(basis, p, seed, enum_limit):
        for lam in range(p):
            psi = phi - ident.scale(lam) if lam else phi
            psiN = psi.power(N)
            r = psiN.rank()
            if 0 < r < N:
                K, _ = psiN.kernel()
                I, _ = psiN.image()
                return K, I
    return None


def decompose_rep(M: Rep, enum_limit: int = 2**12) -> list[Rep]:
    """Indecomposable summands of ``M`` (as abstract representations)."""
    if M.is_zero():
        return []
    parts = fitting_split(M, enum_limit)
    if parts is None:
        return [M]
    K, I = parts
    return decompose_rep(K, enum_limit) + decompose_rep(I, enum_limit)


def is_indecomposable(M: Rep, enum_limit: int = 2**12) -> bool:
    return not M.is_zero() and fitting_split(M, enum_limit) is None


def endomorphisms(M: Rep):
    """Every element of ``End(M)`` (exhaustive; callers guard the size)."""
    basis = hom_space(M, M)
    for c in la.all_vectors(len(basis), M.p):
        yield combination(c, basis, M, M)


def is_brick_rep(M: Rep, guard: int = 6) -> bool:
    """Every nonzero endomorphism invertible; exhaustive up to ``p ** guard`` elements."""
    if M.is_zero():
        return False
    d = len(hom_space(M, M))
    if d > guard:
        raise OverflowError("End(M) has dimension %d, exhaustive brick check limited to %d" % (d, guard))
    for f in endomorphisms(M):
        if not f.is_zero() and not f.is_iso():
            return False
    return True
