"""Filtrations, lengths, simple objects, semibricks and wide subcategories.

All functions take an :class:`~extricat.category.ExtriCat` backend and work
with iso-classes (:class:`~extricat.objects.ObjClass`).  Objects with more
than ``bound`` indecomposable summands are never materialised; the bound
is a parameter of every closure and defaults per backend.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .category import ExtriCat, Subcat
from .objects import ZERO, ObjClass, multisets

log = logging.getLogger(__name__)


class NotFiltered(KeyError):
    pass


class UnsupportedError(NotImplementedError):
    pass


def default_bound(cat: ExtriCat) -> int:
    """Summand bound for filtration closures.

    For module categories the universe size, which exceeds the total
    dimension of every indecomposable for the Dynkin fixtures; for derived
    windows a small constant.
    """
    if cat.name == "module":
        return max(len(cat.universe), max(r.total_dim for r in cat.cat.reps))
    return 3


@dataclass
class FiltResult:
    X: tuple
    closure: Subcat
    length: dict
    pred: dict = field(repr=False, default_factory=dict)  # M -> (A, x) with A -> M -> x (or x -> M -> A)
    bound: int = 0
    side: str = "right"

    def stage(self, n: int) -> set:
        """``F_n`` truncated to the summand bound."""
        return {M for M, l in self.length.items() if l <= n}

    def filtration(self, M: ObjClass) -> list[ObjClass]:
        """``0 = M_0, M_1, ..., M_n = M`` along one minimal filtration."""
        if M not in self.length:
            raise NotFiltered(M)
        chain = [M]
        while chain[-1] != ZERO:
            chain.append(self.pred[chain[-1]][0])
        return chain[::-1]

    def factors(self, M: ObjClass) -> list[ObjClass]:
        if M not in self.length:
            raise NotFiltered(M)
        out = []
        while M != ZERO:
            A, x = self.pred[M]
            out.append(x)
            M = A
        return out[::-1]

    @property
    def max_length(self) -> int:
        return max(self.length.values(), default=0)


def _normalise(X) -> tuple:
    return tuple(sorted(set(x for x in X if not x.is_zero())))


def filt_closure(cat: ExtriCat, X, bound: int | None = None, side: str = "right") -> FiltResult:
    """``F_n = F_{n-1} * (X ∪ {0})`` (``side='right'``) or ``(X ∪ {0}) * F_{n-1}``.

    Semi-naive: only objects first reached at step ``n-1`` are extended at
    step ``n``.  Lengths are minimal ``n``.
    """
    X = _normalise(X)
    if bound is None:
        bound = default_bound(cat)
    key = ("filt", X, bound, side)
    cache = cat.__dict__.setdefault("_filt_cache", {})
    if key in cache:
        return cache[key]
    length = {ZERO: 0}
    pred: dict = {}
    frontier = [ZERO]
    n = 0
    while frontier:
        n += 1
        new = []
        for A in frontier:
            for x in X:
                mids = cat.middles(x, A) if side == "right" else cat.middles(A, x)
                for M in sorted(mids):
                    if M.count > bound or M in length:
                        continue
                    length[M] = n
                    pred[M] = (A, x)
                    new.append(M)
        frontier = new
    closure = Subcat.of(length)
    res = FiltResult(X, closure, length, pred, bound, side)
    cache[key] = res
    log.debug("Filt of %d objects: %d members, %d objects", len(X), len(closure), len(length))
    return res


def x_length(cat: ExtriCat, M: ObjClass, X, bound: int | None = None) -> int:
    res = filt_closure(cat, X, bound)
    if M not in res.length:
        raise NotFiltered("%s is not filtered by the given set" % cat.label(M))
    return res.length[M]


def star(cat: ExtriCat, D: Subcat, D2: Subcat, bound: int = 3) -> Subcat:
    """``D * D2``: middles of ``d -> m -> d2`` with at most ``bound`` summands in ``d ⊕ d2``."""
    found = set()
    left = list(D.objects(bound))
    right = list(D2.objects(bound))
    for d in left:
        for d2 in right:
            if d.count + d2.count > bound:
                continue
            for M in cat.middles(d2, d):
                found.add(M)
    return Subcat.of(found)


# -- simple objects ------------------------------------------------------------


def split_pairs(cat: ExtriCat, M: ObjClass, support, bound: int):
    """Pairs ``(A, C)`` of nonzero sums over ``support`` with ``k0(A) + k0(C) = k0(M)``."""
    target = cat.k0(M)
    support = sorted(support)
    if cat.name == "module":
        objs = list(_dominated_sums(cat, support, target))
    else:
        objs = list(multisets(support, bound, include_zero=False))
    by_k0: dict = {}
    for X in objs:
        by_k0.setdefault(cat.k0(X), []).append(X)
    for A in objs:
        rest = tuple(t - a for t, a in zip(target, cat.k0(A)))
        for C in by_k0.get(rest, ()):
            yield A, C


def _dominated_sums(cat, support, cap):
    """Nonzero sums over ``support`` whose dimension vector is at most ``cap``."""
    dims = [cat.k0(s) for s in support]

    def rec(i, cur, items):
        if i == len(support):
            if items:
                yield ObjClass(items)
            return
        yield from rec(i + 1, cur, items)
        k = 1
        while True:
            nxt = tuple(c + k * d for c, d in zip(cur, dims[i]))
            if any(a > b for a, b in zip(nxt, cap)) or not any(dims[i]):
                break
            yield from rec(i + 1, nxt, items + [support[i][0]] * k)
            k += 1

    yield from rec(0, tuple(0 for _ in cap), [])


def is_simple(cat: ExtriCat, M: ObjClass, scope: Subcat | None = None, bound: int = 3) -> bool:
    """No conflation ``A -> M -> C`` with ``A, C`` nonzero and all terms in ``scope``."""
    if M.is_zero():
        return False
    scope = scope or cat.whole
    if not scope.contains(M):
        raise ValueError("%s is not in the scope" % cat.label(M))
    if M.count > 1:
        return False  # split conflation of two summands
    for A, C in split_pairs(cat, M, scope.support, bound):
        if M in cat.middles(C, A):
            return False
    return True


def sim(cat: ExtriCat, D: Subcat, bound: int = 3) -> set:
    return {M for M in D.members() if is_simple(cat, M, D, bound)}


# -- bricks and semibricks ----------------------------------------------------------


def is_brick(cat: ExtriCat, M: ObjClass) -> bool:
    return cat.is_brick(M)


def is_semibrick(cat: ExtriCat, X) -> bool:
    X = _normalise(X)
    if not all(cat.is_brick(x) for x in X):
        return False
    return all(cat.hom_dim(a, b) == 0 and cat.hom_dim(b, a) == 0 for a, b in combinations(X, 2))


def is_simple_semibrick(cat: ExtriCat, X, bound: int | None = None) -> bool:
    X = _normalise(X)
    if not is_semibrick(cat, X):
        return False
    F = filt_closure(cat, X, bound).closure
    return all(is_simple(cat, x, F) for x in X)


def semibricks(cat: ExtriCat, members=None) -> list[tuple]:
    """All semibricks inside ``members`` (default: the universe), by backtracking."""
    bricks = [x for x in (members or cat.universe) if cat.is_brick(x)]
    out = []

    def rec(i, chosen):
        out.append(tuple(chosen))
        for j in range(i, len(bricks)):
            b = bricks[j]
            if all(cat.hom_dim(b, c) == 0 and cat.hom_dim(c, b) == 0 for c in chosen):
                rec(j + 1, chosen + [b])

    rec(0, [])
    return out


# -- admissible morphisms and wide subcategories ---------------------------------------


def _kic(cat, f):
    """Iso-classes of kernel, image and cokernel of a module map (cached)."""
    cache = cat.__dict__.setdefault("_kic_cache", {})
    key = (f.source.key, f.target.key, f.vector().tobytes())
    hit = cache.get(key)
    if hit is None:
        K, _ = f.kernel()
        I, _ = f.image()
        Q, _ = f.cokernel()
        hit = (cat.decompose(K), cat.decompose(I), cat.decompose(Q))
        cache[key] = hit
    return hit


def is_admissible(cat: ExtriCat, f, scope: Subcat | None = None, mode: str = "scoped") -> bool:
    """Whether ``f = g h`` with ``h`` a deflation and ``g`` an inflation.

    ``mode='scoped'`` asks for conflations with all terms in ``scope``;
    in an abelian ambient this is exactly: kernel, image and cokernel of
    ``f`` lie in ``scope``.  ``mode='ambient'`` allows any intermediate
    object and is always satisfied in module and triangulated categories.
    """
    if mode not in ("scoped", "ambient"):
        raise ValueError("mode must be 'scoped' or 'ambient'")
    if mode == "ambient":
        return True
    if cat.name != "module":
        raise UnsupportedError("scoped admissibility needs explicit morphisms (module backend)")
    scope = scope or cat.whole
    return all(scope.contains(X) for X in _kic(cat, f))


def is_extension_closed(cat: ExtriCat, D: Subcat, bound: int | None = None) -> bool:
    # Filt(D) is the smallest extension-closed subcategory containing D
    return filt_closure(cat, D.members(), bound).closure == D


def is_wide(cat: ExtriCat, D: Subcat, mode: str = "scoped", bound: int | None = None) -> bool:
    if not is_extension_closed(cat, D, bound):
        return False
    if mode == "ambient":
        return True
    for x in D.members():
        for y in D.members():
            for f in cat.morphisms(x, y):
                if not is_admissible(cat, f, D, mode):
                    return False
    return True


def is_length_wide(cat: ExtriCat, D: Subcat, mode: str = "scoped", bound: int | None = None) -> bool:
    if not is_wide(cat, D, mode, bound):
        return False
    return filt_closure(cat, sim(cat, D), bound).closure == D


def verify_theorem_main(cat: ExtriCat, mode: str = "scoped", max_universe: int = 12) -> dict:
    """Exhaustive check of the simple-semibrick / length-wide correspondence."""
    U = sorted(cat.universe)
    if len(U) > max_universe:
        raise OverflowError("universe has %d indecomposables, subset enumeration limited to %d" % (len(U), max_universe))
    violations = []
    simple_sb = [X for X in semibricks(cat, U) if is_simple_semibrick(cat, X)]
    lw = []
    for k in range(len(U) + 1):
        for sup in combinations(U, k):
            D = Subcat(frozenset(sup))
            if is_length_wide(cat, D, mode):
                lw.append(D)
    lw_set = set(lw)
    image = set()
    for X in simple_sb:
        D = filt_closure(cat, X).closure
        image.add(D)
        if D not in lw_set:
            violations.append("Filt(%s) is not length wide" % _fmt(cat, X))
        if sim(cat, D) != set(X):
            violations.append("sim(Filt(%s)) = %s" % (_fmt(cat, X), _fmt(cat, sim(cat, D))))
    back = set()
    for D in lw:
        S = tuple(sorted(sim(cat, D)))
        back.add(S)
        if filt_closure(cat, S).closure != D:
            violations.append("Filt(sim(%s)) differs" % _fmt(cat, D.members()))
        if not is_simple_semibrick(cat, S):
            violations.append("sim(%s) is not a simple semibrick" % _fmt(cat, D.members()))
    if image != lw_set or back != set(simple_sb) or len(simple_sb) != len(lw):
        violations.append("maps are not mutually inverse (%d simple semibricks, %d length wide)" % (len(simple_sb), len(lw)))
    return {
        "simple_semibricks": [[cat.label(x) for x in X] for X in simple_sb],
        "length_wide": [[cat.label(x) for x in D.members()] for D in lw],
        "bijection_ok": not violations,
        "violations": violations,
    }


def _fmt(cat, X) -> str:
    return "{" + ", ".join(cat.label(x) for x in sorted(X)) + "}"
