"""Property suites for filtration lengths and sampled long exact sequences.

Each suite returns ``{"checked": n, "violations": [...]}`` so callers can
aggregate and report without raising.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import linalg as la
from .category import ExtriCat, Subcat
from .core import filt_closure, semibricks, star
from .cotorsion import PERP_KINDS, perp
from .exact import ExtSpace, proj_resolution, pullback, pushforward
from .objects import ObjClass, multisets
from .reps import coordinates, hom_space


def _result(checked, violations):
    return {"checked": checked, "violations": violations}


def _ends(F, max_count):
    return sorted(M for M in F.length if 0 < M.count <= max_count)


# -- filtration lemmas ------------------------------------------------------------


def check_subadditivity(cat: ExtriCat, X, ends: int = 3) -> dict:
    """``l(B) <= l(A) + l(C)`` for conflations with filtered ends (``A ⊕ C`` at most ``ends`` summands)."""
    F = filt_closure(cat, X)
    objs = _ends(F, ends)
    n, bad = 0, []
    for A in objs:
        for C in objs:
            if A.count + C.count > ends:
                continue
            for conf in cat.conflations(C, A):
                n += 1
                B = conf.B
                if B not in F.length:
                    bad.append("middle %s of filtered ends is not filtered" % cat.label(B))
                elif F.length[B] > F.length[A] + F.length[C]:
                    bad.append("l(%s)=%d > l(%s)+l(%s)" % (cat.label(B), F.length[B], cat.label(A), cat.label(C)))
    return _result(n, bad)


def check_brick_source(cat, X, max_count: int = 2) -> dict:
    """Nonzero ``x -> M`` is injective with ``l(coker) = l(M) - 1``; dually for ``M -> x``."""
    F = filt_closure(cat, X)
    n, bad = 0, []
    for x in sorted(set(X)):
        for M in _ends(F, max_count):
            for f in cat.morphisms(x, M, nonzero=True):
                n += 1
                if not f.is_injective():
                    bad.append("map %s -> %s is not an inflation" % (cat.label(x), cat.label(M)))
                    continue
                H = cat.decompose(f.cokernel()[0])
                if F.length.get(H) != F.length[M] - 1:
                    bad.append("l(cone) = %s for %s -> %s" % (F.length.get(H), cat.label(x), cat.label(M)))
            for f in cat.morphisms(M, x, nonzero=True):
                n += 1
                if not f.is_surjective():
                    bad.append("map %s -> %s is not a deflation" % (cat.label(M), cat.label(x)))
                    continue
                K = cat.decompose(f.kernel()[0])
                if F.length.get(K) != F.length[M] - 1:
                    bad.append("l(cocone) = %s for %s -> %s" % (F.length.get(K), cat.label(M), cat.label(x)))
    return _result(n, bad)


def check_summand_additivity(cat: ExtriCat, X) -> dict:
    """``M = A ⊕ B`` in the closure forces ``A, B`` filtered with ``l(M) = l(A) + l(B)``."""
    F = filt_closure(cat, X)
    n, bad = 0, []
    for M in F.length:
        if M.count < 2:
            continue
        items = list(M)
        seen = set()
        for k in range(1, len(items)):
            for idx in combinations(range(len(items)), k):
                A = ObjClass([items[i] for i in idx])
                B = M.minus(A)
                if (A, B) in seen:
                    continue
                seen.add((A, B))
                n += 1
                if A not in F.length or B not in F.length:
                    bad.append("summand of %s not filtered" % cat.label(M))
                elif F.length[M] != F.length[A] + F.length[B]:
                    bad.append("l(%s)=%d != l(%s)+l(%s)" % (cat.label(M), F.length[M], cat.label(A), cat.label(B)))
    return _result(n, bad)


def check_left_right(cat: ExtriCat, X) -> dict:
    """Filtration stages built from either side agree, lengths included."""
    r = filt_closure(cat, X, side="right")
    l = filt_closure(cat, X, side="left")
    bad = []
    if r.length != l.length:
        diff = sorted(set(r.length.items()) ^ set(l.length.items()))
        bad.append("left/right stages differ at %s" % ", ".join("%s:%d" % (cat.label(M), k) for M, k in diff[:5]))
    return _result(len(r.length), bad)


def check_perp_stability(cat: ExtriCat, X) -> dict:
    """Perpendicular categories of ``X`` and of ``Filt(X)`` coincide, all four kinds."""
    members = filt_closure(cat, X).closure.members()
    bad = []
    for kind in PERP_KINDS:
        if perp(cat, X, kind) != perp(cat, members, kind):
            bad.append("%s perpendicular of X and Filt(X) differ" % kind)
    return _result(len(PERP_KINDS), bad)


def check_stage_lengths(cat: ExtriCat, X) -> dict:
    """Stage ``i`` of every reconstructed minimal filtration has length ``i``."""
    F = filt_closure(cat, X)
    n, bad = 0, []
    for M in F.length:
        chain = F.filtration(M)
        n += 1
        if [F.length[Y] for Y in chain] != list(range(len(chain))):
            bad.append("filtration of %s has stage lengths %s" % (cat.label(M), [F.length[Y] for Y in chain]))
    return _result(n, bad)


def check_smallest_closure(cat: ExtriCat, X, bound: int = 3) -> dict:
    """``Filt(X)`` is extension closed and inside every extension-closed support containing ``X``."""
    F = filt_closure(cat, X).closure
    bad = []
    if not star(cat, F, F, bound) <= F:
        bad.append("Filt(X) * Filt(X) leaves Filt(X)")
    n = 1
    xs = Subcat.of(X)
    for k in range(len(cat.universe) + 1):
        for sup in combinations(cat.universe, k):
            D = Subcat(frozenset(sup))
            if not xs <= D or not star(cat, D, D, bound) <= D:
                continue
            n += 1
            if not F <= D:
                bad.append("extension-closed %s misses part of Filt(X)" % [cat.label(m) for m in D.members()])
    return _result(n, bad)


def lemma_suites(cat, semibrick_sets=None, smallest: bool = True) -> dict:
    """All filtration property suites over every semibrick of the universe."""
    if semibrick_sets is None:
        semibrick_sets = [X for X in semibricks(cat) if X]
    suites = {
        "subadditivity": check_subadditivity,
        "stage_lengths": check_stage_lengths,
        "summand_additivity": check_summand_additivity,
        "left_right": check_left_right,
        "perp_stability": check_perp_stability,
    }
    if cat.name == "module":
        suites["brick_source"] = check_brick_source
    if smallest:
        suites["smallest_closure"] = check_smallest_closure
    out = {}
    for name, fn in suites.items():
        checked, bad = 0, []
        for X in semibrick_sets:
            r = fn(cat, X)
            checked += r["checked"]
            bad.extend("X=%s: %s" % ([cat.label(x) for x in X], v) for v in r["violations"])
        out[name] = _result(checked, bad)
    return out


# -- long exact sequences ----------------------------------------------------------


def _matrix(basis_src, fn, basis_tgt, n_rows):
    cols = []
    for b in basis_src:
        c = coordinates(fn(b), basis_tgt)
        if c is None:
            raise ArithmeticError("image outside the target basis")
        cols.append(c)
    return np.stack(cols, axis=1) if cols else la.zeros(n_rows, 0)


def _ext_matrix(src: ExtSpace, fn, tgt: ExtSpace):
    cols = [fn(e) for e in la.eye(src.dim)]
    return np.stack(cols, axis=1) if cols else la.zeros(tgt.dim, 0)


def _slots(dims, maps, p):
    """Check ``rank in + rank out = dim`` and ``out ∘ in = 0`` at each inner slot."""
    bad = []
    ranks = [la.rank(m, p) for m in maps]
    for k in range(1, len(maps)):
        comp = la.mul(maps[k], maps[k - 1], p)
        if comp.size and comp.any():
            bad.append("composite at slot %d is nonzero" % k)
        if ranks[k - 1] + ranks[k] != dims[k]:
            bad.append("slot %d: rank %d + rank %d != dim %d" % (k, ranks[k - 1], ranks[k], dims[k]))
    return bad


def module_exactness(cat, conf, T) -> list:
    """Both Hom/Ext sequences of a module conflation tested against ``T``."""
    seq = conf.witness
    p = cat.p
    ext = cat.ext(conf.C, conf.A)
    res_C, eta = ext.res, ext.cocycle(conf.coords)
    A, B, C, x, y = seq.A, seq.B, seq.C, seq.x, seq.y
    X = cat.rep(T)
    # contravariant: Hom(C,X) -> Hom(B,X) -> Hom(A,X) -> E(C,X) -> E(B,X)
    hC, hB, hA = hom_space(C, X), hom_space(B, X), hom_space(A, X)
    eC, eB = ExtSpace(res_C, X), ExtSpace(proj_resolution(B), X)
    m1 = _matrix(hC, lambda g: g.compose(y), hB, len(hB))
    m2 = _matrix(hB, lambda g: g.compose(x), hA, len(hA))
    m3 = np.stack([eC.coords(h.compose(eta)) for h in hA], axis=1) if hA else la.zeros(eC.dim, 0)
    m4 = _ext_matrix(eC, lambda c: pullback(eC, c, y, eB), eB)
    bad = ["contravariant " + v for v in _slots([len(hC), len(hB), len(hA), eC.dim, eB.dim], [m1, m2, m3, m4], p)]
    # covariant: Hom(X,A) -> Hom(X,B) -> Hom(X,C) -> E(X,A) -> E(X,B)
    kA, kB, kC = hom_space(X, A), hom_space(X, B), hom_space(X, C)
    res_X = proj_resolution(X)
    fA, fB = ExtSpace(res_X, A), ExtSpace(res_X, B)
    eCA = ExtSpace(res_C, A)
    delta = eCA.coords(eta)
    n1 = _matrix(kA, lambda g: x.compose(g), kB, len(kB))
    n2 = _matrix(kB, lambda g: y.compose(g), kC, len(kC))
    n3 = np.stack([pullback(eCA, delta, g, fA) for g in kC], axis=1) if kC else la.zeros(fA.dim, 0)
    n4 = _ext_matrix(fA, lambda c: pushforward(fA, c, x, fB), fB)
    bad += ["covariant " + v for v in _slots([len(kA), len(kB), len(kC), fA.dim, fB.dim], [n1, n2, n3, n4], p)]
    return bad


def derived_exactness(cat, conf, T) -> list:
    """Both sequences for a chain-level triangle, Hom taken in the homotopy category."""
    from .derived import ChainMap, HomK

    tri = conf.witness
    Tx = cat.complex_of(T, "T")
    T1 = Tx.shifted(1)
    A, B, C, u, v, w = tri.A, tri.B, tri.C, tri.u, tri.v, tri.w
    # contravariant
    hC, hB, hA, eC, eB = HomK(C, Tx), HomK(B, Tx), HomK(A, Tx), HomK(C, T1), HomK(B, T1)
    ranks = [
        hB.rank_of(hC.pull(v, hB)),
        hA.rank_of(hB.pull(u, hA)),
        eC.rank_of(hA.pull(w, eC, shift=1)),
        eB.rank_of(eC.pull(v, eB)),
    ]
    dims = [hC.dim, hB.dim, hA.dim, eC.dim, eB.dim]
    bad = ["contravariant " + s for s in _rank_slots(dims, ranks)]
    # covariant
    A1, B1 = A.shifted(1), B.shifted(1)
    u1 = ChainMap(A1, B1, u.entries)
    kA, kB, kC, fA, fB = HomK(Tx, A), HomK(Tx, B), HomK(Tx, C), HomK(Tx, A1), HomK(Tx, B1)
    ranks = [kA.induced_rank(u, kB), kB.induced_rank(v, kC), kC.induced_rank(w, fA), fA.induced_rank(u1, fB)]
    dims = [kA.dim, kB.dim, kC.dim, fA.dim, fB.dim]
    bad += ["covariant " + s for s in _rank_slots(dims, ranks)]
    return bad


def _rank_slots(dims, ranks):
    return [
        "slot %d: rank %d + rank %d != dim %d" % (k, ranks[k - 1], ranks[k], dims[k])
        for k in range(1, len(ranks))
        if ranks[k - 1] + ranks[k] != dims[k]
    ]


def sample_exactness(cat, samples: int = 120, seed: int = 0, max_count: int = 2, objects=None) -> dict:
    """Random (conflation, test object) pairs; nonsplit classes are preferred 3:1."""
    rng = np.random.default_rng(seed)
    objs = objects if objects is not None else cat.universe
    pool = [X for X in multisets(sorted(objs), max_count, include_zero=False)]
    pairs = [(C, A) for C in pool for A in pool if 0 < cat.e_dim(C, A) and cat.p ** cat.e_dim(C, A) <= cat.enum_cap]
    split = [(C, A) for C in pool for A in pool if cat.e_dim(C, A) == 0]
    tests = sorted(objs)
    bad, seen = [], []
    for _ in range(samples):
        if pairs and (not split or rng.random() < 0.75):
            C, A = pairs[rng.integers(len(pairs))]
            coords = rng.integers(0, cat.p, cat.e_dim(C, A))
        else:
            C, A = split[rng.integers(len(split))]
            coords = np.zeros(0, dtype=np.int64)
        T = tests[rng.integers(len(tests))]
        if cat.name == "module":
            conf = cat.realize(C, A, coords)
            errs = module_exactness(cat, conf, T)
        else:
            conf = cat.realize_d(C, A, coords) if cat.in_window(cat.middle(C, A, coords)) else None
            if conf is None:
                continue
            errs = derived_exactness(cat, conf, T)
        seen.append((C, A, tuple(int(c) for c in coords), T))
        bad.extend("%s -> %s -> %s, T=%s: %s" % (cat.label(conf.A), cat.label(conf.B), cat.label(conf.C), cat.label(T), e) for e in errs)
    return {"checked": len(seen), "violations": bad, "samples": seen}
