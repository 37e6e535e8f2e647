"""Perpendicular categories, approximation conflations, cotorsion pairs,
support sets, simple-minded systems and torsion pairs in derived windows."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import linalg as la
from .category import Conflation, ExtriCat, Subcat
from .core import NotFiltered, _fmt, filt_closure, is_semibrick
from .exact import ShortExact, extend_along, lift_through
from .objects import ZERO, ObjClass, multisets
from .reps import hom_space, quotient, subrep

PERP_KINDS = ("hom-left", "hom-right", "ext-left", "ext-right")


def perp(cat: ExtriCat, base, kind: str, scope: Subcat | None = None) -> Subcat:
    """``hom-right``: ``{M : Hom(b, M) = 0}``, ``hom-left``: ``{M : Hom(M, b) = 0}``,
    and the same with ``E`` for the ``ext-`` kinds."""
    if kind not in PERP_KINDS:
        raise ValueError("unknown perpendicular kind %r" % kind)
    scope = scope or cat.whole
    base = [b for b in base if not b.is_zero()]
    f = cat.hom_dim if kind.startswith("hom") else cat.e_dim
    if kind.endswith("right"):
        keep = [M for M in scope.members() if all(f(b, M) == 0 for b in base)]
    else:
        keep = [M for M in scope.members() if all(f(M, b) == 0 for b in base)]
    return Subcat(frozenset(keep))


# -- approximations (module backend, explicit maps) -------------------------------


class ApproximationError(AssertionError):
    pass


def _ordered(S):
    return sorted(set(S))


def approx_right(cat, M: ObjClass, S) -> Conflation:
    """``N -> M -> P`` with ``N ∈ Filt(S)`` and ``Hom(S, P) = 0``.

    Repeatedly takes the first nonzero map from a member of ``S`` to the
    current quotient of ``M`` (an inflation by the brick-source property)
    and enlarges the filtered submodule by its image.
    """
    S = _ordered(S)
    Mrep = cat.rep(M)
    q, p = Mrep.quiver, Mrep.p
    U = {v: la.zeros(Mrep.dims[v], 0) for v in range(q.n)}
    while True:
        Q, _ = quotient(Mrep, U)
        found = None
        for s in S:
            for f in hom_space(cat.rep(s), Q):
                if not f.is_zero():
                    found = f
                    break
            if found is not None:
                break
        if found is None:
            break
        if not found.is_injective():
            raise ApproximationError("nonzero map from a brick into a filtered object is not injective")
        for v in range(q.n):
            Qv = la.Quotient(U[v], Mrep.dims[v], p)
            L = la.zeros(Mrep.dims[v], Qv.dim)
            for j, i in enumerate(Qv.free):
                L[i, j] = 1
            U[v] = la.column_space(np.concatenate([U[v], la.mul(L, found.blocks[v], p)], axis=1), p)
    N, x = subrep(Mrep, U)
    P, y = quotient(Mrep, U)
    conf = Conflation(cat.decompose(N), M, cat.decompose(P), witness=ShortExact(N, Mrep, P, x, y))
    _check_membership(cat, conf.A, S, "filt", "approx_right: N")
    _check_membership(cat, conf.C, S, "hom-right", "approx_right: P")
    return conf


def approx_left(cat, M: ObjClass, S) -> Conflation:
    """``U -> M -> V`` with ``Hom(U, S) = 0`` and ``V ∈ Filt(S)``."""
    S = _ordered(S)
    Mrep = cat.rep(M)
    q, p = Mrep.quiver, Mrep.p
    W = {v: la.eye(Mrep.dims[v]) for v in range(q.n)}
    while True:
        Wrep, incl = subrep(Mrep, W)
        found = None
        for s in S:
            for f in hom_space(Wrep, cat.rep(s)):
                if not f.is_zero():
                    found = f
                    break
            if found is not None:
                break
        if found is None:
            break
        if not found.is_surjective():
            raise ApproximationError("nonzero map from a filtered object onto a brick is not surjective")
        _, kin = found.kernel()
        W = {v: la.mul(incl.blocks[v], kin.blocks[v], p) for v in range(q.n)}
    Urep, x = subrep(Mrep, W)
    V, y = quotient(Mrep, W)
    conf = Conflation(cat.decompose(Urep), M, cat.decompose(V), witness=ShortExact(Urep, Mrep, V, x, y))
    _check_membership(cat, conf.A, S, "hom-left", "approx_left: U")
    _check_membership(cat, conf.C, S, "filt", "approx_left: V")
    return conf


def _check_membership(cat, X: ObjClass, S, kind: str, what: str):
    if kind == "filt":
        ok = filt_closure(cat, S).closure.contains(X)
    else:
        ok = perp(cat, S, kind, Subcat.of([X])).contains(X) if not X.is_zero() else True
    if not ok:
        raise ApproximationError("%s = %s violates its postcondition (%s)" % (what, cat.label(X), kind))


def is_right_approximation(cat, conf: Conflation, S) -> bool:
    """Every map from an ``S``-filtered indecomposable to ``M`` factors through ``N -> M``."""
    x = conf.witness.x
    for T in filt_closure(cat, S).closure.members():
        for g in hom_space(cat.rep(T), x.target):
            if lift_through(g, x) is None:
                return False
    return True


def is_left_approximation(cat, conf: Conflation, S) -> bool:
    """Every map from ``M`` to an ``S``-filtered indecomposable factors through ``M -> V``."""
    y = conf.witness.y
    for T in filt_closure(cat, S).closure.members():
        for g in hom_space(y.source, cat.rep(T)):
            if extend_along(g, y) is None:
                return False
    return True


# -- projectives, injectives -----------------------------------------------------------


def _candidates(cat, T: Subcat):
    if cat.name == "derived":
        return [M for M in T.members() if cat.in_window(M, inner=True)]
    return T.members()


def projectives_of(cat: ExtriCat, T: Subcat) -> Subcat:
    """Members ``P`` of ``T`` with ``E(P, T) = 0`` (derived: inner-window candidates only)."""
    mem = T.members()
    return Subcat(frozenset(P for P in _candidates(cat, T) if all(cat.e_dim(P, X) == 0 for X in mem)))


def injectives_of(cat: ExtriCat, T: Subcat) -> Subcat:
    mem = T.members()
    return Subcat(frozenset(I for I in _candidates(cat, T) if all(cat.e_dim(X, I) == 0 for X in mem)))


def _sums(cat, support, bound, target=None):
    objs = list(multisets(sorted(support), bound))
    if target is None:
        return objs
    return [X for X in objs if cat.k0(X) == target]


def _by_k0(cat, objs):
    out: dict = {}
    for X in objs:
        out.setdefault(cat.k0(X), []).append(X)
    return out


def has_enough_projectives(cat: ExtriCat, T: Subcat, bound: int = 3):
    """For each member ``M`` some conflation ``A -> P -> M`` with ``P`` projective in ``T``.

    Returns ``(ok, witnesses, failures)``.
    """
    P = projectives_of(cat, T)
    Ps = _sums(cat, P.support, bound)
    As = _by_k0(cat, _sums(cat, T.support, bound))
    wit, bad = {}, []
    for M in _candidates(cat, T):
        w = None
        for Pobj in Ps:
            need = tuple(a - b for a, b in zip(cat.k0(Pobj), cat.k0(M)))
            for A in As.get(need, ()):
                if Pobj in cat.middles(M, A):
                    w = Conflation(A, Pobj, M)
                    break
            if w:
                break
        if w is None:
            bad.append(M)
        else:
            wit[M] = w
    return not bad, wit, bad


def has_enough_injectives(cat: ExtriCat, T: Subcat, bound: int = 3):
    I = injectives_of(cat, T)
    Is = _sums(cat, I.support, bound)
    Cs = _by_k0(cat, _sums(cat, T.support, bound))
    wit, bad = {}, []
    for M in _candidates(cat, T):
        w = None
        for Iobj in Is:
            need = tuple(a - b for a, b in zip(cat.k0(Iobj), cat.k0(M)))
            for C in Cs.get(need, ()):
                if Iobj in cat.middles(C, M):
                    w = Conflation(M, Iobj, C)
                    break
            if w:
                break
        if w is None:
            bad.append(M)
        else:
            wit[M] = w
    return not bad, wit, bad


# -- cotorsion pairs -----------------------------------------------------------------


@dataclass
class CotorsionResult:
    ok: bool
    ext_violations: list = field(default_factory=list)
    missing_b: list = field(default_factory=list)
    missing_c: list = field(default_factory=list)
    witnesses_b: dict = field(default_factory=dict)
    witnesses_c: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def is_cotorsion_pair(cat: ExtriCat, U: Subcat, V: Subcat, T: Subcat | None = None, bound: int = 3) -> CotorsionResult:
    """Check ``E(U, V) = 0`` and the two approximation conflations for every member of ``T``."""
    T = T or cat.whole
    res = CotorsionResult(True)
    for u in U.members():
        for v in V.members():
            if cat.e_dim(u, v):
                res.ext_violations.append((u, v))
    vs = _sums(cat, V.support, bound)
    us = _sums(cat, U.support, bound)
    for C in T.members():
        w = None
        for v in vs:  # v -> u -> C
            for mid in sorted(cat.middles(C, v)):
                if U.contains(mid):
                    w = Conflation(v, mid, C)
                    break
            if w:
                break
        if w is None:
            res.missing_b.append(C)
        else:
            res.witnesses_b[C] = w
        w = None
        for u in us:  # C -> v' -> u'
            for mid in sorted(cat.middles(u, C)):
                if V.contains(mid):
                    w = Conflation(C, mid, u)
                    break
            if w:
                break
        if w is None:
            res.missing_c.append(C)
        else:
            res.witnesses_c[C] = w
    res.ok = not (res.ext_violations or res.missing_b or res.missing_c)
    return res


# -- support sets -------------------------------------------------------------------


class NonUniqueSupport(RuntimeError):
    pass


@dataclass
class SupportSet:
    D: Subcat
    S_D: tuple


def support_set(cat: ExtriCat, D: Subcat, X, exhaustive_limit: int = 8) -> SupportSet:
    """The smallest ``S ⊆ X`` with ``D ⊆ Filt(S)``; fails loudly if not unique."""
    X = tuple(sorted(set(X)))
    F = filt_closure(cat, X)
    seed = set()
    for m in D.members():
        if m not in F.length:
            raise NotFiltered("%s is not in Filt(X)" % cat.label(m))
        seed.update(F.factors(m))

    def covers(S):
        return D <= filt_closure(cat, S).closure

    def greedy(order):
        S = set(seed)
        for x in order:
            if x in S and covers(S - {x}):
                S.discard(x)
        return S

    a = greedy(sorted(seed))
    b = greedy(sorted(seed, reverse=True))
    for S in (a, b):
        if any(covers(S - {x}) for x in S):
            raise NonUniqueSupport("greedy support set is not minimal: %s" % _fmt(cat, S))
    if a != b:
        raise NonUniqueSupport("two minimal support sets: %s and %s" % (_fmt(cat, a), _fmt(cat, b)))
    if len(X) <= exhaustive_limit:
        minimal = []
        for k in range(len(X) + 1):
            for S in combinations(X, k):
                S = set(S)
                if covers(S) and not any(m <= S for m in minimal):
                    minimal.append(S)
        if len(minimal) > 1:
            raise NonUniqueSupport("minimal support sets: " + ", ".join(_fmt(cat, m) for m in minimal))
        if minimal and minimal[0] != a:
            raise NonUniqueSupport("greedy %s differs from exhaustive %s" % (_fmt(cat, a), _fmt(cat, minimal[0])))
    return SupportSet(D, tuple(sorted(a)))


# -- the correspondence ---------------------------------------------------------------


def verify_theorem_correspondence(cat: ExtriCat, X, bound: int = 3) -> dict:
    """Subsets ``S_P ⊆ S ⊆ X`` versus filtration subcategories ``U`` with ``(U, U^⊥1)`` cotorsion."""
    X = tuple(sorted(set(X)))
    T = filt_closure(cat, X).closure
    violations = []
    report = {"S_P": [], "valid_subsets": 0, "cotorsion_pairs": [], "skipped_window": [], "violations": violations}
    if not is_semibrick(cat, X):
        violations.append("X is not a semibrick")
        return report
    okp, _, badp = has_enough_projectives(cat, T, bound)
    oki, _, badi = has_enough_injectives(cat, T, bound)
    report["precondition"] = {"enough_projectives": okp, "enough_injectives": oki}
    if cat.name == "derived":
        report["skipped_window"] = [cat.label(M) for M in T.members() if not cat.in_window(M, inner=True)]
    if not (okp and oki):
        report["precondition"]["failed_for"] = [cat.label(M) for M in badp + badi]
        return report
    P = projectives_of(cat, T)
    S_P = set(support_set(cat, P, X).S_D)
    report["S_P"] = [cat.label(x) for x in sorted(S_P)]
    valid = [set(S) for k in range(len(X) + 1) for S in combinations(X, k) if S_P <= set(S)]
    report["valid_subsets"] = len(valid)
    from_subsets = set()
    for S in valid:
        U = filt_closure(cat, S).closure
        V = perp(cat, S, "ext-right", T)
        if not is_cotorsion_pair(cat, U, V, T, bound):
            violations.append("(Filt(%s), S^perp1) is not a cotorsion pair" % _fmt(cat, S))
        if set(support_set(cat, U, X).S_D) != S:
            violations.append("S_Filt(S) != S for S = %s" % _fmt(cat, S))
        from_subsets.add(U)
    found = {}
    for k in range(len(X) + 1):
        for S in combinations(X, k):
            U = filt_closure(cat, S).closure
            if U in found:
                continue
            V = perp(cat, U.members(), "ext-right", T)
            if is_cotorsion_pair(cat, U, V, T, bound):
                found[U] = V
                S_U = set(support_set(cat, U, X).S_D)
                if not S_P <= S_U:
                    violations.append("S_U does not contain S_P for U = %s" % _fmt(cat, U.members()))
                if filt_closure(cat, S_U).closure != U:
                    violations.append("Filt(S_U) != U for U = %s" % _fmt(cat, U.members()))
    if set(found) != from_subsets:
        violations.append("cotorsion filtration subcategories (%d) do not match valid subsets (%d)" % (len(found), len(valid)))
    report["cotorsion_pairs"] = [
        {"U": [cat.label(m) for m in U.members()], "V": [cat.label(m) for m in V.members()]}
        for U, V in sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0].members()))
    ]
    return report


# -- triangulated statements -----------------------------------------------------------


def is_sms(cat: ExtriCat, X, scope: Subcat | None = None, bound: int | None = None) -> bool:
    """Semibrick whose filtration closure contains every member of ``scope``.

    The default scope is the whole universe, or the inner window for a derived backend.
    """
    if scope is None:
        scope = Subcat(frozenset(cat.inner_universe())) if cat.name == "derived" else cat.whole
    if not is_semibrick(cat, X):
        return False
    return scope <= filt_closure(cat, X, bound).closure


@dataclass
class TorsionResult:
    ok: bool
    hom_violations: list = field(default_factory=list)
    missing: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    skipped_window: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def is_torsion_pair_tri(cat, U: Subcat, V: Subcat, tests=None, bound: int = 2) -> TorsionResult:
    """``Hom(U, V) = 0`` and a triangle ``u -> C -> v -> u[1]`` for every test object.

    Tests default to the inner window; the rest of the window is reported as skipped.
    """
    if tests is None:
        tests = cat.inner_universe() if cat.name == "derived" else cat.universe
    res = TorsionResult(True)
    if cat.name == "derived":
        res.skipped_window = [M for M in cat.universe if M not in set(tests)]
    for u in U.members():
        for v in V.members():
            if cat.hom_dim(u, v):
                res.hom_violations.append((u, v))
    us = _sums(cat, U.support, bound)
    vs = _by_k0(cat, _sums(cat, V.support, bound))
    for C in tests:
        w = None
        if U.contains(C):
            w = Conflation(C, C, ZERO)
        elif V.contains(C):
            w = Conflation(ZERO, C, C)
        else:
            target = cat.k0(C)
            for u in us:
                need = tuple(a - b for a, b in zip(target, cat.k0(u)))
                for v in vs.get(need, ()):
                    if C in cat.middles(v, u):
                        w = Conflation(u, C, v)
                        break
                if w:
                    break
        if w is None:
            res.missing.append(C)
        else:
            res.witnesses[C] = w
    res.ok = not (res.hom_violations or res.missing)
    return res


def shifted_ext_perp_matches(cat, S) -> tuple[bool, list]:
    """``S^⊥1[1]`` and ``S^⊥`` agree on the inner window; returns mismatching labels."""
    inner = cat.inner_universe()
    window = Subcat(frozenset(cat.universe))
    ext_perp = perp(cat, S, "ext-right", window).support
    hom_perp = perp(cat, S, "hom-right", window).support
    bad = []
    for N in inner:
        M = N.shift(-1)
        lhs = M in ext_perp
        if lhs != (N in hom_perp):
            bad.append(cat.label(N))
    return not bad, bad


def shift_stable_on_inner(cat, D: Subcat) -> tuple[bool, list]:
    """Members of ``D`` in the inner window whose inner-window shifts leave ``D``."""
    inner = set(cat.inner_universe())
    bad = []
    for M in D.members():
        if M not in inner:
            continue
        for k in (1, -1):
            N = M.shift(k)
            if N in inner and not D.contains(N):
                bad.append("%s[%d]" % (cat.label(M), k))
    return not bad, bad
