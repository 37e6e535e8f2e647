"""Named verification suites.

Each suite returns a report dict with at least ``violations`` (a list of
strings) and ``skipped_window`` (labels of objects a derived check could
not reach).  :func:`status` turns a report into the CLI exit code.
"""

from __future__ import annotations

import time
from itertools import combinations

import numpy as np

from . import checks, core
from . import cotorsion as ct
from .catalog import build_catalog
from .category import Subcat
from .config import fixture_path
from .derived import DerivedCategory
from .modcat import ModuleCategory
from .objects import ObjClass, multisets
from .reps import load_quiver_spec

# closure of {P1, S1[-1], S2[-1], S3[-1]} on 1 -> 2 -> 3, checked by hand against the AR quiver of D^b
TRAPEZOID = ["S3[-1]", "S2[-1]", "S1[-1]", "P1", "P2[-1]", "I2[-1]", "P2", "P1[-1]", "S3"]
TOP_ROW = "S1[-3],S2[-3],S3[-3],P1[-2],S1[-1],S2[-1],S3[-1],P1,S1[1],S2[1],S3[1],P1[2]"
TORSION_S = "P1,S1[-1],S2[-1],S3[-1]"

PASS, VIOLATION, USAGE, SKIPPED = 0, 1, 2, 3


def status(report: dict) -> int:
    if report.get("violations"):
        return VIOLATION
    if report.get("skipped_window"):
        return SKIPPED
    return PASS


def load_fixture(name: str, p: int | None = None):
    q, p0 = load_quiver_spec(fixture_path(name).read_text())
    return q, p or p0


def _labels(cat, objs):
    return [cat.label(x) for x in sorted(objs)]


def _timed(report, t0):
    report["seconds"] = round(time.perf_counter() - t0, 3)
    return report


# -- module-category suites -----------------------------------------------------------


def semibrick_example(p: int | None = None) -> dict:
    """The {S2, S3} semibrick on 1 <- 2 <- 3: closure, simples, lengths and strict subadditivity."""
    t0 = time.perf_counter()
    q, p = load_fixture("a3_left", p)
    M = ModuleCategory(build_catalog(q, p))
    P = M.parse
    bad = []
    X = [P("S2"), P("S3")]
    Y = X + [P("I2")]
    F = core.filt_closure(M, X)
    D = F.closure
    support = sorted(M.label(x) for x in D.members())
    sim = core.sim(M, D)
    lY = core.x_length(M, P("I2"), Y)
    lX = core.x_length(M, P("I2"), X)
    ends = core.x_length(M, P("S2"), Y) + core.x_length(M, P("S3"), Y)
    conflation = P("I2") in M.middles(P("S3"), P("S2"))
    checks_ = {
        "catalog_size": len(M.universe),
        "simple_semibrick": core.is_simple_semibrick(M, X),
        "closure_support": support,
        "sim": _labels(M, sim),
        "length_wide": core.is_length_wide(M, D),
        "l_Y(I2)": lY,
        "l_X(I2)": lX,
        "l_Y(S2)+l_Y(S3)": ends,
        "conflation_S2_I2_S3": conflation,
    }
    if checks_["catalog_size"] != 6:
        bad.append("catalog has %d indecomposables" % checks_["catalog_size"])
    if not checks_["simple_semibrick"]:
        bad.append("{S2, S3} is not a simple semibrick")
    if support != ["I2", "S2", "S3"]:
        bad.append("closure support is %s" % support)
    if sim != set(X):
        bad.append("sim of the closure is %s" % checks_["sim"])
    if not checks_["length_wide"]:
        bad.append("closure is not length wide")
    if lY != 1 or lX != 2:
        bad.append("lengths of I2: l_Y = %d, l_X = %d" % (lY, lX))
    if not (conflation and lY < ends):
        bad.append("no strict subadditivity along S2 -> I2 -> S3")
    return _timed({"suite": "example-4.6", "checks": checks_, "violations": bad, "skipped_window": []}, t0)


def bijection(cat, max_universe: int = 12) -> dict:
    t0 = time.perf_counter()
    r = core.verify_theorem_main(cat, max_universe=max_universe)
    r["counts"] = [len(r["simple_semibricks"]), len(r["length_wide"])]
    r["skipped_window"] = []
    r["suite"] = "bijection"
    return _timed(r, t0)


def default_semibrick(cat) -> list[ObjClass]:
    """Simple modules, i.e. the indecomposables of total dimension one."""
    return [x for x in cat.universe if sum(abs(d) for d in cat.k0(x)) == 1]


def cotorsion(cat, X=None, bound: int = 3, approx_count: int = 2) -> dict:
    """Approximation soundness for every ``S ⊆ X`` plus the correspondence verifier."""
    t0 = time.perf_counter()
    X = sorted(X or default_semibrick(cat))
    bad = []
    approx_checked = 0
    if cat.name == "module":
        T = core.filt_closure(cat, X)
        objs = sorted(M for M in T.length if 0 < M.count <= approx_count)
        for k in range(len(X) + 1):
            for S in combinations(X, k):
                for M in objs:
                    try:
                        r = ct.approx_right(cat, M, S)
                        l = ct.approx_left(cat, M, S)
                    except ct.ApproximationError as exc:
                        bad.append(str(exc))
                        continue
                    approx_checked += 2
                    if not ct.is_right_approximation(cat, r, S):
                        bad.append("approx_right(%s, %s) fails to factor" % (cat.label(M), _labels(cat, S)))
                    if not ct.is_left_approximation(cat, l, S):
                        bad.append("approx_left(%s, %s) fails to factor" % (cat.label(M), _labels(cat, S)))
    rep = ct.verify_theorem_correspondence(cat, X, bound)
    rep["violations"] = bad + rep["violations"]
    rep["approximations_checked"] = approx_checked
    rep["X"] = _labels(cat, X)
    rep["suite"] = "cotorsion"
    return _timed(rep, t0)


def lemmas(cat, X=None) -> dict:
    t0 = time.perf_counter()
    sets = [tuple(sorted(X))] if X else None
    if sets is None and cat.name == "derived":
        sets = [tuple(default_semibrick_derived(cat))]
    r = checks.lemma_suites(cat, sets, smallest=cat.name == "module")
    bad = [v for name, s in r.items() for v in s["violations"]]
    return _timed({"suite": "lemmas", "suites": {k: v["checked"] for k, v in r.items()}, "violations": bad, "skipped_window": []}, t0)


def default_semibrick_derived(cat) -> list[ObjClass]:
    return [x for x in cat.inner_universe() if cat.is_brick(x) and sum(abs(d) for d in cat.k0(x)) == 1 and x[0][1] == 0]


# -- axioms and cross-backend agreement --------------------------------------------------


def split_and_biadditive(cat, max_count: int = 2) -> list:
    """Zero classes realise ``A ⊕ C``; E-dimensions of sums match the explicit bases."""
    bad = []
    objs = cat.inner_universe() if cat.name == "derived" else cat.universe
    pool = list(multisets(sorted(objs), max_count, include_zero=False))
    for C in pool:
        for A in pool:
            d = cat.e_dim(C, A)
            if cat.middle(C, A, np.zeros(d, dtype=np.int64)) != A + C:
                bad.append("split class of E(%s, %s) does not give the direct sum" % (cat.label(C), cat.label(A)))
            n = cat.ext(C, A).dim if cat.name == "module" else len(cat.e_space_d(C, A))
            if n != d:
                bad.append("E(%s, %s): table %d, basis %d" % (cat.label(C), cat.label(A), d, n))
    return bad


def cross_backend(q, p: int) -> dict:
    """Shift-zero pairs: derived E-dimensions and middles against the module backend."""
    cat = build_catalog(q, p)
    M = ModuleCategory(cat)
    D = DerivedCategory(cat, window=(-1, 1))
    bad, n = [], 0
    for C in M.universe:
        for A in M.universe:
            dm = M.ext(C, A).dim
            dd = len(D.e_space_d(C, A))
            if dm != dd:
                bad.append("E(%s, %s): exact %d, derived %d" % (M.label(C), M.label(A), dm, dd))
                continue
            for coords in M.classes(C, A):
                n += 1
                b1 = M.realize(C, A, coords).B
                b2 = D.realize_d(C, A, coords).B
                if b1 != b2:
                    bad.append("class %s of E(%s, %s): %s vs %s" % (list(coords), M.label(C), M.label(A), M.label(b1), D.label(b2)))
    return {"classes": n, "violations": bad}


def axioms(cat, samples: int = 120, seed: int = 0) -> dict:
    """Split realisations, biadditivity, sampled long exact sequences, and backend agreement."""
    t0 = time.perf_counter()
    bad = split_and_biadditive(cat)
    objs = cat.inner_universe() if cat.name == "derived" else None
    ex = checks.sample_exactness(cat, samples, seed, objects=objs)
    bad += ex["violations"]
    cb = cross_backend(cat.cat.quiver, cat.p)
    bad += cb["violations"]
    return _timed(
        {
            "suite": "axioms",
            "exactness_samples": ex["checked"],
            "cross_backend_classes": cb["classes"],
            "violations": bad,
            "skipped_window": [],
        },
        t0,
    )


# -- derived window suite ---------------------------------------------------------------


def derived_example(window=(-3, 2), inner=None, p: int | None = None, bound: int = 2) -> dict:
    """The top-row simple-minded system and the torsion pairs generated by one of its subsets."""
    t0 = time.perf_counter()
    q, p = load_fixture("a3_right", p)
    D = DerivedCategory(build_catalog(q, p), window, inner)
    bad = []
    top = [x for x in D.parse_set(TOP_ROW) if D.in_window(x)]
    S = D.parse_set(TORSION_S)
    inner_objs = D.inner_universe()
    if not all(D.in_window(s, inner=True) for s in S):
        bad.append("the generating set leaves the inner window")
    sms = ct.is_sms(D, top)
    if not sms:
        bad.append("top row is not a simple-minded system on the inner window")
    stable, unstable = ct.shift_stable_on_inner(D, core.filt_closure(D, top).closure)
    if not stable:
        bad.append("closure of the top row is not shift stable on the inner window: %s" % unstable)
    U = core.filt_closure(D, S).closure
    trapezoid = _labels(D, U.members())
    if sorted(trapezoid) != sorted(TRAPEZOID):
        bad.append("Filt(S) = %s" % trapezoid)
    window_all = Subcat(frozenset(D.universe))
    right = ct.perp(D, S, "hom-right", window_all)
    left = ct.perp(D, S, "hom-left", window_all)
    t1 = ct.is_torsion_pair_tri(D, U, right, bound=bound)
    t2 = ct.is_torsion_pair_tri(D, left, U, bound=bound)
    for name, t in (("(Filt(S), S^perp)", t1), ("(^perp S, Filt(S))", t2)):
        if t.hom_violations:
            bad.append("%s: Hom(U, V) != 0 at %s" % (name, [(D.label(a), D.label(b)) for a, b in t.hom_violations[:5]]))
        if t.missing:
            bad.append("%s: no triangle for %s" % (name, _labels(D, t.missing)))
    same, mism = ct.shifted_ext_perp_matches(D, S)
    if not same:
        bad.append("S^perp1[1] and S^perp differ at %s" % mism)
    P = ct.projectives_of(D, window_all)
    I = ct.injectives_of(D, window_all)
    if len(P) or len(I):
        bad.append("nonzero projectives or injectives in the triangulated window")
    report = {
        "suite": "example-5.9",
        "window": list(D.window),
        "inner": list(D.inner),
        "top_row": _labels(D, top),
        "sms": sms,
        "filt_S": trapezoid,
        "torsion_pairs": [
            {"U": _labels(D, U.members()), "V": _labels(D, right.members()), "ok": t1.ok},
            {"U": _labels(D, left.members()), "V": _labels(D, U.members()), "ok": t2.ok},
        ],
        "inner_tested": len(inner_objs),
        "violations": bad,
        "skipped_window": _labels(D, t1.skipped_window),
    }
    return _timed(report, t0)
