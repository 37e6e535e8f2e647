"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line."""

import time
from itertools import combinations

import pytest

from extricat import checks, core, suites
from extricat import cotorsion as ct
from extricat.catalog import build_catalog
from extricat.derived import DerivedCategory
from extricat.modcat import ModuleCategory


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print("\n%s criterion %d%s" % ("PASS" if ok else "FAIL", n, ": " + detail if detail else ""))
        assert ok, detail

    return emit


def module_cat(name):
    q, p = suites.load_fixture(name)
    return ModuleCategory(build_catalog(q, p))


def test_criterion_1_semibrick_fixture(verdict):
    t0 = time.perf_counter()
    r = suites.semibrick_example(p=2)
    dt = time.perf_counter() - t0
    c = r["checks"]
    ok = (
        not r["violations"]
        and c["catalog_size"] == 6
        and c["simple_semibrick"]
        and c["closure_support"] == ["I2", "S2", "S3"]
        and c["sim"] == ["S2", "S3"]
        and c["length_wide"]
        and c["l_Y(I2)"] == 1
        and c["l_Y(S2)+l_Y(S3)"] == 2
        and c["conflation_S2_I2_S3"]
        and dt < 5
    )
    verdict(1, ok, "l_Y(I2) = %d < %d, %.2fs %s" % (c["l_Y(I2)"], c["l_Y(S2)+l_Y(S3)"], dt, r["violations"]))


# counts frozen after the first verified run (Catalan numbers 2, 5, 14 for type A)
BIJECTION_COUNTS = {"a1": 2, "a2": 5, "a3_left": 14}


def test_criterion_2_bijection(verdict):
    out, ok = [], True
    for name, n in BIJECTION_COUNTS.items():
        t0 = time.perf_counter()
        r = suites.bijection(module_cat(name))
        dt = time.perf_counter() - t0
        ok &= r["bijection_ok"] and not r["violations"] and r["counts"] == [n, n] and dt < 60
        out.append("%s %d<->%d (%.2fs)" % (name, *r["counts"], dt))
    verdict(2, ok, ", ".join(out))


def test_criterion_3_lemma_suites(verdict):
    M = module_cat("a3_left")
    t0 = time.perf_counter()
    r = checks.lemma_suites(M)
    dt = time.perf_counter() - t0
    required = {"subadditivity", "brick_source", "summand_additivity", "left_right", "perp_stability"}
    bad = [v for s in r.values() for v in s["violations"]]
    ok = required <= set(r) and all(r[k]["checked"] > 0 for k in required) and not bad and dt < 60
    verdict(3, ok, "%s, %.2fs %s" % ({k: v["checked"] for k, v in r.items()}, dt, bad[:3]))


def test_criterion_4_cotorsion_module(verdict):
    M = module_cat("a3_left")
    t0 = time.perf_counter()
    X = sorted(M.parse_set("S1,S2,S3"))
    r = suites.cotorsion(M, X)
    T = core.filt_closure(M, X).closure
    S_P = set(M.parse_set(",".join(r["S_P"]))) if r["S_P"] else set()
    pairs = 0
    bad = list(r["violations"])
    for k in range(len(X) + 1):
        for S in combinations(X, k):
            if not S_P <= set(S):
                continue
            U = core.filt_closure(M, S).closure
            V = ct.perp(M, S, "ext-right", T)
            pairs += 1
            if not ct.is_cotorsion_pair(M, U, V, T):
                bad.append("(Filt(%s), S^perp1) fails" % [M.label(s) for s in S])
    dt = time.perf_counter() - t0
    ok = not bad and r["approximations_checked"] > 0 and pairs == r["valid_subsets"] and dt < 120
    verdict(4, ok, "S_P = %s, %d approximations, %d pairs, %.2fs %s" % (r["S_P"], r["approximations_checked"], pairs, dt, bad[:3]))


# filtration closure of {P1, S1[-1], S2[-1], S3[-1]}; computed, checked by hand against the AR quiver, then frozen
TRAPEZOID = {"S3[-1]", "S2[-1]", "S1[-1]", "P1", "P2[-1]", "I2[-1]", "P2", "P1[-1]", "S3"}


def test_criterion_5_derived_window(verdict):
    t0 = time.perf_counter()
    r = suites.derived_example(window=(-3, 2), inner=(-2, 1))
    dt = time.perf_counter() - t0
    ok = (
        not r["violations"]
        and r["sms"]
        and set(r["filt_S"]) == TRAPEZOID
        and all(t["ok"] for t in r["torsion_pairs"])
        and len(r["skipped_window"]) > 0
        and r["inner"] == [-2, 1]
        and dt < 120
    )
    verdict(5, ok, "trapezoid of %d, %d skipped, %.2fs %s" % (len(r["filt_S"]), len(r["skipped_window"]), dt, r["violations"][:3]))


def test_criterion_6_cross_backend(verdict):
    q, p = suites.load_fixture("a3_right")
    r = suites.cross_backend(q, p)
    verdict(6, r["classes"] > 0 and not r["violations"], "%d classes compared %s" % (r["classes"], r["violations"][:3]))


def test_criterion_7_sampled_exactness(verdict):
    M = module_cat("a3_left")
    q, p = suites.load_fixture("a3_right")
    D = DerivedCategory(build_catalog(q, p), window=(-3, 2))
    rm = checks.sample_exactness(M, samples=120, seed=0)
    rd = checks.sample_exactness(D, samples=120, seed=0, objects=D.inner_universe())
    total = rm["checked"] + rd["checked"]
    bad = rm["violations"] + rd["violations"]
    verdict(7, total >= 200 and not bad, "%d module + %d derived pairs %s" % (rm["checked"], rd["checked"], bad[:3]))
