import pytest

from extricat import checks
from extricat.category import Conflation
from extricat.derived import ChainMap, Triangle


def test_lemma_suites_a3(a3):
    r = checks.lemma_suites(a3)
    for name, res in r.items():
        assert res["violations"] == [], name
        assert res["checked"] > 0, name


def test_lemma_suites_derived_window(small_derived):
    D = small_derived
    X = [x for x in D.inner_universe() if D.is_brick(x) and x[0][1] == 0 and sum(D.k0(x)) == 1]
    r = checks.lemma_suites(D, [tuple(X)], smallest=False)
    assert all(res["violations"] == [] for res in r.values())


def test_subadditivity_can_be_strict(a3):
    from extricat.core import filt_closure

    Y = a3.parse_set("S2,S3,I2")
    assert checks.check_subadditivity(a3, Y)["violations"] == []
    L = filt_closure(a3, Y).length
    P = a3.parse
    assert L[P("I2")] < L[P("S2")] + L[P("S3")]


def test_module_exactness_all_pairs(a3):
    for C in a3.universe:
        for A in a3.universe:
            for c in a3.classes(C, A):
                conf = a3.realize(C, A, c)
                for T in a3.universe:
                    assert checks.module_exactness(a3, conf, T) == []


def test_module_exactness_detects_wrong_witness(a3):
    P = a3.parse
    good = a3.realize(P("S3"), P("S2"), [1])
    split = a3.realize(P("S3"), P("S2"), [0])
    bogus = Conflation(good.A, good.B, good.C, (1,), split.witness)
    found = [checks.module_exactness(a3, bogus, T) for T in a3.universe]
    assert any(found)


def test_derived_exactness_detects_wrong_connecting_map(d3):
    P = d3.parse
    g = d3.realize_d(P("S1"), P("S2"), [1])
    tri = g.witness
    bad = Triangle(tri.A, tri.B, tri.C, tri.u, tri.v, ChainMap(tri.C, tri.w.target, {}))
    found = [checks.derived_exactness(d3, Conflation(g.A, g.B, g.C, (1,), bad), T) for T in d3.inner_universe()]
    assert any(found)


@pytest.mark.parametrize("seed", [0, 1])
def test_sampled_exactness(a3, small_derived, seed):
    r = checks.sample_exactness(a3, 40, seed)
    assert r["checked"] == 40 and r["violations"] == []
    r = checks.sample_exactness(small_derived, 40, seed, objects=small_derived.inner_universe())
    assert r["checked"] > 30 and r["violations"] == []


def test_sampling_is_deterministic(a3):
    a = checks.sample_exactness(a3, 20, 7)["samples"]
    b = checks.sample_exactness(a3, 20, 7)["samples"]
    assert a == b
