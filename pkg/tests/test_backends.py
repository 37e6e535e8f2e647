import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from extricat.catalog import build_catalog
from extricat.category import CapExceeded, Subcat, WindowError
from extricat.derived import DerivedCategory, HomK
from extricat.modcat import ModuleCategory
from extricat.objects import ZERO, multisets
from extricat.reps import Quiver
from extricat.suites import cross_backend


def add(*vs):
    return tuple(sum(x) for x in zip(*vs))


# -- module backend -------------------------------------------------------------------------


def test_orbit_reduction_matches_brute_force(a3):
    pool = list(multisets(a3.universe, 2, include_zero=True))
    for C in pool:
        for A in pool:
            assert a3.middles(C, A) == a3.enumerate_middles(C, A), (a3.label(C), a3.label(A))


def test_known_middles(a3):
    P = a3.parse
    assert {a3.label(m) for m in a3.middles(P("S3"), P("S2"))} == {"I2", "S2+S3"}
    assert {a3.label(m) for m in a3.middles(P("S2"), P("S3"))} == {"S2+S3"}
    assert a3.middles(P("S3"), ZERO) == {P("S3")}
    assert a3.middle(P("S3"), P("S2"), [0]) == P("S2+S3")


def test_conflations_are_exact_and_additive(a3):
    for C in a3.universe:
        for A in a3.universe:
            for c in a3.classes(C, A):
                conf = a3.realize(C, A, c)
                assert conf.witness.is_exact()
                assert a3.k0(conf.B) == add(a3.k0(A), a3.k0(C))
                assert conf.B == a3.middle(C, A, c)


def test_biadditive_dimensions(a3):
    for X in multisets(a3.universe, 2, include_zero=False):
        for Y in multisets(a3.universe, 2, include_zero=False):
            assert a3.ext(X, Y).dim == a3.e_dim(X, Y)
            assert len(a3.hom_basis(X, Y)) == a3.hom_dim(X, Y)


def test_caps():
    M = ModuleCategory(build_catalog(Quiver.linear(3)), enum_cap=1, hom_cap=1)
    P = M.parse
    with pytest.raises(CapExceeded, match="enumeration cap"):
        list(M.classes(P("S3"), P("S2")))
    with pytest.raises(OverflowError, match="Hom cap"):
        list(M.morphisms(P("S1"), P("P3")))


def test_morphism_enumeration(a3):
    P = a3.parse
    maps = list(a3.morphisms(P("P2"), P("P3+S2")))
    assert len(maps) == 2 ** a3.hom_dim(P("P2"), P("P3+S2"))
    assert len({m.vector().tobytes() for m in maps}) == len(maps)


def test_subcat_membership(a3):
    P = a3.parse
    D = Subcat.of([P("S2"), P("I2+S3")])
    assert D.contains(P("S2+S2+I2")) and not D.contains(P("S1"))
    assert D.contains(ZERO)
    assert len(list(D.objects(2))) == 1 + 3 + 6


# -- derived backend ------------------------------------------------------------------------


def test_hom_tables_match_homotopy_category(small_derived):
    D = small_derived
    for X in D.universe:
        for Y in D.universe:
            assert D.hom_d(X, Y)[0] == D.hom_k(X, Y) == D.hom_dim(X, Y), (D.label(X), D.label(Y))


def test_hom_tables_match_homotopy_category_a3(d3):
    inner = [X for X in d3.universe if -1 <= X[0][1] <= 1]
    for X in inner:
        for Y in inner:
            assert d3.hom_d(X, Y)[0] == d3.hom_k(X, Y)


def test_e_space_dimensions(d3):
    for C in d3.inner_universe():
        for A in d3.inner_universe():
            assert len(d3.e_space_d(C, A)) == d3.e_dim(C, A) == d3.hom_dim(C, A.shift(1))


def test_triangles_are_chain_level(small_derived):
    D = small_derived
    for C in D.universe:
        for A in D.universe:
            for c in D.classes(C, A):
                tri = D.triangle(C, A, c)
                assert tri.B.is_complex()
                assert tri.u.is_chain_map() and tri.v.is_chain_map() and tri.w.is_chain_map()
                B = D.decompose_complex(tri.B)
                assert D.k0(B) == add(D.k0(A), D.k0(C))
                if not np.asarray(c).any():
                    assert B == A + C


def test_signed_k0(d3):
    P = d3.parse
    assert d3.k0(P("S1[-1]")) == (-1, 0, 0)
    assert d3.k0(P("P1+P1[1]")) == (0, 0, 0)


def test_cone(small_derived):
    D = small_derived
    for X in D.inner_universe():
        n, _ = D.hom_d(X, X)
        ident = [1] + [0] * (n - 1)
        assert D.cone(X, X, ident) == ZERO
        assert D.cone(X, X, [0] * n) == X + X.shift(1)


def test_window_errors(d3):
    P = d3.parse
    with pytest.raises(WindowError, match="overflow"):
        d3.shift(P("S1[2]"), 1)
    with pytest.raises(WindowError, match="underflow"):
        d3.shift(P("S1[-3]"), -1)
    with pytest.raises(WindowError):
        d3.realize_d(P("S1[3]"), P("S2"), [])
    with pytest.raises(ValueError):
        DerivedCategory(d3.cat, window=(1, 1))


@given(st.data())
def test_rotation(data):
    """A -> B -> C -> A[1] rotates: C is a middle term of a class in E(A[1], B)."""
    D = _rot_cat()
    C = data.draw(st.sampled_from(D.inner_universe()))
    A = data.draw(st.sampled_from(D.inner_universe()))
    d = D.e_dim(C, A)
    coords = data.draw(st.lists(st.integers(0, 1), min_size=d, max_size=d))
    B = D.middle(C, A, coords)
    A1 = A.shift(1)
    if not (D.in_window(A1) and D.in_window(B) and B.count <= 2):
        return
    assert C in D.middles(A1, B)


_ROT = {}


def _rot_cat():
    if "D" not in _ROT:
        _ROT["D"] = DerivedCategory(build_catalog(Quiver.linear(3, leftward=False)), window=(-2, 2))
    return _ROT["D"]


@pytest.mark.parametrize("leftward", [True, False])
def test_cross_backend_agreement(leftward):
    r = cross_backend(Quiver.linear(3, leftward), 2)
    assert r["violations"] == []
    assert r["classes"] > 0


def test_homk_induced_rank_identity(d3):
    P = d3.parse
    X = d3.complex_of(P("P1"))
    H = HomK(X, X)
    assert H.dim == 1
