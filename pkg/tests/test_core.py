from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extricat import core
from extricat.category import Subcat
from extricat.objects import ZERO


def labels(cat, objs):
    return sorted(cat.label(x) for x in objs)


def sub(cat, text):
    return Subcat.of(cat.parse_set(text))


# -- star and Filt ---------------------------------------------------------------------------


def test_star_examples(a3):
    assert labels(a3, core.star(a3, sub(a3, "S2"), sub(a3, "S3")).support) == ["I2", "S2", "S3"]
    assert labels(a3, core.star(a3, sub(a3, "S3"), sub(a3, "S2")).support) == ["S2", "S3"]
    D = sub(a3, "S1,P2")
    assert core.star(a3, D, Subcat()) == D
    assert core.star(a3, Subcat(), D) == D


def test_filt_examples(a3):
    P = a3.parse
    F = core.filt_closure(a3, [P("S2"), P("S3")])
    assert labels(a3, F.closure.support) == ["I2", "S2", "S3"]
    assert F.length[P("S2")] == F.length[P("S3")] == 1
    assert F.length[P("I2")] == 2 and F.length[P("S2+S3")] == 2
    E = core.filt_closure(a3, [])
    assert E.closure == Subcat() and E.length == {ZERO: 0}
    A = core.filt_closure(a3, [P("S1"), P("S2"), P("S3")])
    assert A.closure == a3.whole
    assert {a3.label(M): A.length[M] for M in a3.universe} == {"S1": 1, "S2": 1, "S3": 1, "P2": 2, "I2": 2, "P3": 3}


def test_lengths_are_composition_lengths(a3):
    """With X the simples, X-length is the total dimension (Jordan-Hölder)."""
    F = core.filt_closure(a3, a3.parse_set("S1,S2,S3"))
    for M, n in F.length.items():
        assert n == sum(a3.k0(M))


def test_x_length(a3):
    P = a3.parse
    assert core.x_length(a3, ZERO, [P("S2")]) == 0
    assert core.x_length(a3, P("I2"), a3.parse_set("S2,S3")) == 2
    assert core.x_length(a3, P("I2"), a3.parse_set("S2,S3,I2")) == 1
    with pytest.raises(core.NotFiltered):
        core.x_length(a3, P("S1"), a3.parse_set("S2,S3"))


def test_filtration_reconstruction(a3):
    F = core.filt_closure(a3, a3.parse_set("S1,S2,S3"))
    P3 = a3.parse("P3")
    chain = F.filtration(P3)
    assert chain[0] == ZERO and chain[-1] == P3 and len(chain) == 4
    assert sorted(a3.label(x) for x in F.factors(P3)) == ["S1", "S2", "S3"]


# -- simple objects ----------------------------------------------------------------------------


def test_simple_objects(a3):
    P = a3.parse
    assert core.sim(a3, a3.whole) == set(a3.parse_set("S1,S2,S3"))
    assert not core.is_simple(a3, P("S2+S3"))
    assert not core.is_simple(a3, P("I2"))
    assert core.is_simple(a3, P("I2"), sub(a3, "S1,I2"))
    assert core.sim(a3, sub(a3, "S2,I2,S3")) == set(a3.parse_set("S2,S3"))
    assert core.sim(a3, Subcat()) == set()
    with pytest.raises(ValueError):
        core.is_simple(a3, P("S1"), sub(a3, "S2"))


def test_bricks_and_semibricks(a3):
    assert all(core.is_brick(a3, x) for x in a3.universe)
    assert not core.is_brick(a3, a3.parse("S1+S1"))
    assert core.is_semibrick(a3, a3.parse_set("S2,S3"))
    assert not core.is_semibrick(a3, a3.parse_set("S2,I2"))
    assert core.is_simple_semibrick(a3, a3.parse_set("S2,S3"))
    assert not core.is_simple_semibrick(a3, a3.parse_set("S2,S3,I2"))
    assert core.is_simple_semibrick(a3, a3.parse_set("I2"))


# -- admissibility and wideness ---------------------------------------------------------------


def test_admissible_examples(a3):
    P = a3.parse
    D = sub(a3, "S2,I2,S3")
    I2, S3 = P("I2"), P("S3")
    assert core.is_admissible(a3, a3.rep(I2).identity(), D)
    assert core.is_admissible(a3, a3.rep(I2).zero_map(a3.rep(S3)), D)
    (surj,) = a3.hom_basis(I2, S3)
    assert core.is_admissible(a3, surj, D)
    # S1 -> P2 has cokernel S2, which is outside add{S1, P2}
    (inc,) = a3.hom_basis(P("S1"), P("P2"))
    assert not core.is_admissible(a3, inc, sub(a3, "S1,P2"))
    assert core.is_admissible(a3, inc, sub(a3, "S1,P2"), mode="ambient")


def test_admissible_derived_scoped_unsupported(d3):
    with pytest.raises(core.UnsupportedError):
        core.is_admissible(d3, None, d3.whole)
    assert core.is_admissible(d3, None, d3.whole, mode="ambient")


def test_wide_examples(a3):
    D = sub(a3, "S2,I2,S3")
    assert core.is_wide(a3, D) and core.is_length_wide(a3, D)
    assert not core.is_wide(a3, sub(a3, "S2,I2"))
    assert core.is_wide(a3, Subcat()) and core.is_length_wide(a3, Subcat())
    assert core.is_length_wide(a3, a3.whole)


def test_extension_closed_agrees_with_star(a3):
    for k in range(len(a3.universe) + 1):
        for sup in combinations(a3.universe, k):
            D = Subcat(frozenset(sup))
            assert core.is_extension_closed(a3, D) == (core.star(a3, D, D) <= D)


# -- the bijection -----------------------------------------------------------------------------


@pytest.mark.parametrize("n,count", [(1, 2), (2, 5), (3, 14)])
def test_bijection_counts(mods, n, count):
    r = core.verify_theorem_main(mods[n])
    assert r["bijection_ok"] and r["violations"] == []
    assert len(r["simple_semibricks"]) == len(r["length_wide"]) == count


def test_bijection_a2_members(mods):
    r = core.verify_theorem_main(mods[2])
    assert sorted(map(sorted, r["simple_semibricks"])) == sorted([[], ["S1"], ["S2"], ["P2"], ["S1", "S2"]])


@pytest.mark.parametrize("n,lw", [(2, 7), (3, 34)])
def test_ambient_reading_breaks_bijection(mods, n, lw):
    """Without the scope condition every extension-closed add{S1, P2}-like subcategory counts."""
    r = core.verify_theorem_main(mods[n], mode="ambient")
    assert not r["bijection_ok"]
    assert len(r["length_wide"]) == lw


def test_universe_guard(a3):
    with pytest.raises(OverflowError):
        core.verify_theorem_main(a3, max_universe=3)


# -- properties ----------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def a3_sb(a3):
    """A3 with its nonempty simple semibricks (all semibricks are simple in mod A3)."""
    return a3, [X for X in core.semibricks(a3) if X]


def test_semibricks_of_a3(a3_sb):
    cat, sbs = a3_sb
    assert len(sbs) == 13
    assert all(core.is_simple_semibrick(cat, X) for X in sbs)


@given(st.data())
def test_filt_is_smallest_extension_closed(a3_sb, data):
    cat, sbs = a3_sb
    X = data.draw(st.sampled_from(sbs))
    F = core.filt_closure(cat, X).closure
    assert core.star(cat, F, F) <= F
    assert Subcat.of(X) <= F
    assert core.is_simple_semibrick(cat, X)
    assert core.sim(cat, F) == set(X)
    assert core.is_length_wide(cat, F)


@given(st.data())
def test_filt_monotone_in_subsets(a3_sb, data):
    """Filt(S') ⊆ Filt(S) exactly when S' ⊆ S, for subsets of a semibrick."""
    cat, sbs = a3_sb
    X = data.draw(st.sampled_from(sbs))
    S1 = data.draw(st.sets(st.sampled_from(X))) if X else set()
    S2 = data.draw(st.sets(st.sampled_from(X))) if X else set()
    F1 = core.filt_closure(cat, S1).closure
    F2 = core.filt_closure(cat, S2).closure
    assert (F1 <= F2) == (S1 <= S2)
