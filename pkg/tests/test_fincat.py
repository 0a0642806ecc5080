import pytest
from hypothesis import given
from hypothesis import strategies as st

from finmodel import fincat, sset
from finmodel.fincat import (Diagram, LiftingProblem, Morphism, compose, coproduct, count_maps_brute,
                             enumerate_maps, identity, pushout, search_maps)

from conftest import graphs


def test_simplex_category_is_valid():
    for n in (1, 2, 3):
        assert fincat.validate_category(sset.simplex_category(n)) == []


def test_standard_objects_are_functorial():
    for x in sset.standard_objects(3).values():
        assert fincat.check_functoriality(x) == []


@given(graphs(2, 2), graphs(2, 2))
def test_search_matches_brute_force(x, y):
    assert len(enumerate_maps(x, y)) == count_maps_brute(x, y)


@given(graphs(2, 3), graphs(2, 3))
def test_search_order_is_lexicographic(x, y):
    maps = [f.comps for f in search_maps(x, y)]
    assert maps == sorted(maps)
    for f in enumerate_maps(x, y):
        assert fincat.check_naturality(f) == []


def test_budget_guard():
    x = sset.discrete(2, 6)
    y = sset.discrete(2, 6)
    with pytest.raises(fincat.SizeGuardError):
        list(search_maps(x, y, budget=100))


def test_fixed_assignment_is_respected():
    x, y = sset.discrete(2, 2), sset.discrete(2, 3)
    maps = list(search_maps(x, y, fixed={(0, 0): 2}))
    assert len(maps) == 3 and all(f.comps[0][0] == 2 for f in maps)


def test_coproduct_injections():
    a, b = sset.point(2), sset.graph(2, [(0, 1)])
    c, inj = coproduct([a, b])
    assert c.sizes == (3, 4)  # level 1 includes degenerate edges
    assert all(fincat.is_mono(i) for i in inj)


def test_pushout_glues_endpoints():
    # two points glued to the ends of an edge, then identified: a loop
    two = sset.discrete(2, 2)
    edge = sset.standard_simplex(2, 1)
    pt = sset.point(2)
    f = sset.element_map(two, edge, [[0, 1], []])
    g = enumerate_maps(two, pt)[0]
    p, bp, cp = pushout(f, g)
    assert sset.cell_count(p) == 2
    assert compose(bp, f) == compose(cp, g)
    assert sset.pi0(p)[0] == 1


@given(graphs(2, 2), graphs(2, 2))
def test_pushout_of_injections_is_coproduct(x, y):
    p, _, _ = pushout(fincat.from_empty(x), fincat.from_empty(y))
    assert p.sizes == coproduct([x, y])[0].sizes


def test_span_diagram_check():
    sh = fincat.span_shape()
    a, b = sset.point(2), sset.discrete(2, 2)
    f = sset.element_map(a, b, [[0], []])
    maps = [identity(a), identity(b), identity(b), f, f]
    assert Diagram(sh, (a, b, b), tuple(maps)).check() == []


def test_horn_lifting_against_complete_digraph():
    k = sset.graph(2, [(0, 1), (1, 0), (0, 0), (1, 1)])
    j = sset.generators(2)[1]
    assert fincat.has_rlp(fincat.to_terminal(k), j)
    assert not fincat.has_rlp(fincat.to_terminal(sset.graph(2, [(0, 1)])), j)


def test_find_lift_returns_commuting_filler():
    h = sset.horn_inclusion(2, 1, 0)
    k = sset.graph(2, [(0, 0)])
    top = enumerate_maps(h.source, k)[0]
    p = LiftingProblem(h, fincat.to_terminal(k), top, fincat.to_terminal(h.target))
    lift = fincat.find_lift(p)
    assert lift is not None and compose(lift, h) == top


def test_morphism_shape_mismatch_rejected():
    with pytest.raises(fincat.ShapeError):
        compose(identity(sset.point(2)), identity(sset.discrete(2, 2)))


@given(st.integers(0, 3), st.integers(0, 3))
def test_set_map_count(a, b):
    assert len(enumerate_maps(sset.set_object(a), sset.set_object(b))) == b ** a
