import pytest
from hypothesis import given
from hypothesis import strategies as st

from finmodel import fincat, model, sset
from finmodel.sset import Forest

from conftest import graphs


def test_simplex_sizes():
    assert sset.standard_simplex(2, 1).sizes == (2, 3)
    assert sset.standard_simplex(3, 2).sizes == (3, 6, 10)


def test_horn_is_connected():
    assert sset.pi0(sset.horn(2, 2, 0))[0] == 1


def test_generator_counts():
    counts = [tuple(len(g) for g in sset.generators(n)) for n in (1, 2, 3)]
    assert counts == [(1, 1), (2, 5), (3, 9)]


def test_sset1_cofibration_generator():
    (i,), _ = sset.generators(1)
    assert i.source.sizes == (0,) and i.target.sizes == (1,)


def test_horns_pairwise_non_isomorphic():
    _, j = sset.generators(3)
    for a in range(len(j)):
        for b in range(a + 1, len(j)):
            assert not sset.arrows_isomorphic(j[a], j[b])


def test_corpus_sizes():
    assert len(sset.multigraph_corpus(3, 3)) == 68
    assert len(sset.all_set_maps(4)) == 499
    assert len(sset.multigraph_corpus(6, 6, max_cells=6)) == 107


def _complete_components(x):
    _, lab = sset.pi0(x)
    es = {(s, t) for _, s, t in sset.edges_of(x)}
    # degenerate edges supply the loops
    return all((a, b) in es for a in range(len(lab)) for b in range(len(lab)) if lab[a] == lab[b] and a != b)


@given(graphs(3, 5))
def test_fibrant_iff_complete_digraph(x):
    assert model.is_fibrant(x, model.sset_instance(2)) == _complete_components(x)


@given(graphs(2, 2), graphs(2, 2), st.data())
def test_oracle_agrees_with_search(x, y, data):
    m = model.sset_instance(2)
    maps = fincat.enumerate_maps(x, y)
    if not maps:
        return
    f = data.draw(st.sampled_from(maps))
    assert model.is_weak_equivalence(f, m, "oracle") == model.is_weak_equivalence(f, m, "search")


def test_nerves_of_cyclic_groups_are_fibrant():
    m = model.sset_instance(3)
    for p in (2, 3):
        assert model.is_fibrant(sset.nerve_cyclic(3, p), m)


def test_cell_complex_triangle():
    x = sset.cell_complex(3, 3, [(0, 1), (1, 2), (0, 2)], [(1, 2, 0)])
    assert sset.cell_count(x) == 7
    assert fincat.check_functoriality(x) == []


@pytest.mark.parametrize("s", ["", "()", "()()", "(())()", "(()())", "((()))(())"])
def test_forest_roundtrip(s):
    assert Forest.parse(s).serialize() == Forest.parse(Forest.parse(s).serialize()).serialize()


def test_forest_is_canonical():
    assert Forest.parse("()(())") == Forest.parse("(())()")
    assert Forest.parse("((()))").height() == 2


def test_forest_invariant_low_levels():
    assert str(sset.forest_invariant(sset.nothing(1))) == ""
    assert str(sset.forest_invariant(sset.set_object(3))) == "()"
    assert str(sset.forest_invariant(sset.discrete(2, 3))) == "()()()"
    assert str(sset.forest_invariant(sset.graph(3, [(0, 1)]))) == "()()"


def test_forest_invariant_loops():
    got = [str(sset.forest_invariant(x)) for x in (sset.bare_point(), sset.loop(3, 1), sset.loop(3, 2))]
    assert got == ["()", "(())", "(()())"]
    both = sset.disjoint_union([sset.loop(3, 1), sset.bare_point()])
    assert str(sset.forest_invariant(both)) == "()(())"


def test_forest_outside_reference_table():
    with pytest.raises(sset.CorpusBoundError):
        sset.forest_invariant(sset.loop(3, 3))


def test_components_cover():
    x = sset.graph(4, [(0, 1), (2, 2)])
    comps = sset.components(x)
    assert len(comps) == 3
    assert sum(c.total for c, _ in comps) == x.total
