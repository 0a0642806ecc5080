import pytest
from hypothesis import given
from hypothesis import strategies as st

from finmodel import fincat, model, sset
from finmodel.fincat import compose, enumerate_maps, identity, to_terminal

from conftest import graphs

KINDS = (model.COF_TRIVFIB, model.TRIVCOF_FIB)


def _audit(f, kind, m, mode="marked"):
    tr = model.factorize(f, kind, m, mode=mode)
    assert tr.terminated
    assert compose(tr.beta, tr.alpha) == f
    assert fincat.is_mono(tr.alpha)
    assert fincat.has_rlp(tr.beta, m.gens(kind))
    return tr


@given(graphs(2, 2), graphs(2, 2), st.sampled_from(KINDS), st.data())
def test_factorization_audits(x, y, kind, data):
    maps = enumerate_maps(x, y)
    if maps:
        _audit(data.draw(st.sampled_from(maps)), kind, model.sset_instance(2))


@given(graphs(2, 2), st.sampled_from(KINDS))
def test_naive_mode_also_factors(x, kind):
    _audit(to_terminal(x), kind, model.sset_instance(2), mode="naive")


def test_horn_to_point_factorization():
    m = model.sset_instance(2)
    h = sset.horn(2, 2, 0)
    tr = _audit(to_terminal(h), model.TRIVCOF_FIB, m)
    assert tr.steps_used == 1
    assert tr.stages[1].attached == 4
    es = {(s, t) for _, s, t in sset.edges_of(tr.obj)}
    assert (1, 2) in es
    assert model.is_fibrant(tr.obj, m)


def test_point_to_loop_terminates():
    m = model.sset_instance(2)
    _audit(sset.element_map(sset.point(2), sset.loop(2), [[0], [0]]), model.TRIVCOF_FIB, m)


def test_cap_exhaustion_is_reported():
    m = model.sset_instance(3)
    f = to_terminal(sset.loop(3, 1))
    tr = model.factorize(f, model.TRIVCOF_FIB, m, cap=1)
    assert not tr.terminated and tr.steps_used == 1
    with pytest.raises(model.FactorizationIncomplete):
        model.factorize_or_raise(f, model.TRIVCOF_FIB, m, cap=1)


def test_instance_validation():
    m = model.sset_instance(1)
    with pytest.raises(ValueError):
        m.with_(iteration_cap=0)
    with pytest.raises(ValueError):
        m.with_(soa_mode="eager")
    with pytest.raises(ValueError):
        m.gens("other")


@pytest.mark.parametrize("x", [sset.point(2), sset.discrete(2, 2), sset.graph(2, [(0, 1)])])
def test_cylinder_shape(x):
    m = model.sset_instance(2)
    cyl = model.cylinder(x, m)
    assert fincat.is_mono(cyl.gamma)
    assert compose(cyl.sigma, cyl.gamma1) == identity(x)
    assert compose(cyl.sigma, cyl.gamma2) == identity(x)
    assert model.is_weak_equivalence(cyl.sigma, m, "oracle")


def test_left_homotopy_requires_fibrant_target():
    m = model.sset_instance(2)
    e = sset.graph(2, [(0, 1)])
    f = identity(e)
    with pytest.raises(ValueError):
        model.left_homotopic(f, f, m)


def test_vertices_of_complete_digraph_are_homotopic():
    m = model.sset_instance(2)
    k = sset.graph(2, [(0, 1), (1, 0)])
    a, b = [sset.element_map(sset.point(2), k, [[v], [v]]) for v in (0, 1)]
    h = model.homotopy(a, b, m)
    cyl = model.cylinder(sset.point(2), m)
    assert h is not None and compose(h, cyl.gamma1) == a and compose(h, cyl.gamma2) == b


def test_disconnected_points_are_not_homotopic():
    m = model.sset_instance(2)
    k = sset.discrete(2, 2)
    a, b = [sset.element_map(sset.point(2), k, [[v], [v]]) for v in (0, 1)]
    assert not model.left_homotopic(a, b, m)


def test_set_weak_equivalences():
    m = model.sset_instance(1)
    assert model.is_weak_equivalence(identity(sset.set_object(0)), m)
    assert model.is_weak_equivalence(to_terminal(sset.set_object(3)), m)
    assert not model.is_weak_equivalence(fincat.from_empty(sset.set_object(1)), m)


@given(graphs(2, 2), graphs(2, 2), st.data())
def test_weak_equivalence_two_out_of_three(x, y, data):
    # f weq iff R(f) weq; composing with weqs to the replacements keeps the answer
    m = model.sset_instance(2)
    maps = enumerate_maps(x, y)
    if not maps:
        return
    f = data.draw(st.sampled_from(maps))
    rx, ry = model.full_replacement(x, m), model.full_replacement(y, m)
    assert model.is_weak_equivalence(rx.v, m) and model.is_weak_equivalence(ry.v, m)
    assert model.is_weak_equivalence(f, m) == model.is_weak_equivalence(compose(ry.v, f), m)


def test_replacements_are_fibrant():
    m = model.sset_instance(2)
    for x in (sset.graph(3, [(0, 1), (1, 2)]), sset.horn(2, 2, 1)):
        assert model.is_fibrant(model.full_replacement(x, m).obj, m)
