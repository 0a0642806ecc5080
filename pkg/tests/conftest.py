import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from finmodel import hocat, model, sset

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, max_vertices=3, max_edges=3):
    nv = draw(st.integers(0, max_vertices))
    if nv == 0:
        return sset.graph(0)
    edge = st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1))
    return sset.graph(nv, draw(st.lists(edge, max_size=max_edges)))


@pytest.fixture(scope="session")
def m1():
    return model.sset_instance(1)


@pytest.fixture(scope="session")
def m2():
    return model.sset_instance(2)


@pytest.fixture(scope="session")
def m3():
    return model.sset_instance(3)


@pytest.fixture(scope="session")
def ho2(m2):
    return hocat.HoCategory(m2)


@pytest.fixture(scope="session")
def ho3(m3):
    return hocat.HoCategory(m3)
