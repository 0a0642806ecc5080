import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from finmodel import chain
from finmodel.chain import ChainMap, complex_from

from test_acceptance import brute_homology, brute_rank

seeds = st.integers(0, 2**32 - 1)


def _rc(seed, **kw):
    return chain.random_complex(np.random.default_rng(seed), **kw)


def _two_term(d):
    return complex_from(2, {1: 1, 0: 1}, {1: [[d]]})


def test_homology_examples():
    z = chain.zero_complex()
    assert all(chain.homology(z, n) == 0 for n in range(-2, 3))
    acyclic = _two_term(1)
    assert chain.homology(acyclic, 0) == chain.homology(acyclic, 1) == 0
    split = _two_term(0)
    assert chain.homology(split, 0) == chain.homology(split, 1) == 1


def test_quasi_iso_examples():
    acyclic, split = _two_term(1), _two_term(0)
    assert chain.is_quasi_iso(chain.identity_map(split))
    z = chain.zero_complex()
    to_zero = ChainMap(acyclic, z, {0: np.zeros((0, 1), dtype=np.int64), 1: np.zeros((0, 1), dtype=np.int64)})
    assert chain.is_quasi_iso(to_zero)
    zero = ChainMap(split, split, {0: np.zeros((1, 1), dtype=np.int64), 1: np.zeros((1, 1), dtype=np.int64)})
    assert not chain.is_quasi_iso(zero)


def test_fibration_examples():
    c = complex_from(2, {0: 2})
    assert chain.is_fibration(chain.identity_map(c))
    assert chain.is_fibration(ChainMap(c, chain.zero_complex(), {0: np.zeros((0, 2), dtype=np.int64)}))
    sub = complex_from(2, {0: 1})
    assert not chain.is_fibration(ChainMap(sub, c, {0: np.array([[1], [0]])}))


def test_non_complex_is_rejected():
    c = complex_from(2, {0: 1, 1: 1, 2: 1}, {1: [[1]], 2: [[1]]})
    errs = c.check()
    assert errs and errs[0].degree is not None
    with pytest.raises(chain.ChainError):
        c.validate()


def test_non_chain_map_is_rejected():
    c = _two_term(1)
    bad = ChainMap(c, c, {0: np.eye(1, dtype=np.int64), 1: np.zeros((1, 1), dtype=np.int64)})
    assert bad.check()


def test_truncation_k0_example():
    c = complex_from(2, {0: 2})
    t = chain.truncate(c, 0)
    assert t.complex.dims == {0: 2, -1: 2}
    assert np.array_equal(t.complex.diff(0), np.eye(2))
    assert t.literal_ok


def test_truncation_of_zero_complex():
    t = chain.truncate(chain.zero_complex(), 2)
    assert all(t.complex.dim(n) == 0 for n in range(-3, 3))


def test_literal_truncation_breaks_when_boundary_hits_bottom():
    # d_0 != 0 means the plain bottom copy fails d∘d = 0 at k = 1
    c = complex_from(2, {0: 1, 1: 1}, {1: [[1]]})
    assert chain.truncate(c, 1, literal=True).complex.check() == []
    assert chain.truncate(c, 1).complex.check() == []
    c2 = complex_from(2, {-1: 1, 0: 1}, {0: [[1]]})
    assert chain.truncate(c2, 1, literal=True).complex.check()
    assert chain.truncate(c2, 1).complex.check() == []


@given(seeds, st.integers(0, 4))
def test_truncation_is_a_complex(seed, k):
    c = _rc(seed)
    t = chain.truncate(c, k)
    assert t.complex.check() == []
    assert t.to_colimit.check() == []


@given(seeds, st.integers(0, 4))
def test_literal_agrees_when_bottom_boundary_vanishes(seed, k):
    c = _rc(seed)
    t, lit = chain.truncate(c, k), chain.truncate(c, k, literal=True)
    if t.literal_ok:
        assert t.complex == lit.complex


@given(seeds, st.integers(0, 4))
def test_truncation_keeps_inner_homology(seed, k):
    c = _rc(seed)
    t = chain.truncate(c, k).complex
    for n in range(-k + 1, k):
        assert chain.homology(t, n) == chain.homology(c, n)
    if k >= 3:
        assert chain.homology(t, k) == chain.homology(c, k)


@given(seeds)
def test_homology_matches_brute_force(seed):
    c = _rc(seed)
    for n in range(-4, 5):
        assert chain.homology(c, n) == brute_homology(c, n)
        assert chain.rank_mod(c.diff(n), 2) == brute_rank(c.diff(n))


@given(seeds, st.sampled_from([3, 5]))
def test_rank_over_odd_primes(seed, p):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(3, 4))
    k = chain.kernel_basis(a, p)
    assert k.shape[1] == 4 - chain.rank_mod(a, p)
    assert not ((a @ k) % p).any()


@given(seeds)
def test_colimit_verifies(seed):
    c = _rc(seed)
    assert chain.verify_truncation_colimit(c, 4).ok


def test_k_too_small_is_reported():
    c = complex_from(2, {-3: 1})
    rep = chain.verify_truncation_colimit(c, 2)
    assert not rep.ok and rep.k_too_small
    assert chain.verify_truncation_colimit(chain.zero_complex(), 1).ok


def test_corrupted_connecting_map_fails():
    c = complex_from(2, {-1: 1, 0: 1, 1: 1}, {0: [[1]]})
    good = chain.connecting_map(c, 0)
    comps = dict(good.comps)
    comps[-1] = (comps[-1] + 1) % 2
    bad = ChainMap(good.source, good.target, comps)
    rep = chain.verify_truncation_colimit(c, 3, connecting={0: bad})
    assert not rep.ok
    stage, degree, why = rep.failure
    assert (stage, degree) == (0, 0) and "f_-1" in why


@given(seeds)
def test_quasi_iso_identity_and_composition(seed):
    c = _rc(seed)
    i = chain.identity_map(c)
    assert chain.is_quasi_iso(i)
    assert chain.is_quasi_iso(chain.compose_maps(i, i))
