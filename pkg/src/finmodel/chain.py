"""Bounded chain complexes of finite-dimensional vector spaces over F_p.

``d[n]`` is the matrix of ``A_n -> A_{n-1}`` (rows index ``A_{n-1}``).
Degrees outside ``[lo, hi]`` are zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class ChainError(ValueError):
    """A complex or chain map violating its invariants; ``degree`` names where."""

    def __init__(self, msg: str, degree: int | None = None):
        super().__init__(msg)
        self.degree = degree


def _mat(rows, cols, data=None, p=2) -> np.ndarray:
    if data is None:
        return np.zeros((rows, cols), dtype=np.int64)
    a = np.array(data, dtype=np.int64).reshape(rows, cols)
    return a % p


def _rref(a: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p, pivoting only in the first ncols columns."""
    m = np.array(a, dtype=np.int64) % p
    rows = m.shape[0]
    ncols = m.shape[1] if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        piv = np.nonzero(m[r:, c])[0]
        if not len(piv):
            continue
        i = r + piv[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        for j in np.nonzero(m[:, c])[0]:
            if j != r:
                m[j] = (m[j] - m[j, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod(a: np.ndarray, p: int) -> int:
    return len(_rref(a, p)[1])


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the null space of a over F_p."""
    cols = a.shape[1]
    m, pivots = _rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-m[row, fc]) % p
    return basis


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some x with a x = b over F_p, or None."""
    cols = a.shape[1]
    m, pivots = _rref(np.hstack([np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)]), p, cols)
    if m[len(pivots):, cols:].any():
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = m[row, cols:]
    return x


@dataclass
class ChainComplex:
    p: int
    dims: dict[int, int]
    d: dict[int, np.ndarray] = field(default_factory=dict)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def diff(self, n: int) -> np.ndarray:
        a = self.d.get(n)
        if a is None:
            return _mat(self.dim(n - 1), self.dim(n))
        return a

    @property
    def support(self) -> tuple[int, int] | None:
        ns = [n for n, k in self.dims.items() if k]
        return (min(ns), max(ns)) if ns else None

    def degrees(self) -> list[int]:
        s = self.support
        return list(range(s[0], s[1] + 1)) if s else []

    def check(self) -> list[ChainError]:
        errs = []
        for n, a in sorted(self.d.items()):
            if a.shape != (self.dim(n - 1), self.dim(n)):
                errs.append(ChainError(f"d_{n} has shape {a.shape}, expected {(self.dim(n - 1), self.dim(n))}", n))
        if errs:
            return errs
        for n in sorted(set(self.d) | {m + 1 for m in self.d}):
            dd = (self.diff(n - 1) @ self.diff(n)) % self.p
            if dd.any():
                errs.append(ChainError(f"d_{n - 1} d_{n} != 0", n))
        return errs

    def validate(self) -> "ChainComplex":
        errs = self.check()
        if errs:
            raise errs[0]
        return self

    def __eq__(self, other):
        if not isinstance(other, ChainComplex) or self.p != other.p:
            return False
        degs = set(self.dims) | set(other.dims)
        if any(self.dim(n) != other.dim(n) for n in degs):
            return False
        return all(np.array_equal(self.diff(n) % self.p, other.diff(n) % self.p) for n in degs)


def complex_from(p: int, dims: dict[int, int], d: dict[int, list] | None = None) -> ChainComplex:
    c = ChainComplex(p, {n: k for n, k in dims.items() if k})
    for n, rows in (d or {}).items():
        c.d[n] = _mat(c.dim(n - 1), c.dim(n), rows, p) if c.dim(n) and c.dim(n - 1) else _mat(c.dim(n - 1), c.dim(n))
    return c


@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    comps: dict[int, np.ndarray] = field(default_factory=dict)

    def at(self, n: int) -> np.ndarray:
        a = self.comps.get(n)
        if a is None:
            return _mat(self.target.dim(n), self.source.dim(n))
        return a

    def degrees(self) -> list[int]:
        ns = set(self.source.degrees()) | set(self.target.degrees())
        return sorted(ns | {n - 1 for n in ns})

    def check(self) -> list[ChainError]:
        p = self.source.p
        errs = []
        for n in self.degrees():
            if self.at(n).shape != (self.target.dim(n), self.source.dim(n)):
                errs.append(ChainError(f"f_{n} has the wrong shape", n))
        if errs:
            return errs
        for n in self.degrees():
            lhs = (self.at(n - 1) @ self.source.diff(n)) % p
            rhs = (self.target.diff(n) @ self.at(n)) % p
            if not np.array_equal(lhs, rhs):
                errs.append(ChainError(f"f_{n - 1} d_{n} != d_{n} f_{n}", n))
        return errs


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {n: np.eye(c.dim(n), dtype=np.int64) for n in c.degrees()})


def compose_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    p = f.source.p
    ns = set(f.degrees()) | set(g.degrees())
    return ChainMap(f.source, g.target, {n: (g.at(n) @ f.at(n)) % p for n in sorted(ns)})


def zero_complex(p: int = 2) -> ChainComplex:
    return ChainComplex(p, {})


# --------------------------------------------------------------------------
# homology


def homology(c: ChainComplex, n: int) -> int:
    p = c.p
    return c.dim(n) - rank_mod(c.diff(n), p) - rank_mod(c.diff(n + 1), p)


def homology_ranks(c: ChainComplex) -> dict[int, int]:
    return {n: homology(c, n) for n in c.degrees()}


def induced_rank(f: ChainMap, n: int) -> int:
    """Rank of H_n(f), computed on cycle representatives."""
    p = f.source.p
    z = kernel_basis(f.source.diff(n), p)
    b = f.target.diff(n + 1)
    fz = (f.at(n) @ z) % p
    return rank_mod(np.hstack([b, fz]), p) - rank_mod(b, p)


def is_quasi_iso(f: ChainMap) -> bool:
    for n in f.degrees():
        ha, hb = homology(f.source, n), homology(f.target, n)
        if ha != hb or induced_rank(f, n) != ha:
            return False
    return True


def is_fibration(f: ChainMap) -> bool:
    p = f.source.p
    return all(rank_mod(f.at(n), p) == f.target.dim(n) for n in f.degrees())


# --------------------------------------------------------------------------
# the truncation chain


def _cokernel(m: np.ndarray, p: int) -> np.ndarray:
    """P with ker P = im m and full row rank; the identity when m = 0."""
    return kernel_basis(m.T, p).T % p


@dataclass
class Truncation:
    k: int
    complex: ChainComplex
    to_colimit: ChainMap  # A^k -> A
    literal_ok: bool  # the bottom copy is all of A_{-k} with the identity differential


def _bottom(c: ChainComplex, k: int) -> tuple[np.ndarray, np.ndarray]:
    # degree -k-1 holds A_{-k} / im d_{-k+1}; returns (projection, induced d_{-k})
    proj = _cokernel(c.diff(-k + 1), c.p)
    section = solve_mod(proj, np.eye(proj.shape[0], dtype=np.int64), c.p)
    return proj, (c.diff(-k) @ section) % c.p


def truncate(c: ChainComplex, k: int, literal: bool = False) -> Truncation:
    """A^k: A_n for -k <= n <= k with a bottom copy of A_{-k} in degree -k-1.

    The bottom copy is taken modulo im d_{-k+1} so that d∘d = 0; it is the
    full A_{-k} with the identity differential exactly when d_{-k+1} = 0.
    ``literal=True`` keeps the unreduced copy even when that breaks d∘d.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    p = c.p
    if literal:
        proj = np.eye(c.dim(-k), dtype=np.int64)
        down = c.diff(-k) % p
    else:
        proj, down = _bottom(c, k)
    literal_ok = not (c.diff(-k + 1) % p).any()
    dims = {n: c.dim(n) for n in range(-k, k + 1)}
    dims[-k - 1] = proj.shape[0]
    t = ChainComplex(p, {n: v for n, v in dims.items() if v})
    for n in range(-k + 1, k + 1):
        t.d[n] = c.diff(n) % p
    t.d[-k] = proj
    comps = {n: np.eye(c.dim(n), dtype=np.int64) for n in range(-k, k + 1)}
    comps[-k - 1] = down
    return Truncation(k, t, ChainMap(t, c, comps), literal_ok)


def connecting_map(c: ChainComplex, k: int) -> ChainMap:
    """A^k -> A^{k+1}: identity on -k..k, induced d_{-k} in degree -k-1."""
    a, b = truncate(c, k), truncate(c, k + 1)
    comps = {n: np.eye(c.dim(n), dtype=np.int64) for n in range(-k, k + 1)}
    comps[-k - 1] = a.to_colimit.at(-k - 1)
    return ChainMap(a.complex, b.complex, comps)


@dataclass
class TruncationReport:
    ok: bool
    K: int
    failure: tuple | None = None  # (stage, degree, reason)
    k_too_small: bool = False

    def line(self) -> str:
        if self.ok:
            return "pass"
        if self.k_too_small:
            return f"K={self.K} too small for the support"
        stage, deg, why = self.failure
        return f"fail at stage {stage}, degree {deg}: {why}"


def verify_truncation_colimit(c: ChainComplex, K: int, connecting: dict[int, ChainMap] | None = None) -> TruncationReport:
    """Check the truncation chain up to stage K presents c as its colimit.

    ``connecting`` substitutes chosen stage maps (for negative controls).
    """
    p = c.p
    s = c.support
    if s is not None and K < max(-s[0] + 1, s[1]):
        return TruncationReport(False, K, k_too_small=True)
    stages = [truncate(c, k) for k in range(K + 1)]
    for k, st in enumerate(stages):
        for e in st.complex.check():
            return TruncationReport(False, K, (k, e.degree, str(e)))
        for e in st.to_colimit.check():
            return TruncationReport(False, K, (k, e.degree, f"cocone component: {e}"))
    for k in range(K):
        f = (connecting or {}).get(k) or connecting_map(c, k)
        for e in f.check():
            return TruncationReport(False, K, (k, e.degree, f"connecting map: {e}"))
        lhs = compose_maps(stages[k + 1].to_colimit, f)
        for n in lhs.degrees():
            if not np.array_equal(lhs.at(n) % p, stages[k].to_colimit.at(n) % p):
                return TruncationReport(False, K, (k, n, "cocone does not commute with the connecting map"))
    top = stages[K].to_colimit
    for n in sorted(set(top.degrees()) | set(c.degrees())):
        a = top.at(n)
        if a.shape[0] != a.shape[1] or rank_mod(a, p) != a.shape[0]:
            return TruncationReport(False, K, (K, n, "stage component is not an isomorphism"))
    return TruncationReport(True, K)


# --------------------------------------------------------------------------
# random complexes


def random_complex(rng: np.random.Generator, p: int = 2, lo: int = -3, hi: int = 3, max_dim: int = 3) -> ChainComplex:
    """Random complex supported in [lo, hi]; each d_n maps into ker d_{n-1}."""
    dims = {n: int(rng.integers(0, max_dim + 1)) for n in range(lo, hi + 1)}
    c = ChainComplex(p, {n: v for n, v in dims.items() if v})
    for n in range(lo + 1, hi + 1):
        ker = kernel_basis(c.diff(n - 1), p)
        coeff = rng.integers(0, p, size=(ker.shape[1], c.dim(n)))
        c.d[n] = (ker @ coeff) % p
    return c
