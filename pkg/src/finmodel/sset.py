"""Truncated simplicial sets ``SSet_n = Set^(D_n op)``.

``D_n`` has objects ``[0] .. [n-1]`` (the ordinals with 1..n elements)
and all monotone maps between them.  Elements of ``X([k])`` are the
k-simplices, degenerate ones included.

Element order for cell complexes built here: nondegenerate cells first in
the order given, then degenerate simplices ``s*(c)`` grouped by the
dimension drop, cell and surjection.  In particular ``X([1])`` lists the
nondegenerate edges followed by one degenerate loop per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Sequence

from .fincat import (FinCategory, Morphism, Presheaf, ShapeError, _UnionFind, coproduct, empty, is_iso,
                     make_category, search_maps, tabulate, terminal)


def _monotone(i: int, j: int):
    """All monotone maps [i] -> [j] as image tuples."""
    return [t for t in product(range(j + 1), repeat=i + 1) if all(t[a] <= t[a + 1] for a in range(i))]


@lru_cache(maxsize=None)
def simplex_category(n: int) -> FinCategory:
    """D_n: ordinals [0]..[n-1] with every monotone map."""
    if not 1 <= n <= 3:
        raise ValueError("only levels 1..3 are supported")
    objects = [str(k) for k in range(n)]
    gens = {}
    for i in range(n):
        for j in range(n):
            for t in _monotone(i, j):
                gens[_mname(i, j, t)] = (str(i), str(j))

    def comp(g, f):
        gi, gj, gt = _parse(g)
        fi, fj, ft = _parse(f)
        return _mname(fi, gj, tuple(gt[x] for x in ft))

    ids = {str(k): _mname(k, k, tuple(range(k + 1))) for k in range(n)}
    return make_category(objects, gens, comp, ids, f"D{n}")


def _mname(i, j, t):
    return f"{i}>{j}:" + "".join(map(str, t))


def _parse(name):
    head, img = name.split(":")
    i, j = head.split(">")
    return int(i), int(j), tuple(int(c) for c in img)


@lru_cache(maxsize=None)
def _maps(n):
    """Per morphism index: (i, j, image tuple)."""
    cat = simplex_category(n)
    return [_parse(m[0]) for m in cat.morphisms]


def level(x: Presheaf) -> int:
    return x.cat.n_objects


# --------------------------------------------------------------------------
# simplicial subsets of a standard simplex


def _simplex_subset(n: int, m: int, faces: Sequence[tuple[int, ...]]) -> Presheaf:
    """Subpresheaf of Δ[m] (truncated at level n) generated by the given vertex sets."""
    cat = simplex_category(n)
    gens = [frozenset(f) for f in faces]

    def ok(t):
        s = set(t)
        return any(s <= g for g in gens)

    elements = []
    for k in range(n):
        els = [t for t in _monotone(k, m) if ok(t)]
        els.sort(key=lambda t: (len(set(t)) != len(t), t))
        elements.append(els)
    table = _maps(n)

    def act(mi, t):
        i, j, th = table[mi]
        return tuple(t[x] for x in th)

    return tabulate(cat, elements, act, labels=True)


def _subset_inclusion(a: Presheaf, b: Presheaf) -> Morphism:
    comps = []
    for k in range(a.cat.n_objects):
        index = {lab: i for i, lab in enumerate(b.labels[k])}
        comps.append(tuple(index[lab] for lab in a.labels[k]))
    return Morphism(a, b, tuple(comps))


def standard_simplex(n: int, m: int) -> Presheaf:
    """Δ_m in SSet_n (for m >= n this omits every simplex of dimension >= n)."""
    return _simplex_subset(n, m, [tuple(range(m + 1))])


def boundary(n: int, m: int) -> Presheaf:
    if m == 0:
        return _simplex_subset(n, 0, [])
    return _simplex_subset(n, m, [tuple(v for v in range(m + 1) if v != i) for i in range(m + 1)])


def horn(n: int, m: int, k: int) -> Presheaf:
    """Λ^k_m: union of the faces of Δ_m opposite the vertices other than k."""
    if not (1 <= m and 0 <= k <= m):
        raise ValueError("horn indices out of range")
    return _simplex_subset(n, m, [tuple(v for v in range(m + 1) if v != i) for i in range(m + 1) if i != k])


def boundary_inclusion(n: int, m: int) -> Morphism:
    return _subset_inclusion(boundary(n, m), standard_simplex(n, m))


def horn_inclusion(n: int, m: int, k: int) -> Morphism:
    return _subset_inclusion(horn(n, m, k), standard_simplex(n, m))


def standard_objects(n: int) -> dict[str, Presheaf]:
    """Representables, boundaries and horns of SSet_n keyed by name."""
    if not 1 <= n <= 3:
        raise ValueError("level must be 1, 2 or 3")
    out = {}
    for m in range(n + 1):
        out[f"Delta{m}"] = standard_simplex(n, m)
        out[f"dDelta{m}"] = boundary(n, m)
        for k in range(m + 1):
            if m:
                out[f"Horn{m}_{k}"] = horn(n, m, k)
    return out


def arrows_isomorphic(f: Morphism, g: Morphism) -> bool:
    """Is there an isomorphism of arrows f ≅ g (iso on source and target making the square commute)?"""
    if f.source.sizes != g.source.sizes or f.target.sizes != g.target.sizes:
        return False
    for b in search_maps(f.target, g.target):
        if not is_iso(b):
            continue
        for a in search_maps(f.source, g.source):
            if is_iso(a) and all(b.comps[o][f.comps[o][x]] == g.comps[o][a.comps[o][x]]
                                 for o, x in f.source.elements()):
                return True
    return False


@lru_cache(maxsize=None)
def generators(n: int) -> tuple[tuple[Morphism, ...], tuple[Morphism, ...]]:
    """(I_n, J_n): boundary inclusions ∂Δ_m -> Δ_m with m < n, and all horn inclusions
    Λ^k_m -> Δ_m with 1 <= m <= n, kept up to isomorphism of arrows."""
    gen_cof = tuple(boundary_inclusion(n, m) for m in range(n))
    gen_triv = []
    for m in range(1, n + 1):
        for k in range(m + 1):
            j = horn_inclusion(n, m, k)
            if not any(arrows_isomorphic(j, other) for other in gen_triv):
                gen_triv.append(j)
    return gen_cof, tuple(gen_triv)


# --------------------------------------------------------------------------
# cell complexes


def _surjections(k, d):
    return [t for t in _monotone(k, d) if len(set(t)) == d + 1]


@dataclass(frozen=True)
class Deg:
    """Degenerate edge at a vertex, usable as a triangle face."""

    vertex: int


def cell_complex(n: int, vertices: int, edges: Sequence[tuple[int, int]] = (),
                 triangles: Sequence[tuple] = ()) -> Presheaf:
    """Truncated simplicial set from nondegenerate cells.

    ``edges`` are ``(source, target)`` vertex pairs.  ``triangles`` list
    their faces ``(d0, d1, d2) = (edge 12, edge 02, edge 01)``; each face is
    an edge index or ``Deg(v)``.
    """
    if edges and n < 2:
        raise ShapeError("edges need level >= 2")
    if triangles and n < 3:
        raise ShapeError("triangles need level >= 3")
    ncells = [vertices, len(edges), len(triangles)][:n]
    # faces[d][c] = list of face elements, each element = (surjection, dim, cell)
    faces = {1: [], 2: []}
    for s, t in edges:
        faces[1].append([((0,), 0, t), ((0,), 0, s)])
    for tri in triangles:
        fl = []
        for f in tri:
            if isinstance(f, Deg):
                fl.append(((0, 0), 0, f.vertex))
            else:
                fl.append(((0, 1), 1, int(f)))
        faces[2].append(fl)

    def face(d, c, delta):
        # restriction of nondegenerate (d, c) along an injective delta: [j] -> [d]
        if len(delta) == d + 1:
            return (tuple(range(d + 1)), d, c)
        t = max(x for x in range(d + 1) if x not in delta)
        inner = tuple(v if v < t else v - 1 for v in delta)
        s2, d2, c2 = faces[d][c][t]
        return restrict((s2, d2, c2), inner)

    def restrict(el, theta):
        s, d, c = el
        st = tuple(s[x] for x in theta)
        img = sorted(set(st))
        sigma = tuple(img.index(v) for v in st)
        s2, d2, c2 = face(d, c, tuple(img))
        return (tuple(s2[x] for x in sigma), d2, c2)

    elements = []
    for k in range(n):
        els = []
        for d in range(k, -1, -1):
            for c in range(ncells[d] if d < len(ncells) else 0):
                for s in _surjections(k, d):
                    els.append((s, d, c))
        elements.append(els)
    table = _maps(n)

    def act(mi, el):
        i, j, th = table[mi]
        return restrict(el, th)

    x = tabulate(simplex_category(n), elements, act)
    from .fincat import check_functoriality
    problems = check_functoriality(x)
    if problems:
        raise ShapeError("cell data violates the simplicial identities: " + problems[0])
    return x


def graph(vertices: int, edges: Sequence[tuple[int, int]] = (), n: int = 2) -> Presheaf:
    return cell_complex(n, vertices, edges)


def set_object(k: int) -> Presheaf:
    return cell_complex(1, k)


def discrete(n: int, k: int) -> Presheaf:
    return cell_complex(n, k)


def point(n: int) -> Presheaf:
    return terminal(simplex_category(n))


def nothing(n: int) -> Presheaf:
    return empty(simplex_category(n))


def nerve_cyclic(n: int, p: int) -> Presheaf:
    """Nerve of the group Z/p, truncated to SSet_n (a fibrant object)."""
    cat = simplex_category(n)
    elements = [[(0,) + t for t in product(range(p), repeat=k)] for k in range(n)]
    table = _maps(n)

    def act(mi, x):
        i, j, th = table[mi]
        base = x[th[0]]
        return tuple((x[v] - base) % p for v in th)

    return tabulate(cat, elements, act)


def element_map(x: Presheaf, y: Presheaf, images: Sequence[Sequence[int]]) -> Morphism:
    """Complete a morphism from images of x's nondegenerate cells (per level).

    ``images[k][c]`` is the element of ``y([k])`` hit by the c-th
    nondegenerate k-cell of x; degenerate simplices are forced.
    """
    fixed = {}
    nd = nondegenerate(x)
    for k, row in enumerate(images):
        for c, v in zip(nd[k], row):
            fixed[k, c] = v
    for f in search_maps(x, y, fixed=fixed):
        return f
    raise ShapeError("cell images do not extend to a simplicial map")


def nondegenerate(x: Presheaf) -> list[list[int]]:
    """Indices of nondegenerate simplices per level."""
    cat = x.cat
    n = cat.n_objects
    table = _maps(n)
    degenerate = [set() for _ in range(n)]
    for mi, (i, j, th) in enumerate(table):
        # th: [i] -> [j] surjective with j < i makes X(th): X[j] -> X[i] a degeneracy
        if j < i and len(set(th)) == j + 1:
            degenerate[i].update(x.action[mi])
    return [[e for e in range(x.sizes[k]) if e not in degenerate[k]] for k in range(n)]


def cell_count(x: Presheaf) -> int:
    return sum(len(r) for r in nondegenerate(x))


def face_map(n: int, k: int, i: int) -> int:
    """Morphism index of the coface δ^i: [k-1] -> [k]."""
    t = tuple(v for v in range(k + 1) if v != i)
    return simplex_category(n).mor(_mname(k - 1, k, t))


def edges_of(x: Presheaf) -> list[tuple[int, int, int]]:
    """Nondegenerate edges as ``(element, source, target)``."""
    if level(x) < 2:
        return []
    n = level(x)
    d0, d1 = face_map(n, 1, 0), face_map(n, 1, 1)
    return [(e, x.action[d1][e], x.action[d0][e]) for e in nondegenerate(x)[1]]


# --------------------------------------------------------------------------
# invariants and oracles


def pi0(x: Presheaf) -> tuple[int, list[int]]:
    """Connected components (edges joined regardless of orientation)."""
    nv = x.sizes[0]
    uf = _UnionFind(nv)
    for _, s, t in edges_of(x):
        uf.union(s, t)
    roots = {}
    labels = []
    for v in range(nv):
        r = uf.find(v)
        if r not in roots:
            roots[r] = len(roots)
        labels.append(roots[r])
    return len(roots), labels


def component_map(f: Morphism) -> list[int]:
    _, ls = pi0(f.source)
    _, lt = pi0(f.target)
    out = {}
    for v, c in enumerate(ls):
        out[c] = lt[f.comps[0][v]]
    return [out[c] for c in range(len(out))]


def weq_oracle(n: int, f: Morphism, model=None) -> bool:
    """Closed-form weak-equivalence test for n = 1, 2; n = 3 uses the search strategy."""
    if n == 1:
        a, b = f.source.sizes[0], f.target.sizes[0]
        return (a > 0 and b > 0) or (a == 0 and b == 0)
    if n == 2:
        cs = component_map(f)
        nt, _ = pi0(f.target)
        return len(set(cs)) == len(cs) == nt
    from .model import is_weak_equivalence, sset_instance
    return is_weak_equivalence(f, model or sset_instance(3), strategy="search")


# --------------------------------------------------------------------------
# corpora


def multigraph_corpus(max_vertices: int = 3, max_edges: int = 3,
                      max_cells: int | None = None) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    """Directed multigraphs with loops, one representative per isomorphism class.

    ``max_cells`` bounds vertices + edges.
    """
    seen = set()
    out = []
    for nv in range(max_vertices + 1):
        pairs = [(s, t) for s in range(nv) for t in range(nv)]
        for ne in range(max_edges + 1):
            if (nv == 0 and ne) or (max_cells is not None and nv + ne > max_cells):
                continue
            for es in _multisets(pairs, ne):
                key = canonical_multigraph(nv, es)
                if key not in seen:
                    seen.add(key)
                    out.append(key)
    out.sort(key=lambda k: (k[0], len(k[1]), k[1]))
    return out


def _multisets(items, k):
    if k == 0:
        yield ()
        return
    from itertools import combinations_with_replacement
    yield from combinations_with_replacement(items, k)


def canonical_multigraph(nv: int, edges) -> tuple[int, tuple[tuple[int, int], ...]]:
    best = None
    for perm in permutations(range(nv)):
        es = tuple(sorted((perm[s], perm[t]) for s, t in edges))
        if best is None or es < best:
            best = es
    return nv, best if best is not None else ()


def set_corpus(max_size: int = 4) -> list[Presheaf]:
    return [set_object(k) for k in range(max_size + 1)]


def all_set_maps(max_size: int = 4) -> list[Morphism]:
    maps = []
    for a in range(max_size + 1):
        for b in range(max_size + 1):
            for img in product(range(b), repeat=a):
                maps.append(Morphism(set_object(a), set_object(b), (tuple(img),)))
    return maps


# --------------------------------------------------------------------------
# small SSet_3 objects


def bare_point(n: int = 3) -> Presheaf:
    return cell_complex(n, 1)


def loop(n: int = 3, k: int = 1) -> Presheaf:
    """One vertex with k nondegenerate loops."""
    return cell_complex(n, 1, [(0, 0)] * k)


def disjoint_union(xs: Sequence[Presheaf]) -> Presheaf:
    return coproduct(list(xs))[0]


def subsets(m: int):
    for r in range(1, m + 2):
        yield from combinations(range(m + 1), r)


# --------------------------------------------------------------------------
# components and the forest invariant


def _vertex_of(x: Presheaf, o: int) -> int:
    # the morphism [0] -> [o] picking vertex 0
    cat = x.cat
    return cat.mor(_mname(0, o, (0,)))


def components(x: Presheaf) -> list[tuple[Presheaf, Morphism]]:
    """Connected components as subobjects, in order of their first vertex."""
    count, labels = pi0(x)
    cat = x.cat
    keep = [[[] for _ in range(cat.n_objects)] for _ in range(count)]
    for o in range(cat.n_objects):
        m = _vertex_of(x, o)
        for e in range(x.sizes[o]):
            keep[labels[x.action[m][e]]][o].append(e)
    out = []
    for c in range(count):
        pos = [{e: i for i, e in enumerate(keep[c][o])} for o in range(cat.n_objects)]
        action = tuple(tuple(pos[cat.src[m]][x.action[m][e]] for e in keep[c][cat.tgt[m]])
                       for m in range(len(cat.morphisms)))
        sub = Presheaf(cat, tuple(len(k) for k in keep[c]), action)
        out.append((sub, Morphism(sub, x, tuple(tuple(k) for k in keep[c]))))
    return out


class CorpusBoundError(ValueError):
    """The object lies outside the classified corpus."""


@dataclass(frozen=True)
class Forest:
    """A multiset of rooted trees; a tree is the sorted tuple of its subtrees."""

    trees: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(sorted(_canon(t) for t in self.trees)))

    def height(self) -> int:
        return max((_height(t) for t in self.trees), default=-1)

    def serialize(self) -> str:
        return "".join(_ser(t) for t in self.trees)

    @classmethod
    def parse(cls, s: str) -> "Forest":
        stack: list[list] = [[]]
        for ch in s:
            if ch == "(":
                stack.append([])
            elif ch == ")":
                if len(stack) < 2:
                    raise ValueError(f"unbalanced forest {s!r}")
                t = tuple(stack.pop())
                stack[-1].append(t)
            elif not ch.isspace():
                raise ValueError(f"bad character {ch!r} in forest")
        if len(stack) != 1:
            raise ValueError(f"unbalanced forest {s!r}")
        return cls(tuple(stack[0]))

    def __str__(self):
        return self.serialize()


def _canon(t):
    return tuple(sorted(_canon(c) for c in t))


def _height(t) -> int:
    return 1 + max((_height(c) for c in t), default=-1)


def _ser(t) -> str:
    return "(" + "".join(_ser(c) for c in t) + ")"


# connected references for n = 3, checked against fibrant probes B(Z/2), B(Z/3)
REFERENCE_3 = (("()", "bare point"), ("(())", "point with one loop"), ("(()())", "point with two loops"))
FOREST_CELL_BOUND = 12


def reference_objects(n: int = 3) -> list[tuple[Forest, Presheaf]]:
    objs = [bare_point(n), loop(n, 1), loop(n, 2)]
    return [(Forest.parse(s), x) for (s, _), x in zip(REFERENCE_3, objs)]


def probes(n: int = 3) -> list[Presheaf]:
    return [nerve_cyclic(n, 2), nerve_cyclic(n, 3)]


def forest_invariant(x: Presheaf, ho=None) -> Forest:
    """The forest of x, backed by the homotopy classification rather than a formula.

    n = 1: empty or a single root.  n = 2: one height-0 root per component.
    n = 3: each component is matched against the reference table by its
    probe signature; a component matching no reference raises CorpusBoundError.
    """
    n = level(x)
    if n == 1:
        return Forest(((),) if x.sizes[0] else ())
    if n == 2:
        return Forest(((),) * pi0(x)[0])
    if cell_count(x) > FOREST_CELL_BOUND:
        raise CorpusBoundError(f"{cell_count(x)} cells exceed the classified bound {FOREST_CELL_BOUND}")
    if ho is None:
        from .hocat import HoCategory
        from .model import sset_instance
        ho = HoCategory(sset_instance(3))
    from .hocat import probe_signature
    zs = probes(3)
    table = {probe_signature(ho, r, zs): f for f, r in reference_objects(3)}
    trees = []
    for comp, _ in components(x):
        sig = probe_signature(ho, comp, zs)
        if sig not in table:
            raise CorpusBoundError(f"component with probe signature {sig} is not in the reference table")
        trees.extend(table[sig].trees)
    return Forest(tuple(trees))
