"""Finite categories, finite-set-valued presheaves and exhaustive map search.

Every finite set is an index range ``0..n-1``.  A presheaf on a finite
category stores, per object, a size and, per morphism ``m: a -> b``, the
restriction function ``X(b) -> X(a)`` as a tuple.  All determinism (the
"first" lift, the order of enumerated maps) follows this element ordering.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product as _iproduct
from typing import Callable, Iterable, Iterator, Mapping, Sequence

DEFAULT_BUDGET = int(os.environ.get("FINMODEL_BUDGET", 10**7))


class SizeGuardError(RuntimeError):
    """An exhaustive search exceeded its candidate budget."""


class ShapeError(ValueError):
    """Data does not fit the carriers / category it claims to live over."""


# --------------------------------------------------------------------------
# categories


@dataclass(frozen=True)
class FinCategory:
    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...]  # (name, source, target)
    composition: tuple[tuple[str, str, str], ...]  # (g, f, g∘f), f applied first
    identities: tuple[str, ...]  # aligned with objects
    name: str = field(default="", compare=False)

    def __post_init__(self):
        obj_index = {o: i for i, o in enumerate(self.objects)}
        mor_index = {m[0]: i for i, m in enumerate(self.morphisms)}
        comp = {}
        for g, f, gf in self.composition:
            comp[mor_index[g], mor_index[f]] = mor_index[gf]
        src = tuple(obj_index[m[1]] for m in self.morphisms)
        tgt = tuple(obj_index[m[2]] for m in self.morphisms)
        into = tuple(tuple(k for k in range(len(src)) if tgt[k] == o) for o in range(len(self.objects)))
        object.__setattr__(self, "_obj_index", obj_index)
        object.__setattr__(self, "_mor_index", mor_index)
        object.__setattr__(self, "_comp", comp)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "tgt", tgt)
        object.__setattr__(self, "into", into)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def obj(self, name: str) -> int:
        return self._obj_index[name]

    def mor(self, name: str) -> int:
        return self._mor_index[name]

    def identity(self, o: int) -> int:
        return self._mor_index[self.identities[o]]

    def compose(self, g: int, f: int) -> int:
        """Index of g∘f (f first)."""
        return self._comp[g, f]

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.objects, self.morphisms, self.composition, self.identities))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"FinCategory({self.name or len(self.objects)})"


def make_category(objects: Sequence[str], generators: Mapping[str, tuple[str, str]],
                  compose: Callable[[str, str], str], identities: Mapping[str, str],
                  name: str = "") -> FinCategory:
    """Build a category from an explicit, already closed morphism list."""
    mors = tuple((m, s, t) for m, (s, t) in generators.items())
    comp = []
    for g, gs, gt in mors:
        for f, fs, ft in mors:
            if ft == gs:
                comp.append((g, f, compose(g, f)))
    return FinCategory(tuple(objects), mors, tuple(comp), tuple(identities[o] for o in objects), name)


def validate_category(c: FinCategory) -> list[str]:
    """List every typing, identity and associativity violation (empty iff c is a category)."""
    problems = []
    nm = len(c.morphisms)
    names = [m[0] for m in c.morphisms]
    for i in range(nm):
        for j in range(nm):
            if c.tgt[j] != c.src[i]:
                continue
            k = c._comp.get((i, j))
            if k is None:
                problems.append(f"missing composite {names[i]}∘{names[j]}")
            elif c.src[k] != c.src[j] or c.tgt[k] != c.tgt[i]:
                problems.append(f"ill-typed composite {names[i]}∘{names[j]} = {names[k]}")
    if problems:
        return problems
    for o in range(c.n_objects):
        e = c.identity(o)
        if c.src[e] != o or c.tgt[e] != o:
            problems.append(f"identity of {c.objects[o]} is not an endomorphism")
            continue
        for f in range(nm):
            if c.tgt[f] == o and c.compose(e, f) != f:
                problems.append(f"{names[e]}∘{names[f]} != {names[f]}")
            if c.src[f] == o and c.compose(f, e) != f:
                problems.append(f"{names[f]}∘{names[e]} != {names[f]}")
    for h in range(nm):
        for g in range(nm):
            if c.tgt[g] != c.src[h]:
                continue
            hg = c.compose(h, g)
            for f in range(nm):
                if c.tgt[f] != c.src[g]:
                    continue
                if c.compose(hg, f) != c.compose(h, c.compose(g, f)):
                    problems.append(f"({names[h]}{names[g]}){names[f]} != {names[h]}({names[g]}{names[f]})")
    return problems


# --------------------------------------------------------------------------
# presheaves and their morphisms


@dataclass(frozen=True)
class Presheaf:
    """Contravariant functor ``cat -> FinSet``.

    ``action[m][x]`` is the restriction along ``m: a -> b`` of ``x in X(b)``.
    """

    cat: FinCategory
    sizes: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]
    labels: tuple[tuple[str, ...], ...] | None = field(default=None, compare=False, repr=False)

    def size(self, o: int) -> int:
        return self.sizes[o]

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def act(self, m: int, x: int) -> int:
        return self.action[m][x]

    def elements(self) -> Iterator[tuple[int, int]]:
        for o, n in enumerate(self.sizes):
            for x in range(n):
                yield o, x

    def is_empty(self) -> bool:
        return not any(self.sizes)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.cat, self.sizes, self.action))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Presheaf({self.cat.name}, sizes={self.sizes})"


def tabulate(cat: FinCategory, elements: Sequence[Sequence], act: Callable, labels: bool = False) -> Presheaf:
    """Presheaf from hashable element lists and a restriction rule ``act(m, x) -> element``."""
    index = [{x: i for i, x in enumerate(els)} for els in elements]
    action = []
    for m in range(len(cat.morphisms)):
        a, b = cat.src[m], cat.tgt[m]
        action.append(tuple(index[a][act(m, x)] for x in elements[b]))
    lab = tuple(tuple(str(x) for x in els) for els in elements) if labels else None
    return Presheaf(cat, tuple(len(e) for e in elements), tuple(action), lab)


def check_functoriality(x: Presheaf) -> list[str]:
    cat = x.cat
    problems = []
    for m in range(len(cat.morphisms)):
        if len(x.action[m]) != x.sizes[cat.tgt[m]] or any(not 0 <= v < x.sizes[cat.src[m]] for v in x.action[m]):
            problems.append(f"action of {cat.morphisms[m][0]} has the wrong shape")
    if problems:
        return problems
    for o in range(cat.n_objects):
        e = cat.identity(o)
        if x.action[e] != tuple(range(x.sizes[o])):
            problems.append(f"identity on {cat.objects[o]} acts non-trivially")
    for (g, f), gf in cat._comp.items():
        # X(g∘f) = X(f)∘X(g)
        if any(x.action[gf][e] != x.action[f][x.action[g][e]] for e in range(x.sizes[cat.tgt[g]])):
            problems.append(f"X({cat.morphisms[gf][0]}) != X({cat.morphisms[f][0]})X({cat.morphisms[g][0]})")
    return problems


@dataclass(frozen=True)
class Morphism:
    source: Presheaf
    target: Presheaf
    comps: tuple[tuple[int, ...], ...]

    def __call__(self, o: int, x: int) -> int:
        return self.comps[o][x]

    def then(self, g: "Morphism") -> "Morphism":
        return compose(g, self)

    def __repr__(self):
        return f"Morphism({self.source.sizes}->{self.target.sizes}, {self.comps})"


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g∘f."""
    if f.target != g.source:
        raise ShapeError("morphisms are not composable")
    return Morphism(f.source, g.target,
                    tuple(tuple(gc[v] for v in fc) for gc, fc in zip(g.comps, f.comps)))


def identity(x: Presheaf) -> Morphism:
    return Morphism(x, x, tuple(tuple(range(n)) for n in x.sizes))


def check_naturality(m: Morphism) -> list[str]:
    """Failing naturality squares of m (empty iff natural)."""
    x, y = m.source, m.target
    if x.cat != y.cat:
        raise ShapeError("source and target live over different categories")
    cat = x.cat
    for o in range(cat.n_objects):
        if len(m.comps[o]) != x.sizes[o] or any(not 0 <= v < y.sizes[o] for v in m.comps[o]):
            raise ShapeError(f"component at {cat.objects[o]} does not match carriers")
    bad = []
    for k in range(len(cat.morphisms)):
        a, b = cat.src[k], cat.tgt[k]
        for e in range(x.sizes[b]):
            if m.comps[a][x.action[k][e]] != y.action[k][m.comps[b][e]]:
                bad.append(f"square {cat.morphisms[k][0]} fails at element {e} of {cat.objects[b]}")
    return bad


def is_mono(f: Morphism) -> bool:
    return all(len(set(c)) == len(c) for c in f.comps)


def is_epi(f: Morphism) -> bool:
    return all(len(set(c)) == n for c, n in zip(f.comps, f.target.sizes))


def is_iso(f: Morphism) -> bool:
    return is_mono(f) and is_epi(f)


def inverse(f: Morphism) -> Morphism:
    inv = []
    for c, n in zip(f.comps, f.target.sizes):
        row = [0] * n
        for i, v in enumerate(c):
            row[v] = i
        inv.append(tuple(row))
    return Morphism(f.target, f.source, tuple(inv))


def empty(cat: FinCategory) -> Presheaf:
    return Presheaf(cat, (0,) * cat.n_objects, tuple(() for _ in cat.morphisms))


def terminal(cat: FinCategory) -> Presheaf:
    return Presheaf(cat, (1,) * cat.n_objects, tuple((0,) for _ in cat.morphisms))


def to_terminal(x: Presheaf) -> Morphism:
    return Morphism(x, terminal(x.cat), tuple((0,) * n for n in x.sizes))


def from_empty(x: Presheaf) -> Morphism:
    return Morphism(empty(x.cat), x, tuple(() for _ in x.sizes))


# --------------------------------------------------------------------------
# colimits


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


def coproduct(xs: Sequence[Presheaf], cat: FinCategory | None = None) -> tuple[Presheaf, list[Morphism]]:
    """Disjoint union, summands laid out consecutively in every object."""
    if not xs:
        if cat is None:
            raise ShapeError("empty coproduct needs an explicit category")
        return empty(cat), []
    cat = xs[0].cat
    if any(x.cat != cat for x in xs):
        raise ShapeError("summands over different categories")
    sizes = tuple(sum(x.sizes[o] for x in xs) for o in range(cat.n_objects))
    offsets = []
    run = [0] * cat.n_objects
    for x in xs:
        offsets.append(tuple(run))
        run = [r + s for r, s in zip(run, x.sizes)]
    action = []
    for m in range(len(cat.morphisms)):
        a = cat.src[m]
        row = []
        for x, off in zip(xs, offsets):
            row.extend(v + off[a] for v in x.action[m])
        action.append(tuple(row))
    total = Presheaf(cat, sizes, tuple(action))
    injections = [Morphism(x, total, tuple(tuple(v + off[o] for v in range(x.sizes[o])) for o in range(cat.n_objects)))
                  for x, off in zip(xs, offsets)]
    return total, injections


def copair(maps: Sequence[Morphism], injections: Sequence[Morphism]) -> Morphism:
    """The map out of a coproduct induced by ``maps`` (one per summand)."""
    src = injections[0].target
    tgt = maps[0].target
    comps = []
    for o in range(src.cat.n_objects):
        row = [0] * src.sizes[o]
        for f, inj in zip(maps, injections):
            for x, v in enumerate(inj.comps[o]):
                row[v] = f.comps[o][x]
        comps.append(tuple(row))
    return Morphism(src, tgt, tuple(comps))


def quotient(y: Presheaf, relations: Iterable[tuple[int, int, int]]) -> tuple[Presheaf, Morphism]:
    """Smallest congruence on y containing the given ``(object, a, b)`` pairs.

    Returns the quotient presheaf and the projection; classes are numbered
    by their least element so the result is canonical.
    """
    cat = y.cat
    ufs = [_UnionFind(n) for n in y.sizes]
    queue = list(relations)
    while queue:
        o, a, b = queue.pop()
        if ufs[o].union(a, b):
            for m in cat.into[o]:
                s = cat.src[m]
                queue.append((s, y.action[m][a], y.action[m][b]))
    reps = []
    proj = []
    for o, n in enumerate(y.sizes):
        roots = {}
        row = []
        for x in range(n):
            r = ufs[o].find(x)
            if r not in roots:
                roots[r] = len(roots)
            row.append(roots[r])
        reps.append(roots)
        proj.append(tuple(row))
    sizes = tuple(len(r) for r in reps)
    action = []
    for m in range(len(cat.morphisms)):
        a, b = cat.src[m], cat.tgt[m]
        row = [0] * sizes[b]
        for x in range(y.sizes[b]):
            row[proj[b][x]] = proj[a][y.action[m][x]]
        action.append(tuple(row))
    q = Presheaf(cat, sizes, tuple(action))
    return q, Morphism(y, q, tuple(proj))


def coequalizer(f: Morphism, g: Morphism) -> tuple[Presheaf, Morphism]:
    if f.source != g.source or f.target != g.target:
        raise ShapeError("coequalizer needs a parallel pair")
    rel = [(o, f.comps[o][x], g.comps[o][x]) for o, x in f.source.elements()]
    return quotient(f.target, rel)


def pushout(f: Morphism, g: Morphism) -> tuple[Presheaf, Morphism, Morphism]:
    """Pushout of ``B <-f- A -g-> C``; returns ``(P, B->P, C->P)``."""
    if f.source != g.source:
        raise ShapeError("pushout needs a span")
    s, (ib, ic) = coproduct([f.target, g.target])
    q, proj = coequalizer(compose(ib, f), compose(ic, g))
    return q, compose(proj, ib), compose(proj, ic)


@dataclass(frozen=True)
class Diagram:
    """A functor from a finite shape category into presheaves."""

    shape: FinCategory
    objects: tuple[Presheaf, ...]
    maps: tuple[Morphism, ...]  # aligned with shape.morphisms

    def check(self) -> list[str]:
        problems = []
        sh = self.shape
        if len(self.objects) != sh.n_objects or len(self.maps) != len(sh.morphisms):
            return ["diagram sizes do not match the shape"]
        for k, m in enumerate(self.maps):
            if m.source != self.objects[sh.src[k]] or m.target != self.objects[sh.tgt[k]]:
                problems.append(f"map {sh.morphisms[k][0]} is ill-typed")
        if problems:
            return problems
        for o in range(sh.n_objects):
            if self.maps[sh.identity(o)] != identity(self.objects[o]):
                problems.append(f"identity of {sh.objects[o]} not sent to an identity")
        for (g, f), gf in sh._comp.items():
            if compose(self.maps[g], self.maps[f]) != self.maps[gf]:
                problems.append(f"composite {sh.morphisms[gf][0]} not preserved")
        return problems


def finite_colimit(diagram: Diagram, mode: str = "general",
                   cat: FinCategory | None = None) -> tuple[Presheaf, list[Morphism]]:
    """Strict colimit with its cocone, one component per shape object.

    ``mode`` only fixes what the caller expects of the shape; every mode
    goes through coproduct-then-coequalizer.
    """
    problems = diagram.check()
    if problems:
        raise ShapeError("; ".join(problems))
    sh = diagram.shape
    if mode == "coproduct" and any(sh.src[k] != sh.tgt[k] for k in range(len(sh.morphisms))):
        raise ShapeError("coproduct mode needs a discrete shape")
    if mode == "pushout" and not (sh.n_objects == 3 and len(sh.morphisms) == 5):
        raise ShapeError("pushout mode needs a span shape")
    if mode == "coequalizer" and not (sh.n_objects == 2 and len(sh.morphisms) == 4):
        raise ShapeError("coequalizer mode needs a parallel-pair shape")
    total, inj = coproduct(list(diagram.objects), cat)
    rel = []
    for k, m in enumerate(diagram.maps):
        a, b = sh.src[k], sh.tgt[k]
        ia, ib = inj[a], inj[b]
        for o, x in m.source.elements():
            rel.append((o, ia.comps[o][x], ib.comps[o][m.comps[o][x]]))
    q, proj = quotient(total, rel)
    return q, [compose(proj, i) for i in inj]


def span_shape() -> FinCategory:
    """``b <- a -> c``."""
    gens = {"id_a": ("a", "a"), "id_b": ("b", "b"), "id_c": ("c", "c"), "f": ("a", "b"), "g": ("a", "c")}

    def comp(g, f):
        if g.startswith("id"):
            return f
        return g

    return make_category(["a", "b", "c"], gens, comp, {"a": "id_a", "b": "id_b", "c": "id_c"}, "span")


def discrete_shape(n: int) -> FinCategory:
    objs = [f"d{i}" for i in range(n)]
    gens = {f"id_{o}": (o, o) for o in objs}
    return make_category(objs, gens, lambda g, f: f, {o: f"id_{o}" for o in objs}, f"discrete{n}")


def parallel_shape() -> FinCategory:
    gens = {"id_a": ("a", "a"), "id_b": ("b", "b"), "f": ("a", "b"), "g": ("a", "b")}

    def comp(g, f):
        return f if g.startswith("id") else g

    return make_category(["a", "b"], gens, comp, {"a": "id_a", "b": "id_b"}, "parallel")


def product(xs: Sequence[Presheaf], cat: FinCategory | None = None) -> tuple[Presheaf, list[Morphism]]:
    """Objectwise cartesian product with projections (lexicographic element order)."""
    if not xs:
        return terminal(cat), []
    cat = xs[0].cat
    elements = [list(product_tuples([range(x.sizes[o]) for x in xs])) for o in range(cat.n_objects)]

    def act(m, t):
        return tuple(x.action[m][e] for x, e in zip(xs, t))

    p = tabulate(cat, elements, act)
    projs = [Morphism(p, x, tuple(tuple(t[i] for t in elements[o]) for o in range(cat.n_objects)))
             for i, x in enumerate(xs)]
    return p, projs


def product_tuples(ranges):
    return _iproduct(*ranges)


def pairing(maps: Sequence[Morphism], projections: Sequence[Morphism]) -> Morphism:
    """The map into a product induced by ``maps``."""
    tgt = projections[0].source
    src = maps[0].source
    comps = []
    for o in range(src.cat.n_objects):
        index = {}
        for i in range(tgt.sizes[o]):
            index[tuple(p.comps[o][i] for p in projections)] = i
        comps.append(tuple(index[tuple(f.comps[o][x] for f in maps)] for x in range(src.sizes[o])))
    return Morphism(src, tgt, tuple(comps))


# --------------------------------------------------------------------------
# exhaustive search


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, k=1):
        self.used += k
        if self.used > self.limit:
            raise SizeGuardError(f"search budget of {self.limit} candidates exhausted")


def search_maps(x: Presheaf, y: Presheaf, fixed: Mapping[tuple[int, int], int] | None = None,
                allowed: Mapping[tuple[int, int], Iterable[int]] | None = None,
                budget: int | None = None) -> Iterator[Morphism]:
    """Yield every natural map ``x -> y`` meeting the constraints, in canonical order.

    ``fixed`` pins values of individual elements; ``allowed`` restricts the
    candidate values of an element.  Values forced by naturality are checked
    against both.  Canonical order is lexicographic on the components
    (objects in category order, elements ascending).
    """
    cat = x.cat
    if y.cat != cat:
        raise ShapeError("presheaves over different categories")
    guard = _Budget(DEFAULT_BUDGET if budget is None else budget)
    allow = {k: frozenset(v) for k, v in (allowed or {}).items()}
    vals = [[-1] * n for n in x.sizes]
    trail: list[tuple[int, int]] = []
    into = cat.into
    xa, ya, src = x.action, y.action, cat.src

    def assign(o, e, v):
        # set f(e) = v and everything it forces; False on conflict
        mark = len(trail)
        for m in into[o]:
            a = src[m]
            xe = xa[m][e]
            yv = ya[m][v]
            cur = vals[a][xe]
            if cur == -1:
                al = allow.get((a, xe))
                if al is not None and yv not in al:
                    undo(mark)
                    return False
                vals[a][xe] = yv
                trail.append((a, xe))
            elif cur != yv:
                undo(mark)
                return False
        return True

    def undo(mark):
        while len(trail) > mark:
            a, e = trail.pop()
            vals[a][e] = -1

    # forward checking: elements whose restrictions are all pinned get their
    # candidate sets cut down, an empty set prunes and a singleton is forced
    fib = []
    for m in range(len(cat.morphisms)):
        d: dict[int, set] = {}
        for v, w in enumerate(ya[m]):
            d.setdefault(w, set()).add(v)
        fib.append(d)
    up = [[[] for _ in range(n)] for n in x.sizes]
    for o in range(cat.n_objects):
        for m in into[o]:
            a = src[m]
            for z in range(x.sizes[o]):
                xe = xa[m][z]
                if (a, xe) != (o, z):
                    up[a][xe].append((o, z))
    empty_set: set = set()

    def domain(o, z):
        d = allow.get((o, z))
        for m in into[o]:
            w = vals[src[m]][xa[m][z]]
            if w == -1:
                continue
            f = fib[m].get(w, empty_set)
            d = f if d is None else d & f
            if not d:
                return d
        return d

    def propagate(mark):
        i = mark
        while i < len(trail):
            a, xe = trail[i]
            i += 1
            for o, z in up[a][xe]:
                if vals[o][z] != -1:
                    continue
                d = domain(o, z)
                if d is None:
                    continue
                if not d:
                    return False
                if len(d) == 1 and not assign(o, z, next(iter(d))):
                    return False
        return True

    for (o, e), v in (fixed or {}).items():
        al = allow.get((o, e))
        if (al is not None and v not in al) or not 0 <= v < y.sizes[o]:
            return
        if vals[o][e] not in (-1, v) or not assign(o, e, v):
            return
    if not propagate(0):
        undo(0)
        return
    base = len(trail)
    order = [(o, e) for o in range(cat.n_objects) for e in range(x.sizes[o])]
    if any(x.sizes[o] and not y.sizes[o] for o in range(cat.n_objects)):
        return

    def rec(i):
        while i < len(order) and vals[order[i][0]][order[i][1]] != -1:
            i += 1
        if i == len(order):
            yield Morphism(x, y, tuple(tuple(r) for r in vals))
            return
        o, e = order[i]
        cands = domain(o, e)
        cands = sorted(cands) if cands is not None else range(y.sizes[o])
        for v in cands:
            guard.spend()
            mark = len(trail)
            if assign(o, e, v):
                if propagate(mark):
                    yield from rec(i + 1)
                undo(mark)

    yield from rec(0)
    undo(base)


def enumerate_maps(x: Presheaf, y: Presheaf, budget: int | None = None) -> list[Morphism]:
    return list(search_maps(x, y, budget=budget))


def count_maps_brute(x: Presheaf, y: Presheaf) -> int:
    """Reference count: all component tuples filtered by naturality."""
    cat = x.cat
    per_object = [list(_iproduct(range(y.sizes[o]), repeat=x.sizes[o])) for o in range(cat.n_objects)]
    n = 0
    for comps in _iproduct(*per_object):
        if not check_naturality(Morphism(x, y, tuple(comps))):
            n += 1
    return n


@dataclass(frozen=True)
class LiftingProblem:
    """Commuting square ``f∘top = bottom∘left``."""

    left: Morphism  # i: A -> B
    right: Morphism  # f: X -> Y
    top: Morphism  # u: A -> X
    bottom: Morphism  # v: B -> Y

    def commutes(self) -> bool:
        return compose(self.right, self.top) == compose(self.bottom, self.left)


def lifts(p: LiftingProblem, budget: int | None = None) -> Iterator[Morphism]:
    i, f, u, v = p.left, p.right, p.top, p.bottom
    fixed = {}
    for o, a in i.source.elements():
        b = i.comps[o][a]
        want = u.comps[o][a]
        if fixed.get((o, b), want) != want:
            return iter(())
        fixed[o, b] = want
    fibres = [{} for _ in f.target.sizes]
    for o, xe in f.source.elements():
        fibres[o].setdefault(f.comps[o][xe], []).append(xe)
    allowed = {(o, b): fibres[o].get(v.comps[o][b], ()) for o, b in i.target.elements()}
    return search_maps(i.target, f.source, fixed=fixed, allowed=allowed, budget=budget)


def find_lift(p: LiftingProblem, budget: int | None = None) -> Morphism | None:
    """First diagonal in canonical order, or None when none exists."""
    if not p.commutes():
        raise ShapeError("lifting problem square does not commute")
    return next(lifts(p, budget), None)


def extensions(h: Morphism, u: Morphism, target: Presheaf, budget: int | None = None) -> Iterator[Morphism]:
    """Maps ``v: cod(h) -> target`` with ``v∘h = u``."""
    fixed = {}
    for o, a in h.source.elements():
        b = h.comps[o][a]
        want = u.comps[o][a]
        if fixed.get((o, b), want) != want:
            return iter(())
        fixed[o, b] = want
    return search_maps(h.target, target, fixed=fixed, budget=budget)


def squares(h: Morphism, f: Morphism, budget: int | None = None) -> Iterator[tuple[Morphism, Morphism]]:
    """All commuting squares ``(u, v)`` from h onto f, in canonical order."""
    for u in search_maps(h.source, f.source, budget=budget):
        for v in extensions(h, compose(f, u), f.target, budget=budget):
            yield u, v


def has_rlp(f: Morphism, gens: Sequence[Morphism], budget: int | None = None) -> bool:
    return first_unliftable(f, gens, budget) is None


def first_unliftable(f: Morphism, gens: Sequence[Morphism], budget: int | None = None):
    """First ``(generator index, u, v)`` square with no lift, or None."""
    for k, h in enumerate(gens):
        for u, v in squares(h, f, budget):
            if find_lift(LiftingProblem(h, f, u, v), budget) is None:
                return k, u, v
    return None


def descend(legs: Sequence[Morphism], maps: Sequence[Morphism]) -> Morphism:
    """The map out of P induced by ``maps`` along jointly surjective ``legs`` into P.

    Raises ShapeError when the maps do not agree on identified elements.
    """
    p = legs[0].target
    tgt = maps[0].target
    comps = []
    for o in range(p.cat.n_objects):
        row = [-1] * p.sizes[o]
        for leg, f in zip(legs, maps):
            for x, v in enumerate(leg.comps[o]):
                w = f.comps[o][x]
                if row[v] == -1:
                    row[v] = w
                elif row[v] != w:
                    raise ShapeError("maps do not descend to the colimit")
        if -1 in row:
            raise ShapeError("legs are not jointly surjective")
        comps.append(tuple(row))
    return Morphism(p, tgt, tuple(comps))
