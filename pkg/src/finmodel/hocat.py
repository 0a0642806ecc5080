"""Homotopy-category calculus over a ModelInstance.

A morphism ``X -> Y`` of Ho is stored as a map ``R_c X -> R Y`` (cofibrant
source, fibrant-cofibrant target); two representatives give the same class
iff they are left homotopic.  Precomposing a class with a map of the model
category never needs ``R X``; only composing two classes does (the first
class is extended along ``R_c X -> R X``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from . import fincat, model
from .fincat import (Diagram, LiftingProblem, Morphism, Presheaf, compose, copair, coproduct, descend, find_lift,
                     from_empty, identity, pushout, search_maps, to_terminal)
from .model import COF_TRIVFIB, ModelInstance


@dataclass(frozen=True)
class HoClass:
    source: Presheaf
    target: Presheaf
    rep: Morphism  # R_c source -> R target


@dataclass
class HoHomSet:
    source: Presheaf
    target: Presheaf
    classes: list[HoClass]
    maps_seen: int = 0

    def __len__(self):
        return len(self.classes)


class HoCategory:
    """Ho(K) for one model instance; caches are private and never change results."""

    def __init__(self, m: ModelInstance):
        self.m = m
        self._homs: dict = {}

    # objects -------------------------------------------------------------
    def cof(self, x: Presheaf) -> tuple[Presheaf, Morphism]:
        return model.cofibrant_replacement(x, self.m)

    def rep(self, x: Presheaf) -> model.Replacement:
        return model.full_replacement(x, self.m)

    def fibrant_target(self, y: Presheaf) -> Presheaf:
        return self.rep(y).obj

    # morphisms -----------------------------------------------------------
    def cof_map(self, f: Morphism) -> Morphism:
        """R_c(f), chosen by lifting (identity construction when cofibrations are monos)."""
        if self.m.cofibrations_are_monos:
            return f
        xc, qx = self.cof(f.source)
        yc, qy = self.cof(f.target)
        return model.lift_or_fail(LiftingProblem(from_empty(xc), qy, from_empty(yc), compose(f, qx)), self.m)

    def project(self, f: Morphism) -> HoClass:
        r = self.rep(f.target)
        return HoClass(f.source, f.target, compose(r.v, self.cof_map(f)))

    def through_cof(self, phi: Morphism) -> Morphism:
        """Lift phi: (cofibrant) -> Y through R_c Y -> Y."""
        if self.m.cofibrations_are_monos:
            return phi
        yc, qy = self.cof(phi.target)
        return model.lift_or_fail(LiftingProblem(from_empty(phi.source), qy, from_empty(yc), phi), self.m)

    def strict_class(self, x: Presheaf, phi: Morphism) -> HoClass:
        """The class x -> Y of a map phi: R_c x -> Y."""
        r = self.rep(phi.target)
        return HoClass(x, phi.target, compose(r.v, self.through_cof(phi)))

    def precompose_cof(self, c: HoClass, x: Presheaf, phi: Morphism) -> HoClass:
        """c∘[phi] for phi: R_c x -> source of c, without replacing the source of c."""
        return HoClass(x, c.target, compose(c.rep, self.through_cof(phi)))

    def identity(self, x: Presheaf) -> HoClass:
        return self.project(identity(x))

    def extend(self, c: HoClass) -> Morphism:
        """A map R source -> R target restricting to c.rep along R_c source -> R source."""
        r = self.rep(c.source)
        if r.v == identity(r.cof):
            return c.rep
        return model.lift_or_fail(LiftingProblem(r.v, to_terminal(c.rep.target), c.rep, to_terminal(r.obj)), self.m)

    def compose(self, g: HoClass, f: HoClass) -> HoClass:
        """g∘f."""
        if f.target != g.source:
            raise fincat.ShapeError("classes are not composable")
        return HoClass(f.source, g.target, compose(self.extend(g), f.rep))

    def precompose(self, c: HoClass, phi: Morphism) -> HoClass:
        """c∘P(phi) for a map phi of the model category."""
        return HoClass(phi.source, c.target, compose(c.rep, self.cof_map(phi)))

    def postcompose(self, phi: Morphism, c: HoClass) -> HoClass:
        return self.compose(self.project(phi), c)

    def equal(self, a: HoClass, b: HoClass) -> bool:
        if a.source != b.source or a.target != b.target:
            return False
        return model.homotopy(a.rep, b.rep, self.m) is not None

    # hom-sets ------------------------------------------------------------
    def hom(self, x: Presheaf, y: Presheaf) -> HoHomSet:
        key = (x, y)
        if key not in self._homs:
            xc, _ = self.cof(x)
            ry = self.fibrant_target(y)
            classes: list[HoClass] = []
            seen = 0
            for f in search_maps(xc, ry, budget=self.m.budget):
                seen += 1
                if not any(model.homotopy(f, c.rep, self.m) is not None for c in classes):
                    classes.append(HoClass(x, y, f))
            self._homs[key] = HoHomSet(x, y, classes, seen)
        return self._homs[key]

    def hom_into_fibrant(self, x: Presheaf, w: Presheaf) -> HoHomSet:
        """hom(x, w) for fibrant w without replacing w (w is its own fibrant model)."""
        key = ("fib", x, w)
        if key not in self._homs:
            if not model.is_fibrant(w, self.m):
                raise ValueError("target is not fibrant")
            xc, _ = self.cof(x)
            classes: list[HoClass] = []
            seen = 0
            for f in search_maps(xc, w, budget=self.m.budget):
                seen += 1
                if not any(model.homotopy(f, c.rep, self.m) is not None for c in classes):
                    classes.append(HoClass(x, w, f))
            self._homs[key] = HoHomSet(x, w, classes, seen)
        return self._homs[key]

    def index(self, hs: HoHomSet, c: HoClass) -> int:
        for i, d in enumerate(hs.classes):
            if model.homotopy(c.rep, d.rep, self.m) is not None:
                return i
        raise RuntimeError("class missing from an exhaustive hom-set")

    def inverse(self, c: HoClass) -> HoClass | None:
        idx, idy = self.identity(c.source), self.identity(c.target)
        for g in self.hom(c.target, c.source).classes:
            if self.equal(self.compose(g, c), idx) and self.equal(self.compose(c, g), idy):
                return g
        return None

    def isomorphism(self, x: Presheaf, y: Presheaf) -> tuple[HoClass, HoClass] | None:
        """A pair of mutually inverse classes x <-> y, or None (exhaustive)."""
        for f in self.hom(x, y).classes:
            g = self.inverse(f)
            if g is not None:
                return f, g
        return None

    def audit_hom(self, hs: HoHomSet) -> bool:
        """Classes pairwise non-homotopic and every map homotopic to one of them."""
        reps = [c.rep for c in hs.classes]
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                if model.homotopy(reps[i], reps[j], self.m) is not None:
                    return False
        for f in search_maps(reps[0].source if reps else self.cof(hs.source)[0],
                             reps[0].target if reps else self.fibrant_target(hs.target), budget=self.m.budget):
            if not any(model.homotopy(f, r, self.m) is not None for r in reps):
                return False
        return True


# --------------------------------------------------------------------------
# products and coproducts


@dataclass
class HoLimit:
    obj: Presheaf
    legs: list[HoClass]
    factors: tuple[Presheaf, ...]


def ho_product(ho: HoCategory, family: Sequence[Presheaf]) -> HoLimit:
    """Fibrantly replace the factors, take the product, cofibrantly replace."""
    cat = ho.m.base
    reps = [ho.rep(k) for k in family]
    p, projs = fincat.product([r.obj for r in reps], cat)
    pc, q = ho.cof(p)
    legs = [HoClass(p, k, compose(pr, q)) for k, pr in zip(family, projs)]
    return HoLimit(p, legs, tuple(family))


def ho_coproduct(ho: HoCategory, family: Sequence[Presheaf]) -> HoLimit:
    cat = ho.m.base
    cofs = [ho.cof(k)[0] for k in family]
    c, inj = coproduct(cofs, cat)
    legs = [ho.project(i) for i in inj]
    return HoLimit(c, legs, tuple(cofs))


@dataclass
class UniversalityReport:
    checked: int = 0
    counts: list[int] = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    bound: str = ""

    @property
    def unique(self) -> bool:
        return all(c == 1 for c in self.counts)

    @property
    def weak(self) -> bool:
        return all(c >= 1 for c in self.counts)

    @property
    def non_unique(self) -> list:
        return [w for w, c in zip(self.witnesses, self.counts) if c > 1]


def check_product(ho: HoCategory, lim: HoLimit, tests: Sequence[Presheaf]) -> UniversalityReport:
    """For every cone from a test object, count factorizations through the product."""
    rep = UniversalityReport(bound=f"{len(tests)} test objects")
    for lobj in tests:
        homs = [ho.hom(lobj, k) for k in lim.factors]
        cands = ho.hom(lobj, lim.obj).classes
        images = [tuple(ho.index(h, ho.compose(leg, g)) for h, leg in zip(homs, lim.legs)) for g in cands]
        for cone in product(*[range(len(h)) for h in homs]):
            rep.checked += 1
            rep.counts.append(sum(1 for im in images if im == cone))
            rep.witnesses.append((lobj, cone))
    return rep


def check_coproduct(ho: HoCategory, lim: HoLimit, tests: Sequence[Presheaf]) -> UniversalityReport:
    rep = UniversalityReport(bound=f"{len(tests)} test objects")
    for w in tests:
        homs = [ho.hom(k, w) for k in lim.factors]
        cands = ho.hom(lim.obj, w).classes
        images = [tuple(ho.index(h, ho.compose(g, leg)) for h, leg in zip(homs, lim.legs)) for g in cands]
        for cocone in product(*[range(len(h)) for h in homs]):
            rep.checked += 1
            rep.counts.append(sum(1 for im in images if im == cocone))
            rep.witnesses.append((w, cocone))
    return rep


# --------------------------------------------------------------------------
# weak colimits


@dataclass
class HomotopyPushout:
    f: Morphism
    g: Morphism
    f1: Morphism  # A -> B1 cofibration
    f2: Morphism  # B1 -> B trivial fibration
    g1: Morphism
    g2: Morphism
    obj: Presheaf  # E
    gbar: Morphism  # B1 -> E
    fbar: Morphism  # D1 -> E
    s_b: Morphism  # section of f2
    s_d: Morphism

    @property
    def b_leg(self) -> Morphism:
        """B -> E representing P(gbar)∘P(f2)^-1."""
        return compose(self.gbar, self.s_b)

    @property
    def d_leg(self) -> Morphism:
        return compose(self.fbar, self.s_d)


def _section(q: Morphism, m: ModelInstance) -> Morphism:
    # q is a trivial fibration onto a cofibrant object
    return model.lift_or_fail(LiftingProblem(from_empty(q.target), q, from_empty(q.source), identity(q.target)), m)


def homotopy_pushout(ho: HoCategory, f: Morphism, g: Morphism) -> HomotopyPushout:
    """Factor both legs as (cofibration, trivial fibration) and push out the cofibrations."""
    if f.source != g.source:
        raise fincat.ShapeError("homotopy pushout needs a span")
    m = ho.m
    tf = model.factorize_or_raise(f, COF_TRIVFIB, m)
    tg = model.factorize_or_raise(g, COF_TRIVFIB, m)
    e, gbar, fbar = pushout(tf.alpha, tg.alpha)
    return HomotopyPushout(f, g, tf.alpha, tf.beta, tg.alpha, tg.beta, e, gbar, fbar,
                           _section(tf.beta, m), _section(tg.beta, m))


def pushout_commutes(ho: HoCategory, hp: HomotopyPushout) -> bool:
    """P(b_leg)P(f) = P(d_leg)P(g) in Ho (needs a fibrant replacement of E)."""
    a = ho.project(compose(hp.b_leg, hp.f))
    b = ho.project(compose(hp.d_leg, hp.g))
    return ho.equal(a, b)


def check_weak_pushout(ho: HoCategory, hp: HomotopyPushout, tests: Sequence[Presheaf]) -> UniversalityReport:
    """Every competing cocone into a fibrant test object factors through E; counts record how often."""
    rep = UniversalityReport(bound=f"fibrant test objects {[t.sizes for t in tests]}")
    a = hp.f.source
    b, d = hp.f.target, hp.g.target
    for w in tests:
        hb, hd, ha = ho.hom_into_fibrant(b, w), ho.hom_into_fibrant(d, w), ho.hom_into_fibrant(a, w)
        he = ho.hom_into_fibrant(hp.obj, w)
        bf = [ho.index(ha, ho.precompose(x, hp.f)) for x in hb.classes]
        dg = [ho.index(ha, ho.precompose(y, hp.g)) for y in hd.classes]
        images = [(ho.index(hb, ho.precompose(t, hp.b_leg)), ho.index(hd, ho.precompose(t, hp.d_leg)))
                  for t in he.classes]
        for i in range(len(hb)):
            for j in range(len(hd)):
                if bf[i] != dg[j]:
                    continue
                rep.checked += 1
                rep.counts.append(sum(1 for im in images if im == (i, j)))
                rep.witnesses.append((w, i, j))
    return rep


@dataclass
class WeakCoequalizer:
    f: Morphism
    g: Morphism
    pushout: HomotopyPushout

    @property
    def obj(self) -> Presheaf:
        return self.pushout.obj

    @property
    def h(self) -> Morphism:
        return self.pushout.b_leg


def _fold_pair(f: Morphism, g: Morphism, cat):
    xb, (ix, ib) = coproduct([f.source, f.target], cat)
    fid = copair([f, identity(f.target)], [ix, ib])
    gid = copair([g, identity(g.target)], [ix, ib])
    return fid, gid


def weak_coequalizer(ho: HoCategory, f: Morphism | HoClass, g: Morphism | HoClass) -> WeakCoequalizer:
    """Weak pushout of (f, id) and (g, id) out of X ⊔ B."""
    if isinstance(f, HoClass):
        f = f.rep
    if isinstance(g, HoClass):
        g = g.rep
    if f.source != g.source or f.target != g.target:
        raise fincat.ShapeError("weak coequalizer needs a parallel pair")
    fid, gid = _fold_pair(f, g, ho.m.base)
    return WeakCoequalizer(f, g, homotopy_pushout(ho, fid, gid))


def check_weak_coequalizer(ho: HoCategory, wc: WeakCoequalizer, tests: Sequence[Presheaf]) -> UniversalityReport:
    rep = UniversalityReport(bound=f"fibrant test objects {[t.sizes for t in tests]}")
    b, x = wc.f.target, wc.f.source
    for w in tests:
        hb, hx, he = ho.hom_into_fibrant(b, w), ho.hom_into_fibrant(x, w), ho.hom_into_fibrant(wc.obj, w)
        images = [ho.index(hb, ho.precompose(t, wc.h)) for t in he.classes]
        for i, y in enumerate(hb.classes):
            if ho.index(hx, ho.precompose(y, wc.f)) != ho.index(hx, ho.precompose(y, wc.g)):
                continue
            rep.checked += 1
            rep.counts.append(images.count(i))
            rep.witnesses.append((w, i))
    return rep


@dataclass
class StandardWeakColimit:
    diagram: Diagram
    coeq: WeakCoequalizer
    total: Presheaf  # ⊔_d Dd
    injections: list[Morphism]
    cocone: list[Morphism]  # δ_d = h∘v_d

    @property
    def obj(self) -> Presheaf:
        return self.coeq.obj


def coequalizer_pair(diagram: Diagram, cat) -> tuple[Morphism, Morphism, Presheaf, list[Morphism]]:
    """f, g: ⊔_{e: d -> d'} Dd -> ⊔_d Dd with f u_e = v_d and g u_e = v_d'∘De."""
    sh = diagram.shape
    if diagram.check():
        raise fincat.ShapeError("; ".join(diagram.check()))
    edges = _arrows(sh)
    right, v = coproduct(list(diagram.objects), cat)
    left, u = coproduct([diagram.objects[sh.src[e]] for e in edges], cat)
    f = copair([v[sh.src[e]] for e in edges], u) if edges else from_empty(right)
    g = copair([compose(v[sh.tgt[e]], diagram.maps[e]) for e in edges], u) if edges else from_empty(right)
    return f, g, right, v


def _arrows(sh) -> list[int]:
    # identities would glue in a spurious cylinder, so only proper arrows index the coproduct
    ids = set(sh.identities)
    return [e for e, (name, _, _) in enumerate(sh.morphisms) if name not in ids]


def standard_weak_colimit(ho: HoCategory, diagram: Diagram) -> StandardWeakColimit:
    f, g, right, v = coequalizer_pair(diagram, ho.m.base)
    wc = weak_coequalizer(ho, f, g)
    return StandardWeakColimit(diagram, wc, right, v, [compose(wc.h, vd) for vd in v])


def check_weak_colimit(ho: HoCategory, swc: StandardWeakColimit, tests: Sequence[Presheaf]) -> UniversalityReport:
    rep = UniversalityReport(bound=f"fibrant test objects {[t.sizes for t in tests]}")
    d = swc.diagram
    sh = d.shape
    for w in tests:
        homs = [ho.hom_into_fibrant(x, w) for x in d.objects]
        he = ho.hom_into_fibrant(swc.obj, w)
        images = [tuple(ho.index(h, ho.precompose(t, dl)) for h, dl in zip(homs, swc.cocone)) for t in he.classes]
        for fam in product(*[range(len(h)) for h in homs]):
            ok = True
            for e in _arrows(sh):
                a, b = sh.src[e], sh.tgt[e]
                moved = ho.precompose(homs[b].classes[fam[b]], d.maps[e])
                if ho.index(homs[a], moved) != fam[a]:
                    ok = False
                    break
            if not ok:
                continue
            rep.checked += 1
            rep.counts.append(images.count(fam))
            rep.witnesses.append((w, fam))
    return rep


@dataclass
class Comparison:
    p: Morphism  # K -> K̄
    strict: Presheaf  # K̄
    strict_cocone: list[Morphism]
    weak_cocone: list[Morphism]
    equations_hold: bool


def _span_comparison(hp: HomotopyPushout) -> tuple[Morphism, Presheaf, Morphism, Morphism]:
    kbar, gprime, fprime = pushout(hp.f, hp.g)
    p = descend([hp.gbar, hp.fbar], [compose(gprime, hp.f2), compose(fprime, hp.g2)])
    return p, kbar, gprime, fprime


def comparison_morphism(ho: HoCategory, diagram: Diagram) -> Comparison:
    """p: K -> K̄ from the standard weak colimit to the strict colimit.

    A span shape is handled by its homotopy pushout directly; any other
    shape through the coequalizer span of its standard weak colimit.
    """
    sh = diagram.shape
    if sh.name == "span":
        a, b, c = 0, 1, 2
        fm = diagram.maps[sh.mor("f")]
        gm = diagram.maps[sh.mor("g")]
        hp = homotopy_pushout(ho, fm, gm)
        p, kbar, gprime, fprime = _span_comparison(hp)
        weak = [compose(hp.b_leg, fm), hp.b_leg, hp.d_leg]
        strict = [compose(gprime, fm), gprime, fprime]
    else:
        swc = standard_weak_colimit(ho, diagram)
        hp = swc.coeq.pushout
        p, kbar, gprime, _ = _span_comparison(hp)
        weak = swc.cocone
        strict = [compose(gprime, vd) for vd in swc.injections]
    ok = all(ho.equal(ho.project(compose(p, w)), ho.project(s)) for w, s in zip(weak, strict))
    return Comparison(p, kbar, strict, weak, ok)


# --------------------------------------------------------------------------
# restricted hom-functors and phantoms


@dataclass
class CanonicalImage:
    """E_A K: hom(A, K) for A in the probe list, with precomposition tables."""

    target: Presheaf
    probes: tuple[Presheaf, ...]
    homs: list[HoHomSet]
    probe_maps: dict  # (i, j) -> hom(A_i, A_j)
    precomp: dict  # (i, j, a) -> list: class index in hom(A_j, K) -> index in hom(A_i, K)


def probe_category(ho: HoCategory, probes: Sequence[Presheaf]) -> dict:
    return {(i, j): ho.hom(a, b) for i, a in enumerate(probes) for j, b in enumerate(probes)}


def canonical_image(ho: HoCategory, k: Presheaf, probes: Sequence[Presheaf]) -> CanonicalImage:
    probes = tuple(probes)
    homs = [ho.hom(a, k) for a in probes]
    pm = probe_category(ho, probes)
    pre = {}
    for (i, j), hs in pm.items():
        for ai, a in enumerate(hs.classes):
            pre[i, j, ai] = [ho.index(homs[i], ho.compose(x, a)) for x in homs[j].classes]
    return CanonicalImage(k, probes, homs, pm, pre)


def natural_transformations(src: CanonicalImage, tgt: CanonicalImage, budget: int = 10**6) -> list[tuple]:
    """All families tau_i: E src(A_i) -> E tgt(A_i) commuting with precomposition."""
    n = len(src.probes)
    spaces = [list(product(range(len(tgt.homs[i])), repeat=len(src.homs[i]))) for i in range(n)]
    total = 1
    for s in spaces:
        total *= len(s)
    if total > budget:
        raise fincat.SizeGuardError(f"{total} candidate transformations exceed the budget {budget}")
    out = []
    for fam in product(*spaces):
        ok = True
        for (i, j, ai), table_s in src.precomp.items():
            table_t = tgt.precomp[i, j, ai]
            for x in range(len(src.homs[j])):
                if fam[i][table_s[x]] != table_t[fam[j][x]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(fam)
    return out


def image_of(ho: HoCategory, c: HoClass, src: CanonicalImage, tgt: CanonicalImage) -> tuple:
    """E(c) as a family of index functions."""
    return tuple(tuple(ho.index(tgt.homs[i], ho.compose(c, x)) for x in src.homs[i].classes)
                 for i in range(len(src.probes)))


@dataclass
class FullFaithfulReport:
    transformations: int = 0
    unrealized: list = field(default_factory=list)
    collisions: list = field(default_factory=list)

    @property
    def full(self) -> bool:
        return not self.unrealized

    @property
    def faithful(self) -> bool:
        return not self.collisions


def check_A_full_faithful(ho: HoCategory, probes: Sequence[Presheaf], sample: Sequence[Presheaf]) -> FullFaithfulReport:
    """Conditions (a) and (b) for every probe A and every sampled K."""
    rep = FullFaithfulReport()
    probes = tuple(probes)
    for a_idx, a in enumerate(probes):
        ea = canonical_image(ho, a, probes)
        for k in sample:
            ek = canonical_image(ho, k, probes)
            hs = ho.hom(a, k)
            images = [image_of(ho, c, ea, ek) for c in hs.classes]
            for tau in natural_transformations(ea, ek):
                rep.transformations += 1
                if tau not in images:
                    rep.unrealized.append((a_idx, k.sizes, tau))
            for i in range(len(images)):
                for j in range(i + 1, len(images)):
                    if images[i] == images[j]:
                        rep.collisions.append((a_idx, k.sizes, i, j))
    return rep


def phantom_equivalent(ho: HoCategory, f: HoClass, g: HoClass, probes: Sequence[Presheaf]) -> bool:
    """f∘h = g∘h for every class h: A -> source with A a probe."""
    if f.source != g.source or f.target != g.target:
        raise fincat.ShapeError("phantom equivalence needs parallel classes")
    for a in probes:
        for h in ho.hom(a, f.source).classes:
            if not ho.equal(ho.compose(f, h), ho.compose(g, h)):
                return False
    return True


@dataclass
class PhantomPair:
    source: Presheaf
    probes: tuple[Presheaf, ...]
    cover: Morphism  # ⊔ A -> R X
    pushout: HomotopyPushout
    f: Morphism  # R_c X -> L, strict representative of the first leg
    g: Morphism

    @property
    def obj(self) -> Presheaf:
        return self.pushout.obj


def weakly_initial_phantom_pair(ho: HoCategory, x: Presheaf, probes: Sequence[Presheaf]) -> PhantomPair:
    """Weak cokernel pair of the map from the coproduct of all probe classes into X."""
    probes = tuple(probes)
    r = ho.rep(x)
    reps = [c.rep for a in probes for c in ho.hom(a, x).classes]
    total, inj = coproduct([h.source for h in reps], ho.m.base)
    cover = copair(reps, inj) if reps else from_empty(r.obj)
    hp = homotopy_pushout(ho, cover, cover)
    return PhantomPair(x, probes, cover, hp, compose(hp.b_leg, r.v), compose(hp.d_leg, r.v))


@dataclass
class PhantomCertificate:
    targets: int = 0
    pairs: int = 0
    failures: list = field(default_factory=list)
    phantom: bool = False


def check_phantom_pair(ho: HoCategory, pp: PhantomPair, targets: Sequence[Presheaf]) -> PhantomCertificate:
    cert = PhantomCertificate()
    x, lobj = pp.source, pp.obj
    fc, gc = ho.strict_class(x, pp.f), ho.strict_class(x, pp.g)
    cert.phantom = phantom_equivalent(ho, fc, gc, pp.probes)
    probe_homs = [c for a in pp.probes for c in ho.hom(a, x).classes]
    for t in targets:
        cert.targets += 1
        hx = ho.hom(x, t)
        he = ho.hom(lobj, t)
        pre = [[ho.index(ho.hom(h.source, t), ho.compose(c, h)) for h in probe_homs] for c in hx.classes]
        images = [(ho.index(hx, ho.precompose_cof(s, x, pp.f)), ho.index(hx, ho.precompose_cof(s, x, pp.g)))
                  for s in he.classes]
        for i in range(len(hx)):
            for j in range(len(hx)):
                if pre[i] != pre[j]:
                    continue
                cert.pairs += 1
                if (i, j) not in images:
                    cert.failures.append((t.sizes, i, j))
    return cert


def subcoproduct_support(f: Morphism, injections: Sequence[Morphism]) -> tuple[list[int], Morphism, Morphism]:
    """Least J with f factoring through the subcoproduct ⊔_{j in J} K_j.

    Returns (J, A -> ⊔_J K_j, subcoproduct injection).
    """
    cat = f.source.cat
    owner = [dict() for _ in range(cat.n_objects)]
    for i, inj in enumerate(injections):
        for o, x in inj.source.elements():
            owner[o][inj.comps[o][x]] = (i, x)
    support = sorted({owner[o][f.comps[o][x]][0] for o, x in f.source.elements()})
    sub, sub_inj = coproduct([injections[j].source for j in support], cat)
    pos = {j: k for k, j in enumerate(support)}
    comps = []
    for o in range(cat.n_objects):
        row = []
        for x in range(f.source.sizes[o]):
            i, y = owner[o][f.comps[o][x]]
            row.append(sub_inj[pos[i]].comps[o][y])
        comps.append(tuple(row))
    fac = Morphism(f.source, sub, tuple(comps))
    inc = copair([injections[j] for j in support], sub_inj) if support else from_empty(f.target)
    return support, fac, inc


# --------------------------------------------------------------------------
# classification


def project(ho: HoCategory, f: Morphism) -> HoClass:
    return ho.project(f)


def ho_hom(ho: HoCategory, x: Presheaf, y: Presheaf) -> HoHomSet:
    return ho.hom(x, y)


@dataclass
class Classification:
    labels: list[int]  # class index per input object
    reps: list[int]  # input index of each class representative
    witnesses: dict  # input index -> (f, g) mutually inverse classes to its representative


def classify(ho: HoCategory, objects: Sequence[Presheaf]) -> Classification:
    """Sort objects into Ho-isomorphism classes.

    Each object is compared against the representatives found so far; an
    isomorphism is a pair of explicit inverse classes, and a new class is
    opened only after the exhaustive search against every representative
    fails.  Transitivity of isomorphism then settles all other pairs.
    """
    labels, reps, wit = [], [], {}
    for i, x in enumerate(objects):
        for c, r in enumerate(reps):
            iso = ho.isomorphism(x, objects[r])
            if iso is not None:
                labels.append(c)
                wit[i] = iso
                break
        else:
            labels.append(len(reps))
            reps.append(i)
    return Classification(labels, reps, wit)


def probe_signature(ho: HoCategory, x: Presheaf, probes: Sequence[Presheaf]) -> tuple[int, ...]:
    """|[x, Z]| for each fibrant probe Z; an Ho-invariant of x."""
    return tuple(len(ho.hom_into_fibrant(x, z)) for z in probes)


@dataclass
class Separation:
    probe: int | None  # index of a probe with different counts, None if none separates
    counts: tuple


def separate(ho: HoCategory, x: Presheaf, y: Presheaf, probes: Sequence[Presheaf]) -> Separation:
    """Certify x, y not isomorphic in Ho by a fibrant probe Z with |[x,Z]| != |[y,Z]|.

    An isomorphism x ≅ y in Ho would induce a bijection [y,Z] -> [x,Z], so any
    count mismatch rules out every homotopy inverse at once, without fibrant
    replacements of x or y.
    """
    sx, sy = probe_signature(ho, x, probes), probe_signature(ho, y, probes)
    for i, (a, b) in enumerate(zip(sx, sy)):
        if a != b:
            return Separation(i, (sx, sy))
    return Separation(None, (sx, sy))
