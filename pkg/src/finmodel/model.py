"""Small object argument, replacements, cylinders and left homotopy."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from . import fincat
from .fincat import (DEFAULT_BUDGET, FinCategory, LiftingProblem, Morphism, Presheaf, compose, copair, coproduct,
                     descend, find_lift, from_empty, identity, pushout, search_maps, to_terminal)

COF_TRIVFIB = "cof_trivfib"
TRIVCOF_FIB = "trivcof_fib"


class FactorizationIncomplete(RuntimeError):
    """The iteration cap ran out before the right leg acquired the lifting property."""

    def __init__(self, trace: "FactorizationTrace"):
        super().__init__(f"factorization not finished after {trace.steps_used} steps")
        self.trace = trace


@dataclass(frozen=True)
class ModelInstance:
    base: FinCategory
    gen_cof: tuple[Morphism, ...]
    gen_triv_cof: tuple[Morphism, ...]
    weq_strategy: str = "search"  # "oracle" or "search"
    iteration_cap: int = 64
    soa_mode: str = "marked"
    budget: int = DEFAULT_BUDGET
    cofibrations_are_monos: bool = False
    name: str = ""
    oracle: Callable[[Morphism], bool] | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.iteration_cap < 1:
            raise ValueError("iteration_cap must be at least 1")
        if self.soa_mode not in ("naive", "marked"):
            raise ValueError("soa_mode is naive or marked")
        for g in self.gen_cof + self.gen_triv_cof:
            if g.source.cat != self.base or g.target.cat != self.base:
                raise ValueError("generator over a different base category")

    def gens(self, kind: str) -> tuple[Morphism, ...]:
        if kind == COF_TRIVFIB:
            return self.gen_cof
        if kind == TRIVCOF_FIB:
            return self.gen_triv_cof
        raise ValueError(f"unknown factorization kind {kind!r}")

    def with_(self, **kw) -> "ModelInstance":
        from dataclasses import replace
        return replace(self, **kw)


def sset_instance(n: int, **kw) -> ModelInstance:
    from . import sset
    gen_cof, gen_triv = sset.generators(n)
    kw.setdefault("cofibrations_are_monos", True)
    kw.setdefault("name", f"sset:{n}")
    if n < 3:
        kw.setdefault("oracle", lambda f, n=n: sset.weq_oracle(n, f))
    return ModelInstance(sset.simplex_category(n), gen_cof, gen_triv, **kw)


# --------------------------------------------------------------------------
# small object argument


@dataclass(frozen=True)
class Stage:
    obj: Presheaf
    alpha: Morphism
    beta: Morphism
    attached: int = 0


@dataclass(frozen=True)
class FactorizationTrace:
    input: Morphism
    kind: str
    stages: tuple[Stage, ...]
    terminated: bool
    steps_used: int

    @property
    def obj(self) -> Presheaf:
        return self.stages[-1].obj

    @property
    def alpha(self) -> Morphism:
        return self.stages[-1].alpha

    @property
    def beta(self) -> Morphism:
        return self.stages[-1].beta


def _squares(f: Morphism, gens: Sequence[Morphism], budget: int):
    # larger cells first: fillers between existing elements are then found
    # before a smaller horn spawns a fresh vertex (pt -> loop in SSet_2 never
    # terminates the other way round)
    order = sorted(range(len(gens)), key=lambda k: -gens[k].target.total)
    for k in order:
        h = gens[k]
        for u, v in fincat.squares(h, f, budget):
            yield k, u, v


def soa_step(f: Morphism, gens: Sequence[Morphism], mode: str = "marked",
             budget: int = DEFAULT_BUDGET) -> Stage:
    """One gluing step: returns the stage ``A -alpha-> F -beta-> B`` with ``beta∘alpha = f``.

    naive: one cell per commuting square from a generator onto f, glued in a
    single pushout.  marked: squares are visited in canonical order and a
    cell is glued only if the square has no lift through the current right
    leg (cells glued earlier in the same step count).
    """
    a = f.source
    if mode == "naive":
        sq = list(_squares(f, gens, budget))
        if not sq:
            return Stage(a, identity(a), f, 0)
        xs, ix = coproduct([gens[k].source for k, _, _ in sq], a.cat)
        ys, iy = coproduct([gens[k].target for k, _, _ in sq], a.cat)
        h_tot = copair([compose(iy[i], gens[k]) for i, (k, _, _) in enumerate(sq)], ix)
        u_tot = copair([u for _, u, _ in sq], ix)
        v_tot = copair([v for _, _, v in sq], iy)
        p, leg_a, leg_y = pushout(u_tot, h_tot)
        beta = descend([leg_a, leg_y], [f, v_tot])
        return Stage(p, leg_a, beta, len(sq))
    obj, alpha, beta, glued = a, identity(a), f, 0
    for k, u, v in list(_squares(f, gens, budget)):
        h = gens[k]
        u2 = compose(alpha, u)
        if find_lift(LiftingProblem(h, beta, u2, v), budget) is not None:
            continue
        p, leg_f, leg_y = pushout(u2, h)
        beta = descend([leg_f, leg_y], [beta, v])
        alpha = compose(leg_f, alpha)
        obj = p
        glued += 1
    return Stage(obj, alpha, beta, glued)


def factorize(f: Morphism, kind: str, m: ModelInstance, mode: str | None = None,
              cap: int | None = None) -> FactorizationTrace:
    """Iterate gluing steps until the right leg lifts against the generators.

    ``mode="naive"`` makes the first step glue a cell for every square and
    finishes with marked steps; ``"marked"`` uses marked steps throughout.
    The trace records every stage; ``terminated`` is False if the cap ran out.
    """
    gens = m.gens(kind)
    mode = mode or m.soa_mode
    cap = cap or m.iteration_cap
    stages = [Stage(f.source, identity(f.source), f, 0)]
    steps = 0
    while True:
        cur = stages[-1]
        step_mode = "naive" if (mode == "naive" and steps == 0) else "marked"
        nxt = soa_step(cur.beta, gens, step_mode, m.budget)
        if step_mode == "marked" and nxt.attached == 0:
            return FactorizationTrace(f, kind, tuple(stages), True, steps)
        if steps == cap:
            return FactorizationTrace(f, kind, tuple(stages), False, steps)
        steps += 1
        stages.append(Stage(nxt.obj, compose(nxt.alpha, cur.alpha), nxt.beta, nxt.attached))


def factorize_or_raise(f, kind, m, mode=None, cap=None) -> FactorizationTrace:
    tr = _factorize_cached(f, kind, m, mode or m.soa_mode, cap or m.iteration_cap)
    if not tr.terminated:
        raise FactorizationIncomplete(tr)
    return tr


@lru_cache(maxsize=4096)
def _factorize_cached(f, kind, m, mode, cap):
    return factorize(f, kind, m, mode, cap)


# --------------------------------------------------------------------------
# replacements


@dataclass(frozen=True)
class Replacement:
    """``x <-q- xc -v-> obj`` with q a trivial fibration and v a trivial cofibration."""

    source: Presheaf
    cof: Presheaf
    q: Morphism
    obj: Presheaf
    v: Morphism


def is_cofibrant(x: Presheaf, m: ModelInstance) -> bool:
    if m.cofibrations_are_monos:
        return True
    tr = factorize_or_raise(from_empty(x), COF_TRIVFIB, m)
    sq = LiftingProblem(from_empty(x), tr.beta, from_empty(tr.obj), identity(x))
    return find_lift(sq, m.budget) is not None


@lru_cache(maxsize=4096)
def is_fibrant(x: Presheaf, m: ModelInstance) -> bool:
    return fincat.has_rlp(to_terminal(x), m.gen_triv_cof, m.budget)


@lru_cache(maxsize=4096)
def cofibrant_replacement(x: Presheaf, m: ModelInstance) -> tuple[Presheaf, Morphism]:
    if m.cofibrations_are_monos:
        return x, identity(x)
    tr = factorize_or_raise(from_empty(x), COF_TRIVFIB, m)
    return tr.obj, tr.beta


@lru_cache(maxsize=4096)
def fibrant_replacement(x: Presheaf, m: ModelInstance, mode: str | None = None) -> tuple[Presheaf, Morphism]:
    tr = factorize_or_raise(to_terminal(x), TRIVCOF_FIB, m, mode)
    return tr.obj, tr.alpha


def replacement(x: Presheaf, which: str, m: ModelInstance):
    """cofibrant -> (R_c x, q: R_c x -> x); fibrant -> (R_f x, v: x -> R_f x);
    full -> Replacement with R x = R_f R_c x."""
    if which == "cofibrant":
        return cofibrant_replacement(x, m)
    if which == "fibrant":
        return fibrant_replacement(x, m)
    if which == "full":
        return full_replacement(x, m)
    raise ValueError(f"unknown replacement {which!r}")


@lru_cache(maxsize=4096)
def full_replacement(x: Presheaf, m: ModelInstance) -> Replacement:
    xc, q = cofibrant_replacement(x, m)
    obj, v = fibrant_replacement(xc, m)
    return Replacement(x, xc, q, obj, v)


def lift_or_fail(p: LiftingProblem, m: ModelInstance) -> Morphism:
    d = find_lift(p, m.budget)
    if d is None:
        raise RuntimeError("expected lift does not exist; generators do not present a model structure here")
    return d


@lru_cache(maxsize=4096)
def replace_morphism(f: Morphism, m: ModelInstance) -> Morphism:
    """R(f): R(source) -> R(target) with R(f)∘v = v∘R_c(f), found by lifting."""
    rk, rl = full_replacement(f.source, m), full_replacement(f.target, m)
    if m.cofibrations_are_monos:
        fc = f
    else:
        fc = lift_or_fail(LiftingProblem(from_empty(rk.cof), rl.q, from_empty(rl.cof), compose(f, rk.q)), m)
    return lift_or_fail(LiftingProblem(rk.v, to_terminal(rl.obj), compose(rl.v, fc), to_terminal(rk.obj)), m)


# --------------------------------------------------------------------------
# cylinders and homotopy


@dataclass(frozen=True)
class CylinderData:
    base: Presheaf
    obj: Presheaf
    gamma: Morphism  # K ⊔ K -> C(K)
    gamma1: Morphism
    gamma2: Morphism
    sigma: Morphism
    trace: FactorizationTrace = field(compare=False, repr=False)


@lru_cache(maxsize=4096)
def cylinder(k: Presheaf, m: ModelInstance, mode: str | None = None) -> CylinderData:
    kk, (i1, i2) = coproduct([k, k])
    nabla = copair([identity(k), identity(k)], [i1, i2])
    tr = factorize_or_raise(nabla, COF_TRIVFIB, m, mode)
    return CylinderData(k, tr.obj, tr.alpha, compose(tr.alpha, i1), compose(tr.alpha, i2), tr.beta, tr)


def homotopy(f: Morphism, g: Morphism, m: ModelInstance, mode: str | None = None) -> Morphism | None:
    """A left homotopy ``h: C(K) -> L`` from f to g, or None."""
    if f.source != g.source or f.target != g.target:
        raise fincat.ShapeError("left homotopy needs parallel maps")
    if f == g:
        cyl = cylinder(f.source, m, mode)
        return compose(f, cyl.sigma)
    cyl = cylinder(f.source, m, mode)
    fixed = {}
    for o, x in f.source.elements():
        fixed[o, cyl.gamma1.comps[o][x]] = f.comps[o][x]
        fixed[o, cyl.gamma2.comps[o][x]] = g.comps[o][x]
    return next(search_maps(cyl.obj, f.target, fixed=fixed, budget=m.budget), None)


def left_homotopic(f: Morphism, g: Morphism, m: ModelInstance, mode: str | None = None,
                   check: bool = True) -> bool:
    """f ~ g via a cylinder on the (cofibrant) source; the target must be fibrant."""
    if check:
        if not is_cofibrant(f.source, m):
            raise ValueError("left homotopy needs a cofibrant source")
        if not is_fibrant(f.target, m):
            raise ValueError("left homotopy needs a fibrant target; pass replaced objects")
    return homotopy(f, g, m, mode) is not None


def homotopy_inverse(rf: Morphism, m: ModelInstance) -> Morphism | None:
    """g with g∘rf ~ id and rf∘g ~ id, searching maps between fibrant-cofibrant objects."""
    ida, idb = identity(rf.source), identity(rf.target)
    for g in search_maps(rf.target, rf.source, budget=m.budget):
        if left_homotopic(compose(g, rf), ida, m, check=False) and left_homotopic(compose(rf, g), idb, m, check=False):
            return g
    return None


def is_weak_equivalence(f: Morphism, m: ModelInstance, strategy: str | None = None) -> bool:
    strategy = strategy or m.weq_strategy
    if strategy == "oracle":
        if m.oracle is None:
            raise ValueError(f"instance {m.name or m.base} has no oracle")
        return m.oracle(f)
    if strategy != "search":
        raise ValueError(f"unknown strategy {strategy!r}")
    return homotopy_inverse(replace_morphism(f, m), m) is not None
