"""Batch front end: JSON workspace in, deterministic text report out.

Workspace format::

    {"instance": "sset:2",
     "objects": {"E": {"vertices": 2, "edges": [[0, 1]]}},
     "morphisms": {"f": {"source": "E", "target": "P", "images": [[0, 0], [2]]}},
     "commands": [{"op": "is-weq", "args": ["f"]}]}

For ``sset:n`` an object lists cells per level; triangle faces are
``[d0, d1, d2]`` edge indices or ``{"deg": v}``.  Morphism ``images[k]``
gives, for each nondegenerate k-cell of the source, an element index of the
target at level k (nondegenerate cells first, then degenerate ones).
For ``chain:p`` an object is ``{"dims": {"n": k}, "d": {"n": rows}}`` and a
morphism ``{"source", "target", "comps": {"n": rows}}``.

Exit status: 0 success, 1 some command failed, 2 parse or validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import chain, fincat, hocat, model, sset
from .fincat import Diagram, Morphism, Presheaf, ShapeError, SizeGuardError, coproduct


class WorkspaceError(Exception):
    """Base for document problems; ``path`` locates the offending entry."""

    def __init__(self, msg: str, path: str = ""):
        super().__init__(f"{path}: {msg}" if path else msg)
        self.path = path


class SyntaxProblem(WorkspaceError):
    pass


class UnresolvedName(WorkspaceError):
    pass


class TypeMismatch(WorkspaceError):
    pass


class InvariantViolation(WorkspaceError):
    pass


OPS = ("validate", "factorize", "replace", "cylinder", "is-weq", "ho-hom", "ho-product", "ho-coproduct",
       "homotopy-pushout", "weak-coequalizer", "weak-colimit", "comparison", "e-image", "check-full-faithful",
       "phantom", "phantom-pair", "support", "classify", "homology", "quasi-iso", "truncate",
       "verify-truncation-colimit")
SSET_OPS = set(OPS[:18])
CHAIN_OPS = {"validate", "homology", "quasi-iso", "truncate", "verify-truncation-colimit", "classify"}
PARAMS = ("cap", "budget", "mode", "A", "kind", "k", "tests", "shape", "summands")


@dataclass
class Command:
    op: str
    args: list[str]
    params: dict[str, Any] = field(default_factory=dict)


@dataclass
class WorkspaceDocument:
    instance: str
    objects: dict[str, Any]  # name -> Presheaf | ChainComplex
    morphisms: dict[str, Any]  # name -> Morphism | ChainMap
    commands: list[Command]
    raw: dict  # normalized JSON, the serialization source

    @property
    def kind(self) -> str:
        return self.instance.split(":")[0]

    @property
    def level(self) -> int:
        return int(self.instance.split(":")[1])


# --------------------------------------------------------------------------
# parsing


def _need(cond, exc, msg, path):
    if not cond:
        raise exc(msg, path)


def _int(v, path) -> int:
    _need(isinstance(v, int) and not isinstance(v, bool), TypeMismatch, f"expected an integer, got {v!r}", path)
    return v


def _parse_sset_object(n: int, entry, path) -> tuple[Presheaf, dict]:
    _need(isinstance(entry, dict), SyntaxProblem, "object must be a JSON object", path)
    unknown = set(entry) - {"vertices", "edges", "triangles"}
    _need(not unknown, SyntaxProblem, f"unknown keys {sorted(unknown)}", path)
    nv = _int(entry.get("vertices", 0), path + ".vertices")
    edges = []
    for i, e in enumerate(entry.get("edges", [])):
        p = f"{path}.edges[{i}]"
        _need(isinstance(e, list) and len(e) == 2, SyntaxProblem, "edge must be [source, target]", p)
        s, t = _int(e[0], p), _int(e[1], p)
        _need(0 <= s < nv and 0 <= t < nv, TypeMismatch, "edge endpoint out of range", p)
        edges.append((s, t))
    tris, tri_raw = [], []
    for i, t in enumerate(entry.get("triangles", [])):
        p = f"{path}.triangles[{i}]"
        _need(isinstance(t, list) and len(t) == 3, SyntaxProblem, "triangle must list three faces", p)
        faces, raw = [], []
        for j, f in enumerate(t):
            if isinstance(f, dict):
                _need(set(f) == {"deg"}, SyntaxProblem, "degenerate face is {\"deg\": vertex}", f"{p}[{j}]")
                v = _int(f["deg"], f"{p}[{j}]")
                _need(0 <= v < nv, TypeMismatch, "vertex out of range", f"{p}[{j}]")
                faces.append(sset.Deg(v))
                raw.append({"deg": v})
            else:
                e = _int(f, f"{p}[{j}]")
                _need(0 <= e < len(edges), TypeMismatch, "edge index out of range", f"{p}[{j}]")
                faces.append(e)
                raw.append(e)
        tris.append(tuple(faces))
        tri_raw.append(raw)
    try:
        x = sset.cell_complex(n, nv, edges, tris)
    except ShapeError as e:
        raise InvariantViolation(str(e), path) from None
    raw = {"vertices": nv}
    if edges:
        raw["edges"] = [list(e) for e in edges]
    if tri_raw:
        raw["triangles"] = tri_raw
    return x, raw


def _matrix(rows, nrows, ncols, p, path) -> np.ndarray:
    if nrows == 0 or ncols == 0:
        _need(rows in ([], [[]] * nrows) or not any(rows), TypeMismatch, "matrix should be empty", path)
        return np.zeros((nrows, ncols), dtype=np.int64)
    _need(isinstance(rows, list) and len(rows) == nrows and all(isinstance(r, list) and len(r) == ncols for r in rows),
          TypeMismatch, f"expected a {nrows}x{ncols} matrix", path)
    for r in rows:
        for v in r:
            _int(v, path)
    return np.array(rows, dtype=np.int64) % p


def _parse_chain_object(p: int, entry, path) -> tuple[chain.ChainComplex, dict]:
    _need(isinstance(entry, dict) and "dims" in entry, SyntaxProblem, "chain object needs dims", path)
    dims = {}
    for key, v in entry["dims"].items():
        try:
            n = int(key)
        except ValueError:
            raise SyntaxProblem(f"degree {key!r} is not an integer", path + ".dims") from None
        if _int(v, f"{path}.dims.{key}"):
            dims[n] = v
    c = chain.ChainComplex(p, dims)
    raw_d = {}
    for key, rows in entry.get("d", {}).items():
        n = int(key)
        c.d[n] = _matrix(rows, c.dim(n - 1), c.dim(n), p, f"{path}.d.{key}")
        if c.dim(n) and c.dim(n - 1):
            raw_d[str(n)] = c.d[n].tolist()
    errs = c.check()
    if errs:
        raise InvariantViolation(f"{errs[0]} (degree {errs[0].degree})", path)
    raw = {"dims": {str(n): dims[n] for n in sorted(dims)}}
    if raw_d:
        raw["d"] = {k: raw_d[k] for k in sorted(raw_d, key=int)}
    return c, raw


def parse(text: str) -> WorkspaceDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SyntaxProblem(f"invalid JSON: {e.msg}", f"line {e.lineno} col {e.colno}") from None
    _need(isinstance(data, dict), SyntaxProblem, "document must be a JSON object", "$")
    inst = data.get("instance")
    _need(isinstance(inst, str) and ":" in inst, SyntaxProblem, "instance must be sset:n or chain:p", "$.instance")
    kind, _, num = inst.partition(":")
    _need(num.isdigit(), SyntaxProblem, "instance must be sset:n or chain:p", "$.instance")
    n = int(num)
    if kind == "sset":
        _need(1 <= n <= 3, TypeMismatch, "sset level must be 1, 2 or 3", "$.instance")
    elif kind == "chain":
        _need(n >= 2 and all(n % q for q in range(2, int(n ** 0.5) + 1)), TypeMismatch,
              "chain characteristic must be prime", "$.instance")
    else:
        raise SyntaxProblem(f"unknown instance kind {kind!r}", "$.instance")
    objects, raw_objects = {}, {}
    for name in sorted(data.get("objects", {})):
        entry = data["objects"][name]
        path = f"$.objects.{name}"
        if kind == "sset":
            objects[name], raw_objects[name] = _parse_sset_object(n, entry, path)
        else:
            objects[name], raw_objects[name] = _parse_chain_object(n, entry, path)
    morphisms, raw_morphisms = {}, {}
    for name in sorted(data.get("morphisms", {})):
        entry = data["morphisms"][name]
        path = f"$.morphisms.{name}"
        _need(isinstance(entry, dict), SyntaxProblem, "morphism must be a JSON object", path)
        for end in ("source", "target"):
            _need(entry.get(end) in objects, UnresolvedName, f"unknown object {entry.get(end)!r}", f"{path}.{end}")
        x, y = objects[entry["source"]], objects[entry["target"]]
        if kind == "sset":
            images = entry.get("images", [])
            _need(isinstance(images, list) and all(isinstance(r, list) for r in images), SyntaxProblem,
                  "images must be a list per level", path)
            nd = sset.nondegenerate(x)
            _need(len(images) <= n, TypeMismatch, "more image levels than the instance has", path)
            for k, row in enumerate(images):
                _need(len(row) == len(nd[k]), TypeMismatch,
                      f"level {k} needs {len(nd[k])} images, got {len(row)}", f"{path}.images[{k}]")
                for v in row:
                    _int(v, f"{path}.images[{k}]")
                    _need(0 <= v < y.sizes[k], TypeMismatch, f"element {v} out of range", f"{path}.images[{k}]")
            if any(len(nd[k]) for k in range(len(images), n)):
                raise TypeMismatch("images missing for some level", path)
            try:
                morphisms[name] = sset.element_map(x, y, images)
            except ShapeError as e:
                raise TypeMismatch(str(e), path) from None
            raw_morphisms[name] = {"source": entry["source"], "target": entry["target"],
                                   "images": [list(r) for r in images]}
        else:
            comps, raw_c = {}, {}
            for key, rows in entry.get("comps", {}).items():
                d = int(key)
                comps[d] = _matrix(rows, y.dim(d), x.dim(d), n, f"{path}.comps.{key}")
                if y.dim(d) and x.dim(d):
                    raw_c[str(d)] = comps[d].tolist()
            f = chain.ChainMap(x, y, comps)
            errs = f.check()
            if errs:
                raise InvariantViolation(f"{errs[0]} (degree {errs[0].degree})", path)
            morphisms[name] = f
            raw_morphisms[name] = {"source": entry["source"], "target": entry["target"],
                                   "comps": {k: raw_c[k] for k in sorted(raw_c, key=int)}}
    commands, raw_cmds = [], []
    allowed = SSET_OPS if kind == "sset" else CHAIN_OPS
    for i, entry in enumerate(data.get("commands", [])):
        path = f"$.commands[{i}]"
        _need(isinstance(entry, dict) and isinstance(entry.get("op"), str), SyntaxProblem, "command needs an op", path)
        op = entry["op"]
        _need(op in OPS, SyntaxProblem, f"unknown command {op!r}", path)
        _need(op in allowed, TypeMismatch, f"{op} does not apply to {inst}", path)
        args = entry.get("args", [])
        _need(isinstance(args, list) and all(isinstance(a, str) for a in args), SyntaxProblem,
              "args must be a list of names", path)
        params = {k: v for k, v in entry.items() if k not in ("op", "args")}
        unknown = set(params) - set(PARAMS)
        _need(not unknown, SyntaxProblem, f"unknown parameters {sorted(unknown)}", path)
        names = list(args) + list(params.get("A", [])) + list(params.get("tests", [])) + list(params.get("summands", []))
        for a in names:
            _need(a in objects or a in morphisms or _literal_arg(op, a), UnresolvedName, f"unknown name {a!r}", path)
        commands.append(Command(op, list(args), params))
        raw_cmds.append({"op": op, "args": list(args), **{k: params[k] for k in sorted(params)}})
    raw = {"instance": inst, "objects": raw_objects, "morphisms": raw_morphisms, "commands": raw_cmds}
    return WorkspaceDocument(inst, objects, morphisms, commands, raw)


def _literal_arg(op: str, a: str) -> bool:
    # numeric stage arguments and corpus selectors are not names
    return (op in ("truncate", "verify-truncation-colimit") and a.lstrip("-").isdigit()) or \
        (op == "classify" and a.startswith("corpus"))


def serialize(doc: WorkspaceDocument) -> str:
    return json.dumps(doc.raw, indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------------
# running


class CommandError(Exception):
    pass


class Runner:
    def __init__(self, doc: WorkspaceDocument, defaults: dict | None = None):
        self.doc = doc
        self.defaults = defaults or {}
        self._ho: dict = {}

    def param(self, cmd: Command, key, default=None):
        return cmd.params.get(key, self.defaults.get(key, default))

    def instance(self, cmd: Command) -> model.ModelInstance:
        kw = {}
        if self.param(cmd, "cap") is not None:
            kw["iteration_cap"] = int(self.param(cmd, "cap"))
        if self.param(cmd, "budget") is not None:
            kw["budget"] = int(self.param(cmd, "budget"))
        if self.param(cmd, "mode") is not None:
            kw["soa_mode"] = self.param(cmd, "mode")
        return model.sset_instance(self.doc.level, **kw)

    def ho(self, cmd: Command) -> hocat.HoCategory:
        m = self.instance(cmd)
        if m not in self._ho:
            self._ho[m] = hocat.HoCategory(m)
        return self._ho[m]

    def obj(self, name):
        if name not in self.doc.objects:
            raise CommandError(f"{name!r} is not an object")
        return self.doc.objects[name]

    def mor(self, name):
        if name not in self.doc.morphisms:
            raise CommandError(f"{name!r} is not a morphism")
        return self.doc.morphisms[name]

    def arity(self, cmd, k):
        if len(cmd.args) < k:
            raise CommandError(f"{cmd.op} needs {k} argument(s)")

    def run(self) -> tuple[list[str], bool]:
        lines, ok = [], True
        for i, cmd in enumerate(self.doc.commands):
            head = f"[{i}] {cmd.op} {' '.join(cmd.args)}".rstrip()
            try:
                body = getattr(self, "cmd_" + cmd.op.replace("-", "_"))(cmd)
            except (CommandError, ShapeError, SizeGuardError, model.FactorizationIncomplete,
                    sset.CorpusBoundError, ValueError) as e:
                ok = False
                body = [f"error: {type(e).__name__}: {e}"]
                if isinstance(e, model.FactorizationIncomplete):
                    body += _trace_lines(e.trace)
            lines.append(head)
            lines.extend("  " + b for b in body)
        return lines, ok

    # generic ---------------------------------------------------------------
    def cmd_validate(self, cmd):
        out = ["ok"]
        for name, x in self.doc.objects.items():
            if self.doc.kind == "sset":
                out.append(f"object {name}: sizes {list(x.sizes)}")
            else:
                out.append(f"object {name}: dims {_dims(x)}")
        for name in self.doc.morphisms:
            out.append(f"morphism {name}: natural")
        return out

    def cmd_classify(self, cmd):
        if self.doc.kind == "chain":
            return [f"{name}: homology {_fmt_h(chain.homology_ranks(c))}" for name, c in self.doc.objects.items()]
        names, objs = self._classify_inputs(cmd)
        n = self.doc.level
        if n == 3:
            return [f"{nm}: forest {sset.forest_invariant(x, self.ho(cmd)) or '-'}" for nm, x in zip(names, objs)]
        cl = hocat.classify(self.ho(cmd), objs)
        rows = []
        for c, r in enumerate(cl.reps):
            members = [i for i, lab in enumerate(cl.labels) if lab == c]
            keys = {len(sset.forest_invariant(objs[i]).trees) for i in members}
            if len(keys) > 1:
                label = "mixed invariant"
            elif n == 2:
                label = f"pi0={keys.pop()}"
            else:
                label = "nonempty" if keys.pop() else "empty"
            rows.append((label, ", ".join(names[i] for i in members)))
        return [f"classes: {len(cl.reps)}"] + [f"{label}: {members}" for label, members in sorted(rows)]

    def _classify_inputs(self, cmd):
        if cmd.args and cmd.args[0].startswith("corpus"):
            n = self.doc.level
            if n == 1:
                objs = sset.set_corpus(4)
                return [f"set{k}" for k in range(len(objs))], objs
            if n == 2:
                corpus = sset.multigraph_corpus(3, 3)
                return [f"g{i}" for i in range(len(corpus))], [sset.graph(nv, list(es)) for nv, es in corpus]
            objs = [x for _, x in sset.reference_objects(3)]
            return ["point", "loop", "two-loops"], objs
        names = cmd.args or list(self.doc.objects)
        return names, [self.obj(a) for a in names]

    # model -----------------------------------------------------------------
    def cmd_factorize(self, cmd):
        self.arity(cmd, 1)
        kind = self.param(cmd, "kind", model.COF_TRIVFIB)
        m = self.instance(cmd)
        tr = model.factorize(self.mor(cmd.args[0]), kind, m)
        return _trace_lines(tr) + _audit_lines(tr, m)

    def cmd_replace(self, cmd):
        self.arity(cmd, 1)
        m = self.instance(cmd)
        x = self.obj(cmd.args[0])
        r = model.full_replacement(x, m)
        return [f"cofibrant: sizes {list(r.cof.sizes)}", f"fibrant-cofibrant: sizes {list(r.obj.sizes)}",
                f"fibrant already: {str(model.is_fibrant(x, m)).lower()}"]

    def cmd_cylinder(self, cmd):
        self.arity(cmd, 1)
        cyl = model.cylinder(self.obj(cmd.args[0]), self.instance(cmd), self.param(cmd, "mode"))
        return [f"cylinder: sizes {list(cyl.obj.sizes)}", f"steps: {cyl.trace.steps_used}"]

    def cmd_is_weq(self, cmd):
        self.arity(cmd, 1)
        return [str(model.is_weak_equivalence(self.mor(cmd.args[0]), self.instance(cmd))).lower()]

    # homotopy category -------------------------------------------------------
    def cmd_ho_hom(self, cmd):
        self.arity(cmd, 2)
        ho = self.ho(cmd)
        hs = ho.hom(self.obj(cmd.args[0]), self.obj(cmd.args[1]))
        out = [f"classes: {len(hs)}", f"maps enumerated: {hs.maps_seen}"]
        out += [f"rep {i}: {_comps(c.rep)}" for i, c in enumerate(hs.classes)]
        return out

    def _tests(self, cmd):
        return [self.obj(t) for t in self.param(cmd, "tests", [])]

    def cmd_ho_product(self, cmd):
        ho = self.ho(cmd)
        lim = hocat.ho_product(ho, [self.obj(a) for a in cmd.args])
        out = [f"product: sizes {list(lim.obj.sizes)}"]
        if self._tests(cmd):
            rep = hocat.check_product(ho, lim, self._tests(cmd))
            out.append(f"cones: {rep.checked}, unique: {str(rep.unique).lower()} ({rep.bound})")
        return out

    def cmd_ho_coproduct(self, cmd):
        ho = self.ho(cmd)
        lim = hocat.ho_coproduct(ho, [self.obj(a) for a in cmd.args])
        out = [f"coproduct: sizes {list(lim.obj.sizes)}"]
        if self._tests(cmd):
            rep = hocat.check_coproduct(ho, lim, self._tests(cmd))
            out.append(f"cocones: {rep.checked}, unique: {str(rep.unique).lower()} ({rep.bound})")
        return out

    def _weak_lines(self, rep):
        return [f"competing cocones: {rep.checked}", f"all factor: {str(rep.weak).lower()}",
                f"factorization counts: {rep.counts}", f"non-unique: {len(rep.non_unique)}", f"bound: {rep.bound}"]

    def cmd_homotopy_pushout(self, cmd):
        self.arity(cmd, 2)
        ho = self.ho(cmd)
        hp = hocat.homotopy_pushout(ho, self.mor(cmd.args[0]), self.mor(cmd.args[1]))
        out = [f"object: sizes {list(hp.obj.sizes)}"]
        if self._tests(cmd):
            out += self._weak_lines(hocat.check_weak_pushout(ho, hp, self._tests(cmd)))
        return out

    def cmd_weak_coequalizer(self, cmd):
        self.arity(cmd, 2)
        ho = self.ho(cmd)
        wc = hocat.weak_coequalizer(ho, self.mor(cmd.args[0]), self.mor(cmd.args[1]))
        out = [f"object: sizes {list(wc.obj.sizes)}"]
        if self._tests(cmd):
            out += self._weak_lines(hocat.check_weak_coequalizer(ho, wc, self._tests(cmd)))
        return out

    def _diagram(self, cmd) -> Diagram:
        shape = self.param(cmd, "shape", "span")
        if shape == "span":
            self.arity(cmd, 2)
            f, g = self.mor(cmd.args[0]), self.mor(cmd.args[1])
            return span_diagram(f, g)
        if shape == "parallel":
            self.arity(cmd, 2)
            f, g = self.mor(cmd.args[0]), self.mor(cmd.args[1])
            sh = fincat.parallel_shape()
            maps = {"id_a": fincat.identity(f.source), "id_b": fincat.identity(f.target), "f": f, "g": g}
            return Diagram(sh, (f.source, f.target), tuple(maps[nm] for nm, _, _ in sh.morphisms))
        if shape == "discrete":
            objs = [self.obj(a) for a in cmd.args]
            sh = fincat.discrete_shape(len(objs))
            return Diagram(sh, tuple(objs), tuple(fincat.identity(x) for x in objs))
        raise CommandError(f"unknown shape {shape!r}")

    def cmd_weak_colimit(self, cmd):
        ho = self.ho(cmd)
        d = self._diagram(cmd)
        swc = hocat.standard_weak_colimit(ho, d)
        out = [f"object: sizes {list(swc.obj.sizes)}"]
        if self._tests(cmd):
            out += self._weak_lines(hocat.check_weak_colimit(ho, swc, self._tests(cmd)))
        return out

    def cmd_comparison(self, cmd):
        cm = hocat.comparison_morphism(self.ho(cmd), self._diagram(cmd))
        return [f"strict colimit: sizes {list(cm.strict.sizes)}", f"p: {_comps(cm.p)}",
                f"equations hold in Ho: {str(cm.equations_hold).lower()}"]

    def _probes(self, cmd):
        names = self.param(cmd, "A", [])
        if isinstance(names, str):
            names = [a for a in names.split(",") if a]
        if not names:
            raise CommandError("this command needs an A list")
        return [self.obj(a) for a in names]

    def cmd_e_image(self, cmd):
        self.arity(cmd, 1)
        ce = hocat.canonical_image(self.ho(cmd), self.obj(cmd.args[0]), self._probes(cmd))
        return [f"|hom(A{i}, K)| = {len(h)}" for i, h in enumerate(ce.homs)]

    def cmd_check_full_faithful(self, cmd):
        rep = hocat.check_A_full_faithful(self.ho(cmd), self._probes(cmd), [self.obj(a) for a in cmd.args])
        return [f"transformations: {rep.transformations}", f"full: {str(rep.full).lower()}",
                f"faithful: {str(rep.faithful).lower()}"]

    def cmd_phantom(self, cmd):
        self.arity(cmd, 2)
        ho = self.ho(cmd)
        f, g = ho.project(self.mor(cmd.args[0])), ho.project(self.mor(cmd.args[1]))
        return [str(hocat.phantom_equivalent(ho, f, g, self._probes(cmd))).lower()]

    def cmd_phantom_pair(self, cmd):
        self.arity(cmd, 1)
        ho = self.ho(cmd)
        pp = hocat.weakly_initial_phantom_pair(ho, self.obj(cmd.args[0]), self._probes(cmd))
        out = [f"object: sizes {list(pp.obj.sizes)}"]
        cert = hocat.check_phantom_pair(ho, pp, self._tests(cmd))
        out += [f"phantom equivalent: {str(cert.phantom).lower()}",
                f"targets: {cert.targets}, phantom pairs: {cert.pairs}, unfactored: {len(cert.failures)}"]
        return out

    def cmd_support(self, cmd):
        self.arity(cmd, 1)
        f = self.mor(cmd.args[0])
        summands = [self.obj(a) for a in self.param(cmd, "summands", [])]
        total, inj = coproduct(summands, f.source.cat)
        if total != f.target:
            raise CommandError("target is not the coproduct of the listed summands")
        j, _, _ = hocat.subcoproduct_support(f, inj)
        return [f"J = {j}", "representative-level minimality"]

    # chain -------------------------------------------------------------------
    def cmd_homology(self, cmd):
        self.arity(cmd, 1)
        return [_fmt_h(chain.homology_ranks(self.obj(cmd.args[0])))]

    def cmd_quasi_iso(self, cmd):
        self.arity(cmd, 1)
        return [str(chain.is_quasi_iso(self.mor(cmd.args[0]))).lower()]

    def cmd_truncate(self, cmd):
        self.arity(cmd, 2)
        t = chain.truncate(self.obj(cmd.args[0]), int(cmd.args[1]))
        return [f"dims {_dims(t.complex)}", f"literal formula is a complex: {str(t.literal_ok).lower()}"]

    def cmd_verify_truncation_colimit(self, cmd):
        self.arity(cmd, 2)
        return [chain.verify_truncation_colimit(self.obj(cmd.args[0]), int(cmd.args[1])).line()]


def span_diagram(f: Morphism, g: Morphism) -> Diagram:
    sh = fincat.span_shape()
    maps = {"id_a": fincat.identity(f.source), "id_b": fincat.identity(f.target),
            "id_c": fincat.identity(g.target), "f": f, "g": g}
    return Diagram(sh, (f.source, f.target, g.target), tuple(maps[nm] for nm, _, _ in sh.morphisms))


def _comps(f: Morphism) -> str:
    return json.dumps([list(r) for r in f.comps], separators=(",", ":"))


def _dims(c: chain.ChainComplex) -> str:
    return "{" + ", ".join(f"{n}: {c.dim(n)}" for n in c.degrees()) + "}"


def _fmt_h(h: dict) -> str:
    return "{" + ", ".join(f"H{n}={v}" for n, v in sorted(h.items())) + "}"


def _trace_lines(tr: model.FactorizationTrace) -> list[str]:
    out = [f"terminated: {str(tr.terminated).lower()}", f"steps: {tr.steps_used}"]
    out += [f"stage {i}: sizes {list(s.obj.sizes)}, attached {s.attached}" for i, s in enumerate(tr.stages)]
    return out


def _audit_lines(tr: model.FactorizationTrace, m: model.ModelInstance) -> list[str]:
    if not tr.terminated:
        return []
    comp = fincat.compose(tr.beta, tr.alpha) == tr.input
    mono = fincat.is_mono(tr.alpha)
    rlp = fincat.has_rlp(tr.beta, m.gens(tr.kind), m.budget)
    return [f"audit beta.alpha = f: {str(comp).lower()}", f"audit alpha mono: {str(mono).lower()}",
            f"audit beta has rlp: {str(rlp).lower()}"]


# --------------------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="finmodel", description="Run a finite model-category workspace.")
    ap.add_argument("workspace", nargs="?", default="-", help="JSON workspace file, - for stdin")
    ap.add_argument("--cap", type=int)
    ap.add_argument("--budget", type=int, default=int(os.environ["FINMODEL_BUDGET"])
                    if os.environ.get("FINMODEL_BUDGET") else None)
    ap.add_argument("--mode", choices=["naive", "marked"])
    ap.add_argument("--A", dest="A", help="comma-separated probe objects")
    ap.add_argument("--serialize", action="store_true", help="print the normalized document and stop")
    args = ap.parse_args(argv)
    text = sys.stdin.read() if args.workspace == "-" else open(args.workspace, encoding="utf-8").read()
    try:
        doc = parse(text)
    except WorkspaceError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 2
    if args.serialize:
        sys.stdout.write(serialize(doc))
        return 0
    defaults = {k: v for k, v in (("cap", args.cap), ("budget", args.budget), ("mode", args.mode)) if v is not None}
    if args.A:
        missing = [a for a in args.A.split(",") if a not in doc.objects]
        if missing:
            print(f"UnresolvedName: --A: unknown objects {missing}", file=sys.stderr)
            return 2
        defaults["A"] = args.A.split(",")
    lines, ok = Runner(doc, defaults).run()
    print(f"instance {doc.instance}")
    print("\n".join(lines))
    return 0 if ok else 1
