"""Models of sketches, their weak transformations and modifications.

Witness orientation: for a transformation ``phi: M => N`` and a generator
``s: S -> S'``, an l-witness (also used for s and p, where p-witnesses
are invertible) is a 2-cell ``N(s) phi_S => phi_S' M(s)``; a c-witness
points the other way.  A missing witness stands for an identity and is
only legal where the square commutes on the nose.
"""
import itertools
import json

from . import fincat as fc
from .enhanced import Weakness, weakness_pair
from .errors import (BoundaryMismatch, InvalidData, NonComposableCells,
                     ShapeMismatch, TargetLacksPowers, UnknownGenerator)
from .report import VerificationReport
from .targets import ChordFinCat, Target
from .weights import schema

S, P, L, C = Weakness.S, Weakness.P, Weakness.L, Weakness.C


class Model:
    __slots__ = ("sketch", "target", "objects", "morphisms", "cells")

    def __init__(self, sketch, target, objects, morphisms, cells=None):
        self.sketch = sketch
        self.target = target
        self.objects = dict(objects)
        self.morphisms = dict(morphisms)
        self.cells = dict(cells or {})

    def obj(self, name):
        try:
            return self.objects[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def one(self, name):
        try:
            return self.morphisms[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def two(self, name):
        try:
            return self.cells[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def __eq__(self, other):
        return self is other or (isinstance(other, Model)
                                 and self.sketch.presentation == other.sketch.presentation
                                 and self.objects == other.objects
                                 and self.morphisms == other.morphisms
                                 and self.cells == other.cells)

    def __hash__(self):
        return hash((self.sketch.name, tuple(self.objects)))

    def __repr__(self):
        return f"Model({self.sketch.name})"

    def to_json(self):
        T = self.target
        p = self.sketch.presentation
        return {
            "sketch": p.name,
            "objects": {o: T.obj_to_json(self.objects[o]) for o in p.objects},
            "morphisms": {g.name: T.one_to_json(self.morphisms[g.name]) for g in p.gen1},
            "cells": {g.name: T.two_to_json(self.cells[g.name]) for g in p.gen2},
        }

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, sketch, target, data):
        p = sketch.presentation
        try:
            objects = {o: target.obj_from_json(data["objects"][o]) for o in p.objects}
            morphisms = {g.name: target.one_from_json(data["morphisms"][g.name],
                                                      objects[g.src], objects[g.tgt])
                         for g in p.gen1}
            partial = cls(sketch, target, objects, morphisms)
            cells = {}
            for g in p.gen2:
                cells[g.name] = target.two_from_json(data["cells"][g.name],
                                                     eval_path(partial, g.source),
                                                     eval_path(partial, g.target))
        except (KeyError, TypeError) as exc:
            raise InvalidData(f"malformed model document: missing {exc}") from None
        return cls(sketch, target, objects, morphisms, cells)


def eval_path(m, path):
    T = m.target
    if not path.gens:
        return T.id1(m.obj(path.src))
    result = m.one(path.gens[0])
    for g in path.gens[1:]:
        result = T.comp1(m.one(g), result)
    return result


def eval_cell(m, ref):
    T = m.target
    if ref.op == "id":
        return T.id2(eval_path(m, ref.path))
    cell = m.two(ref.name)
    if ref.op == "inv":
        inv = T.inverse2(cell)
        if inv is None:
            raise NonComposableCells(f"2-cell {ref.name!r} is not invertible in the model")
        return inv
    return cell


def eval_expr(m, expr):
    T = m.target
    result = None
    for atom in expr.atoms:
        left = eval_path(m, atom.left) if atom.left.gens else None
        right = eval_path(m, atom.right) if atom.right.gens else None
        piece = T.whisker(left, eval_cell(m, atom.cell), right)
        result = piece if result is None else T.vcomp(piece, result)
    if result is None:
        raise NonComposableCells("empty pasting expression")
    return result


_EVAL_ERRORS = (BoundaryMismatch, NonComposableCells, InvalidData, UnknownGenerator)


def check_model(m, budget=None):
    """Typing, tightness, equations and cones, in that order."""
    T = m.target
    p = m.sketch.presentation
    try:
        for o in p.objects:
            if o not in m.objects:
                return VerificationReport.reject(f"object {o!r} is unassigned", {"at": o})
            sub = T.check_object(m.objects[o], budget)
            if sub is not None and not sub:
                return VerificationReport.reject(
                    f"value at {o!r} is invalid: {sub.first_failure}", {"at": o})
        for g in p.gen1:
            if g.name not in m.morphisms:
                return VerificationReport.reject(f"1-cell {g.name!r} is unassigned", {"at": g.name})
            f = m.morphisms[g.name]
            if not (T.same_obj(T.src1(f), m.obj(g.src)) and T.same_obj(T.tgt1(f), m.obj(g.tgt))):
                return VerificationReport.reject(f"1-cell {g.name!r} has the wrong boundary",
                                                 {"at": g.name})
            sub = T.check_one(f, budget)
            if sub is not None and not sub:
                return VerificationReport.reject(
                    f"value at {g.name!r} is invalid: {sub.first_failure}", {"at": g.name})
        for g in p.gen2:
            if g.name not in m.cells:
                return VerificationReport.reject(f"2-cell {g.name!r} is unassigned", {"at": g.name})
            a = m.cells[g.name]
            if not (T.eq1(T.src2(a), eval_path(m, g.source))
                    and T.eq1(T.tgt2(a), eval_path(m, g.target))):
                return VerificationReport.reject(f"2-cell {g.name!r} has the wrong boundary",
                                                 {"at": g.name})
            if g.invertible and T.inverse2(a) is None:
                return VerificationReport.reject(f"2-cell {g.name!r} must be invertible",
                                                 {"at": g.name})
            sub = T.check_two(a, budget)
            if sub is not None and not sub:
                return VerificationReport.reject(
                    f"value at {g.name!r} is invalid: {sub.first_failure}", {"at": g.name})
        for g in p.gen1:
            if g.tight and not T.is_tight(m.morphisms[g.name]):
                return VerificationReport.reject(f"tight 1-cell {g.name!r} is sent to a loose one",
                                                 {"at": g.name})
        for k, e in enumerate(p.eqs1):
            if not T.eq1(eval_path(m, e.lhs), eval_path(m, e.rhs)):
                return VerificationReport.reject(
                    f"1-cell equation {e.lhs} == {e.rhs} fails", {"equation": k})
        for k, e in enumerate(p.eqs2):
            try:
                ok = T.eq2(eval_expr(m, e.lhs), eval_expr(m, e.rhs))
            except (BoundaryMismatch, NonComposableCells) as exc:
                return VerificationReport.reject(f"2-cell equation {k} does not evaluate: {exc}",
                                                 {"equation": k})
            if not ok:
                return VerificationReport.reject(f"2-cell equation {k} fails", {"equation": k})
        for cone in m.sketch.cones:
            apex = m.obj(cone.apex)
            projs = [eval_path(m, q) for _, q in cone.proj]
            over = [eval_path(m, q) for _, q in cone.over]
            cell = m.two(cone.cell) if cone.cell is not None else None
            report = T.verify_cone(cone.kind, apex, projs, cell, over)
            if not report:
                return VerificationReport.reject(
                    f"cone at {cone.apex!r} is not a limit: {report.first_failure}",
                    {"cone": cone.apex})
    except _EVAL_ERRORS as exc:
        return VerificationReport.reject(str(exc))
    return VerificationReport.accept({"sketch": p.name})


# -- transformations -----------------------------------------------------------

class WTransform:
    __slots__ = ("source", "target", "wp", "w", "components", "witnesses")

    def __init__(self, source, target, wp, w, components, witnesses=None):
        self.source = source
        self.target = target
        self.wp, self.w = weakness_pair(wp, w)
        self.components = dict(components)
        self.witnesses = dict(witnesses or {})

    @property
    def lax(self):
        return self.w != C

    def boundary(self, gen):
        """Expected source and target 1-cells of the witness at ``gen``."""
        M, N = self.source, self.target
        T = M.target
        g = M.sketch.presentation.g1(gen)
        a = T.comp1(N.one(gen), self.components[g.src])
        b = T.comp1(self.components[g.tgt], M.one(gen))
        return (a, b) if self.lax else (b, a)

    def witness(self, gen):
        if gen in self.witnesses:
            return self.witnesses[gen]
        return self.source.target.id2(self.boundary(gen)[0])

    def __eq__(self, other):
        return self is other or (isinstance(other, WTransform)
                                 and (self.wp, self.w) == (other.wp, other.w)
                                 and self.components == other.components
                                 and self.witnesses == other.witnesses
                                 and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.wp, self.w, tuple(self.components)))

    def __repr__(self):
        return f"WTransform({self.wp},{self.w})"

    def to_json(self):
        T = self.source.target
        p = self.source.sketch.presentation
        return {"components": {o: T.one_to_json(self.components[o]) for o in p.objects},
                "witnesses": {g.name: T.two_to_json(self.witnesses[g.name])
                              for g in p.gen1 if g.name in self.witnesses}}

    @classmethod
    def from_json(cls, data, source, target, wp, w):
        T = source.target
        p = source.sketch.presentation
        try:
            comps = {o: T.one_from_json(data["components"][o], source.obj(o), target.obj(o))
                     for o in p.objects}
            t = cls(source, target, wp, w, comps)
            wit = {}
            for gen, value in data.get("witnesses", {}).items():
                a, b = t.boundary(gen)
                wit[gen] = T.two_from_json(value, a, b)
        except (KeyError, TypeError) as exc:
            raise InvalidData(f"malformed transformation document: missing {exc}") from None
        return cls(source, target, wp, w, comps, wit)


def path_witness(t, path):
    """Composite witness of ``t`` along a path, in the transformation's direction."""
    M, N = t.source, t.target
    T = M.target
    if not path.gens:
        return T.id2(t.components[path.src])
    result = t.witness(path.gens[0])
    prefix = path.gens[:1]
    for gen in path.gens[1:]:
        mp = _eval_gens(M, prefix)
        here = t.witness(gen)
        if t.lax:
            result = T.vcomp(T.whisker(None, here, mp), T.whisker(N.one(gen), result, None))
        else:
            result = T.vcomp(T.whisker(N.one(gen), result, None), T.whisker(None, here, mp))
        prefix = prefix + (gen,)
    return result


def _eval_gens(m, gens):
    T = m.target
    result = m.one(gens[0])
    for g in gens[1:]:
        result = T.comp1(m.one(g), result)
    return result


def check_transformation(t, budget=None):
    """Accept iff ``t`` is a loose (w', w)-transformation; ``details['tight']``
    reports whether it is moreover tight."""
    M, N = t.source, t.target
    T = M.target
    p = M.sketch.presentation
    try:
        for o in p.objects:
            if o not in t.components:
                return VerificationReport.reject(f"component at {o!r} is missing", {"at": o})
            f = t.components[o]
            if not (T.same_obj(T.src1(f), M.obj(o)) and T.same_obj(T.tgt1(f), N.obj(o))):
                return VerificationReport.reject(f"component at {o!r} has the wrong boundary",
                                                 {"at": o})
        for g in p.gen1:
            a, b = t.boundary(g.name)
            if g.name in t.witnesses:
                x = t.witnesses[g.name]
                if not (T.eq1(T.src2(x), a) and T.eq1(T.tgt2(x), b)):
                    return VerificationReport.reject(f"witness at {g.name!r} has the wrong boundary",
                                                     {"at": g.name})
            elif not T.eq1(a, b):
                return VerificationReport.reject(
                    f"square at {g.name!r} does not commute and has no witness", {"at": g.name})
            x = t.witness(g.name)
            if not T.cell_is_weak(x, t.w):
                return VerificationReport.reject(f"witness at {g.name!r} is not a {t.w}-cell",
                                                 {"at": g.name})
            if g.tight and not T.cell_is_weak(x, t.wp):
                return VerificationReport.reject(
                    f"witness at tight {g.name!r} is not a {t.wp}-cell", {"at": g.name})
        for th in p.gen2:
            src, tgt = th.source.src, th.source.tgt
            Mth, Nth = M.two(th.name), N.two(th.name)
            wu, wv = path_witness(t, th.source), path_witness(t, th.target)
            phi_s, phi_t = t.components[src], t.components[tgt]
            if t.lax:
                lhs = T.vcomp(T.whisker(phi_t, Mth, None), wu)
                rhs = T.vcomp(wv, T.whisker(None, Nth, phi_s))
            else:
                lhs = T.vcomp(T.whisker(None, Nth, phi_s), wu)
                rhs = T.vcomp(wv, T.whisker(phi_t, Mth, None))
            if not T.eq2(lhs, rhs):
                return VerificationReport.reject(f"witnesses are not natural in {th.name!r}",
                                                 {"at": th.name})
        for k, e in enumerate(p.eqs1):
            if not T.eq2(path_witness(t, e.lhs), path_witness(t, e.rhs)):
                return VerificationReport.reject(
                    f"witnesses disagree along {e.lhs} == {e.rhs}", {"equation": k})
    except _EVAL_ERRORS as exc:
        return VerificationReport.reject(str(exc))
    tight = all(T.is_tight(t.components[o]) for o in p.objects) and \
        all(T.cell_is_weak(t.witness(g.name), t.wp) for g in p.gen1)
    return VerificationReport.accept({"tight": tight, "weakness": [str(t.wp), str(t.w)]})


def transport(t, wp, w):
    """Re-read ``t`` at a weaker pair, inverting stored witnesses when the
    direction flips; None when a witness cannot be inverted."""
    wp, w = weakness_pair(wp, w)
    T = t.source.target
    wit = dict(t.witnesses)
    if t.lax != (w != C):
        wit = {}
        for gen, x in t.witnesses.items():
            y = T.inverse2(x)
            if y is None:
                return None
            wit[gen] = y
    return WTransform(t.source, t.target, wp, w, t.components, wit)


def identity_transformation(M, wp=S, w=S):
    T = M.target
    return WTransform(M, M, wp, w, {o: T.id1(M.obj(o)) for o in M.sketch.presentation.objects})


def compose_transformations(psi, phi):
    """``psi . phi``: first ``phi``, then ``psi``."""
    if (phi.wp, phi.w) != (psi.wp, psi.w):
        raise BoundaryMismatch("transformations of different weakness do not compose")
    if phi.target != psi.source:
        raise BoundaryMismatch("transformations do not compose")
    M = phi.source
    T = M.target
    p = M.sketch.presentation
    comps = {o: T.comp1(psi.components[o], phi.components[o]) for o in p.objects}
    wit = {}
    for g in p.gen1:
        if g.name not in phi.witnesses and g.name not in psi.witnesses:
            continue
        a = T.whisker(psi.components[g.tgt], phi.witness(g.name), None)
        b = T.whisker(None, psi.witness(g.name), phi.components[g.src])
        wit[g.name] = T.vcomp(a, b) if phi.lax else T.vcomp(b, a)
    return WTransform(M, psi.target, phi.wp, phi.w, comps, wit)


def same_transformation(phi, psi):
    """Equality up to explicit identity witnesses."""
    if phi.source != psi.source or phi.target != psi.target:
        return False
    T = phi.source.target
    p = phi.source.sketch.presentation
    if not all(T.eq1(phi.components[o], psi.components[o]) for o in p.objects):
        return False
    for g in p.gen1:
        if g.name in phi.witnesses or g.name in psi.witnesses:
            if not T.eq2(phi.witness(g.name), psi.witness(g.name)):
                return False
    return True


# -- modifications --------------------------------------------------------------

class Modification:
    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = dict(components)

    def __eq__(self, other):
        return self is other or (isinstance(other, Modification)
                                 and self.components == other.components
                                 and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(tuple(self.components))

    def __repr__(self):
        return "Modification()"

    def to_json(self):
        T = self.source.source.target
        p = self.source.source.sketch.presentation
        return {"components": {o: T.two_to_json(self.components[o]) for o in p.objects}}

    @classmethod
    def from_json(cls, data, source, target):
        T = source.source.target
        p = source.source.sketch.presentation
        try:
            comps = {o: T.two_from_json(data["components"][o], source.components[o],
                                        target.components[o]) for o in p.objects}
        except (KeyError, TypeError) as exc:
            raise InvalidData(f"malformed modification document: missing {exc}") from None
        return cls(source, target, comps)


def check_modification(mu):
    phi, psi = mu.source, mu.target
    M, N = phi.source, phi.target
    T = M.target
    p = M.sketch.presentation
    try:
        if not (phi.source == psi.source and phi.target == psi.target):
            return VerificationReport.reject("modification between non-parallel transformations")
        for o in p.objects:
            if o not in mu.components:
                return VerificationReport.reject(f"component at {o!r} is missing", {"at": o})
            x = mu.components[o]
            if not (T.eq1(T.src2(x), phi.components[o]) and T.eq1(T.tgt2(x), psi.components[o])):
                return VerificationReport.reject(f"component at {o!r} has the wrong boundary",
                                                 {"at": o})
        for g in p.gen1:
            ga, gb = mu.components[g.src], mu.components[g.tgt]
            if phi.lax:
                lhs = T.vcomp(psi.witness(g.name), T.whisker(N.one(g.name), ga, None))
                rhs = T.vcomp(T.whisker(None, gb, M.one(g.name)), phi.witness(g.name))
            else:
                lhs = T.vcomp(T.whisker(N.one(g.name), ga, None), phi.witness(g.name))
                rhs = T.vcomp(psi.witness(g.name), T.whisker(None, gb, M.one(g.name)))
            if not T.eq2(lhs, rhs):
                return VerificationReport.reject(f"modification law fails at {g.name!r}",
                                                 {"at": g.name})
    except _EVAL_ERRORS as exc:
        return VerificationReport.reject(str(exc))
    invertible = all(T.inverse2(mu.components[o]) is not None for o in p.objects)
    return VerificationReport.accept({"invertible": invertible})


def identity_modification(phi):
    T = phi.source.target
    return Modification(phi, phi, {o: T.id2(f) for o, f in phi.components.items()})


def invert_modification(mu):
    T = mu.source.source.target
    comps = {}
    for o, x in mu.components.items():
        y = T.inverse2(x)
        if y is None:
            return None
        comps[o] = y
    return Modification(mu.target, mu.source, comps)


# -- enumeration -------------------------------------------------------------------

def enumerate_transformations(M, N, wp, w, budget=None):
    """Every accepted (w', w)-transformation M => N, in canonical order."""
    wp, w = weakness_pair(wp, w)
    T = M.target
    p = M.sketch.presentation
    spend = fc._Budget(budget, "transformation search").spend
    limit = fc.DEFAULT_BUDGET if budget is None else budget
    comp_lists = []
    for o in p.objects:
        cands = T.homs(M.obj(o), N.obj(o), limit)
        spend(len(cands))
        comp_lists.append(cands)
    results = []
    for combo in itertools.product(*comp_lists):
        spend()
        comps = dict(zip(p.objects, combo))
        probe = WTransform(M, N, wp, w, comps)
        wit_lists = []
        for g in p.gen1:
            eff = wp if g.tight else w
            a, b = probe.boundary(g.name)
            if eff == S:
                options = [None] if T.eq1(a, b) else []
            else:
                options = [x for x in T.cells(a, b, limit) if T.cell_is_weak(x, eff)]
                spend(len(options))
            if not options:
                break
            wit_lists.append(options)
        else:
            for wits in itertools.product(*wit_lists):
                spend()
                wit = {g.name: x for g, x in zip(p.gen1, wits) if x is not None}
                t = WTransform(M, N, wp, w, comps, wit)
                if check_transformation(t):
                    results.append(t)
    return results


def enumerate_modifications(phi, psi, budget=None):
    T = phi.source.target
    p = phi.source.sketch.presentation
    lists = [T.cells(phi.components[o], psi.components[o], budget) for o in p.objects]
    out = []
    for combo in itertools.product(*lists):
        mu = Modification(phi, psi, dict(zip(p.objects, combo)))
        if check_modification(mu):
            out.append(mu)
    return out


# -- the target of models ------------------------------------------------------------

class ModTarget(Target):
    """Models of a sketch in an inner target, with (w', w)-transformations and
    modifications.  Limits are verified pointwise."""

    name = "models"
    max_depth = 2

    def __init__(self, sketch, inner, wp=S, w=S):
        self.sketch = sketch
        self.inner = inner
        self.wp, self.w = weakness_pair(wp, w)
        depth, t = 1, inner
        while isinstance(t, ModTarget):
            depth += 1
            t = t.inner
        if depth > self.max_depth:
            raise InvalidData(f"models nested {depth} deep exceed the supported depth")

    def same_obj(self, a, b):
        return a == b

    def check_object(self, m, budget=None):
        if m.sketch.presentation != self.sketch.presentation:
            return VerificationReport.reject("model of a different sketch")
        return check_model(m, budget)

    def check_one(self, f, budget=None):
        if (f.wp, f.w) != (self.wp, self.w):
            return VerificationReport.reject(f"transformation has weakness ({f.wp},{f.w})")
        return check_transformation(f, budget)

    def check_two(self, a, budget=None):
        return check_modification(a)

    def id1(self, m):
        return identity_transformation(m, self.wp, self.w)

    def comp1(self, g, f):
        return compose_transformations(g, f)

    def src1(self, f):
        return f.source

    def tgt1(self, f):
        return f.target

    def eq1(self, f, g):
        return same_transformation(f, g)

    def id2(self, f):
        return identity_modification(f)

    def vcomp(self, b, a):
        if not same_transformation(a.target, b.source):
            raise NonComposableCells("modifications are not vertically composable")
        T = self.inner
        return Modification(a.source, b.target,
                            {o: T.vcomp(b.components[o], a.components[o]) for o in a.components})

    def whisker(self, left, a, right):
        T = self.inner
        src, tgt = a.source, a.target
        comps = dict(a.components)
        if right is not None:
            comps = {o: T.whisker(None, x, right.components[o]) for o, x in comps.items()}
            src, tgt = compose_transformations(src, right), compose_transformations(tgt, right)
        if left is not None:
            comps = {o: T.whisker(left.components[o], x, None) for o, x in comps.items()}
            src, tgt = compose_transformations(left, src), compose_transformations(left, tgt)
        return Modification(src, tgt, comps)

    def inverse2(self, a):
        return invert_modification(a)

    def is_id2(self, a):
        return same_transformation(a.source, a.target) and \
            all(self.inner.is_id2(x) for x in a.components.values())

    def src2(self, a):
        return a.source

    def tgt2(self, a):
        return a.target

    def eq2(self, a, b):
        T = self.inner
        return same_transformation(a.source, b.source) and \
            same_transformation(a.target, b.target) and \
            all(T.eq2(a.components[o], b.components[o]) for o in a.components)

    def is_tight(self, f):
        T = self.inner
        return all(T.is_tight(x) for x in f.components.values()) and \
            all(T.cell_is_weak(f.witness(g.name), self.wp)
                for g in f.source.sketch.presentation.gen1)

    def homs(self, A, B, budget=None):
        return enumerate_transformations(A, B, self.wp, self.w, budget)

    def cells(self, f, g, budget=None):
        return enumerate_modifications(f, g, budget)

    def verify_cone(self, kind, apex, projections, cell, over):
        sch = schema(kind)
        for slot, pr in zip(sch.proj_slots, projections):
            if slot in sch.tight_slots and not self.is_tight(pr):
                return VerificationReport.reject(f"projection {slot!r} is not tight")
        if sch.diagram_tight:
            for f in over:
                if not self.is_tight(f):
                    return VerificationReport.reject("diagram morphism is not tight")
        for o in self.sketch.presentation.objects:
            report = self.inner.verify_cone(
                kind, apex.obj(o), [pr.components[o] for pr in projections],
                cell.components[o] if cell is not None else None,
                [f.components[o] for f in over])
            if not report:
                return VerificationReport.reject(f"not a limit at {o!r}: {report.first_failure}")
        return VerificationReport.accept({"kind": str(kind), "pointwise": True})

    def obj_to_json(self, m):
        return m.to_json()

    def obj_from_json(self, data):
        return Model.from_json(self.sketch, self.inner, data)

    def one_to_json(self, f):
        return f.to_json()

    def one_from_json(self, data, A, B):
        return WTransform.from_json(data, A, B, self.wp, self.w)

    def two_to_json(self, a):
        return a.to_json()

    def two_from_json(self, data, f, g):
        return Modification.from_json(data, f, g)


# -- pointwise limits -------------------------------------------------------------

class ConeData:
    __slots__ = ("projections", "cell")

    def __init__(self, projections, cell=None):
        self.projections = list(projections)
        self.cell = cell


def pointwise_limit(kind, diagram, w=S):
    """Limit of a diagram of models computed object by object in the engine.

    ``diagram`` follows the engine shapes with models in place of
    categories and tight transformations in place of functors.
    """
    diagram = list(diagram)
    fam = kind.family
    if fam in ("product", "power2"):
        models = diagram
        if fam == "product" and len(models) != kind.arity:
            raise ShapeMismatch(f"{kind} needs {kind.arity} models")
        if not models:
            raise ShapeMismatch("an empty product needs a sketch; use terminal_model")
        sketch, T = models[0].sketch, models[0].target
    else:
        if not all(isinstance(f, WTransform) for f in diagram):
            raise ShapeMismatch(f"{kind} needs transformations")
        sketch, T = diagram[0].source.sketch, diagram[0].source.target
        w = diagram[0].w
        for f in diagram:
            if not all(T.is_id2(f.witness(g.name)) for g in sketch.presentation.gen1):
                raise ShapeMismatch("diagram morphisms must be tight in the strict sense")
    if not isinstance(T, ChordFinCat):
        raise TargetLacksPowers("pointwise limits need the engine target")
    p = sketch.presentation

    def at(o):
        if fam == "product":
            return [m.obj(o) for m in diagram]
        if fam == "power2":
            return [diagram[0].obj(o)]
        return [f.components[o] for f in diagram]

    def legs_models():
        if fam == "product":
            return diagram
        if fam == "power2":
            return [diagram[0], diagram[0]]
        if fam in ("pullback", "comma"):
            return [diagram[0].source, diagram[1].source]
        f = diagram[0]
        return [f.source, f.target]

    canon = {o: fc.canonical_limit(kind, at(o)) for o in p.objects}
    legs = legs_models()
    objects = {o: canon[o].apex for o in p.objects}

    def induced(g):
        src = canon[g.src]
        projs = [fc.compose_functors(leg.one(g.name), pr) for leg, pr in zip(legs, src.projections)]
        cell = None
        if kind.has_cell:
            base = _cell_base(kind, diagram, g.name)
            cell = fc.whisker(base, src.cell, None)
        cand = fc.ConeWitness(kind, src.apex, projs, cell)
        return fc.mediate(cand, at(g.tgt), canon[g.tgt])

    morphisms = {g.name: induced(g) for g in p.gen1}
    partial = Model(sketch, T, objects, morphisms)
    cells = {}
    for th in p.gen2:
        Fu, Fv = eval_path(partial, th.source), eval_path(partial, th.target)
        src = canon[th.source.src]
        comps = []
        for leg, pr in zip(legs, src.projections):
            comps.append([leg.two(th.name).components[x] for x in pr.ob])
        if kind.has_cell:
            comps = list(fc.comma_order(kind, comps))
        cells[th.name] = fc.lift_cell(canon[th.source.tgt], Fu, Fv, comps)
    limit = Model(sketch, T, objects, morphisms, cells)
    projections = []
    for k, leg in enumerate(legs):
        projections.append(WTransform(limit, leg, S, w,
                                      {o: canon[o].projections[k] for o in p.objects}))
    cell = None
    if kind.has_cell:
        first, second = fc.comma_order(kind, projections)
        f, g = _comma_transformations(kind, diagram, limit, w)
        src = compose_transformations(f, first) if f is not None else first
        tgt = compose_transformations(g, second) if g is not None else second
        cell = Modification(src, tgt, {o: canon[o].cell for o in p.objects})
    return limit, ConeData(projections, cell)


def _cell_base(kind, diagram, gen):
    """The functor through which a comma-type cell is transported along ``gen``."""
    fam = kind.family
    if fam == "power2":
        return diagram[0].one(gen)
    if fam == "comma":
        return diagram[0].target.one(gen)
    return diagram[0].target.one(gen)


def _comma_transformations(kind, diagram, limit, w):
    fam = kind.family
    if fam == "power2":
        return None, None
    if fam == "comma":
        return diagram[0], diagram[1]
    if fam == "lax":
        return diagram[0], None
    return None, diagram[0]


def terminal_model(sketch, target=None):
    """The model with every value the terminal category."""
    T = target or ChordFinCat()
    one = fc.terminal()
    p = sketch.presentation
    ident = fc.identity_functor(one)
    objects = {o: one for o in p.objects}
    morphisms = {g.name: ident for g in p.gen1}
    cells = {g.name: fc.identity_trans(ident) for g in p.gen2}
    return Model(sketch, T, objects, morphisms, cells)
