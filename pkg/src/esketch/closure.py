"""Tensor products of sketches, binary multimodels and their transposes.

A multimodel of ``(A, B)`` stores one interchange cell per pair of
generators ``s`` of A and ``t`` of B.  The cell is kept in the orientation
of the w-witness of the transformation ``M(s, -)`` at ``t``, which is the
same cell as the dual-weakness witness of ``M(-, t)`` at ``s``; for
w in {s, p, l} that is ``M(S', t) M(s, T) => M(s, T') M(S, t)``.
"""
from dataclasses import dataclass

from .enhanced import (Atom, CellRef, Eq1, Eq2, FCatPresentation, Gen1, Gen2,
                       PastingExpr, Path, Weakness, weakness_pair)
from .errors import BoundaryMismatch, InvalidData
from .models import (ModTarget, Model, Modification, WTransform, check_model,
                     check_modification, check_transformation, compose_transformations,
                     eval_path, identity_transformation, transport)
from .report import VerificationReport
from .sketches import ConeInstance, FSketch

S, P, L, C = Weakness.S, Weakness.P, Weakness.L, Weakness.C


# -- tensor products ----------------------------------------------------------

def pair_name(x, y):
    return f"{x}⊗{y}"


@dataclass(frozen=True)
class TensorSketch(FSketch):
    """A tensor of two sketches; ``provenance`` maps generated names to
    ``("first", gen, T)``, ``("second", S, gen)`` or ``("interchange", s, t)``."""

    factors: tuple = ()
    weakness: tuple = ()
    provenance: tuple = ()

    def origin(self, name):
        return dict(self.provenance).get(name)

    def interchange_cell(self, s, t):
        """Name of the generating cell for the pair, or None when the pair
        is imposed as an equation."""
        name = pair_name(s, t)
        return name if self.presentation.has_g2(name) else None


class _Tensor:
    def __init__(self, a, b, wp, w):
        self.a, self.b = a.presentation, b.presentation
        self.wp, self.w = wp, w
        self.colax = w == C

    def obj(self, x, y):
        return pair_name(x, y)

    def first(self, path, T):
        return Path(self.obj(path.src, T), self.obj(path.tgt, T),
                    tuple(pair_name(g, T) for g in path.gens))

    def second(self, X, path):
        return Path(self.obj(X, path.src), self.obj(X, path.tgt),
                    tuple(pair_name(X, g) for g in path.gens))

    def ident(self, x, y):
        return Path.identity(self.obj(x, y))

    def mode(self, s, t):
        """Effective weakness of the interchange at a generator pair."""
        tight = self.a.g1(s).tight or self.b.g1(t).tight
        return self.wp if tight else self.w

    def square(self, s, t):
        """Lax-oriented source and target of the interchange at ``(s, t)``."""
        gs, gt = self.a.g1(s), self.b.g1(t)
        src = Path(self.obj(gs.src, gt.src), self.obj(gs.tgt, gt.tgt),
                   (pair_name(s, gt.src), pair_name(gs.tgt, t)))
        tgt = Path(src.src, src.tgt, (pair_name(gs.src, t), pair_name(s, gt.tgt)))
        return src, tgt

    def cell(self, s, t):
        if self.mode(s, t) == S:
            return CellRef.ident(self.square(s, t)[0])
        return CellRef.gen(pair_name(s, t))

    def along_first(self, u, t):
        """Interchange pasted along a path ``u`` of the first factor."""
        gt = self.b.g1(t)
        T, T2 = gt.src, gt.tgt
        if not u.gens:
            return [Atom(self.ident(u.src, T2), CellRef.ident(self.second(u.src, self.b.path(t))),
                         self.ident(u.src, T))]
        objs = [u.src] + [self.a.g1(g).tgt for g in u.gens]
        atoms = []
        for i, s in enumerate(u.gens):
            left = self.first(Path(objs[i + 1], objs[-1], u.gens[i + 1:]), T2)
            right = self.first(Path(objs[0], objs[i], u.gens[:i]), T)
            atoms.append(Atom(left, self.cell(s, t), right))
        return atoms if self.colax else atoms[::-1]

    def along_second(self, s, v):
        gs = self.a.g1(s)
        X, X2 = gs.src, gs.tgt
        if not v.gens:
            return [Atom(self.ident(X2, v.src), CellRef.ident(self.first(self.a.path(s), v.src)),
                         self.ident(X, v.src))]
        objs = [v.src] + [self.b.g1(g).tgt for g in v.gens]
        atoms = []
        for j, t in enumerate(v.gens):
            left = self.second(X2, Path(objs[j + 1], objs[-1], v.gens[j + 1:]))
            right = self.second(X, Path(objs[0], objs[j], v.gens[:j]))
            atoms.append(Atom(left, self.cell(s, t), right))
        return atoms[::-1] if self.colax else atoms

    def map_expr(self, expr, side, at):
        def path(q):
            return self.first(q, at) if side == "first" else self.second(at, q)

        def name(n):
            return pair_name(n, at) if side == "first" else pair_name(at, n)

        atoms = []
        for atom in expr.atoms:
            ref = atom.cell
            if ref.op == "id":
                ref = CellRef.ident(path(ref.path))
            else:
                ref = CellRef(ref.op, name(ref.name))
            atoms.append(Atom(path(atom.left), ref, path(atom.right)))
        return PastingExpr(atoms)


def _trivial(atoms):
    return all(a.cell.op == "id" for a in atoms)


def tensor_sketches(a, b, wp=S, w=S):
    """The tensor sketch: objects are pairs, generators act in one argument,
    and each pair of generators meets in an interchange cell (or an
    equation where the pair's weakness is s)."""
    wp, w = weakness_pair(wp, w)
    pa, pb = a.presentation, b.presentation
    t = _Tensor(a, b, wp, w)
    objects = [t.obj(X, Y) for X in pa.objects for Y in pb.objects]
    gen1, gen2, eqs1, eqs2, prov = [], [], [], [], []
    for Y in pb.objects:
        for g in pa.gen1:
            gen1.append(Gen1(pair_name(g.name, Y), t.obj(g.src, Y), t.obj(g.tgt, Y), g.tight))
            prov.append((pair_name(g.name, Y), ("first", g.name, Y)))
    for X in pa.objects:
        for g in pb.gen1:
            gen1.append(Gen1(pair_name(X, g.name), t.obj(X, g.src), t.obj(X, g.tgt), g.tight))
            prov.append((pair_name(X, g.name), ("second", X, g.name)))
    for Y in pb.objects:
        for g in pa.gen2:
            gen2.append(Gen2(pair_name(g.name, Y), t.first(g.source, Y), t.first(g.target, Y),
                             g.direction, g.invertible))
            prov.append((pair_name(g.name, Y), ("first", g.name, Y)))
    for X in pa.objects:
        for g in pb.gen2:
            gen2.append(Gen2(pair_name(X, g.name), t.second(X, g.source), t.second(X, g.target),
                             g.direction, g.invertible))
            prov.append((pair_name(X, g.name), ("second", X, g.name)))
    for gs in pa.gen1:
        for gt in pb.gen1:
            src, tgt = t.square(gs.name, gt.name)
            mode = t.mode(gs.name, gt.name)
            if mode == S:
                eqs1.append(Eq1(src, tgt))
                continue
            if t.colax:
                src, tgt = tgt, src
            gen2.append(Gen2(pair_name(gs.name, gt.name), src, tgt,
                             C if t.colax else L, mode == P))
            prov.append((pair_name(gs.name, gt.name), ("interchange", gs.name, gt.name)))
    for Y in pb.objects:
        for e in pa.eqs1:
            eqs1.append(Eq1(t.first(e.lhs, Y), t.first(e.rhs, Y)))
    for X in pa.objects:
        for e in pb.eqs1:
            eqs1.append(Eq1(t.second(X, e.lhs), t.second(X, e.rhs)))
    for Y in pb.objects:
        for e in pa.eqs2:
            eqs2.append(Eq2(t.map_expr(e.lhs, "first", Y), t.map_expr(e.rhs, "first", Y)))
    for X in pa.objects:
        for e in pb.eqs2:
            eqs2.append(Eq2(t.map_expr(e.lhs, "second", X), t.map_expr(e.rhs, "second", X)))

    def add(lhs, rhs):
        if not (_trivial(lhs) and _trivial(rhs)):
            eqs2.append(Eq2(PastingExpr(lhs), PastingExpr(rhs)))

    # interchange respects the equations of each factor
    for e in pa.eqs1:
        for gt in pb.gen1:
            add(t.along_first(e.lhs, gt.name), t.along_first(e.rhs, gt.name))
    for e in pb.eqs1:
        for gs in pa.gen1:
            add(t.along_second(gs.name, e.lhs), t.along_second(gs.name, e.rhs))
    # and is natural in the 2-cells of each factor
    for g in pa.gen2:
        X, X2 = g.source.src, g.source.tgt
        for gt in pb.gen1:
            Y, Y2 = gt.src, gt.tgt
            whisk_after = Atom(t.second(X2, pb.path(gt.name)), CellRef.gen(pair_name(g.name, Y)),
                               t.ident(X, Y))
            whisk_before = Atom(t.ident(X2, Y2), CellRef.gen(pair_name(g.name, Y2)),
                                t.second(X, pb.path(gt.name)))
            u_side, v_side = t.along_first(g.source, gt.name), t.along_first(g.target, gt.name)
            if t.colax:
                add(u_side + [whisk_after], [whisk_before] + v_side)
            else:
                add([whisk_after] + v_side, u_side + [whisk_before])
    for g in pb.gen2:
        Y, Y2 = g.source.src, g.source.tgt
        for gs in pa.gen1:
            X, X2 = gs.src, gs.tgt
            whisk_after = Atom(t.ident(X2, Y2), CellRef.gen(pair_name(X2, g.name)),
                               t.first(pa.path(gs.name), Y))
            whisk_before = Atom(t.first(pa.path(gs.name), Y2), CellRef.gen(pair_name(X, g.name)),
                                t.ident(X, Y))
            u_side, v_side = t.along_second(gs.name, g.source), t.along_second(gs.name, g.target)
            if t.colax:
                add(u_side + [whisk_after], [whisk_before] + v_side)
            else:
                add([whisk_after] + v_side, u_side + [whisk_before])

    cones = []
    for Y in pb.objects:
        for c in a.cones:
            cones.append(ConeInstance(
                c.kind, t.obj(c.apex, Y), tuple((k, t.first(q, Y)) for k, q in c.proj),
                pair_name(c.cell, Y) if c.cell is not None else None,
                tuple((k, t.first(q, Y)) for k, q in c.over)))
    for X in pa.objects:
        for c in b.cones:
            cones.append(ConeInstance(
                c.kind, t.obj(X, c.apex), tuple((k, t.second(X, q)) for k, q in c.proj),
                pair_name(X, c.cell) if c.cell is not None else None,
                tuple((k, t.second(X, q)) for k, q in c.over)))
    names = objects + [g.name for g in gen1] + [g.name for g in gen2]
    if len(set(names)) != len(names):
        raise InvalidData("tensor naming collides; rename objects or generators apart")
    pres = FCatPresentation(pair_name(pa.name, pb.name), objects, gen1, gen2, eqs1, eqs2)
    return TensorSketch(pres, tuple(cones), (a, b), (wp, w), tuple(prov))


# -- multimodels ----------------------------------------------------------------

class MultiModel:
    """A binary multimodel of ``(first, second)`` in a target."""

    def __init__(self, first, second, target, wp, w, grid, first_arrows, second_arrows,
                 first_cells=None, second_cells=None, interchange=None):
        self.first, self.second = first, second
        self.target = target
        self.wp, self.w = weakness_pair(wp, w)
        self.grid = dict(grid)
        self.first_arrows = dict(first_arrows)
        self.second_arrows = dict(second_arrows)
        self.first_cells = dict(first_cells or {})
        self.second_cells = dict(second_cells or {})
        self.interchange = dict(interchange or {})

    def __eq__(self, other):
        return isinstance(other, MultiModel) and self.to_json() == other.to_json() and \
            (self.wp, self.w) == (other.wp, other.w)

    def __hash__(self):
        return hash((self.first.name, self.second.name, self.wp, self.w))

    # slices
    def at_second(self, Y):
        """The first-factor model ``M(-, Y)``."""
        pa = self.first.presentation
        return Model(self.first, self.target,
                     {X: self.grid[(X, Y)] for X in pa.objects},
                     {g.name: self.first_arrows[(g.name, Y)] for g in pa.gen1},
                     {g.name: self.first_cells[(g.name, Y)] for g in pa.gen2})

    def at_first(self, X):
        """The second-factor model ``M(X, -)``."""
        pb = self.second.presentation
        return Model(self.second, self.target,
                     {Y: self.grid[(X, Y)] for Y in pb.objects},
                     {g.name: self.second_arrows[(X, g.name)] for g in pb.gen1},
                     {g.name: self.second_cells[(X, g.name)] for g in pb.gen2})

    def along_first(self, s):
        """``M(s, -)`` as a (w', w)-transformation of second-factor models."""
        g = self.first.presentation.g1(s)
        pb = self.second.presentation
        return WTransform(self.at_first(g.src), self.at_first(g.tgt), self.wp, self.w,
                          {Y: self.first_arrows[(s, Y)] for Y in pb.objects},
                          {t.name: self.interchange[(s, t.name)] for t in pb.gen1
                           if (s, t.name) in self.interchange})

    def along_second(self, t):
        """``M(-, t)`` as a dual-weakness transformation of first-factor models."""
        g = self.second.presentation.g1(t)
        pa = self.first.presentation
        return WTransform(self.at_second(g.src), self.at_second(g.tgt), self.wp.dual, self.w.dual,
                          {X: self.second_arrows[(X, t)] for X in pa.objects},
                          {s.name: self._mirrored(self.interchange[(s.name, t)]) for s in pa.gen1
                           if (s.name, t) in self.interchange})

    def _mirrored(self, x):
        """An interchange cell read from the other side.  Only at s and p do
        the two readings point opposite ways; a cell with no inverse is
        passed through unchanged so that checking rejects it."""
        if self.w not in (S, P):
            return x
        inv = self.target.inverse2(x)
        return x if inv is None else inv

    def swapped(self):
        """The same data read as a multimodel of ``(second, first)``."""
        return MultiModel(self.second, self.first, self.target, self.wp.dual, self.w.dual,
                          {(Y, X): v for (X, Y), v in self.grid.items()},
                          {(t, X): v for (X, t), v in self.second_arrows.items()},
                          {(Y, s): v for (s, Y), v in self.first_arrows.items()},
                          {(t, X): v for (X, t), v in self.second_cells.items()},
                          {(Y, s): v for (s, Y), v in self.first_cells.items()},
                          {(t, s): self._mirrored(v) for (s, t), v in self.interchange.items()})

    # serialization
    def to_json(self):
        T = self.target
        pa, pb = self.first.presentation, self.second.presentation
        return {
            "sketches": [pa.name, pb.name],
            "weakness": [str(self.wp), str(self.w)],
            "grid": [{"at": [X, Y], "value": T.obj_to_json(self.grid[(X, Y)])}
                     for X in pa.objects for Y in pb.objects],
            "slices": {
                "first": {Y: {"morphisms": {g.name: T.one_to_json(self.first_arrows[(g.name, Y)])
                                            for g in pa.gen1},
                              "cells": {g.name: T.two_to_json(self.first_cells[(g.name, Y)])
                                        for g in pa.gen2}}
                          for Y in pb.objects},
                "second": {X: {"morphisms": {g.name: T.one_to_json(self.second_arrows[(X, g.name)])
                                             for g in pb.gen1},
                               "cells": {g.name: T.two_to_json(self.second_cells[(X, g.name)])
                                         for g in pb.gen2}}
                           for X in pa.objects},
            },
            "interchange": [{"pair": [s.name, t.name],
                             "cell": T.two_to_json(self.interchange[(s.name, t.name)])}
                            for s in pa.gen1 for t in pb.gen1
                            if (s.name, t.name) in self.interchange],
        }

    @classmethod
    def from_json(cls, first, second, target, data, wp=None, w=None):
        try:
            wp = wp if wp is not None else data["weakness"][0]
            w = w if w is not None else data["weakness"][1]
            grid = {tuple(e["at"]): target.obj_from_json(e["value"]) for e in data["grid"]}
            mm = cls(first, second, target, wp, w, grid, {}, {})
            pa, pb = first.presentation, second.presentation
            for Y in pb.objects:
                sl = data["slices"]["first"][Y]
                for g in pa.gen1:
                    mm.first_arrows[(g.name, Y)] = target.one_from_json(
                        sl["morphisms"][g.name], grid[(g.src, Y)], grid[(g.tgt, Y)])
            for X in pa.objects:
                sl = data["slices"]["second"][X]
                for g in pb.gen1:
                    mm.second_arrows[(X, g.name)] = target.one_from_json(
                        sl["morphisms"][g.name], grid[(X, g.src)], grid[(X, g.tgt)])
            for Y in pb.objects:
                m = mm.at_second_partial(Y)
                for g in pa.gen2:
                    mm.first_cells[(g.name, Y)] = target.two_from_json(
                        data["slices"]["first"][Y]["cells"][g.name],
                        eval_path(m, g.source), eval_path(m, g.target))
            for X in pa.objects:
                m = mm.at_first_partial(X)
                for g in pb.gen2:
                    mm.second_cells[(X, g.name)] = target.two_from_json(
                        data["slices"]["second"][X]["cells"][g.name],
                        eval_path(m, g.source), eval_path(m, g.target))
            for e in data.get("interchange", []):
                s, t = e["pair"]
                a, b = interchange_boundary(mm, s, t)
                mm.interchange[(s, t)] = target.two_from_json(e["cell"], a, b)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidData(f"malformed multimodel document: {exc}") from None
        return mm

    def at_second_partial(self, Y):
        pa = self.first.presentation
        return Model(self.first, self.target, {X: self.grid[(X, Y)] for X in pa.objects},
                     {g.name: self.first_arrows[(g.name, Y)] for g in pa.gen1})

    def at_first_partial(self, X):
        pb = self.second.presentation
        return Model(self.second, self.target, {Y: self.grid[(X, Y)] for Y in pb.objects},
                     {g.name: self.second_arrows[(X, g.name)] for g in pb.gen1})


def interchange_boundary(mm, s, t):
    """Source and target 1-cells of the interchange cell at ``(s, t)``."""
    T = mm.target
    gs, gt = mm.first.presentation.g1(s), mm.second.presentation.g1(t)
    a = T.comp1(mm.second_arrows[(gs.tgt, t)], mm.first_arrows[(s, gt.src)])
    b = T.comp1(mm.first_arrows[(s, gt.tgt)], mm.second_arrows[(gs.src, t)])
    return (b, a) if mm.w == C else (a, b)


def _path_transformation(mm, path, along):
    """Composite of ``M(g, -)`` (or ``M(-, g)``) along a path."""
    if along == "first":
        start = mm.at_first(path.src)
        pieces = [mm.along_first(g) for g in path.gens]
        wp, w = mm.wp, mm.w
    else:
        start = mm.at_second(path.src)
        pieces = [mm.along_second(g) for g in path.gens]
        wp, w = mm.wp.dual, mm.w.dual
    if not pieces:
        return identity_transformation(start, wp, w)
    result = pieces[0]
    for f in pieces[1:]:
        result = compose_transformations(f, result)
    return result


def _first_modification(mm, g):
    pb = mm.second.presentation
    return Modification(_path_transformation(mm, g.source, "first"),
                        _path_transformation(mm, g.target, "first"),
                        {Y: mm.first_cells[(g.name, Y)] for Y in pb.objects})


def _second_modification(mm, g):
    pa = mm.first.presentation
    return Modification(_path_transformation(mm, g.source, "second"),
                        _path_transformation(mm, g.target, "second"),
                        {X: mm.second_cells[(X, g.name)] for X in pa.objects})


def check_multimodel(mm, budget=None):
    """Slices are models, each generator of either factor induces a valid
    transformation of slices, and each 2-cell a modification."""
    pa, pb = mm.first.presentation, mm.second.presentation
    try:
        for Y in pb.objects:
            r = check_model(mm.at_second(Y), budget)
            if not r:
                return VerificationReport.reject(f"slice (-, {Y}) is not a model: {r.first_failure}",
                                                 {"slice": ["first", Y]})
        for X in pa.objects:
            r = check_model(mm.at_first(X), budget)
            if not r:
                return VerificationReport.reject(f"slice ({X}, -) is not a model: {r.first_failure}",
                                                 {"slice": ["second", X]})
        for g in pa.gen1:
            r = check_transformation(mm.along_first(g.name), budget)
            if not r:
                return VerificationReport.reject(f"({g.name}, -) is not natural: {r.first_failure}",
                                                 {"at": g.name})
            if g.tight and not r.details["tight"]:
                return VerificationReport.reject(f"({g.name}, -) must be tight", {"at": g.name})
        for g in pb.gen1:
            r = check_transformation(mm.along_second(g.name), budget)
            if not r:
                return VerificationReport.reject(f"(-, {g.name}) is not natural: {r.first_failure}",
                                                 {"at": g.name})
            if g.tight and not r.details["tight"]:
                return VerificationReport.reject(f"(-, {g.name}) must be tight", {"at": g.name})
        for g in pa.gen2:
            r = check_modification(_first_modification(mm, g))
            if not r:
                return VerificationReport.reject(f"({g.name}, -) is not a modification: "
                                                 f"{r.first_failure}", {"at": g.name})
        for g in pb.gen2:
            r = check_modification(_second_modification(mm, g))
            if not r:
                return VerificationReport.reject(f"(-, {g.name}) is not a modification: "
                                                 f"{r.first_failure}", {"at": g.name})
    except (BoundaryMismatch, InvalidData, KeyError) as exc:
        return VerificationReport.reject(f"ill-typed multimodel: {exc}")
    return VerificationReport.accept({"weakness": [str(mm.wp), str(mm.w)]})


# -- currying ---------------------------------------------------------------------

def curry(mm, side="right"):
    """Right: a model of the first sketch in models of the second at (w', w).
    Left: a model of the second sketch in models of the first at the duals."""
    if side == "left":
        mm = mm.swapped()
    elif side != "right":
        raise InvalidData(f"curry side must be 'left' or 'right', not {side!r}")
    pa = mm.first.presentation
    inner = ModTarget(mm.second, mm.target, mm.wp, mm.w)
    objects = {X: mm.at_first(X) for X in pa.objects}
    morphisms = {g.name: mm.along_first(g.name) for g in pa.gen1}
    cells = {g.name: _first_modification(mm, g) for g in pa.gen2}
    return Model(mm.first, inner, objects, morphisms, cells)


def uncurry(m, side="right"):
    """Inverse of :func:`curry` on the same side."""
    T = m.target
    if not isinstance(T, ModTarget):
        raise BoundaryMismatch("uncurry needs a model valued in models")
    a, b = m.sketch, T.sketch
    pa, pb = a.presentation, b.presentation
    grid, fa, sa, fc_, sc, inter = {}, {}, {}, {}, {}, {}
    for X in pa.objects:
        n = m.obj(X)
        for Y in pb.objects:
            grid[(X, Y)] = n.obj(Y)
        for g in pb.gen1:
            sa[(X, g.name)] = n.one(g.name)
        for g in pb.gen2:
            sc[(X, g.name)] = n.two(g.name)
    for g in pa.gen1:
        f = m.one(g.name)
        if not isinstance(f, WTransform):
            raise BoundaryMismatch(f"{g.name!r} is not sent to a transformation")
        for Y in pb.objects:
            fa[(g.name, Y)] = f.components[Y]
        for t, x in f.witnesses.items():
            inter[(g.name, t)] = x
    for g in pa.gen2:
        mu = m.two(g.name)
        for Y in pb.objects:
            fc_[(g.name, Y)] = mu.components[Y]
    mm = MultiModel(a, b, T.inner, T.wp, T.w, grid, fa, sa, fc_, sc, inter)
    if side == "left":
        return mm.swapped()
    if side != "right":
        raise InvalidData(f"uncurry side must be 'left' or 'right', not {side!r}")
    return mm


def symmetry_transpose(m):
    """A model of A in models of B at (v', v) becomes a model of B in
    models of A at the dual pair."""
    return curry(uncurry(m, "right"), "left")


# -- tensor models ---------------------------------------------------------------

def tensor_model(mm, ts):
    """The model of the tensor sketch carrying the same data as ``mm``."""
    T = mm.target
    a, b = ts.factors
    pa, pb = a.presentation, b.presentation
    objects = {pair_name(X, Y): v for (X, Y), v in mm.grid.items()}
    morphisms = {pair_name(s, Y): v for (s, Y), v in mm.first_arrows.items()}
    morphisms.update({pair_name(X, t): v for (X, t), v in mm.second_arrows.items()})
    cells = {pair_name(s, Y): v for (s, Y), v in mm.first_cells.items()}
    cells.update({pair_name(X, t): v for (X, t), v in mm.second_cells.items()})
    for gs in pa.gen1:
        for gt in pb.gen1:
            name = ts.interchange_cell(gs.name, gt.name)
            x = mm.interchange.get((gs.name, gt.name))
            if name is None:
                if x is not None and not T.is_id2(x):
                    raise InvalidData(f"pair ({gs.name}, {gt.name}) is strict in the tensor")
                continue
            cells[name] = x if x is not None else T.id2(interchange_boundary(mm, gs.name, gt.name)[0])
    return Model(ts, T, objects, morphisms, cells)


def multimodel_of(m):
    """The multimodel read off a model of a tensor sketch."""
    ts = m.sketch
    a, b = ts.factors
    wp, w = ts.weakness
    T = m.target
    pa, pb = a.presentation, b.presentation
    grid = {(X, Y): m.obj(pair_name(X, Y)) for X in pa.objects for Y in pb.objects}
    fa = {(g.name, Y): m.one(pair_name(g.name, Y)) for g in pa.gen1 for Y in pb.objects}
    sa = {(X, g.name): m.one(pair_name(X, g.name)) for X in pa.objects for g in pb.gen1}
    fc_ = {(g.name, Y): m.two(pair_name(g.name, Y)) for g in pa.gen2 for Y in pb.objects}
    sc = {(X, g.name): m.two(pair_name(X, g.name)) for X in pa.objects for g in pb.gen2}
    inter = {}
    for gs in pa.gen1:
        for gt in pb.gen1:
            name = ts.interchange_cell(gs.name, gt.name)
            if name is not None and not T.is_id2(m.two(name)):
                inter[(gs.name, gt.name)] = m.two(name)
    return MultiModel(a, b, T, wp, w, grid, fa, sa, fc_, sc, inter)


# -- intercategory morphism flavours ------------------------------------------------

_FLAVOURS = {(C, L): "colax-lax", (L, C): "colax-lax", (C, C): "colax-colax", (L, L): "lax-lax"}


def _reweigh_model(m, w):
    """Read a model valued in models at another inner weakness, or None."""
    T = m.target
    inner = ModTarget(T.sketch, T.inner, T.wp, w)
    morphisms = {}
    for name, f in m.morphisms.items():
        g = transport(f, T.wp, w)
        if g is None:
            return None
        morphisms[name] = g
    partial = Model(m.sketch, inner, m.objects, morphisms)
    cells = {}
    for g in m.sketch.presentation.gen2:
        cells[g.name] = Modification(eval_path(partial, g.source), eval_path(partial, g.target),
                                     m.two(g.name).components)
    return Model(m.sketch, inner, m.objects, morphisms, cells)


def classify_morphism(t):
    """Which intercategory morphism flavours the transformation realises:
    the tags of every accepted (inner, outer) lax/colax reading."""
    M, N = t.source, t.target
    if not isinstance(M.target, ModTarget):
        raise BoundaryMismatch("classification needs models valued in models")
    tags, accepted = set(), []
    for inner in (L, C):
        if not M.target.wp <= inner:
            continue
        M2, N2 = _reweigh_model(M, inner), _reweigh_model(N, inner)
        if M2 is None or N2 is None or not check_model(M2) or not check_model(N2):
            continue
        comps = {k: transport(v, M.target.wp, inner) for k, v in t.components.items()}
        if any(v is None for v in comps.values()):
            continue

        def fix(f):
            return transport(f, M.target.wp, inner)

        wit = {}
        for k, mu in t.witnesses.items():
            src, tgt = fix(mu.source), fix(mu.target)
            if src is None or tgt is None:
                break
            wit[k] = Modification(src, tgt, mu.components)
        else:
            base = WTransform(M2, N2, t.wp, t.w, comps, wit)
            for outer in (L, C):
                if not t.wp <= outer:
                    continue
                u = transport(base, t.wp, outer)
                if u is not None and check_transformation(u):
                    accepted.append((str(inner), str(outer)))
                    tags.add(_FLAVOURS[(inner, outer)])
    return tuple(sorted(tags)), accepted
