"""Presentations of enhanced 2-categories and their finite table form.

A presentation lists objects, 1-cell generators carrying a tight flag,
2-cell generators and equations.  Equations are never decided
symbolically; they become obligations that each model discharges by
evaluation.  Tightness of a composite path is the conjunction of the
tightness of its generators.
"""
import enum
from collections import deque
from dataclasses import dataclass, field

from .errors import InvalidData, UnknownGenerator
from .fincat import FinCat
from .report import VerificationReport


class Weakness(enum.Enum):
    S = "s"
    P = "p"
    L = "l"
    C = "c"

    @classmethod
    def parse(cls, value):
        if isinstance(value, Weakness):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise InvalidData(f"unknown weakness {value!r}") from None

    @property
    def dual(self):
        return _DUAL[self]

    def __le__(self, other):
        return (self, other) in _ORDER

    def __lt__(self, other):
        return self != other and self <= other

    def __str__(self):
        return self.value


_DUAL = {Weakness.S: Weakness.S, Weakness.P: Weakness.P,
         Weakness.L: Weakness.C, Weakness.C: Weakness.L}
_ORDER = {(a, a) for a in Weakness} | {
    (Weakness.S, Weakness.P), (Weakness.S, Weakness.L), (Weakness.S, Weakness.C),
    (Weakness.P, Weakness.L), (Weakness.P, Weakness.C)}


def weakness_pair(wp, w):
    wp, w = Weakness.parse(wp), Weakness.parse(w)
    if not wp <= w:
        raise InvalidData(f"weakness pair ({wp}, {w}) is not ordered")
    return wp, w


# -- syntax -----------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    """Generators in application order: ``gens[0]`` is applied first."""

    src: str
    tgt: str
    gens: tuple = ()

    @classmethod
    def identity(cls, obj):
        return cls(obj, obj, ())

    def then(self, other):
        if self.tgt != other.src:
            raise InvalidData(f"paths do not compose at {self.tgt!r} / {other.src!r}")
        return Path(self.src, other.tgt, self.gens + other.gens)

    def __len__(self):
        return len(self.gens)

    def __str__(self):
        if not self.gens:
            return f"id({self.src})"
        return " . ".join(reversed(self.gens))


def compose_paths(*paths):
    """Compose paths given in application order."""
    result = paths[0]
    for p in paths[1:]:
        result = result.then(p)
    return result


@dataclass(frozen=True)
class CellRef:
    """A generating 2-cell, its formal inverse, or an identity on a path."""

    op: str
    name: str = None
    path: Path = None

    @classmethod
    def gen(cls, name):
        return cls("gen", name)

    @classmethod
    def inv(cls, name):
        return cls("inv", name)

    @classmethod
    def ident(cls, path):
        return cls("id", None, path)


@dataclass(frozen=True)
class Atom:
    """``left . cell . right``: the cell whiskered by ``right`` before and ``left`` after."""

    left: Path
    cell: CellRef
    right: Path


@dataclass(frozen=True)
class PastingExpr:
    """Whiskered atoms composed vertically in list order."""

    atoms: tuple

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))


@dataclass(frozen=True)
class Gen1:
    name: str
    src: str
    tgt: str
    tight: bool = False


@dataclass(frozen=True)
class Gen2:
    name: str
    source: Path
    target: Path
    direction: Weakness = Weakness.L
    invertible: bool = False


@dataclass(frozen=True)
class Eq1:
    lhs: Path
    rhs: Path


@dataclass(frozen=True)
class Eq2:
    lhs: PastingExpr
    rhs: PastingExpr


@dataclass(frozen=True)
class FCatPresentation:
    name: str = "Sketch"
    objects: tuple = ()
    gen1: tuple = ()
    gen2: tuple = ()
    eqs1: tuple = ()
    eqs2: tuple = ()
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        for attr in ("objects", "gen1", "gen2", "eqs1", "eqs2"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        object.__setattr__(self, "_index", None)

    def _lookup(self):
        if self._index is None:
            object.__setattr__(self, "_index", (
                {g.name: g for g in self.gen1}, {g.name: g for g in self.gen2}))
        return self._index

    def g1(self, name):
        try:
            return self._lookup()[0][name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def g2(self, name):
        try:
            return self._lookup()[1][name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def has_g1(self, name):
        return name in self._lookup()[0]

    def has_g2(self, name):
        return name in self._lookup()[1]

    def path(self, *names):
        """Path through the named generators, in application order."""
        if not names:
            raise InvalidData("use Path.identity for empty paths")
        first = self.g1(names[0])
        return Path(first.src, self.g1(names[-1]).tgt, tuple(names))

    def tight_names(self):
        return frozenset(g.name for g in self.gen1 if g.tight)

    def with_tight(self, tight):
        tight = frozenset(tight)
        gens = tuple(Gen1(g.name, g.src, g.tgt, g.name in tight) for g in self.gen1)
        return FCatPresentation(self.name, self.objects, gens, self.gen2, self.eqs1, self.eqs2)

    def cell_boundary(self, ref):
        if ref.op == "id":
            return ref.path, ref.path
        g = self.g2(ref.name)
        if ref.op == "inv":
            return g.target, g.source
        return g.source, g.target

    def atom_boundary(self, atom):
        s, t = self.cell_boundary(atom.cell)
        return (compose_paths(atom.right, s, atom.left),
                compose_paths(atom.right, t, atom.left))


def path_is_tight(p, path):
    return all(p.g1(name).tight for name in path.gens)


# -- validation -------------------------------------------------------------

def _path_problem(p, path, objects):
    if path.src not in objects or path.tgt not in objects:
        return f"path {path} has an undeclared endpoint"
    here = path.src
    for name in path.gens:
        if not p.has_g1(name):
            return f"unknown 1-cell {name!r}"
        g = p.g1(name)
        if g.src != here:
            return f"path {path} does not compose at {name!r}"
        here = g.tgt
    if here != path.tgt:
        return f"path {path} does not end at {path.tgt!r}"
    return None


def equal_modulo(p, a, b, limit=2000):
    """Bounded search for a rewrite of ``a`` into ``b`` using the 1-cell
    equations in both directions.  True when found, None when undecided."""
    if a == b:
        return True
    if a.src != b.src or a.tgt != b.tgt:
        return False
    rules = []
    for e in p.eqs1:
        rules.append((e.lhs.gens, e.rhs.gens, e.lhs.src))
        rules.append((e.rhs.gens, e.lhs.gens, e.lhs.src))
    seen = {a.gens}
    queue = deque([a.gens])
    cap = 2 * max([len(a.gens), len(b.gens)] + [len(r[0]) for r in rules]) + 4
    while queue and len(seen) < limit:
        word = queue.popleft()
        here = [a.src]
        for name in word:
            here.append(p.g1(name).tgt)
        for lhs, rhs, at in rules:
            n = len(lhs)
            for i in range(len(word) - n + 1):
                if word[i:i + n] != lhs or (n == 0 and here[i] != at):
                    continue
                new = word[:i] + rhs + word[i + n:]
                if len(new) > cap or new in seen:
                    continue
                if new == b.gens:
                    return True
                seen.add(new)
                queue.append(new)
    return None


def expr_boundary(p, expr, deferred=None):
    """Formal boundary of a pasting expression; records unresolved
    vertical junctions in ``deferred``."""
    if not expr.atoms:
        raise InvalidData("empty pasting expression")
    src, tgt = p.atom_boundary(expr.atoms[0])
    for atom in expr.atoms[1:]:
        s, t = p.atom_boundary(atom)
        verdict = equal_modulo(p, tgt, s)
        if verdict is False:
            raise InvalidData(f"atoms do not compose vertically: {tgt} vs {s}")
        if verdict is None and deferred is not None:
            deferred.append(f"{tgt} = {s}")
        tgt = t
    return src, tgt


def validate_presentation(p):
    objects = set(p.objects)

    def reject(msg, name=None):
        return VerificationReport.reject(msg, {"name": name} if name else {})

    if len(objects) != len(p.objects):
        return reject("duplicate object names")
    seen = set()
    for g in p.gen1:
        if g.name in seen:
            return reject(f"duplicate 1-cell name {g.name!r}", g.name)
        seen.add(g.name)
        if g.src not in objects or g.tgt not in objects:
            return reject(f"1-cell {g.name!r} has an undeclared endpoint", g.name)
    seen = set()
    for g in p.gen2:
        if g.name in seen:
            return reject(f"duplicate 2-cell name {g.name!r}", g.name)
        seen.add(g.name)
        for side in (g.source, g.target):
            problem = _path_problem(p, side, objects)
            if problem:
                return reject(f"2-cell {g.name!r}: {problem}", g.name)
        if g.source.src != g.target.src or g.source.tgt != g.target.tgt:
            return reject(f"2-cell {g.name!r} has non-parallel boundary", g.name)
        if g.direction == Weakness.P and not g.invertible:
            return reject(f"2-cell {g.name!r} is pseudo but not invertible", g.name)
    for k, e in enumerate(p.eqs1):
        for side in (e.lhs, e.rhs):
            problem = _path_problem(p, side, objects)
            if problem:
                return reject(f"1-cell equation {k}: {problem}")
        if e.lhs.src != e.rhs.src or e.lhs.tgt != e.rhs.tgt:
            return reject(f"1-cell equation {k} has non-parallel sides")
    deferred = []
    for k, e in enumerate(p.eqs2):
        bounds = []
        for side in (e.lhs, e.rhs):
            for atom in side.atoms:
                for part in (atom.left, atom.right) + ((atom.cell.path,) if atom.cell.op == "id" else ()):
                    problem = _path_problem(p, part, objects)
                    if problem:
                        return reject(f"2-cell equation {k}: {problem}")
                if atom.cell.op != "id":
                    if atom.cell.name not in seen:
                        return reject(f"2-cell equation {k}: unknown 2-cell {atom.cell.name!r}",
                                      atom.cell.name)
                    if atom.cell.op == "inv" and not p.g2(atom.cell.name).invertible:
                        return reject(f"2-cell equation {k}: inverse of non-invertible "
                                      f"{atom.cell.name!r}", atom.cell.name)
                s, t = p.cell_boundary(atom.cell)
                if atom.right.tgt != s.src or s.tgt != atom.left.src:
                    return reject(f"2-cell equation {k}: whiskering does not compose")
            try:
                bounds.append(expr_boundary(p, side, deferred))
            except InvalidData as exc:
                return reject(f"2-cell equation {k}: {exc}")
        for a, b in zip(bounds[0], bounds[1]):
            verdict = equal_modulo(p, a, b)
            if verdict is False:
                return reject(f"2-cell equation {k} has non-parallel sides")
            if verdict is None:
                deferred.append(f"{a} = {b}")
    return VerificationReport.accept({"deferred": deferred})


# -- finite enhanced 2-categories ------------------------------------------

class FiniteFCat:
    """A finite 2-category in table form with an optional tight flag per 1-cell.

    ``one`` is the underlying 1-category.  2-cells are ``(id, src, tgt)``
    with 1-cell indices; ``vcomp[(b, a)]`` is ``a`` then ``b`` and
    ``hcomp[(b, a)]`` is the horizontal composite with ``a`` on the right.
    ``tight`` is None for a plain 2-category.
    """

    __slots__ = ("one", "cells", "csrc", "ctgt", "vcomp", "hcomp", "id2", "tight", "_homs")

    def __init__(self, one, cells, vcompose, hcompose, tight=None, check=True):
        self.one = one
        cells = [tuple(c) for c in cells]
        self.cells = tuple(str(c[0]) for c in cells)
        self.csrc = tuple(int(c[1]) for c in cells)
        self.ctgt = tuple(int(c[2]) for c in cells)
        self.vcomp = {(int(b), int(a)): int(c) for b, a, c in vcompose}
        self.hcomp = {(int(b), int(a)): int(c) for b, a, c in hcompose}
        self.tight = None if tight is None else tuple(bool(x) for x in tight)
        self._homs = None
        self.id2 = self._find_id2()
        if check:
            problem = self.structure_problem()
            if problem:
                raise InvalidData(problem)

    def _find_id2(self):
        ids = []
        for f in range(self.one.n_mor):
            found = None
            for a in range(len(self.cells)):
                if self.csrc[a] == f and self.ctgt[a] == f:
                    if all(self.vcomp.get((a, x), x) == x for x in range(len(self.cells))
                           if self.ctgt[x] == f) and \
                            all(self.vcomp.get((x, a), x) == x for x in range(len(self.cells))
                                if self.csrc[x] == f):
                        found = a
                        break
            ids.append(found)
        return tuple(ids)

    def structure_problem(self):
        C = self.one
        n = len(self.cells)
        if len(set(self.cells)) != n:
            return "duplicate 2-cell identifiers"
        for a in range(n):
            if not (0 <= self.csrc[a] < C.n_mor and 0 <= self.ctgt[a] < C.n_mor):
                return f"2-cell {self.cells[a]!r} has a boundary out of range"
            f, g = self.csrc[a], self.ctgt[a]
            if C.src[f] != C.src[g] or C.tgt[f] != C.tgt[g]:
                return f"2-cell {self.cells[a]!r} has non-parallel boundary"
        if any(x is None for x in self.id2):
            return "some 1-cell lacks an identity 2-cell"
        for a in range(n):
            for b in range(n):
                if self.csrc[b] == self.ctgt[a]:
                    c = self.vcomp.get((b, a))
                    if c is None:
                        return "vertical composition is not total"
                    if self.csrc[c] != self.csrc[a] or self.ctgt[c] != self.ctgt[b]:
                        return "vertical composite has the wrong boundary"
                elif (b, a) in self.vcomp:
                    return "vertical composite of non-composable cells"
                if C.src[self.csrc[b]] == C.tgt[self.csrc[a]]:
                    c = self.hcomp.get((b, a))
                    if c is None:
                        return "horizontal composition is not total"
                    if self.csrc[c] != C.comp[(self.csrc[b], self.csrc[a])] or \
                            self.ctgt[c] != C.comp[(self.ctgt[b], self.ctgt[a])]:
                        return "horizontal composite has the wrong boundary"
                elif (b, a) in self.hcomp:
                    return "horizontal composite of non-composable cells"
        v, h = self.vcomp, self.hcomp
        for (b, a), c in v.items():
            for d in range(n):
                if self.csrc[d] == self.ctgt[b] and v[(d, c)] != v[(v[(d, b)], a)]:
                    return "vertical composition is not associative"
        for (b, a), c in h.items():
            for d in range(n):
                if C.src[self.csrc[d]] == C.tgt[self.csrc[b]] and \
                        h[(d, c)] != h[(h[(d, b)], a)]:
                    return "horizontal composition is not associative"
        for f in range(C.n_mor):
            if h[(self.id2[C.identities[C.tgt[f]]], self.id2[f])] != self.id2[f]:
                return "identity 2-cells are not units for horizontal composition"
        for a in range(n):
            ia = self.id2[C.identities[C.src[self.csrc[a]]]]
            ib = self.id2[C.identities[C.tgt[self.csrc[a]]]]
            if h[(a, ia)] != a or h[(ib, a)] != a:
                return "identity 2-cells are not units for horizontal composition"
        for (g, f), gf in C.comp.items():
            if h[(self.id2[g], self.id2[f])] != self.id2[gf]:
                return "horizontal composite of identities is not an identity"
        for (a2, a1), a in v.items():
            for (b2, b1), b in v.items():
                if (b1, a1) in h and h[(b, a)] != v[(h[(b2, a2)], h[(b1, a1)])]:
                    return "interchange law fails"
        return None

    def tight_problem(self):
        if self.tight is None:
            return None
        C = self.one
        if len(self.tight) != C.n_mor:
            return "tight flags have the wrong length"
        for a in range(C.n_obj):
            if not self.tight[C.identities[a]]:
                return f"identity at {C.objects[a]!r} is not tight"
        for (g, f), h in C.comp.items():
            if self.tight[g] and self.tight[f] and not self.tight[h]:
                return (f"composite of tight {C.mor_ids[g]!r} and {C.mor_ids[f]!r} "
                        f"is flagged loose")
        return None

    def underlying(self):
        return self.with_tight(None)

    def with_tight(self, tight):
        k = object.__new__(FiniteFCat)
        for s in FiniteFCat.__slots__:
            setattr(k, s, getattr(self, s))
        k.tight = None if tight is None else tuple(bool(x) for x in tight)
        return k

    def is_tight(self, f):
        return bool(self.tight and self.tight[f])

    def hom(self, a, b):
        """The hom-category from object ``a`` to object ``b`` as a FinCat whose
        objects are 1-cell indices and morphisms are 2-cell indices."""
        if self._homs is None:
            self._homs = {}
        if (a, b) not in self._homs:
            C = self.one
            ones = C.hom(a, b)
            opos = {f: i for i, f in enumerate(ones)}
            twos = [x for x in range(len(self.cells)) if self.csrc[x] in opos]
            tpos = {x: i for i, x in enumerate(twos)}
            H = FinCat([C.mor_ids[f] for f in ones],
                       [(self.cells[x], opos[self.csrc[x]], opos[self.ctgt[x]]) for x in twos],
                       [(tpos[y], tpos[x], tpos[self.vcomp[(y, x)]])
                        for x in twos for y in twos if self.csrc[y] == self.ctgt[x]],
                       identities=[tpos[self.id2[f]] for f in ones], check=False)
            self._homs[(a, b)] = (H, ones, twos)
        return self._homs[(a, b)]

    def key(self):
        return (self.one.key(), self.cells, self.csrc, self.ctgt,
                tuple(sorted(self.vcomp.items())), tuple(sorted(self.hcomp.items())), self.tight)

    def __eq__(self, other):
        return isinstance(other, FiniteFCat) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self):
        doc = self.one.to_json()
        doc["cells"] = [{"id": i, "src": s, "tgt": t}
                        for i, s, t in zip(self.cells, self.csrc, self.ctgt)]
        doc["vcompose"] = [[b, a, c] for (b, a), c in sorted(self.vcomp.items())]
        doc["hcompose"] = [[b, a, c] for (b, a), c in sorted(self.hcomp.items())]
        if self.tight is not None:
            doc["tight"] = list(self.tight)
        return doc

    @classmethod
    def from_json(cls, data):
        one = FinCat.from_json(data)
        try:
            cells = [(c["id"], c["src"], c["tgt"]) for c in data["cells"]]
            return cls(one, cells, data["vcompose"], data["hcompose"], data.get("tight"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidData(f"malformed 2-category document: {exc!r}") from None

    @classmethod
    def locally_discrete(cls, C, tight=None):
        """The 2-category with only identity 2-cells on a 1-category."""
        cells = [(f"1_{m}", i, i) for i, m in enumerate(C.mor_ids)]
        vcomp = [(i, i, i) for i in range(C.n_mor)]
        hcomp = [(g, f, h) for (g, f), h in C.comp.items()]
        return cls(C, cells, vcomp, hcomp, tight)


def chordate(k):
    return k.with_tight([True] * k.one.n_mor)


def inchordate(k):
    C = k.one
    return k.with_tight([C.is_identity(f) for f in range(C.n_mor)])


def validate_finite_fcat(k):
    problem = k.structure_problem()
    if problem is None:
        problem = k.tight_problem()
    if problem:
        return VerificationReport.reject(problem)
    return VerificationReport.accept({"objects": k.one.n_obj, "one_cells": k.one.n_mor,
                                      "two_cells": len(k.cells)})
