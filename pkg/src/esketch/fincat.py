"""Finite categories, functors and natural transformations as explicit tables.

Everything here is immutable after construction.  Equality is table
equality; "the same limit" is decided separately by :func:`verify_cone`,
which compares a candidate cone against the canonical construction.
"""
import itertools
from dataclasses import dataclass

from .errors import (BoundaryMismatch, InvalidData, NonComposableCells,
                     SearchBudgetExceeded, ShapeMismatch)
from .report import VerificationReport

DEFAULT_BUDGET = 10 ** 7


class FinCat:
    """A finite category given by object and morphism lists and a total
    composition table ``comp[(g, f)] = g . f`` on composable pairs."""

    __slots__ = ("objects", "mor_ids", "src", "tgt", "identities", "comp",
                 "_key", "_homs", "_obj_pos", "_mor_pos")

    def __init__(self, objects, morphisms, compose, identities=None, check=True):
        self.objects = tuple(str(o) for o in objects)
        mors = [tuple(m) for m in morphisms]
        self.mor_ids = tuple(str(m[0]) for m in mors)
        self.src = tuple(int(m[1]) for m in mors)
        self.tgt = tuple(int(m[2]) for m in mors)
        comp = {}
        for entry in compose:
            g, f, h = (int(x) for x in entry)
            if comp.get((g, f), h) != h:
                raise InvalidData(f"conflicting composites for ({g}, {f})")
            comp[(g, f)] = h
        self.comp = comp
        self._key = None
        self._homs = None
        self._obj_pos = None
        self._mor_pos = None
        if check:
            problem = self._table_problem()
            if problem:
                raise InvalidData(problem)
        if identities is None:
            identities = self._find_identities()
        self.identities = tuple(identities)
        if check:
            problem = self._law_problem()
            if problem:
                raise InvalidData(problem)

    # -- validation -------------------------------------------------------

    def _table_problem(self):
        n, m = len(self.objects), len(self.mor_ids)
        if len(set(self.objects)) != n:
            return "duplicate object identifiers"
        if len(set(self.mor_ids)) != m:
            return "duplicate morphism identifiers"
        for i in range(m):
            if not (0 <= self.src[i] < n and 0 <= self.tgt[i] < n):
                return f"morphism {self.mor_ids[i]!r} has an endpoint out of range"
        for (g, f), h in self.comp.items():
            if not (0 <= g < m and 0 <= f < m and 0 <= h < m):
                return f"composition entry ({g}, {f}) out of range"
            if self.src[g] != self.tgt[f]:
                return f"composition entry ({g}, {f}) is not a composable pair"
            if self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                return f"composite of ({g}, {f}) has the wrong boundary"
        ins = [0] * n
        outs = [0] * n
        for i in range(m):
            ins[self.tgt[i]] += 1
            outs[self.src[i]] += 1
        if sum(ins[b] * outs[b] for b in range(n)) != len(self.comp):
            return "composition table is not total on composable pairs"
        return None

    def _find_identities(self):
        ids = []
        for a in range(len(self.objects)):
            found = None
            for e in self.hom(a, a):
                if all(self.comp[(e, f)] == f for f in self.into(a)) and \
                        all(self.comp[(g, e)] == g for g in self.out_of(a)):
                    found = e
                    break
            if found is None:
                raise InvalidData(f"object {self.objects[a]!r} has no identity")
            ids.append(found)
        return ids

    def _law_problem(self):
        comp = self.comp
        for (g, f), gf in comp.items():
            for h in self.out_of(self.tgt[g]):
                if comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                    return "composition is not associative"
        return None

    # -- access -----------------------------------------------------------

    @property
    def n_obj(self):
        return len(self.objects)

    @property
    def n_mor(self):
        return len(self.mor_ids)

    def _index_homs(self):
        homs = {}
        for i in range(len(self.mor_ids)):
            homs.setdefault((self.src[i], self.tgt[i]), []).append(i)
        into = [[] for _ in self.objects]
        out = [[] for _ in self.objects]
        for i in range(len(self.mor_ids)):
            into[self.tgt[i]].append(i)
            out[self.src[i]].append(i)
        self._homs = (homs, into, out)

    def hom(self, a, b):
        if self._homs is None:
            self._index_homs()
        return self._homs[0].get((a, b), [])

    def into(self, b):
        if self._homs is None:
            self._index_homs()
        return self._homs[1][b]

    def out_of(self, a):
        if self._homs is None:
            self._index_homs()
        return self._homs[2][a]

    def compose(self, g, f):
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise BoundaryMismatch(f"morphisms {g} and {f} are not composable") from None

    def identity(self, a):
        return self.identities[a]

    def is_identity(self, f):
        return self.identities[self.src[f]] == f

    def inverse(self, f):
        """Index of the inverse of ``f``, or None when ``f`` is not invertible."""
        a, b = self.src[f], self.tgt[f]
        for g in self.hom(b, a):
            if self.comp[(g, f)] == self.identities[a] and \
                    self.comp[(f, g)] == self.identities[b]:
                return g
        return None

    def obj_index(self, name):
        if self._obj_pos is None:
            self._obj_pos = {o: i for i, o in enumerate(self.objects)}
        return self._obj_pos[name]

    def mor_index(self, name):
        if self._mor_pos is None:
            self._mor_pos = {m: i for i, m in enumerate(self.mor_ids)}
        return self._mor_pos[name]

    def key(self):
        if self._key is None:
            self._key = (self.objects, self.mor_ids, self.src, self.tgt,
                         tuple(sorted((g, f, h) for (g, f), h in self.comp.items())))
        return self._key

    def __eq__(self, other):
        return self is other or (isinstance(other, FinCat) and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FinCat({self.n_obj} objects, {self.n_mor} morphisms)"

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": i, "src": s, "tgt": t}
                          for i, s, t in zip(self.mor_ids, self.src, self.tgt)],
            "compose": [list(e) for e in self.key()[4]],
        }

    @classmethod
    def from_json(cls, data):
        try:
            objects = data["objects"]
            morphisms = [(m["id"], m["src"], m["tgt"]) for m in data["morphisms"]]
            compose = data["compose"]
            if not isinstance(objects, list) or not isinstance(compose, list):
                raise TypeError
            for entry in compose:
                if len(entry) != 3:
                    raise TypeError
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidData(f"malformed category document: {exc!r}") from None
        return cls(objects, morphisms, compose)


class FinFunctor:
    __slots__ = ("source", "target", "ob", "mor")

    def __init__(self, source, target, ob, mor, check=True):
        self.source = source
        self.target = target
        self.ob = tuple(map(int, ob))
        self.mor = tuple(map(int, mor))
        if check:
            problem = self.problem()
            if problem:
                raise InvalidData(problem)

    def problem(self):
        C, D = self.source, self.target
        if len(self.ob) != C.n_obj or len(self.mor) != C.n_mor:
            return "functor tables have the wrong length"
        if any(not 0 <= x < D.n_obj for x in self.ob) or \
                any(not 0 <= x < D.n_mor for x in self.mor):
            return "functor table entry out of range"
        for f in range(C.n_mor):
            F = self.mor[f]
            if D.src[F] != self.ob[C.src[f]] or D.tgt[F] != self.ob[C.tgt[f]]:
                return f"functor does not preserve the boundary of {C.mor_ids[f]!r}"
        for a in range(C.n_obj):
            if self.mor[C.identities[a]] != D.identities[self.ob[a]]:
                return f"functor does not preserve the identity at {C.objects[a]!r}"
        for (g, f), h in C.comp.items():
            if D.comp[(self.mor[g], self.mor[f])] != self.mor[h]:
                return "functor does not preserve composition"
        return None

    def __eq__(self, other):
        return self is other or (isinstance(other, FinFunctor) and self.ob == other.ob
                                 and self.mor == other.mor and self.source == other.source
                                 and self.target == other.target)

    def __hash__(self):
        return hash((self.ob, self.mor))

    def __repr__(self):
        return f"FinFunctor(ob={list(self.ob)}, mor={list(self.mor)})"

    def to_json(self):
        return {"ob": list(self.ob), "mor": list(self.mor)}

    @classmethod
    def from_json(cls, data, source, target):
        try:
            return cls(source, target, data["ob"], data["mor"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidData(f"malformed functor document: {exc!r}") from None


class FinNatTrans:
    """A natural transformation between parallel functors.

    An inverse may be stored alongside the components; :meth:`inverse`
    computes and caches one on demand when it exists.
    """

    __slots__ = ("source", "target", "components", "_inverse")

    def __init__(self, source, target, components, inverse=None, check=True):
        self.source = source
        self.target = target
        self.components = tuple(map(int, components))
        self._inverse = None if inverse is None else tuple(map(int, inverse))
        if check:
            problem = self.problem()
            if problem:
                raise InvalidData(problem)

    @property
    def domain(self):
        return self.source.source

    @property
    def codomain(self):
        return self.source.target

    def problem(self):
        F, G = self.source, self.target
        if F.source != G.source or F.target != G.target:
            return "transformation between non-parallel functors"
        C, D = F.source, F.target
        comps = self.components
        if len(comps) != C.n_obj or any(not 0 <= x < D.n_mor for x in comps):
            return "transformation has malformed components"
        for c in range(C.n_obj):
            if D.src[comps[c]] != F.ob[c] or D.tgt[comps[c]] != G.ob[c]:
                return f"component at {C.objects[c]!r} has the wrong boundary"
        for f in range(C.n_mor):
            a, b = C.src[f], C.tgt[f]
            if D.comp[(G.mor[f], comps[a])] != D.comp[(comps[b], F.mor[f])]:
                return f"naturality fails at {C.mor_ids[f]!r}"
        if self._inverse is not None:
            inv = self._inverse
            if len(inv) != C.n_obj:
                return "stored inverse has the wrong length"
            for c in range(C.n_obj):
                if not 0 <= inv[c] < D.n_mor or D.src[inv[c]] != G.ob[c] \
                        or D.tgt[inv[c]] != F.ob[c]:
                    return "stored inverse has the wrong boundary"
                if D.comp[(inv[c], comps[c])] != D.identities[F.ob[c]] or \
                        D.comp[(comps[c], inv[c])] != D.identities[G.ob[c]]:
                    return "stored inverse is not inverse"
        return None

    def is_identity(self):
        D = self.codomain
        return self.source == self.target and all(
            D.is_identity(x) for x in self.components)

    def inverse(self):
        """The inverse transformation, or None when some component is not invertible."""
        D = self.codomain
        if self._inverse is None:
            inv = []
            for x in self.components:
                y = D.inverse(x)
                if y is None:
                    return None
                inv.append(y)
            self._inverse = tuple(inv)
        return FinNatTrans(self.target, self.source, self._inverse,
                           inverse=self.components, check=False)

    def is_invertible(self):
        return self.inverse() is not None

    def __eq__(self, other):
        return self is other or (isinstance(other, FinNatTrans)
                                 and self.components == other.components
                                 and self.source == other.source
                                 and self.target == other.target)

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"FinNatTrans({list(self.components)})"

    def to_json(self):
        return {"components": list(self.components)}

    @classmethod
    def from_json(cls, data, source, target):
        try:
            return cls(source, target, data["components"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidData(f"malformed transformation document: {exc!r}") from None


# -- functor and transformation algebra ------------------------------------

def identity_functor(C):
    return FinFunctor(C, C, range(C.n_obj), range(C.n_mor), check=False)


def constant_functor(C, D, d):
    return FinFunctor(C, D, [d] * C.n_obj, [D.identities[d]] * C.n_mor, check=False)


def compose_functors(g, f):
    """The composite ``g . f`` (first ``f``, then ``g``)."""
    if f.target != g.source:
        raise BoundaryMismatch("target of the first functor is not the source of the second")
    return FinFunctor(f.source, g.target, [g.ob[x] for x in f.ob],
                      [g.mor[x] for x in f.mor], check=False)


def identity_trans(F):
    D = F.target
    ids = [D.identities[x] for x in F.ob]
    return FinNatTrans(F, F, ids, inverse=ids, check=False)


def vcompose(beta, alpha):
    """Vertical composite: first ``alpha``, then ``beta``."""
    if alpha.target != beta.source:
        raise NonComposableCells("cells are not vertically composable")
    D = alpha.codomain
    comps = [D.comp[(b, a)] for b, a in zip(beta.components, alpha.components)]
    inv = None
    if alpha._inverse is not None and beta._inverse is not None:
        inv = [D.comp[(a, b)] for a, b in zip(alpha._inverse, beta._inverse)]
    return FinNatTrans(alpha.source, beta.target, comps, inverse=inv, check=False)


def whisker(left, cell, right):
    """``left . cell . right``; either whiskering functor may be None."""
    F, G = cell.source, cell.target
    comps = cell.components
    inv = cell._inverse
    if right is not None:
        if right.target != F.source:
            raise BoundaryMismatch("right whiskering functor does not land in the cell's domain")
        F, G = compose_functors(F, right), compose_functors(G, right)
        comps = [comps[x] for x in right.ob]
        inv = None if inv is None else [inv[x] for x in right.ob]
    if left is not None:
        if left.source != F.target:
            raise BoundaryMismatch("left whiskering functor does not start at the cell's codomain")
        F, G = compose_functors(left, F), compose_functors(left, G)
        comps = [left.mor[x] for x in comps]
        inv = None if inv is None else [left.mor[x] for x in inv]
    return FinNatTrans(F, G, comps, inverse=inv, check=False)


def whisker_and_vcompose(parts):
    """Evaluate a vertical list of whiskered cells ``(left, cell, right)``."""
    parts = list(parts)
    if not parts:
        raise NonComposableCells("empty composite")
    result = None
    for left, cell, right in parts:
        piece = whisker(left, cell, right)
        result = piece if result is None else vcompose(piece, result)
    return result


# -- weight catalogue -------------------------------------------------------

FAMILIES = ("product", "pullback", "comma", "power2", "lax", "colax")


@dataclass(frozen=True)
class Kind:
    family: str
    arity: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ShapeMismatch(f"unknown weight family {self.family!r}")

    @property
    def has_cell(self):
        return self.family in ("comma", "power2", "lax", "colax")

    def __str__(self):
        if self.family == "product":
            return f"product({self.arity})"
        return self.family


def TightProduct(n):
    return Kind("product", int(n))


TightTerminal = Kind("product", 0)
TightPullback = Kind("pullback", 2)
TightComma = Kind("comma", 2)
Power2 = Kind("power2", 2)
LaxLimitOfArrow = Kind("lax", 2)
ColaxLimitOfArrow = Kind("colax", 2)


def kind_of(family, arity=None):
    if family == "terminal":
        return TightTerminal
    if family == "product":
        return TightProduct(arity)
    return Kind(family, 2)


class ConeWitness:
    """A cone of a catalogue kind: apex, projections and (for the
    two-dimensional kinds) a cell.

    Projection order is fixed per kind: product factors in order;
    ``(left, right)`` for pullbacks and commas; ``(source, target)`` for the
    power by the interval; ``(dom, cod)`` for lax and colax limits of an
    arrow.  The cell is ``f p0 => g p1`` for commas, ``p0 => p1`` for powers,
    ``f dom => cod`` for lax limits and ``cod => g dom`` for colax limits.
    """

    __slots__ = ("kind", "apex", "projections", "cell", "encoding")

    def __init__(self, kind, apex, projections, cell=None, encoding=None):
        self.kind = kind
        self.apex = apex
        self.projections = tuple(projections)
        self.cell = cell
        self.encoding = encoding

    def __repr__(self):
        return f"ConeWitness({self.kind}, apex={self.apex!r})"


def _diagram_parts(kind, diagram):
    """Normalise a diagram to (legs, factor categories, comma pair)."""
    diagram = tuple(diagram)
    fam = kind.family
    if fam == "product":
        if len(diagram) != kind.arity or not all(isinstance(c, FinCat) for c in diagram):
            raise ShapeMismatch(f"{kind} needs {kind.arity} categories")
        return diagram
    if fam in ("pullback", "comma"):
        if len(diagram) != 2 or not all(isinstance(f, FinFunctor) for f in diagram):
            raise ShapeMismatch(f"{kind} needs a cospan of two functors")
        f, g = diagram
        if f.target != g.target:
            raise ShapeMismatch(f"{kind} needs functors with a common target")
        return diagram
    if fam == "power2":
        if len(diagram) != 1 or not isinstance(diagram[0], FinCat):
            raise ShapeMismatch("power2 needs one category")
        return diagram
    if len(diagram) != 1 or not isinstance(diagram[0], FinFunctor):
        raise ShapeMismatch(f"{kind} needs a single functor")
    return diagram


def _comma_pair(kind, diagram):
    fam = kind.family
    if fam == "comma":
        return diagram
    if fam == "power2":
        idx = identity_functor(diagram[0])
        return idx, idx
    if fam == "lax":
        f = diagram[0]
        return f, identity_functor(f.target)
    g = diagram[0]
    return identity_functor(g.target), g


def _label(parts):
    return "(" + ",".join(parts) + ")"


def _unique_labels(labels, keys):
    if len(set(labels)) == len(labels):
        return labels
    return [_label(str(i) for i in k) for k in keys]


class _Encoding:
    __slots__ = ("obj", "mor")

    def __init__(self, obj, mor):
        self.obj = obj
        self.mor = mor


def _product(cats):
    obj_keys = list(itertools.product(*[range(C.n_obj) for C in cats]))
    obj_pos = {k: i for i, k in enumerate(obj_keys)}
    mor_keys = list(itertools.product(*[range(C.n_mor) for C in cats]))
    mor_pos = {k: i for i, k in enumerate(mor_keys)}
    objects = _unique_labels(
        [_label(C.objects[x] for C, x in zip(cats, k)) for k in obj_keys], obj_keys)
    mor_labels = _unique_labels(
        [_label(C.mor_ids[x] for C, x in zip(cats, k)) for k in mor_keys], mor_keys)
    morphisms = []
    for k, label in zip(mor_keys, mor_labels):
        s = obj_pos[tuple(C.src[x] for C, x in zip(cats, k))]
        t = obj_pos[tuple(C.tgt[x] for C, x in zip(cats, k))]
        morphisms.append((label, s, t))
    compose = []
    for entries in itertools.product(*[list(C.comp.items()) for C in cats]):
        g = tuple(e[0][0] for e in entries)
        f = tuple(e[0][1] for e in entries)
        h = tuple(e[1] for e in entries)
        compose.append((mor_pos[g], mor_pos[f], mor_pos[h]))
    identities = [mor_pos[tuple(C.identities[x] for C, x in zip(cats, k))] for k in obj_keys]
    P = FinCat(objects, morphisms, compose, identities=identities, check=False)
    projections = []
    for j, C in enumerate(cats):
        projections.append(FinFunctor(P, C, [k[j] for k in obj_keys],
                                      [k[j] for k in mor_keys], check=False))
    return P, projections, _Encoding(obj_pos, mor_pos)


def _pullback(f, g):
    X, Z = f.source, g.source
    obj_keys = [(x, z) for x in range(X.n_obj) for z in range(Z.n_obj) if f.ob[x] == g.ob[z]]
    obj_pos = {k: i for i, k in enumerate(obj_keys)}
    mor_keys = [(u, v) for u in range(X.n_mor) for v in range(Z.n_mor)
                if f.mor[u] == g.mor[v]]
    mor_pos = {k: i for i, k in enumerate(mor_keys)}
    objects = _unique_labels([_label((X.objects[x], Z.objects[z])) for x, z in obj_keys],
                             obj_keys)
    labels = _unique_labels([_label((X.mor_ids[u], Z.mor_ids[v])) for u, v in mor_keys],
                            mor_keys)
    morphisms = [(lab, obj_pos[(X.src[u], Z.src[v])], obj_pos[(X.tgt[u], Z.tgt[v])])
                 for lab, (u, v) in zip(labels, mor_keys)]
    compose = []
    for (u2, u1), u in X.comp.items():
        for (v2, v1), v in Z.comp.items():
            if (u2, v2) in mor_pos and (u1, v1) in mor_pos:
                compose.append((mor_pos[(u2, v2)], mor_pos[(u1, v1)], mor_pos[(u, v)]))
    identities = [mor_pos[(X.identities[x], Z.identities[z])] for x, z in obj_keys]
    P = FinCat(objects, morphisms, compose, identities=identities, check=False)
    p0 = FinFunctor(P, X, [k[0] for k in obj_keys], [k[0] for k in mor_keys], check=False)
    p1 = FinFunctor(P, Z, [k[1] for k in obj_keys], [k[1] for k in mor_keys], check=False)
    return P, [p0, p1], _Encoding(obj_pos, mor_pos)


def _comma(f, g):
    X, Z, Y = f.source, g.source, f.target
    obj_keys = [(x, z, b) for x in range(X.n_obj) for z in range(Z.n_obj)
                for b in Y.hom(f.ob[x], g.ob[z])]
    obj_pos = {k: i for i, k in enumerate(obj_keys)}
    mor_keys = []
    for i, (x, z, b) in enumerate(obj_keys):
        for j, (x2, z2, b2) in enumerate(obj_keys):
            for u in X.hom(x, x2):
                fu = f.mor[u]
                for v in Z.hom(z, z2):
                    if Y.comp[(g.mor[v], b)] == Y.comp[(b2, fu)]:
                        mor_keys.append((i, j, u, v))
    mor_pos = {k: n for n, k in enumerate(mor_keys)}
    objects = _unique_labels(
        [_label((X.objects[x], Z.objects[z], Y.mor_ids[b])) for x, z, b in obj_keys], obj_keys)
    labels = []
    for i, j, u, v in mor_keys:
        labels.append(f"({X.mor_ids[u]},{Z.mor_ids[v]};{Y.mor_ids[obj_keys[i][2]]}>"
                      f"{Y.mor_ids[obj_keys[j][2]]})")
    labels = _unique_labels(labels, mor_keys)
    morphisms = [(lab, k[0], k[1]) for lab, k in zip(labels, mor_keys)]
    into = {}
    out = {}
    for n, (i, j, u, v) in enumerate(mor_keys):
        into.setdefault(j, []).append(n)
        out.setdefault(i, []).append(n)
    compose = []
    for mid in range(len(obj_keys)):
        for a in into.get(mid, ()):
            i, _, u1, v1 = mor_keys[a]
            for b in out.get(mid, ()):
                _, j, u2, v2 = mor_keys[b]
                h = mor_pos[(i, j, X.comp[(u2, u1)], Z.comp[(v2, v1)])]
                compose.append((b, a, h))
    identities = [mor_pos[(i, i, X.identities[x], Z.identities[z])]
                  for i, (x, z, _) in enumerate(obj_keys)]
    P = FinCat(objects, morphisms, compose, identities=identities, check=False)
    p0 = FinFunctor(P, X, [k[0] for k in obj_keys], [k[2] for k in mor_keys], check=False)
    p1 = FinFunctor(P, Z, [k[1] for k in obj_keys], [k[3] for k in mor_keys], check=False)
    cell = FinNatTrans(compose_functors(f, p0), compose_functors(g, p1),
                       [k[2] for k in obj_keys], check=False)
    return P, [p0, p1], cell, _Encoding(obj_pos, mor_pos)


def canonical_limit(kind, diagram):
    """The canonical limit cone of ``kind`` over ``diagram``.

    Objects of products and pullbacks are index tuples; objects of commas
    are triples ``(x, z, b)`` with ``b: f x -> g z``.  All encodings are
    ordered lexicographically by index tuple.
    """
    diagram = _diagram_parts(kind, diagram)
    fam = kind.family
    if fam == "product":
        P, projs, enc = _product(diagram)
        return ConeWitness(kind, P, projs, None, enc)
    if fam == "pullback":
        P, projs, enc = _pullback(*diagram)
        return ConeWitness(kind, P, projs, None, enc)
    f, g = _comma_pair(kind, diagram)
    P, (p0, p1), cell, enc = _comma(f, g)
    projs = [p1, p0] if fam == "colax" else [p0, p1]
    return ConeWitness(kind, P, projs, cell, enc)


def _expected_targets(kind, diagram):
    fam = kind.family
    if fam == "product":
        return list(diagram)
    if fam in ("pullback", "comma"):
        return [diagram[0].source, diagram[1].source]
    if fam == "power2":
        return [diagram[0], diagram[0]]
    arrow = diagram[0]
    if fam == "lax":
        return [arrow.source, arrow.target]
    return [arrow.source, arrow.target]


def _typing_problem(candidate, diagram):
    kind = candidate.kind
    projs = candidate.projections
    targets = _expected_targets(kind, diagram)
    if len(projs) != len(targets):
        return f"{kind} cone needs {len(targets)} projections, got {len(projs)}"
    for k, (p, T) in enumerate(zip(projs, targets)):
        if p.source != candidate.apex:
            return f"projection {k} does not start at the apex"
        if p.target != T:
            return f"projection {k} lands in the wrong category"
    fam = kind.family
    if fam == "pullback":
        f, g = diagram
        if compose_functors(f, projs[0]) != compose_functors(g, projs[1]):
            return "pullback cone does not commute"
    if kind.has_cell:
        if candidate.cell is None:
            return f"{kind} cone is missing its cell"
        f, g = _comma_pair(kind, diagram)
        pX, pZ = comma_order(kind, projs)
        if candidate.cell.source != compose_functors(f, pX) or \
                candidate.cell.target != compose_functors(g, pZ):
            return f"{kind} cell has the wrong boundary"
    return None


def comma_order(kind, pair):
    """Reorder (dom, cod) projections of a colax cone into comma order."""
    return (pair[1], pair[0]) if kind.family == "colax" else (pair[0], pair[1])


def _comparison(candidate, canon):
    kind, A, projs = candidate.kind, candidate.apex, candidate.projections
    if kind.has_cell:
        pX, pZ = comma_order(kind, projs)
        cell = candidate.cell.components
        ob = [canon.encoding.obj[(pX.ob[a], pZ.ob[a], cell[a])] for a in range(A.n_obj)]
        mor = [canon.encoding.mor[(ob[A.src[u]], ob[A.tgt[u]], pX.mor[u], pZ.mor[u])]
               for u in range(A.n_mor)]
    else:
        ob = [canon.encoding.obj[tuple(p.ob[a] for p in projs)] for a in range(A.n_obj)]
        mor = [canon.encoding.mor[tuple(p.mor[u] for p in projs)] for u in range(A.n_mor)]
    return ob, mor


def mediate(candidate, diagram, canon=None):
    """The functor from a cone's apex into the canonical limit that its
    projections (and cell) induce; defined for any well-typed cone."""
    diagram = _diagram_parts(candidate.kind, diagram)
    problem = _typing_problem(candidate, diagram)
    if problem:
        raise BoundaryMismatch(problem)
    canon = canon or canonical_limit(candidate.kind, diagram)
    ob, mor = _comparison(candidate, canon)
    return FinFunctor(candidate.apex, canon.apex, ob, mor, check=False)


def lift_cell(canon, F, G, legs):
    """The transformation F => G into a canonical limit whose image under
    each projection is given by ``legs`` (components per leg, in
    projection order for products and pullbacks, comma order otherwise)."""
    A = F.source
    comps = []
    for a in range(A.n_obj):
        key = tuple(leg[a] for leg in legs)
        if canon.kind.has_cell:
            key = (F.ob[a], G.ob[a]) + key
        comps.append(canon.encoding.mor[key])
    return FinNatTrans(F, G, comps, check=False)


def verify_cone(candidate, diagram):
    """Accept iff the comparison functor from the candidate apex to the
    canonical limit is an isomorphism of categories."""
    diagram = _diagram_parts(candidate.kind, diagram)
    kind = candidate.kind
    problem = _typing_problem(candidate, diagram)
    if problem:
        return VerificationReport.reject(problem, {"kind": str(kind)})
    canon = canonical_limit(kind, diagram)
    A, L = candidate.apex, canon.apex
    ob, mor = _comparison(candidate, canon)
    details = {"kind": str(kind), "apex_objects": A.n_obj, "limit_objects": L.n_obj,
               "apex_morphisms": A.n_mor, "limit_morphisms": L.n_mor}
    if len(set(ob)) != len(ob):
        return VerificationReport.reject("comparison functor is not injective on objects", details)
    if len(ob) != L.n_obj:
        return VerificationReport.reject(
            f"comparison functor is not surjective on objects ({A.n_obj} vs {L.n_obj})", details)
    if len(set(mor)) != len(mor):
        return VerificationReport.reject(
            "comparison functor is not injective on morphisms", details)
    if len(mor) != L.n_mor:
        return VerificationReport.reject(
            f"comparison functor is not surjective on morphisms ({A.n_mor} vs {L.n_mor})",
            details)
    comparison = FinFunctor(A, L, ob, mor, check=False)
    return VerificationReport.accept(details, witness=(comparison, canon))


# -- enumeration -----------------------------------------------------------

class _Budget:
    __slots__ = ("limit", "used", "what")

    def __init__(self, limit, what):
        self.limit = DEFAULT_BUDGET if limit is None else int(limit)
        self.used = 0
        self.what = what

    def spend(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise SearchBudgetExceeded(self.limit, self.what)


def enumerate_functors(C, D, budget=None):
    """All functors C -> D in lexicographic order of (object map, morphism map).

    The budget bounds the number of candidate assignments examined.
    """
    spend = _Budget(budget, "functor enumeration").spend
    order = [f for f in range(C.n_mor) if not C.is_identity(f)]
    pos = {f: i for i, f in enumerate(order)}
    checks = [[] for _ in order]
    for (g, f), h in C.comp.items():
        ranks = [pos.get(x, -1) for x in (g, f, h)]
        last = max(ranks)
        if last >= 0:
            checks[last].append((g, f, h))
    results = []
    ob = [0] * C.n_obj
    mor = [0] * C.n_mor

    def assign_mor(k):
        if k == len(order):
            results.append(FinFunctor(C, D, ob, mor, check=False))
            return
        f = order[k]
        for cand in D.hom(ob[C.src[f]], ob[C.tgt[f]]):
            spend()
            mor[f] = cand
            if all(D.comp[(mor[g], mor[h0])] == mor[h] for g, h0, h in checks[k]):
                assign_mor(k + 1)

    def assign_ob(a):
        if a == C.n_obj:
            for x in range(C.n_obj):
                mor[C.identities[x]] = D.identities[ob[x]]
            for g, f, h in checks_identity:
                if D.comp[(mor[g], mor[f])] != mor[h]:
                    return
            assign_mor(0)
            return
        for d in range(D.n_obj):
            spend()
            ob[a] = d
            assign_ob(a + 1)

    checks_identity = [(g, f, h) for (g, f), h in C.comp.items()
                       if all(x not in pos for x in (g, f, h))]
    assign_ob(0)
    return results


def enumerate_nat_trans(F, G, budget=None):
    """All natural transformations F => G, lexicographic in the components."""
    if F.source != G.source or F.target != G.target:
        raise BoundaryMismatch("functors are not parallel")
    spend = _Budget(budget, "transformation enumeration").spend
    C, D = F.source, F.target
    checks = [[] for _ in range(C.n_obj)]
    for f in range(C.n_mor):
        checks[max(C.src[f], C.tgt[f])].append(f)
    comps = [0] * C.n_obj
    results = []

    def assign(c):
        if c == C.n_obj:
            results.append(FinNatTrans(F, G, comps, check=False))
            return
        for cand in D.hom(F.ob[c], G.ob[c]):
            spend()
            comps[c] = cand
            if all(D.comp[(G.mor[f], comps[C.src[f]])] == D.comp[(comps[C.tgt[f]], F.mor[f])]
                   for f in checks[c]):
                assign(c + 1)

    assign(0)
    return results


# -- small standard categories ----------------------------------------------

def terminal():
    return FinCat(["*"], [("1", 0, 0)], [(0, 0, 0)])


def discrete(names):
    names = list(names)
    return FinCat(names, [(f"1_{n}", i, i) for i, n in enumerate(names)],
                  [(i, i, i) for i in range(len(names))])


def from_preorder(elements, leq, name=str):
    """The thin category of a finite preorder; morphism ids are ``a<=b``."""
    elements = list(elements)
    objects = [name(e) for e in elements]
    pairs = [(i, j) for i in range(len(elements)) for j in range(len(elements))
             if leq(elements[i], elements[j])]
    # identities first so that the table reads naturally
    pairs.sort(key=lambda p: (p[0] != p[1], p))
    pos = {p: k for k, p in enumerate(pairs)}
    morphisms = [(f"{objects[i]}<={objects[j]}", i, j) for i, j in pairs]
    compose = []
    for (j, k) in pairs:
        for (i, j2) in pairs:
            if j2 == j:
                if (i, k) not in pos:
                    raise InvalidData("relation is not transitive")
                compose.append((pos[(j, k)], pos[(i, j)], pos[(i, k)]))
    return FinCat(objects, morphisms, compose)


def codiscrete(names):
    """Exactly one morphism between any two objects."""
    names = list(names)
    return from_preorder(names, lambda a, b: True)


def arrow():
    """The free-standing arrow 0 -> 1."""
    return from_preorder([0, 1], lambda a, b: a <= b)


def iso():
    """The free-standing isomorphism between two objects 0 and 1."""
    return codiscrete(["0", "1"])


def from_monoid(elements, mult, unit, obj="*"):
    """A one-object category whose morphisms are the monoid elements."""
    elements = list(elements)
    pos = {e: i for i, e in enumerate(elements)}
    if unit not in pos:
        raise InvalidData("unit is not an element")
    morphisms = [(str(e), 0, 0) for e in elements]
    compose = [(pos[g], pos[f], pos[mult(g, f)]) for g in elements for f in elements]
    return FinCat([obj], morphisms, compose)


def free_on_dag(objects, edges):
    """The free category on a finite acyclic graph; paths are morphisms.

    ``edges`` are ``(name, src, tgt)`` with object names; a path is
    labelled by its edge names in application order joined with ``;``.
    """
    objects = list(objects)
    opos = {o: i for i, o in enumerate(objects)}
    paths = [((), opos[o], opos[o]) for o in objects]
    frontier = [p for p in paths]
    edge_list = [(n, opos[s], opos[t]) for n, s, t in edges]
    while frontier:
        nxt = []
        for path, s, t in frontier:
            for n, es, et in edge_list:
                if es == t:
                    new = (path + (n,), s, et)
                    if len(new[0]) > len(objects) + len(edge_list):
                        raise InvalidData("graph has a cycle")
                    nxt.append(new)
        paths.extend(nxt)
        frontier = nxt
    labels = [";".join(p) if p else f"1_{objects[s]}" for p, s, _ in paths]
    pos = {(p, s): k for k, (p, s, _) in enumerate(paths)}
    morphisms = [(lab, s, t) for lab, (_, s, t) in zip(labels, paths)]
    compose = []
    for gi, (gp, gs, gt) in enumerate(paths):
        for fi, (fp, fs, ft) in enumerate(paths):
            if ft == gs:
                compose.append((gi, fi, pos[(fp + gp, fs)]))
    return FinCat(objects, morphisms, compose)
