"""Concrete targets for models.

A target exposes 1-cell and 2-cell algebra, tightness, hom enumeration and
a limit verifier for cone instances.  ``ChordFinCat`` is the engine of
finite categories with every functor tight; ``ExplicitFiniteFCat`` wraps a
finite enhanced 2-category given by tables.
"""
from . import fincat as fc
from .enhanced import validate_finite_fcat
from .errors import BoundaryMismatch, InvalidData, NonComposableCells
from .report import VerificationReport
from .weights import schema


class Target:
    """Interface shared by all targets."""

    name = "target"

    def is_tight(self, f):
        raise NotImplementedError

    def same_obj(self, a, b):
        return a == b

    def check_object(self, value, budget=None):
        """Extra validation of an assigned value; None means nothing to check."""
        return None

    def check_one(self, value, budget=None):
        return None

    def check_two(self, value, budget=None):
        return None

    def identity_witness(self, f):
        return self.id2(f)

    def cell_is_weak(self, a, w):
        """Whether the 2-cell ``a`` is a w-cell: identity for s, invertible for p."""
        if w.value == "s":
            return self.is_id2(a)
        if w.value == "p":
            return self.inverse2(a) is not None
        return True


class ChordFinCat(Target):
    name = "chord-fincat"

    def id1(self, A):
        return fc.identity_functor(A)

    def comp1(self, g, f):
        return fc.compose_functors(g, f)

    def src1(self, f):
        return f.source

    def tgt1(self, f):
        return f.target

    def eq1(self, f, g):
        return f == g

    def id2(self, f):
        return fc.identity_trans(f)

    def vcomp(self, b, a):
        return fc.vcompose(b, a)

    def whisker(self, left, a, right):
        return fc.whisker(left, a, right)

    def inverse2(self, a):
        return a.inverse()

    def is_id2(self, a):
        return a.is_identity()

    def src2(self, a):
        return a.source

    def tgt2(self, a):
        return a.target

    def eq2(self, a, b):
        return a == b

    def is_tight(self, f):
        return True

    def homs(self, A, B, budget=None):
        return fc.enumerate_functors(A, B, budget)

    def cells(self, f, g, budget=None):
        return fc.enumerate_nat_trans(f, g, budget)

    def verify_cone(self, kind, apex, projections, cell, over):
        diagram = cone_diagram(kind, projections, over)
        witness = fc.ConeWitness(kind, apex, projections, cell)
        return fc.verify_cone(witness, diagram)

    # serialization
    def obj_to_json(self, A):
        return A.to_json()

    def obj_from_json(self, data):
        return fc.FinCat.from_json(data)

    def one_to_json(self, f):
        return f.to_json()

    def one_from_json(self, data, A, B):
        return fc.FinFunctor.from_json(data, A, B)

    def two_to_json(self, a):
        return a.to_json()

    def two_from_json(self, data, f, g):
        return fc.FinNatTrans.from_json(data, f, g)


def cone_diagram(kind, projections, over):
    """Engine diagram for a cone: factor objects, cospan legs or the arrow."""
    fam = kind.family
    if fam == "product":
        return [p.target for p in projections]
    if fam in ("pullback", "comma"):
        return list(over)
    if fam == "power2":
        return [projections[0].target]
    return [over[0]]


class ExplicitFiniteFCat(Target):
    """A finite enhanced 2-category; cells are table indices."""

    name = "explicit"

    def __init__(self, k):
        report = validate_finite_fcat(k)
        if not report:
            raise InvalidData(f"not a finite enhanced 2-category: {report.first_failure}")
        if k.tight is None:
            raise InvalidData("explicit targets need tight flags")
        self.k = k

    def id1(self, a):
        return self.k.one.identities[a]

    def comp1(self, g, f):
        return self.k.one.compose(g, f)

    def src1(self, f):
        return self.k.one.src[f]

    def tgt1(self, f):
        return self.k.one.tgt[f]

    def eq1(self, f, g):
        return f == g

    def id2(self, f):
        return self.k.id2[f]

    def vcomp(self, b, a):
        try:
            return self.k.vcomp[(b, a)]
        except KeyError:
            raise NonComposableCells("cells are not vertically composable") from None

    def whisker(self, left, a, right):
        k = self.k
        try:
            if right is not None:
                a = k.hcomp[(a, k.id2[right])]
            if left is not None:
                a = k.hcomp[(k.id2[left], a)]
        except KeyError:
            raise BoundaryMismatch("whiskering 1-cell does not compose") from None
        return a

    def inverse2(self, a):
        k = self.k
        f, g = k.csrc[a], k.ctgt[a]
        for b in range(len(k.cells)):
            if k.csrc[b] == g and k.ctgt[b] == f and k.vcomp[(b, a)] == k.id2[f] \
                    and k.vcomp[(a, b)] == k.id2[g]:
                return b
        return None

    def is_id2(self, a):
        return self.k.id2[self.k.csrc[a]] == a

    def src2(self, a):
        return self.k.csrc[a]

    def tgt2(self, a):
        return self.k.ctgt[a]

    def eq2(self, a, b):
        return a == b

    def is_tight(self, f):
        return self.k.is_tight(f)

    def homs(self, A, B, budget=None):
        return list(self.k.one.hom(A, B))

    def cells(self, f, g, budget=None):
        k = self.k
        return [x for x in range(len(k.cells)) if k.csrc[x] == f and k.ctgt[x] == g]

    def representable(self, X):
        """Hom(X, -) on 1-cells and 2-cells, as engine functors and transformations."""
        k = self.k
        C = k.one

        def on_obj(A):
            return k.hom(X, A)

        def on_one(f):
            H, ones, twos = on_obj(C.src[f])
            H2, ones2, twos2 = on_obj(C.tgt[f])
            opos = {g: i for i, g in enumerate(ones2)}
            tpos = {x: i for i, x in enumerate(twos2)}
            idf = k.id2[f]
            return fc.FinFunctor(H, H2, [opos[C.comp[(f, h)]] for h in ones],
                                 [tpos[k.hcomp[(idf, x)]] for x in twos], check=False)

        def on_two(a):
            F, G = on_one(k.csrc[a]), on_one(k.ctgt[a])
            H, ones, _ = on_obj(C.src[k.csrc[a]])
            _, _, twos2 = on_obj(C.tgt[k.csrc[a]])
            tpos = {x: i for i, x in enumerate(twos2)}
            return fc.FinNatTrans(F, G, [tpos[k.hcomp[(a, k.id2[h])]] for h in ones],
                                  check=False)

        return on_obj, on_one, on_two

    def verify_cone(self, kind, apex, projections, cell, over):
        k = self.k
        C = k.one
        tight_slots = schema(kind).tight_slots
        slots = schema(kind).proj_slots
        for X in range(C.n_obj):
            on_obj, on_one, on_two = self.representable(X)
            H = on_obj(apex)[0]
            projs = [on_one(p) for p in projections]
            witness = fc.ConeWitness(kind, H, projs, on_two(cell) if cell is not None else None)
            diagram = cone_diagram(kind, projs, [on_one(f) for f in over])
            report = fc.verify_cone(witness, diagram)
            if not report:
                return VerificationReport.reject(
                    f"not a limit as seen from {C.objects[X]!r}: {report.first_failure}",
                    report.details)
            for h in on_obj(apex)[1]:
                legs = [C.comp[(p, h)] for s, p in zip(slots, projections) if s in tight_slots]
                if all(k.is_tight(x) for x in legs) and not k.is_tight(h):
                    return VerificationReport.reject(
                        f"projections do not detect tightness of {C.mor_ids[h]!r}")
        return VerificationReport.accept({"kind": str(kind)})

    def obj_to_json(self, A):
        return A

    def obj_from_json(self, data):
        return int(data)

    def one_to_json(self, f):
        return f

    def one_from_json(self, data, A, B):
        f = int(data)
        if self.src1(f) != A or self.tgt1(f) != B:
            raise InvalidData("1-cell has the wrong boundary")
        return f

    def two_to_json(self, a):
        return a

    def two_from_json(self, data, f, g):
        a = int(data)
        if self.src2(a) != f or self.tgt2(a) != g:
            raise InvalidData("2-cell has the wrong boundary")
        return a
