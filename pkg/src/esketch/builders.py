"""Constructors for concrete models and transformations in finite categories.

Sketches in the catalogue define most of their auxiliary generators by
equations against cone projections (``p2_1 . mM == m . q12``).  The
completion helpers here assign every such generator, cell and component
from the data the caller supplies, using the canonical engine limits.
"""
import itertools

from . import fincat as fc
from .enhanced import Path, Weakness
from .errors import InvalidData
from .models import Model, WTransform, eval_expr, eval_path, path_witness
from .sketches import builtin
from .targets import ChordFinCat, cone_diagram

S, P, L, C = Weakness.S, Weakness.P, Weakness.L, Weakness.C


def power(C_, n):
    """Canonical n-fold power cone of a finite category."""
    return fc.canonical_limit(fc.TightProduct(n), [C_] * n)


def _single(path):
    return path.gens[0] if len(path.gens) == 1 else None


def _defining_equations(p, gen, proj):
    """Right-hand sides ``rhs`` with ``proj . gen == rhs`` among the equations."""
    want = (gen, proj)
    for e in p.eqs1:
        if e.lhs.gens == want:
            yield e.rhs
        elif e.rhs.gens == want:
            yield e.lhs


def _cell_equation(p, cell, proj):
    for e in p.eqs2:
        for side, other in ((e.lhs, e.rhs), (e.rhs, e.lhs)):
            if len(side.atoms) == 1:
                a = side.atoms[0]
                if a.cell.op == "gen" and a.cell.name == cell and a.left.gens == (proj,) \
                        and not a.right.gens:
                    return other
    return None


def _evaluable(assigned, path):
    return all(g in assigned for g in path.gens)


def _expr_names(expr):
    ones, twos = set(), set()
    for a in expr.atoms:
        ones.update(a.left.gens)
        ones.update(a.right.gens)
        if a.cell.op == "id":
            ones.update(a.cell.path.gens)
        else:
            twos.add(a.cell.name)
    return ones, twos


def complete_model(sketch, objects, morphisms, cells=None, target=None):
    """Fill in cone apexes, projections, and every generator or cell that
    the projection equations determine.  Raises InvalidData if something
    stays unassigned."""
    T = target or ChordFinCat()
    p = sketch.presentation
    objects, morphisms, cells = dict(objects), dict(morphisms), dict(cells or {})
    canon = {}
    progress = True
    while progress:
        progress = False
        for cone in sketch.cones:
            if cone.apex in canon:
                continue
            needed = [q for _, q in cone.proj] if cone.kind.family == "product" else \
                [q for _, q in cone.over]
            if cone.kind.family in ("product", "power2"):
                if not all(q.tgt in objects for _, q in cone.proj):
                    continue
                diagram = [objects[q.tgt] for _, q in cone.proj]
                if cone.kind.family == "power2":
                    diagram = diagram[:1]
            else:
                if not all(_evaluable(morphisms, q) and q.src in objects for q in needed):
                    continue
                diagram = cone_diagram(cone.kind, [], [eval_path(Model(sketch, T, objects, morphisms), q) for q in needed])
            lim = fc.canonical_limit(cone.kind, diagram)
            if cone.apex in objects and objects[cone.apex] != lim.apex:
                raise InvalidData(f"value at {cone.apex!r} is not the canonical limit")
            canon[cone.apex] = (cone, lim, diagram)
            objects[cone.apex] = lim.apex
            for (_, q), pr in zip(cone.proj, lim.projections):
                g = _single(q)
                if g is not None and g not in morphisms:
                    morphisms[g] = pr
            if cone.cell is not None and cone.cell not in cells:
                cells[cone.cell] = lim.cell
            progress = True
        for g in p.gen1:
            if g.name in morphisms or g.tgt not in canon or g.src not in objects:
                continue
            cone, lim, diagram = canon[g.tgt]
            if cone.kind.has_cell:
                continue
            legs = []
            for _, q in cone.proj:
                rhs = next((r for r in _defining_equations(p, g.name, _single(q))
                            if _evaluable(morphisms, r)), None)
                if rhs is None:
                    break
                legs.append(eval_path(Model(sketch, T, objects, morphisms), rhs))
            else:
                cand = fc.ConeWitness(cone.kind, objects[g.src], legs)
                morphisms[g.name] = fc.mediate(cand, diagram, lim)
                progress = True
        for g in p.gen2:
            tgt_obj = g.source.tgt
            if g.name in cells or tgt_obj not in canon:
                continue
            if not (_evaluable(morphisms, g.source) and _evaluable(morphisms, g.target)):
                continue
            cone, lim, _ = canon[tgt_obj]
            if cone.kind.has_cell:
                continue
            legs = []
            for _, q in cone.proj:
                expr = _cell_equation(p, g.name, _single(q))
                if expr is None:
                    break
                ones, twos = _expr_names(expr)
                if not ones <= morphisms.keys() or not twos <= cells.keys():
                    break
                legs.append(eval_expr(Model(sketch, T, objects, morphisms, cells), expr).components)
            else:
                partial = Model(sketch, T, objects, morphisms, cells)
                F, G = eval_path(partial, g.source), eval_path(partial, g.target)
                cells[g.name] = fc.lift_cell(lim, F, G, legs)
                progress = True
    missing = [o for o in p.objects if o not in objects] + \
        [g.name for g in p.gen1 if g.name not in morphisms] + \
        [g.name for g in p.gen2 if g.name not in cells]
    if missing:
        raise InvalidData(f"cannot determine {missing}")
    return Model(sketch, T, objects, morphisms, cells)


def complete_transformation(M, N, wp, w, components, witnesses=None, derive=True):
    """Fill in the components at cone apexes and the witnesses at generators
    into cone apexes, from the supplied base data and the projection
    equations.  Missing witnesses elsewhere stay identities.  With
    ``derive=False`` only the components are filled in."""
    p = M.sketch.presentation
    T = M.target
    comps = dict(components)
    given = dict(witnesses or {})
    apexes = {}
    for cone in M.sketch.cones:
        if cone.kind.has_cell:
            continue
        if cone.kind.family == "product":
            diagram = [N.obj(q.tgt) for _, q in cone.proj]
        else:
            diagram = [eval_path(N, q) for _, q in cone.over]
        apexes[cone.apex] = (cone, fc.canonical_limit(cone.kind, diagram), diagram)
    lax = w != C
    progress = True
    while progress:
        progress = False
        for apex, (cone, lim, diagram) in apexes.items():
            if apex in comps:
                continue
            feet = [q.tgt for _, q in cone.proj]
            if not all(x in comps for x in feet):
                continue
            legs = [T.comp1(comps[q.tgt], eval_path(M, q)) for _, q in cone.proj]
            if any(_single(q) in given for _, q in cone.proj):
                raise InvalidData("components at an apex with non-strict projections "
                                  "must be supplied")
            cand = fc.ConeWitness(cone.kind, M.obj(apex), legs)
            comps[apex] = fc.mediate(cand, diagram, lim)
            progress = True
    derived = {}
    pending = [g for g in p.gen1 if g.name not in given and g.tgt in apexes] if derive else []
    progress = True
    while pending and progress:
        progress = False
        for g in list(pending):
            if g.src not in comps or g.tgt not in comps:
                continue
            cone, lim, _ = apexes[g.tgt]
            known = set(given) | set(derived)
            blockers = {x.name for x in pending}
            legs = []
            t = WTransform(M, N, wp, w, comps, {**given, **derived})
            if any(_single(q) == g.name for _, q in cone.proj):
                # the generator projects onto itself: nothing to derive from
                if not T.eq1(*t.boundary(g.name)):
                    raise InvalidData(f"a witness at {g.name!r} is required")
                pending.remove(g)
                progress = True
                continue
            for _, q in cone.proj:
                proj = _single(q)
                if proj in blockers:
                    break
                rhs = next((r for r in _defining_equations(p, g.name, proj)
                            if not (set(r.gens) & blockers)), None)
                if rhs is None:
                    break
                for x in rhs.gens:
                    if x not in known and not T.eq1(*t.boundary(x)):
                        raise InvalidData(f"a witness at {x!r} is required")
                leg = path_witness(t, rhs)
                if proj in known:
                    fix = T.inverse2(T.whisker(None, t.witness(proj), M.one(g.name)))
                    leg = T.vcomp(fix, leg) if lax else T.vcomp(leg, fix)
                legs.append(leg.components)
            else:
                a, b = t.boundary(g.name)
                cell = fc.lift_cell(lim, a, b, legs)
                if not (T.eq1(a, b) and cell.is_identity()):
                    derived[g.name] = cell
                pending.remove(g)
                progress = True
    for g in pending:
        raise InvalidData(f"cannot derive the witness at {g.name!r}")
    missing = [o for o in p.objects if o not in comps]
    if missing:
        raise InvalidData(f"components missing at {missing}")
    return WTransform(M, N, wp, w, comps, {**given, **derived})


# -- monoidal categories -------------------------------------------------------------

def _nat(F, G, comp):
    return fc.FinNatTrans(F, G, [comp(a) for a in range(F.source.n_obj)])


def _decode(lim):
    """Index tuples of the objects and morphisms of a canonical product."""
    obj = {i: k for k, i in lim.encoding.obj.items()}
    mor = {i: k for k, i in lim.encoding.mor.items()}
    return obj, mor


def pseudomonoid_model(C_, tensor_ob, tensor_mor, unit, alpha=None, lam=None, rho=None):
    """A monoidal structure on ``C_`` as a model of the pseudomonoid sketch.

    ``tensor_ob(a, b)`` and ``tensor_mor(f, g)`` give the tensor on object
    and morphism indices; the coherence cells are functions of object
    indices returning morphism indices (identities when omitted, i.e. a
    strict monoidal category).
    """
    sk = builtin("pseudomonoid")
    C2 = power(C_, 2)
    obj2, mor2 = _decode(C2)
    m = fc.FinFunctor(C2.apex, C_, [tensor_ob(*obj2[x]) for x in range(C2.apex.n_obj)],
                      [tensor_mor(*mor2[u]) for u in range(C2.apex.n_mor)])
    one = power(C_, 0).apex
    i = fc.FinFunctor(one, C_, [unit], [C_.identities[unit]])
    p = sk.presentation
    ones = complete_model(_without_cells(sk), {"M": C_}, {"m": m, "i": i})
    ev = Model(sk, ChordFinCat(), ones.objects, ones.morphisms)
    obj3 = _decode(power(C_, 3))[0]
    alpha = alpha or (lambda a, b, c: C_.identities[tensor_ob(tensor_ob(a, b), c)])
    lam = lam or (lambda a: C_.identities[a])
    rho = rho or (lambda a: C_.identities[a])
    cells = {
        "alpha": _nat(eval_path(ev, p.path("mM", "m")), eval_path(ev, p.path("Mm", "m")),
                      lambda x: alpha(*obj3[x])),
        "lambda": _nat(eval_path(ev, p.path("IM", "m")), eval_path(ev, Path.identity("M")), lam),
        "rho": _nat(eval_path(ev, Path.identity("M")), eval_path(ev, p.path("MI", "m")), rho),
    }
    return complete_model(sk, ones.objects, ones.morphisms, cells)


def _without_cells(sk):
    p = sk.presentation
    return type(sk)(type(p)(p.name, p.objects, p.gen1, (), p.eqs1, ()), sk.cones)


def strict_monoid_category(elements, mult, unit, obj="*"):
    """A one-object category from a commutative monoid, with the tensor
    given by the multiplication (strict monoidal)."""
    C_ = fc.from_monoid(elements, mult, unit, obj)
    pos = {str(e): k for k, e in enumerate(elements)}
    elements = list(elements)

    def tensor_mor(f, g):
        return pos[str(mult(elements[f], elements[g]))]

    return C_, (lambda a, b: 0), tensor_mor, 0


def discrete_monoidal(elements, mult, unit):
    """A discrete category on a monoid's elements, tensor = multiplication."""
    elements = list(elements)
    C_ = fc.discrete([str(e) for e in elements])
    pos = {e: k for k, e in enumerate(elements)}

    def tensor_ob(a, b):
        return pos[mult(elements[a], elements[b])]

    def tensor_mor(f, g):
        return C_.identities[tensor_ob(C_.src[f], C_.src[g])]

    return C_, tensor_ob, tensor_mor, pos[unit]


def thin_monoidal(elements, leq, mult, unit, name=str):
    """A preorder with a monotone multiplication as a strict monoidal thin category."""
    elements = list(elements)
    C_ = fc.from_preorder(elements, leq, name)
    pos = {e: k for k, e in enumerate(elements)}

    def tensor_ob(a, b):
        return pos[mult(elements[a], elements[b])]

    def tensor_mor(f, g):
        s = tensor_ob(C_.src[f], C_.src[g])
        t = tensor_ob(C_.tgt[f], C_.tgt[g])
        hom = C_.hom(s, t)
        if not hom:
            raise InvalidData("multiplication is not monotone")
        return hom[0]

    return C_, tensor_ob, tensor_mor, pos[unit]


def codiscrete_monoidal(elements, mult, unit):
    """A codiscrete category on a monoid's elements, tensor = multiplication."""
    elements = list(elements)
    return thin_monoidal(elements, lambda a, b: True, mult, unit)


def lax_monoidal_transformation(M, N, F, mu, eta, wp=S, w=L, extra=None):
    """The transformation of pseudomonoid models carried by a lax monoidal
    functor ``F`` with structure cells ``mu(a, b)`` (morphism index of
    ``F a (x) F b -> F(a (x) b)``) and ``eta`` (``I -> F I``).

    ``extra`` adds witnesses verbatim, e.g. to force a cell at a projection.
    """
    comps = {"M": F}
    one_c, one_d = M.obj("One"), N.obj("One")
    comps["One"] = fc.FinFunctor(one_c, one_d, [0] * one_c.n_obj, [0] * one_c.n_mor)
    draft = complete_transformation(M, N, wp, w, comps, derive=False)
    C2 = M.obj("M2")
    obj2 = {v: k for k, v in fc.canonical_limit(fc.TightProduct(2), [M.obj("M")] * 2)
            .encoding.obj.items()}
    a_m, b_m = draft.boundary("m")
    a_i, b_i = draft.boundary("i")
    wit = {
        "m": fc.FinNatTrans(a_m, b_m, [mu(*obj2[x]) for x in range(C2.n_obj)]),
        "i": fc.FinNatTrans(a_i, b_i, [eta]),
    }
    if extra:
        wit.update(extra)
    return complete_transformation(M, N, wp, w, comps, wit)


# -- monoidal double categories ---------------------------------------------------

# Each pseudocategory generator acts on chains by selecting positions.
_CHAIN_SELECT = {
    "s": (0,), "t": (1,), "c": (0, 2), "i": (0, 0),
    "pi1_1": (0, 1), "pi1_2": (1, 2),
    "pi2_1": (0, 1, 2), "pi2_2": (1, 2, 3),
    "pi3_1": (0, 1, 2, 3), "pi3_2": (1, 2, 3, 4),
    "<c,1>": (0, 2, 3), "<1,c>": (0, 1, 3), "<i,1>": (0, 0, 1), "<1,i>": (0, 1, 1),
    "<c,1,1>": (0, 2, 3, 4), "<1,c,1>": (0, 1, 3, 4), "<1,1,c>": (0, 1, 2, 4),
    "<1,i,1>": (0, 1, 1, 2),
}


def chain_double_multimodel(elements, leq, meet, top, wp=S, w=P):
    """The monoidal double category of chains in a meet-semilattice, as a
    multimodel of (pseudocategory, pseudomonoid).

    ``C_k`` is the discrete category of chains ``x0 <= ... <= xk``; composition
    drops inner points, identities repeat them, and the tensor is the pointwise
    meet.  Everything is strict, so there are no interchange cells.
    """
    from .closure import MultiModel
    from .power import power_structure
    first, second = builtin("pseudocategory"), builtin("pseudomonoid")
    elements = list(elements)
    chains, models = {}, {}
    for k, X in enumerate(first.presentation.objects):
        chains[X] = [c for c in itertools.product(elements, repeat=k + 1)
                     if all(leq(c[j], c[j + 1]) for j in range(k))]
        C_, to, tm, u = discrete_monoidal(
            chains[X], lambda a, b: tuple(meet(x, y) for x, y in zip(a, b)), (top,) * (k + 1))
        models[X] = pseudomonoid_model(C_, to, tm, u)
    T = ChordFinCat()
    arity = {apex: n for apex, n, _ in power_structure(second).powers}
    base = power_structure(second).base
    arity[base] = 1
    pb = second.presentation
    grid, fa, sa, fcells, scells = {}, {}, {}, {}, {}
    for X, m in models.items():
        for Y in pb.objects:
            grid[(X, Y)] = m.obj(Y)
        for g in pb.gen1:
            sa[(X, g.name)] = m.one(g.name)
        for g in pb.gen2:
            scells[(X, g.name)] = m.two(g.name)
    pos = {X: {c: k for k, c in enumerate(cs)} for X, cs in chains.items()}
    for g in first.presentation.gen1:
        sel = _CHAIN_SELECT[g.name]
        for Y in pb.objects:
            src, tgt = grid[(g.src, Y)], grid[(g.tgt, Y)]
            enc_src = _tuple_codes(grid[(g.src, base)], src, arity[Y], Y == base)
            enc_tgt = {v: k for k, v in _tuple_codes(grid[(g.tgt, base)], tgt, arity[Y], Y == base).items()}
            ob = []
            for a in range(src.n_obj):
                image = tuple(pos[g.tgt][tuple(chains[g.src][x][j] for j in sel)]
                              for x in enc_src[a])
                ob.append(enc_tgt[image])
            fa[(g.name, Y)] = fc.FinFunctor(src, tgt, ob,
                                            [tgt.identities[ob[src.src[u]]] for u in range(src.n_mor)])
    mm = MultiModel(first, second, T, wp, w, grid, fa, sa, {}, scells)
    for g in first.presentation.gen2:
        for Y in pb.objects:
            fcells[(g.name, Y)] = T.id2(eval_path(mm.at_second_partial(Y), g.source))
    mm.first_cells = fcells
    return mm


def _tuple_codes(base_cat, cat, n, is_base):
    """Object index -> tuple of factor object indices for a canonical power."""
    if is_base:
        return {a: (a,) for a in range(cat.n_obj)}
    lim = power(base_cat, n)
    if lim.apex != cat:
        raise InvalidData("grid value is not the canonical power")
    return {i: k for k, i in lim.encoding.obj.items()}


# -- involutions ----------------------------------------------------------------------

def thin_functor(C_, D, ob):
    """The functor into a thin category determined by its object map."""
    mor = []
    for u in range(C_.n_mor):
        hom = D.hom(ob[C_.src[u]], ob[C_.tgt[u]])
        if not hom:
            raise InvalidData("object map is not monotone")
        mor.append(hom[0])
    return fc.FinFunctor(C_, D, ob, mor)


def involution_model(C_, i):
    """A category with an involutive endofunctor as a model of the involution sketch."""
    return Model(builtin("involution"), ChordFinCat(), {"Star": C_}, {"i": i})


def trivial_and_swap():
    """The terminal involution and the swap on the free-standing isomorphism."""
    one = fc.terminal()
    I = fc.iso()
    M = involution_model(one, fc.identity_functor(one))
    N = involution_model(I, thin_functor(I, I, [1, 0]))
    return M, N
